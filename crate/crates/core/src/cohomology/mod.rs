//! Quandle cohomology with coefficients in a finite abelian group `A`,
//! written additively.
//!
//! `C_n(X)` is free on the `n`-tuples with no two adjacent entries equal;
//! degenerate tuples are left out of every basis. The coboundary is
//! `δ^n f = (−1)^n f ∘ ∂_{n+1}`, and in degree 2 a cochain `α` is a cocycle
//! exactly when `α_{x,y} + α_{x*y,z} = α_{x,z} + α_{x*z,y*z}` (with `α_{x,x} = 0`).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::{AbelianGroupStructure, ModularSubquotient};
use crate::group::FiniteGroup;
use crate::matrix::IntMatrix;
use crate::perm::Permutation;
use crate::quandle::FiniteQuandle;
use crate::{Error, Limits, Result};

mod brute;
mod extension;

pub use brute::{enumerate_z1, enumerate_z2_b2, h2_by_enumeration, BruteForceH2};
pub use extension::{
    abelian_as_dynamical, aut_a, build_abelian_extension, check_theta_derivation, orbit_lower_bound,
    semidirect_action_check, verify_wells_abelian, AbelianExtensionAutomorphism, OrbitBound, SemidirectReport,
    ThetaDerivationReport, WellsAbelianReport,
};

/// `Z_{m_1} × … × Z_{m_k}`, each `m_i ≥ 2`. Elements are encoded as mixed-radix
/// indices with the last coordinate varying fastest, so 0 is the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianCoefficients {
    moduli: Vec<u64>,
}

impl FiniteAbelianCoefficients {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.iter().any(|&m| m < 2) {
            return Err(Error::InvalidArgument("coefficient moduli must be at least 2".into()));
        }
        Ok(FiniteAbelianCoefficients { moduli })
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    /// The zero group.
    pub fn trivial() -> Self {
        FiniteAbelianCoefficients { moduli: Vec::new() }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn decode(&self, mut a: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = (a % m as usize) as u64;
            a /= m as usize;
        }
        out
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.moduli).fold(0usize, |acc, (&c, &m)| acc * m as usize + (c % m) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x.iter().zip(&y).zip(&self.moduli).map(|((&p, &q), &m)| (p + q) % m).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.decode(a);
        let s: Vec<u64> = x.iter().zip(&self.moduli).map(|(&p, &m)| (m - p) % m).collect();
        self.encode(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·a` for any integer `k`.
    pub fn scale(&self, k: i64, a: usize) -> usize {
        let x = self.decode(a);
        let s: Vec<u64> = x
            .iter()
            .zip(&self.moduli)
            .map(|(&p, &m)| ((k.rem_euclid(m as i64) as u64) * p) % m)
            .collect();
        self.encode(&s)
    }

    /// The additive group as a Cayley table.
    pub fn to_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        let n = self.order();
        if n > limits.max_group_order {
            return Err(Error::CapExceeded { what: "group order", needed: n as u128, cap: limits.max_group_order as u128 });
        }
        Ok(FiniteGroup::from_fn_unchecked(n, |a, b| self.add(a, b)))
    }

    /// `Aut(A)` as permutations of the element indices.
    pub fn automorphisms(&self, limits: &Limits) -> Result<Vec<Permutation>> {
        crate::group::group_automorphisms(&self.to_group(limits)?, limits)
    }

    /// Whether `map` (on element indices) is an endomorphism of `A`.
    pub fn is_endomorphism(&self, map: &[usize]) -> bool {
        let n = self.order();
        map.len() == n
            && map.iter().all(|&v| v < n)
            && (0..n).all(|a| (0..n).all(|b| map[self.add(a, b)] == self.add(map[a], map[b])))
    }
}

/// Non-degenerate `n`-tuples over `0..points` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleBasis {
    points: usize,
    degree: usize,
    tuples: Vec<Vec<usize>>,
    /// Full tuple code (base `points`) → basis position, `usize::MAX` when degenerate.
    lookup: Vec<usize>,
}

impl TupleBasis {
    pub fn new(points: usize, degree: usize) -> Self {
        let total = points.pow(degree as u32);
        let mut tuples = Vec::new();
        let mut lookup = vec![usize::MAX; total];
        for code in 0..total {
            let t = decode_tuple(code, points, degree);
            if t.windows(2).all(|w| w[0] != w[1]) {
                lookup[code] = tuples.len();
                tuples.push(t);
            }
        }
        TupleBasis { points, degree, tuples, lookup }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Basis position of `t`, or `None` when `t` is degenerate.
    pub fn position(&self, t: &[usize]) -> Option<usize> {
        let code = t.iter().fold(0, |acc, &x| acc * self.points + x);
        let p = self.lookup[code];
        (p != usize::MAX).then_some(p)
    }
}

fn decode_tuple(mut code: usize, points: usize, degree: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = code % points;
        code /= points;
    }
    t
}

fn check_matrix_size(limits: &Limits, x: &FiniteQuandle, n: usize) -> Result<()> {
    let size = x.size() as u128;
    let rows = if n == 0 { 1 } else { size * (size.saturating_sub(1)).pow(n as u32 - 1) };
    let cols = if n <= 1 { 1 } else { size * (size - 1).pow(n as u32 - 2) };
    limits.check_search("boundary matrix entries", rows * cols)
}

/// The matrix of `∂_n: C_n → C_{n−1}`; columns follow `TupleBasis::new(|X|, n)`.
/// `∂_1 = 0` into the single generator of `C_0`.
pub fn boundary_matrix(x: &FiniteQuandle, n: usize, limits: &Limits) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("boundary degree must be at least 1".into()));
    }
    check_matrix_size(limits, x, n)?;
    let src = TupleBasis::new(x.size(), n);
    let dst = TupleBasis::new(x.size(), n - 1);
    let mut m = IntMatrix::zeros(dst.len(), src.len());
    if n == 1 {
        return Ok(m);
    }
    for (col, t) in src.tuples().iter().enumerate() {
        for i in 1..n {
            // 1-based position i+1 runs over 2..=n, sign (−1)^{i+1}
            let sign: i64 = if (i + 1) % 2 == 0 { 1 } else { -1 };
            let mut face: Vec<usize> = t[..i].to_vec();
            face.extend_from_slice(&t[i + 1..]);
            if let Some(r) = dst.position(&face) {
                m.add_to(r, col, sign);
            }
            let xi = t[i];
            let mut moved: Vec<usize> = t[..i].iter().map(|&a| x.op(a, xi)).collect();
            moved.extend_from_slice(&t[i + 1..]);
            if let Some(r) = dst.position(&moved) {
                m.add_to(r, col, -sign);
            }
        }
    }
    Ok(m)
}

/// The matrix of `δ^n = (−1)^n (∂_{n+1})^T` acting on coordinate vectors of `n`-cochains.
pub fn coboundary_matrix(x: &FiniteQuandle, n: usize, limits: &Limits) -> Result<IntMatrix> {
    let d = boundary_matrix(x, n + 1, limits)?.transpose();
    if n % 2 == 0 {
        return Ok(d);
    }
    let mut neg = IntMatrix::zeros(d.rows(), d.cols());
    for r in 0..d.rows() {
        for c in 0..d.cols() {
            neg.set(r, c, -d.get(r, c).clone());
        }
    }
    Ok(neg)
}

/// An `A`-valued function on the non-degenerate `n`-tuples of `X`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuandleCochain {
    points: usize,
    degree: usize,
    /// Element indices of `A`, in `TupleBasis` order.
    values: Vec<usize>,
}

impl QuandleCochain {
    pub fn zero(points: usize, degree: usize) -> Self {
        QuandleCochain { points, degree, values: vec![0; TupleBasis::new(points, degree).len()] }
    }

    pub fn from_values(points: usize, degree: usize, values: Vec<usize>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("cochains have degree at least 1".into()));
        }
        let expected = TupleBasis::new(points, degree).len();
        if values.len() != expected {
            return Err(Error::ShapeMismatch(format!("cochain needs {expected} values, got {}", values.len())));
        }
        Ok(QuandleCochain { points, degree, values })
    }

    /// Degree 2 cochain from `f(x, y)` on off-diagonal pairs.
    pub fn from_pairs(points: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let basis = TupleBasis::new(points, 2);
        let values = basis.tuples().iter().map(|t| f(t[0], t[1])).collect();
        QuandleCochain { points, degree: 2, values }
    }

    /// Degree 1 cochain from `f(x)`.
    pub fn from_points(points: usize, f: impl Fn(usize) -> usize) -> Self {
        QuandleCochain { points, degree: 1, values: (0..points).map(f).collect() }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value on any tuple; degenerate tuples give 0.
    pub fn get(&self, t: &[usize]) -> usize {
        debug_assert_eq!(t.len(), self.degree);
        if t.windows(2).any(|w| w[0] == w[1]) {
            return 0;
        }
        let basis = TupleBasis::new(self.points, self.degree);
        self.values[basis.position(t).expect("non-degenerate")]
    }

    #[inline]
    pub fn pair(&self, x: usize, y: usize) -> usize {
        debug_assert_eq!(self.degree, 2);
        if x == y {
            return 0;
        }
        // position of (x, y) among off-diagonal pairs in lexicographic order
        self.values[x * (self.points - 1) + if y > x { y - 1 } else { y }]
    }

    #[inline]
    pub fn point(&self, x: usize) -> usize {
        debug_assert_eq!(self.degree, 1);
        self.values[x]
    }

    pub fn entries(&self) -> Vec<(Vec<usize>, usize)> {
        let basis = TupleBasis::new(self.points, self.degree);
        basis.tuples().iter().cloned().zip(self.values.iter().copied()).collect()
    }

    pub fn add(&self, other: &QuandleCochain, a: &FiniteAbelianCoefficients) -> QuandleCochain {
        let values = self.values.iter().zip(&other.values).map(|(&p, &q)| a.add(p, q)).collect();
        QuandleCochain { values, ..self.clone() }
    }

    pub fn sub(&self, other: &QuandleCochain, a: &FiniteAbelianCoefficients) -> QuandleCochain {
        let values = self.values.iter().zip(&other.values).map(|(&p, &q)| a.sub(p, q)).collect();
        QuandleCochain { values, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// The first failing triple of the explicit 2-cocycle identity, if any.
pub fn two_cocycle_violation(x: &FiniteQuandle, a: &FiniteAbelianCoefficients, alpha: &QuandleCochain) -> Option<[usize; 3]> {
    let n = x.size();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let lhs = a.add(alpha.pair(p, q), alpha.pair(x.op(p, q), r));
                let rhs = a.add(alpha.pair(p, r), alpha.pair(x.op(p, r), x.op(q, r)));
                if lhs != rhs {
                    return Some([p, q, r]);
                }
            }
        }
    }
    None
}

pub fn require_two_cocycle(x: &FiniteQuandle, a: &FiniteAbelianCoefficients, alpha: &QuandleCochain) -> Result<()> {
    if alpha.degree() != 2 || alpha.points() != x.size() {
        return Err(Error::ShapeMismatch("expected a 2-cochain on the given quandle".into()));
    }
    match two_cocycle_violation(x, a, alpha) {
        None => Ok(()),
        Some(w) => Err(Error::CocycleViolation { condition: "quandle 2-cocycle identity", witness: w.to_vec() }),
    }
}

/// `(δλ)_{x,y} = λ_{x*y} − λ_x`, the coboundary of a 1-cochain up to the global sign.
pub fn coboundary_of(x: &FiniteQuandle, a: &FiniteAbelianCoefficients, lambda: &QuandleCochain) -> QuandleCochain {
    QuandleCochain::from_pairs(x.size(), |p, q| a.sub(lambda.point(x.op(p, q)), lambda.point(p)))
}

/// `^{(φ,θ)}α_{x,y} = θ(α_{φ⁻¹x, φ⁻¹y})`.
pub fn act_on_cochain(phi: &Permutation, theta: &Permutation, alpha: &QuandleCochain) -> QuandleCochain {
    let pi = phi.inverse();
    QuandleCochain::from_pairs(alpha.points(), |x, y| theta.apply(alpha.pair(pi.apply(x), pi.apply(y))))
}

/// `ker(next) / im(prev)` for `A`-valued coordinate vectors: one
/// [`ModularSubquotient`] per cyclic factor of `A`, direct-summed. Classes are
/// coordinate vectors whose entries run modulo [`Self::coordinate_orders`].
#[derive(Debug, Clone)]
pub struct CoefficientSubquotient {
    coeffs: FiniteAbelianCoefficients,
    dim: usize,
    parts: Vec<ModularSubquotient>,
    structure: AbelianGroupStructure,
}

impl CoefficientSubquotient {
    /// `prev`: `b × a`, `next`: `c × b`, both integer matrices acting factorwise.
    pub fn new(prev: &IntMatrix, next: &IntMatrix, coeffs: &FiniteAbelianCoefficients) -> Self {
        let parts: Vec<ModularSubquotient> =
            coeffs.moduli().iter().map(|&m| ModularSubquotient::new(prev, next, m)).collect();
        let structure = parts
            .iter()
            .fold(AbelianGroupStructure::trivial(), |acc, p| acc.direct_sum(p.structure()));
        CoefficientSubquotient { coeffs: coeffs.clone(), dim: next.cols(), parts, structure }
    }

    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.structure
    }

    pub fn coefficients(&self) -> &FiniteAbelianCoefficients {
        &self.coeffs
    }

    pub fn order(&self) -> u128 {
        self.structure.order().expect("finite coefficients")
    }

    /// `|ker(next)|`.
    pub fn cocycle_count(&self) -> u128 {
        self.parts.iter().map(ModularSubquotient::kernel_order).product()
    }

    /// `|im(prev)|`.
    pub fn coboundary_count(&self) -> u128 {
        self.cocycle_count() / self.order()
    }

    pub fn coordinate_orders(&self) -> Vec<u64> {
        self.parts.iter().flat_map(ModularSubquotient::coordinate_orders).collect()
    }

    fn component(&self, values: &[usize], i: usize) -> Vec<u64> {
        values.iter().map(|&v| self.coeffs.decode(v)[i]).collect()
    }

    pub fn contains_values(&self, values: &[usize]) -> bool {
        self.parts.iter().enumerate().all(|(i, p)| p.in_kernel(&self.component(values, i)))
    }

    pub fn class_of_values(&self, values: &[usize]) -> Option<Vec<u64>> {
        assert_eq!(values.len(), self.dim, "vector length");
        let mut out = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            out.extend(p.class_of(&self.component(values, i))?);
        }
        Some(out)
    }

    pub fn representative_values(&self, coords: &[u64]) -> Vec<usize> {
        let mut offset = 0;
        let mut comps: Vec<Vec<u64>> = Vec::with_capacity(self.parts.len());
        for p in &self.parts {
            let k = p.coordinate_orders().len();
            comps.push(p.representative(&coords[offset..offset + k]));
            offset += k;
        }
        assert_eq!(offset, coords.len(), "wrong number of class coordinates");
        (0..self.dim)
            .map(|j| {
                let v: Vec<u64> = comps.iter().map(|c| c[j]).collect();
                self.coeffs.encode(&v)
            })
            .collect()
    }

    pub fn zero_class(&self) -> Vec<u64> {
        vec![0; self.coordinate_orders().len()]
    }

    pub fn add_classes(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(self.coordinate_orders()).map(|((&p, &q), m)| (p + q) % m).collect()
    }

    pub fn neg_class(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(self.coordinate_orders()).map(|(&p, m)| (m - p) % m).collect()
    }

    pub fn sub_classes(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add_classes(a, &self.neg_class(b))
    }

    /// Every class, in odometer order, when there are at most `max_representatives`.
    pub fn classes(&self, limits: &Limits) -> Result<Vec<Vec<u64>>> {
        let total = self.order();
        if total > limits.max_representatives {
            return Err(Error::CapExceeded {
                what: "cohomology classes to list",
                needed: total,
                cap: limits.max_representatives,
            });
        }
        let orders = self.coordinate_orders();
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u64; orders.len()];
        loop {
            out.push(cur.clone());
            let mut i = orders.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

/// `H^n(X; A)` with explicit class coordinates.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    points: usize,
    degree: usize,
    inner: CoefficientSubquotient,
}

impl core::ops::Deref for CohomologyGroup {
    type Target = CoefficientSubquotient;

    fn deref(&self) -> &CoefficientSubquotient {
        &self.inner
    }
}

/// `ker δ^n / im δ^{n−1}` via Smith normal form, for `n ∈ {1, 2, 3}`.
pub fn cohomology_group(
    x: &FiniteQuandle,
    n: usize,
    a: &FiniteAbelianCoefficients,
    limits: &Limits,
) -> Result<CohomologyGroup> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidArgument(format!("cohomology degree {n} not in 1..=3")));
    }
    let next = coboundary_matrix(x, n, limits)?;
    let prev = if n == 1 {
        IntMatrix::zeros(x.size(), 1)
    } else {
        coboundary_matrix(x, n - 1, limits)?
    };
    Ok(CohomologyGroup { points: x.size(), degree: n, inner: CoefficientSubquotient::new(&prev, &next, a) })
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_cocycle(&self, c: &QuandleCochain) -> bool {
        self.contains_values(&c.values)
    }

    /// Class coordinates, or `None` when `c` is not a cocycle.
    pub fn class_of(&self, c: &QuandleCochain) -> Option<Vec<u64>> {
        assert_eq!((c.points(), c.degree()), (self.points, self.degree), "cochain shape");
        self.class_of_values(&c.values)
    }

    pub fn representative(&self, coords: &[u64]) -> QuandleCochain {
        QuandleCochain { points: self.points, degree: self.degree, values: self.representative_values(coords) }
    }

    /// Class of `^{(φ,θ)}α` for `α` in the class `cls` (degree 2).
    pub fn act_on_class(&self, phi: &Permutation, theta: &Permutation, cls: &[u64]) -> Vec<u64> {
        let moved = act_on_cochain(phi, theta, &self.representative(cls));
        self.class_of(&moved).expect("the action preserves cocycles")
    }

    /// `Θ_{[α]}(φ, θ) = [α] − ^{(φ,θ)}[α]`.
    pub fn theta_map(&self, base: &[u64], phi: &Permutation, theta: &Permutation) -> Vec<u64> {
        self.sub_classes(base, &self.act_on_class(phi, theta, base))
    }
}

/// Checks that `φ ∈ Aut(X)` and `θ ∈ Aut(A)`.
pub fn check_acting_pair(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    phi: &Permutation,
    theta: &Permutation,
) -> Result<()> {
    if phi.len() != x.size() || theta.len() != a.order() {
        return Err(Error::ShapeMismatch("acting pair has the wrong degree".into()));
    }
    x.check_homomorphism(x, phi.images()).map_err(|e| match e {
        Error::NotAHomomorphism { witness, .. } => Error::NotAHomomorphism { context: "phi ∈ Aut(X)", witness },
        other => other,
    })?;
    if !a.is_endomorphism(theta.images()) {
        return Err(Error::NotAHomomorphism { context: "theta ∈ Aut(A)", witness: Vec::new() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_group;
    use num_bigint::BigInt;
    use crate::quandle::{conj_quandle, core_quandle, dihedral_quandle, trivial_quandle};

    fn z(m: u64) -> FiniteAbelianCoefficients {
        FiniteAbelianCoefficients::cyclic(m).unwrap()
    }

    #[test]
    fn coefficient_encoding() {
        let a = FiniteAbelianCoefficients::new(vec![2, 3]).unwrap();
        assert_eq!(a.order(), 6);
        for e in 0..6 {
            assert_eq!(a.encode(&a.decode(e)), e);
            assert_eq!(a.add(e, a.neg(e)), 0);
        }
        assert_eq!(a.decode(5), vec![1, 2]);
        assert_eq!(a.automorphisms(&Limits::default()).unwrap().len(), 2);
        assert_eq!(z(4).automorphisms(&Limits::default()).unwrap().len(), 2);
        assert_eq!(FiniteAbelianCoefficients::trivial().order(), 1);
    }

    #[test]
    fn d2_examples() {
        let lim = Limits::default();
        let t2 = trivial_quandle(2).unwrap();
        let d2 = boundary_matrix(&t2, 2, &lim).unwrap();
        assert!(d2.is_zero());
        assert_eq!(TupleBasis::new(2, 2).tuples(), &[vec![0, 1], vec![1, 0]]);
        let r3 = dihedral_quandle(3).unwrap();
        let d2 = boundary_matrix(&r3, 2, &lim).unwrap();
        // column (0,1): (0) − (0*1) = (0) − (2)
        assert_eq!(d2.column(0), vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1)]);
    }

    #[test]
    fn boundaries_compose_to_zero() {
        let lim = Limits::default();
        for q in [dihedral_quandle(3).unwrap(), dihedral_quandle(4).unwrap(), trivial_quandle(3).unwrap()] {
            for n in 1..=3 {
                let prod = &boundary_matrix(&q, n, &lim).unwrap() * &boundary_matrix(&q, n + 1, &lim).unwrap();
                assert!(prod.is_zero(), "∂_{n}∂_{} on {q:?}", n + 1);
            }
            for n in 1..=2 {
                let prod = &coboundary_matrix(&q, n + 1, &lim).unwrap() * &coboundary_matrix(&q, n, &lim).unwrap();
                assert!(prod.is_zero());
            }
        }
    }

    #[test]
    fn matrix_kernel_matches_explicit_identity() {
        let lim = Limits::default();
        let r4 = dihedral_quandle(4).unwrap();
        let a = z(2);
        let h = cohomology_group(&r4, 2, &a, &lim).unwrap();
        let basis = TupleBasis::new(4, 2);
        for code in 0u32..1 << basis.len() {
            let c = QuandleCochain::from_values(4, 2, (0..basis.len()).map(|i| ((code >> i) & 1) as usize).collect()).unwrap();
            assert_eq!(h.is_cocycle(&c), two_cocycle_violation(&r4, &a, &c).is_none());
        }
    }

    #[test]
    fn anchors() {
        let lim = Limits::default();
        let h = cohomology_group(&trivial_quandle(2).unwrap(), 2, &z(2), &lim).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.structure().invariant_factors(), &[2, 2]);
        assert_eq!(h.coboundary_count(), 1);
        assert_eq!(cohomology_group(&trivial_quandle(3).unwrap(), 2, &z(2), &lim).unwrap().order(), 64);
        assert_eq!(cohomology_group(&dihedral_quandle(3).unwrap(), 1, &z(3), &lim).unwrap().order(), 3);
        assert_eq!(cohomology_group(&dihedral_quandle(4).unwrap(), 1, &z(2), &lim).unwrap().order(), 4);
        let trivial_a = FiniteAbelianCoefficients::trivial();
        assert_eq!(cohomology_group(&dihedral_quandle(4).unwrap(), 2, &trivial_a, &lim).unwrap().order(), 1);
    }

    #[test]
    fn representatives_round_trip() {
        let lim = Limits::default();
        let a = FiniteAbelianCoefficients::new(vec![2, 4]).unwrap();
        let h = cohomology_group(&dihedral_quandle(4).unwrap(), 2, &a, &lim).unwrap();
        for cls in h.classes(&lim).unwrap() {
            let rep = h.representative(&cls);
            assert!(h.is_cocycle(&rep));
            assert_eq!(h.class_of(&rep).unwrap(), cls);
        }
    }

    #[test]
    fn h3_is_computed() {
        let lim = Limits::default();
        let h = cohomology_group(&trivial_quandle(2).unwrap(), 3, &z(2), &lim).unwrap();
        // all coboundaries vanish on T_2, so H^3 = C^3 = (Z_2)^2
        assert_eq!(h.order(), 4);
        let z3 = cyclic_group(3, &lim).unwrap();
        assert!(cohomology_group(&core_quandle(&z3), 3, &z(3), &lim).is_ok());
        assert!(cohomology_group(&conj_quandle(&z3, 1), 4, &z(3), &lim).is_err());
    }

    #[test]
    fn coboundaries_are_cocycles_and_classes_are_zero() {
        let lim = Limits::default();
        let r4 = dihedral_quandle(4).unwrap();
        let a = z(3);
        let h = cohomology_group(&r4, 2, &a, &lim).unwrap();
        let lambda = QuandleCochain::from_points(4, |x| x % 3);
        let b = coboundary_of(&r4, &a, &lambda);
        assert_eq!(h.class_of(&b).unwrap(), h.zero_class());
    }
}
