//! Finitely generated abelian groups: invariant factors, cokernels, and
//! subquotients `ker / im` of integer matrices reduced mod `m`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::matrix::{smith_normal_form, unimodular_inverse, IntMatrix};

/// `Z_{d_1} × … × Z_{d_k}` with `d_1 | d_2 | … | d_k`; a factor of 0 is a copy
/// of `Z` and zeros sort last. Factors equal to 1 are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupStructure {
    factors: Vec<u64>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Normalizes an arbitrary list of cyclic orders (0 = infinite cyclic).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let free = orders.iter().filter(|&&d| d == 0).count();
        // prime -> multiset of exponents
        let mut powers: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in orders.iter().filter(|&&d| d > 1) {
            for (p, e) in factorize(d) {
                powers.entry(p).or_default().push(p.pow(e));
            }
        }
        let slots = powers.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; slots];
        for mut pp in powers.into_values() {
            pp.sort_unstable();
            // largest powers go to the last slots
            let offset = slots - pp.len();
            for (i, q) in pp.into_iter().enumerate() {
                factors[offset + i] *= q;
            }
        }
        factors.extend(core::iter::repeat(0).take(free));
        AbelianGroupStructure { factors }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == 0).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// `None` when some factor is infinite.
    pub fn order(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &d| if d == 0 { None } else { Some(acc * d as u128) })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut all = self.factors.clone();
        all.extend_from_slice(&other.factors);
        Self::from_cyclic_orders(&all)
    }
}

impl fmt::Debug for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            if *d == 0 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z{d}")?;
            }
        }
        Ok(())
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("invariant factor does not fit in u64")
}

/// The quotient of `Z_{m_1} × … × Z_{m_r}` (`m_i = 0` meaning `Z`) by the
/// span of the columns of `relations` (an `r × k` matrix).
pub fn cokernel_structure(relations: &IntMatrix, moduli: &[u64]) -> AbelianGroupStructure {
    assert_eq!(relations.rows(), moduli.len(), "relation matrix rows must match the ambient rank");
    let r = moduli.len();
    let torsion: Vec<usize> = (0..r).filter(|&i| moduli[i] != 0).collect();
    let mut extra = IntMatrix::zeros(r, torsion.len());
    for (j, &i) in torsion.iter().enumerate() {
        extra.set(i, j, BigInt::from(moduli[i]));
    }
    let full = relations.hstack(&extra);
    let s = smith_normal_form(&full);
    let mut orders: Vec<u64> = s.diagonal().iter().map(to_u64).collect();
    orders.extend(core::iter::repeat(0).take(r.saturating_sub(orders.len())));
    AbelianGroupStructure::from_cyclic_orders(&orders)
}

fn modulo(x: &BigInt, m: u64) -> u64 {
    to_u64(&x.mod_floor(&BigInt::from(m)))
}

/// `ker(next) / im(prev)` for a complex of free `Z_m`-modules
/// `Z_m^a --prev--> Z_m^b --next--> Z_m^c` given by integer lifts, together
/// with an explicit coordinate isomorphism onto `Z_{e_1} × … × Z_{e_k}`.
///
/// Kernel: with `D = U·next·V`, `next·v ≡ 0` iff `w = V⁻¹v` has
/// `d_i w_i ≡ 0 (mod m)`, so the kernel has basis `(m / g_i)·V e_i` of order
/// `g_i = gcd(d_i, m)` (and `V e_i` of order `m` past the rank). The image of
/// `prev` is rewritten in that basis and the quotient is read off a second
/// Smith normal form.
#[derive(Debug, Clone)]
pub struct ModularSubquotient {
    modulus: u64,
    dim: usize,
    /// `V` and `V⁻¹` reduced mod m.
    v: Vec<Vec<u64>>,
    v_inv: Vec<Vec<u64>>,
    /// For each coordinate `i` of `w`: the order `g_i` of the kernel basis vector there.
    kernel_orders: Vec<u64>,
    /// Coordinates with `g_i > 1`.
    kept: Vec<usize>,
    /// SNF data of the relation matrix: class coordinates = `u_rel · b (mod e_j)`.
    u_rel: IntMatrix,
    u_rel_inv: IntMatrix,
    /// Diagonal of the relation SNF, one per kept coordinate.
    elementary: Vec<u64>,
    structure: AbelianGroupStructure,
}

impl ModularSubquotient {
    /// `prev`: `b × a`; `next`: `c × b` (either may have zero rows/columns).
    pub fn new(prev: &IntMatrix, next: &IntMatrix, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let dim = next.cols();
        assert_eq!(prev.rows(), dim, "prev and next do not compose");
        let snf = smith_normal_form(next);
        let diag = snf.diagonal();
        let v_inv_big = unimodular_inverse(&snf.v);
        let reduce = |m: &IntMatrix| -> Vec<Vec<u64>> {
            (0..m.rows()).map(|r| (0..m.cols()).map(|c| modulo(m.get(r, c), modulus)).collect()).collect()
        };
        let v = reduce(&snf.v);
        let v_inv = reduce(&v_inv_big);

        let kernel_orders: Vec<u64> = (0..dim)
            .map(|i| match diag.get(i) {
                Some(d) if !d.is_zero() => to_u64(&d.gcd(&BigInt::from(modulus))),
                _ => modulus,
            })
            .collect();
        let kept: Vec<usize> = (0..dim).filter(|&i| kernel_orders[i] > 1).collect();

        // relation matrix: images of prev's columns in kernel-basis coordinates, then the orders
        let k = kept.len();
        let mut rel = IntMatrix::zeros(k, prev.cols() + k);
        for c in 0..prev.cols() {
            let col = prev.column(c);
            let w = mat_vec_mod(&v_inv, &col.iter().map(|x| modulo(x, modulus)).collect::<Vec<_>>(), modulus);
            for (row, &i) in kept.iter().enumerate() {
                let step = modulus / kernel_orders[i];
                debug_assert_eq!(w[i] % step, 0, "image of prev is not inside ker(next)");
                rel.set(row, c, BigInt::from((w[i] / step) % kernel_orders[i]));
            }
        }
        for (row, &i) in kept.iter().enumerate() {
            rel.set(row, prev.cols() + row, BigInt::from(kernel_orders[i]));
        }
        let rel_snf = smith_normal_form(&rel);
        let elementary: Vec<u64> = rel_snf.diagonal().iter().map(to_u64).collect();
        debug_assert_eq!(elementary.len(), k);
        let structure = AbelianGroupStructure::from_cyclic_orders(&elementary);
        let u_rel_inv = unimodular_inverse(&rel_snf.u);
        ModularSubquotient {
            modulus,
            dim,
            v,
            v_inv,
            kernel_orders,
            kept,
            u_rel: rel_snf.u,
            u_rel_inv,
            elementary,
            structure,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.structure
    }

    /// Orders of the class coordinates (`e_j > 1` only), in coordinate order.
    pub fn coordinate_orders(&self) -> Vec<u64> {
        self.elementary.iter().copied().filter(|&e| e > 1).collect()
    }

    /// `|ker(next)|` as a power of the modulus structure.
    pub fn kernel_order(&self) -> u128 {
        self.kernel_orders.iter().map(|&g| g as u128).product()
    }

    /// Whether `x ∈ ker(next)`.
    pub fn in_kernel(&self, x: &[u64]) -> bool {
        let w = mat_vec_mod(&self.v_inv, x, self.modulus);
        w.iter().zip(&self.kernel_orders).all(|(&wi, &g)| wi % (self.modulus / g) == 0)
    }

    /// Class coordinates of a kernel element, or `None` if `x` is not in the kernel.
    pub fn class_of(&self, x: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(x.len(), self.dim);
        let w = mat_vec_mod(&self.v_inv, x, self.modulus);
        let mut b = Vec::with_capacity(self.kept.len());
        for (i, (&wi, &g)) in w.iter().zip(&self.kernel_orders).enumerate() {
            let step = self.modulus / g;
            if wi % step != 0 {
                return None;
            }
            if g > 1 {
                debug_assert!(self.kept.contains(&i));
                b.push(BigInt::from(wi / step));
            }
        }
        let c = self.u_rel.mul_vec(&b);
        Some(
            c.iter()
                .zip(&self.elementary)
                .filter(|(_, &e)| e > 1)
                .map(|(x, &e)| modulo(x, e))
                .collect(),
        )
    }

    /// A kernel element in the class with the given coordinates.
    pub fn representative(&self, coords: &[u64]) -> Vec<u64> {
        let mut full = Vec::with_capacity(self.elementary.len());
        let mut it = coords.iter();
        for &e in &self.elementary {
            full.push(BigInt::from(if e > 1 { *it.next().expect("too few class coordinates") % e } else { 0 }));
        }
        assert!(it.next().is_none(), "too many class coordinates");
        let b = self.u_rel_inv.mul_vec(&full);
        let mut w = vec![0u64; self.dim];
        for (row, &i) in self.kept.iter().enumerate() {
            let g = self.kernel_orders[i];
            w[i] = (modulo(&b[row], g) * (self.modulus / g)) % self.modulus;
        }
        mat_vec_mod(&self.v, &w, self.modulus)
    }

    /// Generators of `ker(next)` as vectors mod m, with their orders.
    pub fn kernel_generators(&self) -> Vec<(Vec<u64>, u64)> {
        self.kept
            .iter()
            .map(|&i| {
                let g = self.kernel_orders[i];
                let mut w = vec![0u64; self.dim];
                w[i] = self.modulus / g;
                (mat_vec_mod(&self.v, &w, self.modulus), g)
            })
            .collect()
    }
}

fn mat_vec_mod(m: &[Vec<u64>], x: &[u64], modulus: u64) -> Vec<u64> {
    m.iter()
        .map(|row| {
            let s: u128 = row.iter().zip(x).map(|(&a, &b)| a as u128 * b as u128).sum();
            (s % modulus as u128) as u64
        })
        .collect()
}
