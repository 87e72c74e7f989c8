//! Second cohomology of a finite group with coefficients in a trivial module.

use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::{CoefficientSubquotient, FiniteAbelianCoefficients};
use crate::group::FiniteGroup;
use crate::matrix::IntMatrix;
use crate::{Error, Limits, Result};

pub const GROUP_COCYCLE_IDENTITY: &str = "ν(y,z) + ν(x,yz) = ν(xy,z) + ν(x,y)";

/// `ν: G × G → A` satisfying the trivial-action cocycle identity; `nu[x·|G| + y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCocycle2 {
    group: FiniteGroup,
    coeffs: FiniteAbelianCoefficients,
    nu: Vec<usize>,
}

impl GroupCocycle2 {
    pub fn new(group: FiniteGroup, coeffs: FiniteAbelianCoefficients, nu: Vec<usize>) -> Result<Self> {
        let n = group.size();
        if nu.len() != n * n || nu.iter().any(|&v| v >= coeffs.order()) {
            return Err(Error::ShapeMismatch("group cocycle needs |G|² elements of A".into()));
        }
        let c = GroupCocycle2 { group, coeffs, nu };
        if let Some(w) = c.violation() {
            return Err(Error::CocycleViolation { condition: GROUP_COCYCLE_IDENTITY, witness: w.to_vec() });
        }
        Ok(c)
    }

    pub fn from_fn(group: FiniteGroup, coeffs: FiniteAbelianCoefficients, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = group.size();
        let nu = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(group, coeffs, nu)
    }

    pub(crate) fn from_values_unchecked(group: FiniteGroup, coeffs: FiniteAbelianCoefficients, nu: Vec<usize>) -> Self {
        GroupCocycle2 { group, coeffs, nu }
    }

    pub fn zero(group: FiniteGroup, coeffs: FiniteAbelianCoefficients) -> Self {
        let n = group.size();
        GroupCocycle2 { group, coeffs, nu: vec![0; n * n] }
    }

    fn violation(&self) -> Option<[usize; 3]> {
        let (g, a) = (&self.group, &self.coeffs);
        let n = g.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = a.add(self.get(y, z), self.get(x, g.mul(y, z)));
                    let rhs = a.add(self.get(g.mul(x, y), z), self.get(x, y));
                    if lhs != rhs {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coefficients(&self) -> &FiniteAbelianCoefficients {
        &self.coeffs
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.nu[x * self.group.size() + y]
    }

    pub fn values(&self) -> &[usize] {
        &self.nu
    }

    /// First `(x, y)` with `ν(x,y) ≠ ν(y,x)`.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        let n = self.group.size();
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| self.get(x, y) != self.get(y, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    /// `ν − ν(1,1)`: the cohomologous cocycle with `ν(1, y) = ν(x, 1) = 0`
    /// (the shift is the coboundary of the constant map `ν(1,1)`).
    pub fn normalized(&self) -> Self {
        let c = self.get(0, 0);
        let nu = self.nu.iter().map(|&v| self.coeffs.sub(v, c)).collect();
        GroupCocycle2 { nu, ..self.clone() }
    }

    pub fn is_normalized(&self) -> bool {
        self.get(0, 0) == 0
    }

    /// `ν + δλ` with `δλ(x,y) = λ(x) + λ(y) − λ(xy)`.
    pub fn twist(&self, lambda: &[usize]) -> Self {
        let (g, a) = (&self.group, &self.coeffs);
        let n = g.size();
        let nu = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                a.sub(a.add(a.add(self.nu[i], lambda[x]), lambda[y]), lambda[g.mul(x, y)])
            })
            .collect();
        GroupCocycle2 { nu, ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let nu = self.nu.iter().zip(&other.nu).map(|(&p, &q)| self.coeffs.add(p, q)).collect();
        GroupCocycle2 { nu, ..self.clone() }
    }

    /// The extension `A → E → G`: `(x, s)(y, t) = (xy, s + t + ν(x,y))` on
    /// indices `x·|A| + s`, built from the normalized cocycle so that `(1, 0)` is the identity.
    pub fn extension_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        let nu = self.normalized();
        let (g, a) = (&self.group, &self.coeffs);
        let k = a.order();
        let size = g.size() * k;
        if size > limits.max_group_order {
            return Err(Error::CapExceeded { what: "group order", needed: size as u128, cap: limits.max_group_order as u128 });
        }
        let rows: Vec<Vec<usize>> = (0..size)
            .map(|p| {
                (0..size)
                    .map(|q| {
                        let (x, s, y, t) = (p / k, p % k, q / k, q % k);
                        g.mul(x, y) * k + a.add(a.add(s, t), nu.get(x, y))
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&rows)
    }
}

/// `H^2(G; A)` for the trivial action, with explicit class coordinates.
#[derive(Debug, Clone)]
pub struct GroupCohomology2 {
    group: FiniteGroup,
    inner: CoefficientSubquotient,
}

impl core::ops::Deref for GroupCohomology2 {
    type Target = CoefficientSubquotient;

    fn deref(&self) -> &CoefficientSubquotient {
        &self.inner
    }
}

fn group_coboundary_1(g: &FiniteGroup) -> IntMatrix {
    let n = g.size();
    let mut m = IntMatrix::zeros(n * n, n);
    for x in 0..n {
        for y in 0..n {
            let r = x * n + y;
            m.add_to(r, x, 1);
            m.add_to(r, y, 1);
            m.add_to(r, g.mul(x, y), -1);
        }
    }
    m
}

fn group_coboundary_2(g: &FiniteGroup) -> IntMatrix {
    let n = g.size();
    let mut m = IntMatrix::zeros(n * n * n, n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let r = (x * n + y) * n + z;
                m.add_to(r, y * n + z, 1);
                m.add_to(r, g.mul(x, y) * n + z, -1);
                m.add_to(r, x * n + g.mul(y, z), 1);
                m.add_to(r, x * n + y, -1);
            }
        }
    }
    m
}

/// Rows `ν(x,y) − ν(y,x)` for `x < y`.
fn symmetry_rows(n: usize) -> IntMatrix {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let mut m = IntMatrix::zeros(pairs.len(), n * n);
    for (r, &(x, y)) in pairs.iter().enumerate() {
        m.add_to(r, x * n + y, 1);
        m.add_to(r, y * n + x, -1);
    }
    m
}

fn vstack(top: &IntMatrix, bottom: &IntMatrix) -> IntMatrix {
    top.transpose().hstack(&bottom.transpose()).transpose()
}

fn check_group_size(g: &FiniteGroup, limits: &Limits) -> Result<()> {
    let n = g.size() as u128;
    limits.check_search("group cochain matrix entries", n * n * n * n * n)
}

/// `Z^2 / B^2` as solution spaces of the linear cocycle and coboundary conditions.
pub fn group_h2(g: &FiniteGroup, a: &FiniteAbelianCoefficients, limits: &Limits) -> Result<GroupCohomology2> {
    check_group_size(g, limits)?;
    let inner = CoefficientSubquotient::new(&group_coboundary_1(g), &group_coboundary_2(g), a);
    Ok(GroupCohomology2 { group: g.clone(), inner })
}

impl GroupCohomology2 {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn class_of(&self, nu: &GroupCocycle2) -> Vec<u64> {
        self.class_of_values(nu.values()).expect("validated cocycle")
    }

    pub fn representative(&self, coords: &[u64]) -> GroupCocycle2 {
        let c = GroupCocycle2::from_values_unchecked(
            self.group.clone(),
            self.coefficients().clone(),
            self.representative_values(coords),
        );
        debug_assert!(c.violation().is_none());
        c
    }
}

/// `H^2(G; A)_sym`: the classes with a symmetric representative.
#[derive(Debug, Clone)]
pub struct SymmetricClasses {
    /// Symmetric cocycles modulo coboundaries.
    pub sym: CoefficientSubquotient,
    /// Images in the coordinates of the ambient `H^2(G; A)`, one per class of `sym`.
    pub classes: Vec<Vec<u64>>,
    /// The images are distinct, contain zero and are closed under addition.
    pub is_subgroup: bool,
}

/// Requires `G` abelian, so that every coboundary is symmetric.
pub fn symmetric_classes(h: &GroupCohomology2, limits: &Limits) -> Result<SymmetricClasses> {
    let g = h.group();
    g.require_abelian()?;
    let next = vstack(&group_coboundary_2(g), &symmetry_rows(g.size()));
    let sym = CoefficientSubquotient::new(&group_coboundary_1(g), &next, h.coefficients());
    let mut classes = Vec::new();
    for c in sym.classes(limits)? {
        let rep = sym.representative_values(&c);
        classes.push(h.class_of_values(&rep).expect("symmetric cocycles are cocycles"));
    }
    let mut sorted = classes.clone();
    sorted.sort();
    sorted.dedup();
    let closed = classes.iter().all(|p| classes.iter().all(|q| sorted.binary_search(&h.add_classes(p, q)).is_ok()));
    let is_subgroup = sorted.len() == classes.len() && sorted.binary_search(&h.zero_class()).is_ok() && closed;
    Ok(SymmetricClasses { sym, classes, is_subgroup })
}
