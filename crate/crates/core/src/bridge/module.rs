//! Homogeneous quandle modules and their factor sets, written additively.

use alloc::vec;
use alloc::vec::Vec;

use crate::cohomology::{FiniteAbelianCoefficients, QuandleCochain};
use crate::quandle::FiniteQuandle;
use crate::{Error, Limits, Result};

pub const MODULE_A_SQUARE: &str = "a_{x*y,z} a_{x,y} = a_{x*z,y*z} a_{x,z}";
pub const MODULE_AB_SQUARE: &str = "a_{x*y,z} b_{y,x} = b_{y*z,x*z} a_{y,z}";
pub const MODULE_B_SPLIT: &str = "b_{z,x*y}(s) = a_{x*z,y*z} b_{z,x}(s) + b_{y*z,x*z} b_{z,y}(s)";
pub const MODULE_DIAGONAL: &str = "a_{z,z}(s) + b_{z,z}(s) = s";
pub const MODULE_A_INVERTIBLE: &str = "a_{x,y} is an automorphism";
pub const MODULE_HOMOMORPHISM: &str = "a_{x,y} and b_{y,x} are endomorphisms";

/// `A` over `X` with maps `a_{x,y}` and `b_{y,x}`, each stored as an element map of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousQuandleModule {
    base: FiniteQuandle,
    coeffs: FiniteAbelianCoefficients,
    /// `a[x·n + y] = a_{x,y}`.
    a: Vec<Vec<usize>>,
    /// `b[y·n + x] = b_{y,x}`.
    b: Vec<Vec<usize>>,
}

impl HomogeneousQuandleModule {
    /// `a_fn(x, y, s) = a_{x,y}(s)`, `b_fn(y, x, s) = b_{y,x}(s)`; validated.
    pub fn new(
        base: FiniteQuandle,
        coeffs: FiniteAbelianCoefficients,
        a_fn: impl Fn(usize, usize, usize) -> usize,
        b_fn: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let m = Self::new_unchecked(base, coeffs, a_fn, b_fn);
        m.validate()?;
        Ok(m)
    }

    fn new_unchecked(
        base: FiniteQuandle,
        coeffs: FiniteAbelianCoefficients,
        a_fn: impl Fn(usize, usize, usize) -> usize,
        b_fn: impl Fn(usize, usize, usize) -> usize,
    ) -> Self {
        let (n, k) = (base.size(), coeffs.order());
        let a = (0..n * n).map(|i| (0..k).map(|s| a_fn(i / n, i % n, s)).collect()).collect();
        let b = (0..n * n).map(|i| (0..k).map(|s| b_fn(i / n, i % n, s)).collect()).collect();
        HomogeneousQuandleModule { base, coeffs, a, b }
    }

    /// `a_{x,y} = id`, `b_{y,x} = 0`.
    pub fn trivial(base: &FiniteQuandle, coeffs: &FiniteAbelianCoefficients) -> Self {
        Self::new_unchecked(base.clone(), coeffs.clone(), |_, _, s| s, |_, _, _| 0)
    }

    /// `a_{x,y}(s) = k_a·s`, `b_{y,x}(s) = k_b·s` for all `x, y`; validated.
    pub fn scalar(base: &FiniteQuandle, coeffs: &FiniteAbelianCoefficients, k_a: i64, k_b: i64) -> Result<Self> {
        Self::new(base.clone(), coeffs.clone(), |_, _, s| coeffs.scale(k_a, s), |_, _, s| coeffs.scale(k_b, s))
    }

    /// `a_{x,y}(s) = −s`, `b_{y,x}(s) = 2s`: the module used by the core construction.
    pub fn negate_double(base: &FiniteQuandle, coeffs: &FiniteAbelianCoefficients) -> Result<Self> {
        Self::scalar(base, coeffs, -1, 2)
    }

    pub fn from_tables(
        base: FiniteQuandle,
        coeffs: FiniteAbelianCoefficients,
        a: Vec<Vec<usize>>,
        b: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (n, k) = (base.size(), coeffs.order());
        if a.len() != n * n || b.len() != n * n || a.iter().chain(&b).any(|f| f.len() != k || f.iter().any(|&v| v >= k)) {
            return Err(Error::ShapeMismatch("module tables need |X|² maps of A".into()));
        }
        let m = HomogeneousQuandleModule { base, coeffs, a, b };
        m.validate()?;
        Ok(m)
    }

    pub fn base(&self) -> &FiniteQuandle {
        &self.base
    }

    pub fn coefficients(&self) -> &FiniteAbelianCoefficients {
        &self.coeffs
    }

    #[inline]
    pub fn a_map(&self, x: usize, y: usize, s: usize) -> usize {
        self.a[x * self.base.size() + y][s]
    }

    #[inline]
    pub fn b_map(&self, y: usize, x: usize, s: usize) -> usize {
        self.b[y * self.base.size() + x][s]
    }

    pub fn a_table(&self) -> &[Vec<usize>] {
        &self.a
    }

    pub fn b_table(&self) -> &[Vec<usize>] {
        &self.b
    }

    pub fn is_trivial(&self) -> bool {
        let k = self.coeffs.order();
        self.a.iter().all(|f| f.iter().copied().eq(0..k)) && self.b.iter().all(|f| f.iter().all(|&v| v == 0))
    }

    /// Checks the four module identities on every `x, y, z, s`, the diagonal one first.
    pub fn validate(&self) -> Result<()> {
        let (x, a) = (&self.base, &self.coeffs);
        let (n, k) = (x.size(), a.order());
        let violation = |identity, witness: Vec<usize>| Err(Error::ModuleViolation { identity, witness });
        for p in 0..n {
            for q in 0..n {
                if !a.is_endomorphism(&self.a[p * n + q]) || !a.is_endomorphism(&self.b[p * n + q]) {
                    return violation(MODULE_HOMOMORPHISM, vec![p, q]);
                }
                let mut seen = vec![false; k];
                for s in 0..k {
                    seen[self.a_map(p, q, s)] = true;
                }
                if seen.contains(&false) {
                    return violation(MODULE_A_INVERTIBLE, vec![p, q]);
                }
            }
        }
        for z in 0..n {
            for s in 0..k {
                if a.add(self.a_map(z, z, s), self.b_map(z, z, s)) != s {
                    return violation(MODULE_DIAGONAL, vec![z, s]);
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let (pq, pr, qr) = (x.op(p, q), x.op(p, r), x.op(q, r));
                    for s in 0..k {
                        if self.a_map(pq, r, self.a_map(p, q, s)) != self.a_map(pr, qr, self.a_map(p, r, s)) {
                            return violation(MODULE_A_SQUARE, vec![p, q, r, s]);
                        }
                        if self.a_map(pq, r, self.b_map(q, p, s)) != self.b_map(qr, pr, self.a_map(q, r, s)) {
                            return violation(MODULE_AB_SQUARE, vec![p, q, r, s]);
                        }
                        let split = a.add(self.a_map(pr, qr, self.b_map(r, p, s)), self.b_map(qr, pr, self.b_map(r, q, s)));
                        if self.b_map(r, pq, s) != split {
                            return violation(MODULE_B_SPLIT, vec![p, q, r, s]);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub const FACTOR_SET_IDENTITY: &str =
    "μ(x*y,z) + a_{x*y,z}(μ(x,y)) = a_{x*z,y*z}(μ(x,z)) + μ(x*z,y*z) + b_{y*z,x*z}(μ(y,z))";
pub const FACTOR_SET_DIAGONAL: &str = "μ(x,x) = 0";

/// `μ: X × X → A` for a homogeneous module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    module: HomogeneousQuandleModule,
    /// `mu[x·n + y]`.
    mu: Vec<usize>,
}

impl FactorSet {
    pub fn new(module: HomogeneousQuandleModule, mu: Vec<usize>) -> Result<Self> {
        let n = module.base().size();
        if mu.len() != n * n || mu.iter().any(|&v| v >= module.coefficients().order()) {
            return Err(Error::ShapeMismatch("factor set needs |X|² elements of A".into()));
        }
        let fs = FactorSet { module, mu };
        fs.validate()?;
        Ok(fs)
    }

    pub fn from_fn(module: HomogeneousQuandleModule, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = module.base().size();
        Self::new(module, (0..n * n).map(|i| f(i / n, i % n)).collect())
    }

    pub(crate) fn from_fn_unchecked(module: HomogeneousQuandleModule, f: impl Fn(usize, usize) -> usize) -> Self {
        let n = module.base().size();
        FactorSet { mu: (0..n * n).map(|i| f(i / n, i % n)).collect(), module }
    }

    pub fn zero(module: HomogeneousQuandleModule) -> Self {
        let n = module.base().size();
        FactorSet { mu: vec![0; n * n], module }
    }

    /// A quandle 2-cocycle read as a factor set for the trivial module.
    pub fn from_cochain(base: &FiniteQuandle, coeffs: &FiniteAbelianCoefficients, alpha: &QuandleCochain) -> Result<Self> {
        Self::from_fn(HomogeneousQuandleModule::trivial(base, coeffs), |x, y| alpha.pair(x, y))
    }

    pub fn module(&self) -> &HomogeneousQuandleModule {
        &self.module
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.mu[x * self.module.base().size() + y]
    }

    pub fn values(&self) -> &[usize] {
        &self.mu
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.module;
        let (x, a) = (m.base(), m.coefficients());
        let n = x.size();
        for p in 0..n {
            if self.get(p, p) != 0 {
                return Err(Error::CocycleViolation { condition: FACTOR_SET_DIAGONAL, witness: vec![p] });
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let (pq, pr, qr) = (x.op(p, q), x.op(p, r), x.op(q, r));
                    let lhs = a.add(self.get(pq, r), m.a_map(pq, r, self.get(p, q)));
                    let rhs = a.add(
                        a.add(m.a_map(pr, qr, self.get(p, r)), self.get(pr, qr)),
                        m.b_map(qr, pr, self.get(q, r)),
                    );
                    if lhs != rhs {
                        return Err(Error::CocycleViolation { condition: FACTOR_SET_IDENTITY, witness: vec![p, q, r] });
                    }
                }
            }
        }
        Ok(())
    }

    /// `(x, s)*(y, t) = (x*y, a_{x,y}(s) + μ(x,y) + b_{y,x}(t))` on indices `x·|A| + s`,
    /// with the quandle axioms checked.
    pub fn build_extension(&self) -> Result<FiniteQuandle> {
        let m = &self.module;
        let (x, a) = (m.base(), m.coefficients());
        let k = a.order();
        FiniteQuandle::from_fn(x.size() * k, |p, q| {
            let (px, ps, qx, qs) = (p / k, p % k, q / k, q % k);
            let fiber = a.add(a.add(m.a_map(px, qx, ps), self.get(px, qx)), m.b_map(qx, px, qs));
            x.op(px, qx) * k + fiber
        })
    }

    /// `μ(x,y) + a_{x,y}(λ_x) + b_{y,x}(λ_y) − λ_{x*y}`.
    pub fn twist(&self, lambda: &[usize]) -> FactorSet {
        let m = &self.module;
        let (x, a) = (m.base(), m.coefficients());
        FactorSet::from_fn_unchecked(m.clone(), |p, q| {
            let s = a.add(a.add(self.get(p, q), m.a_map(p, q, lambda[p])), m.b_map(q, p, lambda[q]));
            a.sub(s, lambda[x.op(p, q)])
        })
    }

    pub fn add(&self, other: &FactorSet) -> FactorSet {
        let a = self.module.coefficients();
        FactorSet {
            module: self.module.clone(),
            mu: self.mu.iter().zip(&other.mu).map(|(&p, &q)| a.add(p, q)).collect(),
        }
    }
}

/// A `λ` with `μ₂ = twist(μ₁, λ)`, by search over `A^X`.
pub fn cohomologous_factor_sets(fs1: &FactorSet, fs2: &FactorSet, limits: &Limits) -> Result<Option<Vec<usize>>> {
    if fs1.module != fs2.module {
        return Err(Error::InvalidArgument("factor sets over different modules".into()));
    }
    let m = &fs1.module;
    let (x, a) = (m.base(), m.coefficients());
    let (n, k) = (x.size(), a.order());
    limits.check_search("maps X → A", crate::limits::saturating_pow(k as u128, n))?;
    // needed: a_{x,y}(λ_x) + b_{y,x}(λ_y) − λ_{x*y} = μ₂ − μ₁; the (x, x) entries
    // give a_{x,x}(λ_x) + b_{x,x}(λ_x) − λ_x = 0 automatically, so check pairs as
    // soon as every point they touch is assigned
    let diff: Vec<usize> = (0..n * n).map(|i| a.sub(fs2.mu[i], fs1.mu[i])).collect();
    let mut lambda = vec![0usize; n];
    let ok = |lambda: &[usize], upto: usize| {
        (0..=upto).all(|p| {
            (0..=upto).all(|q| {
                let pq = x.op(p, q);
                if pq > upto || (p != upto && q != upto && pq != upto) {
                    return true;
                }
                let got = a.sub(a.add(m.a_map(p, q, lambda[p]), m.b_map(q, p, lambda[q])), lambda[pq]);
                got == diff[p * n + q]
            })
        })
    };
    fn search(
        i: usize,
        n: usize,
        k: usize,
        lambda: &mut Vec<usize>,
        ok: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        if i == n {
            return true;
        }
        for v in 0..k {
            lambda[i] = v;
            if ok(lambda, i) && search(i + 1, n, k, lambda, ok) {
                return true;
            }
        }
        false
    }
    if n == 0 || search(0, n, k, &mut lambda, &ok) {
        Ok(Some(lambda))
    } else {
        Ok(None)
    }
}
