//! Dynamical 2-cocycles `α_{x,y}: S × S → S` over a quandle, the extensions
//! they define, and the two-map generalization in which the base coordinate
//! may also depend on the fibers.
//!
//! An element `(x, s)` of an extension `X ×_α S` has index `x·|S| + s`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::perm::Permutation;
use crate::quandle::{inner_orbits, FiniteQuandle};
use crate::{Error, Result};

mod wells;

pub use wells::{
    aut_x0_s, cohomologous_dynamical, kernel_twists, phi_restrict, splitting_section, stabilizer_of_class,
    verify_wells_dynamical, ExtensionAutomorphism, SplittingReport, WellsDynamicalReport,
};

const DIAGONAL: &str = "diagonal condition α_{x,x}(s,s) = s";
const BIJECTIVE: &str = "bijectivity of s ↦ α_{x,y}(s,t)";
const COCYCLE: &str = "dynamical cocycle identity";

/// `alpha[x][y][s][t]`, stored flat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynamicalCocycle {
    base: FiniteQuandle,
    fiber: usize,
    alpha: Vec<usize>,
}

impl DynamicalCocycle {
    /// Validates `alpha`, laid out as `((x·n + y)·m + s)·m + t`.
    pub fn new(base: FiniteQuandle, fiber: usize, alpha: Vec<usize>) -> Result<Self> {
        validate_dynamical(&base, fiber, &alpha)?;
        Ok(DynamicalCocycle { base, fiber, alpha })
    }

    pub fn from_nested(base: FiniteQuandle, fiber: usize, nested: &[Vec<Vec<Vec<usize>>>]) -> Result<Self> {
        let n = base.size();
        let bad = || Error::ShapeMismatch(format!("alpha must be {n}×{n}×{fiber}×{fiber}"));
        if nested.len() != n {
            return Err(bad());
        }
        let mut alpha = Vec::with_capacity(n * n * fiber * fiber);
        for row in nested {
            if row.len() != n {
                return Err(bad());
            }
            for block in row {
                if block.len() != fiber {
                    return Err(bad());
                }
                for line in block {
                    if line.len() != fiber {
                        return Err(bad());
                    }
                    alpha.extend_from_slice(line);
                }
            }
        }
        Self::new(base, fiber, alpha)
    }

    pub fn from_fn(base: FiniteQuandle, fiber: usize, f: impl Fn(usize, usize, usize, usize) -> usize) -> Result<Self> {
        let alpha = tabulate(base.size(), fiber, f);
        Self::new(base, fiber, alpha)
    }

    pub(crate) fn from_fn_unchecked(
        base: FiniteQuandle,
        fiber: usize,
        f: impl Fn(usize, usize, usize, usize) -> usize,
    ) -> Self {
        let alpha = tabulate(base.size(), fiber, f);
        DynamicalCocycle { base, fiber, alpha }
    }

    /// `α_{x,y}(s,t) = s`.
    pub fn trivial(base: &FiniteQuandle, fiber: usize) -> Result<Self> {
        if fiber == 0 {
            return Err(Error::InvalidArgument("fiber must be nonempty".into()));
        }
        Ok(Self::from_fn_unchecked(base.clone(), fiber, |_, _, s, _| s))
    }

    /// `α_{x,y}(s,t) = s * t` for a quandle structure on the fiber.
    pub fn from_fiber_quandle(base: &FiniteQuandle, fiber: &FiniteQuandle) -> Self {
        Self::from_fn_unchecked(base.clone(), fiber.size(), |_, _, s, t| fiber.op(s, t))
    }

    pub fn base(&self) -> &FiniteQuandle {
        &self.base
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, s: usize, t: usize) -> usize {
        let n = self.base.size();
        let m = self.fiber;
        self.alpha[((x * n + y) * m + s) * m + t]
    }

    pub fn table(&self) -> &[usize] {
        &self.alpha
    }

    pub fn nested(&self) -> Vec<Vec<Vec<Vec<usize>>>> {
        let n = self.base.size();
        let m = self.fiber;
        (0..n)
            .map(|x| (0..n).map(|y| (0..m).map(|s| (0..m).map(|t| self.get(x, y, s, t)).collect()).collect()).collect())
            .collect()
    }

    /// `X ×_α S` with `(x,s) * (y,t) = (x*y, α_{x,y}(s,t))`, re-checked against the quandle axioms.
    pub fn build_extension(&self) -> Result<FiniteQuandle> {
        let m = self.fiber;
        FiniteQuandle::from_fn(self.base.size() * m, |a, b| {
            let (x, s, y, t) = (a / m, a % m, b / m, b % m);
            self.base.op(x, y) * m + self.get(x, y, s, t)
        })
    }

    /// `(S, *_x)` with `s *_x t = α_{x,x}(s,t)`.
    pub fn fiber_quandle(&self, x: usize) -> Result<FiniteQuandle> {
        FiniteQuandle::from_fn(self.fiber, |s, t| self.get(x, x, s, t))
    }

    /// The bijection `s ↦ α_{x,y}(s,t)`.
    pub fn left_map(&self, x: usize, y: usize, t: usize) -> Permutation {
        Permutation::from_vec_unchecked((0..self.fiber).map(|s| self.get(x, y, s, t)).collect())
    }
}

fn tabulate(n: usize, m: usize, f: impl Fn(usize, usize, usize, usize) -> usize) -> Vec<usize> {
    let mut alpha = Vec::with_capacity(n * n * m * m);
    for x in 0..n {
        for y in 0..n {
            for s in 0..m {
                for t in 0..m {
                    alpha.push(f(x, y, s, t));
                }
            }
        }
    }
    alpha
}

/// Checks the diagonal condition, fiberwise bijectivity and the cocycle identity
/// exhaustively. The cocycle witness is `(x, y, z, s, t, u)`.
pub fn validate_dynamical(base: &FiniteQuandle, fiber: usize, alpha: &[usize]) -> Result<()> {
    let n = base.size();
    let m = fiber;
    if m == 0 {
        return Err(Error::ShapeMismatch("fiber must be nonempty".into()));
    }
    if alpha.len() != n * n * m * m {
        return Err(Error::ShapeMismatch(format!("alpha has {} entries, expected {}", alpha.len(), n * n * m * m)));
    }
    if alpha.iter().any(|&v| v >= m) {
        return Err(Error::ShapeMismatch("alpha value outside the fiber".into()));
    }
    let a = |x: usize, y: usize, s: usize, t: usize| alpha[((x * n + y) * m + s) * m + t];
    for x in 0..n {
        for s in 0..m {
            if a(x, x, s, s) != s {
                return Err(Error::CocycleViolation { condition: DIAGONAL, witness: vec![x, x, s] });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for t in 0..m {
                let mut seen = vec![false; m];
                for s in 0..m {
                    let v = a(x, y, s, t);
                    if seen[v] {
                        return Err(Error::CocycleViolation { condition: BIJECTIVE, witness: vec![x, y, s, t] });
                    }
                    seen[v] = true;
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = base.op(x, y);
            for z in 0..n {
                let (xz, yz) = (base.op(x, z), base.op(y, z));
                for s in 0..m {
                    for t in 0..m {
                        let st = a(x, y, s, t);
                        for u in 0..m {
                            if a(xy, z, st, u) != a(xz, yz, a(x, z, s, u), a(y, z, t, u)) {
                                return Err(Error::CocycleViolation {
                                    condition: COCYCLE,
                                    witness: vec![x, y, z, s, t, u],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `^{(φ,θ)}α_{x,y}(s,t) = θ(α_{φ⁻¹x, φ⁻¹y}(θ⁻¹s, θ⁻¹t))`, re-validated.
pub fn act_on_dynamical(phi: &Permutation, theta: &Permutation, alpha: &DynamicalCocycle) -> Result<DynamicalCocycle> {
    let base = alpha.base();
    if phi.len() != base.size() || theta.len() != alpha.fiber_size() {
        return Err(Error::ShapeMismatch("acting pair has the wrong degree".into()));
    }
    base.check_homomorphism(base, phi.images()).map_err(|e| match e {
        Error::NotAHomomorphism { witness, .. } => Error::NotAHomomorphism { context: "phi ∈ Aut(X)", witness },
        other => other,
    })?;
    let (pi, ti) = (phi.inverse(), theta.inverse());
    let out = DynamicalCocycle::from_fn_unchecked(base.clone(), alpha.fiber_size(), |x, y, s, t| {
        theta.apply(alpha.get(pi.apply(x), pi.apply(y), ti.apply(s), ti.apply(t)))
    });
    validate_dynamical(out.base(), out.fiber_size(), out.table())?;
    Ok(out)
}

/// `β_{x,y}(s,t) = λ_{x*y}(α_{x,y}(λ_x⁻¹ s, λ_y⁻¹ t))`.
pub fn twist_dynamical(alpha: &DynamicalCocycle, lambda: &[Permutation]) -> Result<DynamicalCocycle> {
    let base = alpha.base();
    if lambda.len() != base.size() || lambda.iter().any(|l| l.len() != alpha.fiber_size()) {
        return Err(Error::ShapeMismatch("λ must assign a fiber permutation to every base point".into()));
    }
    let inv: Vec<Permutation> = lambda.iter().map(Permutation::inverse).collect();
    let out = DynamicalCocycle::from_fn_unchecked(base.clone(), alpha.fiber_size(), |x, y, s, t| {
        lambda[base.op(x, y)].apply(alpha.get(x, y, inv[x].apply(s), inv[y].apply(t)))
    });
    validate_dynamical(out.base(), out.fiber_size(), out.table())?;
    Ok(out)
}

/// Two maps `α: X×X → Map(S×S, S)` and `β: S×S → Map(X×X, X)` on raw sets.
/// `beta` is laid out as `((s·|S| + t)·|X| + x)·|X| + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedPair {
    x_size: usize,
    s_size: usize,
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

const PAIR_DIAGONAL: &str = "diagonal condition β_{s,s}(x,x) = x, α_{x,x}(s,s) = s";
const PAIR_BIJECTIVE: &str = "bijectivity of (x,s) ↦ (β_{s,t}(x,y), α_{x,y}(s,t))";
const PAIR_BASE: &str = "base distributivity of β";
const PAIR_FIBER: &str = "fiber distributivity of α";

impl GeneralizedPair {
    pub fn new(x_size: usize, s_size: usize, alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        let (n, m) = (x_size, s_size);
        if n == 0 || m == 0 || alpha.len() != n * n * m * m || beta.len() != n * n * m * m {
            return Err(Error::ShapeMismatch("pair tables have the wrong size".into()));
        }
        if alpha.iter().any(|&v| v >= m) || beta.iter().any(|&v| v >= n) {
            return Err(Error::ShapeMismatch("pair table entry out of range".into()));
        }
        let p = GeneralizedPair { x_size, s_size, alpha, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn from_fns(
        x_size: usize,
        s_size: usize,
        alpha: impl Fn(usize, usize, usize, usize) -> usize,
        beta: impl Fn(usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let a = tabulate(x_size, s_size, alpha);
        let b = tabulate(s_size, x_size, beta);
        Self::new(x_size, s_size, a, b)
    }

    /// The pair with `β_{s,t}(x,y) = x * y`.
    pub fn from_dynamical(c: &DynamicalCocycle) -> Self {
        let base = c.base();
        GeneralizedPair {
            x_size: base.size(),
            s_size: c.fiber_size(),
            alpha: c.table().to_vec(),
            beta: tabulate(c.fiber_size(), base.size(), |_, _, x, y| base.op(x, y)),
        }
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn s_size(&self) -> usize {
        self.s_size
    }

    #[inline]
    pub fn alpha(&self, x: usize, y: usize, s: usize, t: usize) -> usize {
        let (n, m) = (self.x_size, self.s_size);
        self.alpha[((x * n + y) * m + s) * m + t]
    }

    #[inline]
    pub fn beta(&self, s: usize, t: usize, x: usize, y: usize) -> usize {
        let (n, m) = (self.x_size, self.s_size);
        self.beta[((s * m + t) * n + x) * n + y]
    }

    fn op(&self, x: usize, s: usize, y: usize, t: usize) -> (usize, usize) {
        (self.beta(s, t, x, y), self.alpha(x, y, s, t))
    }

    /// Exhaustive check of the three conditions for the operation
    /// `(x,s) * (y,t) = (β_{s,t}(x,y), α_{x,y}(s,t))` to be a quandle.
    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.x_size, self.s_size);
        for x in 0..n {
            for s in 0..m {
                if self.beta(s, s, x, x) != x || self.alpha(x, x, s, s) != s {
                    return Err(Error::CocycleViolation { condition: PAIR_DIAGONAL, witness: vec![x, s] });
                }
            }
        }
        for y in 0..n {
            for t in 0..m {
                let mut seen = vec![false; n * m];
                for x in 0..n {
                    for s in 0..m {
                        let (bx, bs) = self.op(x, s, y, t);
                        if seen[bx * m + bs] {
                            return Err(Error::CocycleViolation { condition: PAIR_BIJECTIVE, witness: vec![x, s, y, t] });
                        }
                        seen[bx * m + bs] = true;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for s in 0..m {
                        for t in 0..m {
                            for u in 0..m {
                                let (lx, ls) = self.op(x, s, y, t);
                                let lhs = self.op(lx, ls, z, u);
                                let (ax, as_) = self.op(x, s, z, u);
                                let (bx, bs) = self.op(y, t, z, u);
                                let rhs = self.op(ax, as_, bx, bs);
                                if lhs.0 != rhs.0 {
                                    return Err(Error::CocycleViolation {
                                        condition: PAIR_BASE,
                                        witness: vec![x, y, z, s, t, u],
                                    });
                                }
                                if lhs.1 != rhs.1 {
                                    return Err(Error::CocycleViolation {
                                        condition: PAIR_FIBER,
                                        witness: vec![x, y, z, s, t, u],
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The quandle on `X × S`, re-checked against the axioms.
    pub fn build(&self) -> Result<FiniteQuandle> {
        let m = self.s_size;
        FiniteQuandle::from_fn(self.x_size * m, |a, b| {
            let (x, s) = self.op(a / m, a % m, b / m, b % m);
            x * m + s
        })
    }
}

/// Fiber isomorphisms along one Inn-orbit of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberOrbit {
    pub root: usize,
    /// `(x, f)` with `f: (S, *_root) → (S, *_x)` an isomorphism.
    pub maps: Vec<(usize, Permutation)>,
    /// Every `s ↦ α_{x,z}(s,u)` tested as a map `(S, *_x) → (S, *_{x*z})`.
    pub edge_witnesses_checked: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberIsomorphismReport {
    pub connected: bool,
    pub orbits: Vec<FiberOrbit>,
}

impl FiberIsomorphismReport {
    pub fn passed(&self) -> bool {
        self.orbits.iter().all(|o| o.verified)
    }
}

fn is_quandle_iso(src: &FiniteQuandle, dst: &FiniteQuandle, f: &Permutation) -> bool {
    src.is_isomorphism(dst, f.images())
}

/// Connects the fiber quandles along each Inn-orbit by the maps `s ↦ α_{x,z}(s,u)`.
pub fn fibers_isomorphic_report(alpha: &DynamicalCocycle) -> Result<FiberIsomorphismReport> {
    let base = alpha.base();
    let n = base.size();
    let m = alpha.fiber_size();
    let fibers: Vec<FiniteQuandle> = (0..n).map(|x| alpha.fiber_quandle(x)).collect::<Result<_>>()?;
    let orbits = inner_orbits(base);
    let connected = orbits.len() == 1;
    let mut out = Vec::new();
    for orbit in orbits {
        let root = orbit[0];
        let mut to: Vec<Option<Permutation>> = vec![None; n];
        to[root] = Some(Permutation::identity(m));
        let mut queue = vec![root];
        let mut verified = true;
        let mut edges = 0;
        while let Some(x) = queue.pop() {
            for z in 0..n {
                let y = base.op(x, z);
                for u in 0..m {
                    edges += 1;
                    let w = alpha.left_map(x, z, u);
                    if !is_quandle_iso(&fibers[x], &fibers[y], &w) {
                        verified = false;
                    }
                    if u == 0 && to[y].is_none() {
                        let f = w.compose(to[x].as_ref().expect("visited"));
                        to[y] = Some(f);
                        queue.push(y);
                    }
                }
            }
        }
        let mut maps = Vec::new();
        for &x in &orbit {
            match &to[x] {
                Some(f) => {
                    if !is_quandle_iso(&fibers[root], &fibers[x], f) {
                        verified = false;
                    }
                    maps.push((x, f.clone()));
                }
                None => verified = false,
            }
        }
        out.push(FiberOrbit { root, maps, edge_witnesses_checked: edges, verified });
    }
    Ok(FiberIsomorphismReport { connected, orbits: out })
}
