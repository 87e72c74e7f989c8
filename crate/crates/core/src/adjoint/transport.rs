use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{q_w, QuandleWord};
use crate::dynamical::DynamicalCocycle;
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use crate::quandle::{alexander_quandle, FiniteQuandle};
use crate::{Error, Result};

/// A short exact sequence `1 → A → E → G → 1` with a transversal `κ`.
///
/// Elements of `A` are numbered by their position in the sorted subset, so
/// the identity of `E` is element 0 of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupExtensionData {
    total: FiniteGroup,
    kernel: Vec<usize>,
    kernel_index: Vec<Option<usize>>,
    quotient: FiniteGroup,
    pi: Vec<usize>,
    kappa: Vec<usize>,
}

impl GroupExtensionData {
    /// Checks that `kernel` is normal in `total`, that `pi` is a surjective
    /// homomorphism onto `quotient` with kernel exactly `kernel`, and that
    /// `kappa` is a section with `κ(1) = 1`. Without `kappa`, each coset's
    /// least element is used.
    pub fn new(
        total: FiniteGroup,
        kernel: &[usize],
        quotient: FiniteGroup,
        pi: Vec<usize>,
        kappa: Option<Vec<usize>>,
    ) -> Result<Self> {
        let (kernel, kernel_index) = normal_subgroup(&total, kernel)?;
        total.check_homomorphism(&quotient, &pi).map_err(|e| match e {
            Error::NotAHomomorphism { witness, .. } => Error::NotAHomomorphism { context: "projection", witness },
            other => other,
        })?;
        let mut least = vec![None; quotient.size()];
        for (e, &x) in pi.iter().enumerate() {
            if least[x].is_none() {
                least[x] = Some(e);
            }
        }
        if let Some(x) = least.iter().position(Option::is_none) {
            return Err(Error::InvalidArgument(format!("projection misses quotient element {x}")));
        }
        if let Some(e) = (0..total.size()).find(|&e| (pi[e] == 0) != kernel_index[e].is_some()) {
            return Err(Error::InvalidArgument(format!(
                "projection kernel differs from the subgroup at element {e}"
            )));
        }
        let kappa = match kappa {
            None => least.into_iter().map(Option::unwrap).collect(),
            Some(k) => {
                if k.len() != quotient.size() || k.iter().any(|&e| e >= total.size()) {
                    return Err(Error::ShapeMismatch("transversal has the wrong shape".into()));
                }
                if k[0] != 0 {
                    return Err(Error::InvalidArgument("transversal must send the identity to the identity".into()));
                }
                if let Some(x) = (0..k.len()).find(|&x| pi[k[x]] != x) {
                    return Err(Error::InvalidArgument(format!("transversal is not a section at {x}")));
                }
                k
            }
        };
        Ok(GroupExtensionData { total, kernel, kernel_index, quotient, pi, kappa })
    }

    /// `E → E/A`, with cosets numbered by their least elements (so `A` itself is 0).
    pub fn from_normal_subgroup(total: FiniteGroup, kernel: &[usize], kappa: Option<Vec<usize>>) -> Result<Self> {
        let (kernel, _) = normal_subgroup(&total, kernel)?;
        let mut pi = vec![usize::MAX; total.size()];
        let mut reps = Vec::new();
        for e in 0..total.size() {
            if pi[e] != usize::MAX {
                continue;
            }
            for &a in &kernel {
                pi[total.mul(e, a)] = reps.len();
            }
            reps.push(e);
        }
        let quotient = FiniteGroup::from_fn_unchecked(reps.len(), |x, y| pi[total.mul(reps[x], reps[y])]);
        Self::new(total, &kernel, quotient, pi, kappa)
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    /// The subgroup, sorted.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn kappa(&self) -> &[usize] {
        &self.kappa
    }

    /// `A` as a group in its own numbering.
    pub fn kernel_group(&self) -> FiniteGroup {
        FiniteGroup::from_fn_unchecked(self.kernel.len(), |s, t| {
            self.kernel_index[self.total.mul(self.kernel[s], self.kernel[t])].expect("subgroup is closed")
        })
    }

    /// Position in `A` of `e ∈ E`, if it lies there.
    pub fn kernel_position(&self, e: usize) -> Option<usize> {
        self.kernel_index[e]
    }

    /// `κ(x)·s`.
    pub fn lift(&self, x: usize, s: usize) -> usize {
        self.total.mul(self.kappa[x], self.kernel[s])
    }

    /// `γ_x(e) = κ(x)⁻¹e`, defined when `π(e) = x`.
    pub fn gamma(&self, x: usize, e: usize) -> Option<usize> {
        self.kernel_index[self.total.mul(self.total.inv(self.kappa[x]), e)]
    }
}

fn normal_subgroup(total: &FiniteGroup, subset: &[usize]) -> Result<(Vec<usize>, Vec<Option<usize>>)> {
    let mut kernel = subset.to_vec();
    kernel.sort_unstable();
    kernel.dedup();
    if kernel.iter().any(|&e| e >= total.size()) {
        return Err(Error::ShapeMismatch("subgroup element out of range".into()));
    }
    if kernel.first() != Some(&0) {
        return Err(Error::NotNormalSubgroup("does not contain the identity".into()));
    }
    let mut index = vec![None; total.size()];
    for (i, &e) in kernel.iter().enumerate() {
        index[e] = Some(i);
    }
    for &a in &kernel {
        for &b in &kernel {
            if index[total.mul(a, b)].is_none() {
                return Err(Error::NotNormalSubgroup(format!("{a}·{b} leaves the subset")));
            }
        }
    }
    for g in 0..total.size() {
        for &a in &kernel {
            if index[total.conjugate(a, g)].is_none() {
                return Err(Error::NotNormalSubgroup(format!("conjugating {a} by {g} leaves the subset")));
            }
        }
    }
    Ok((kernel, index))
}

/// A group extension carried over to a quandle extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transport {
    pub cocycle: DynamicalCocycle,
    /// `μ(x, y)` at `x·|G| + y`, as a position in `A`.
    pub mu: Vec<usize>,
    /// `(x, s) ↦ κ(x)s`, at index `x·|A| + s`.
    pub witness: Vec<usize>,
    pub witness_is_isomorphism: bool,
    /// The fiber over the identity is the same quandle built directly on `A`.
    pub identity_fiber_matches: bool,
    /// Agreement with the closed-form expression in `μ`, where one is known.
    pub closed_form_matches: Option<bool>,
    /// The automorphisms induced on `G` and on `A` (Alexander case only).
    pub induced: Option<(Permutation, Permutation)>,
}

impl Transport {
    pub fn passed(&self) -> bool {
        self.witness_is_isomorphism && self.identity_fiber_matches && self.closed_form_matches != Some(false)
    }

    pub fn mu(&self, x: usize, y: usize) -> usize {
        self.mu[x * self.cocycle.base().size() + y]
    }

    pub fn mu_is_trivial(&self) -> bool {
        self.mu.iter().all(|&m| m == 0)
    }
}

/// `Q_w(E) ≅ Q_w(G) ×_α Q_w(A)` with
/// `α_{x,y}(s,t) = γ_{x*y}(κ(x)s * κ(y)t)`.
pub fn extension_transport_qw(ext: &GroupExtensionData, word: QuandleWord) -> Result<Transport> {
    let base = q_w(&ext.quotient, word);
    let total_q = q_w(&ext.total, word);
    let fiber_q = q_w(&ext.kernel_group(), word);
    let e = &ext.total;
    let closed = match word {
        // κ(y)t (κ(x)s)⁻¹ κ(y)t = κ(x*y) μ · g(ts⁻¹)g⁻¹ · t with g = κ(y)⁻¹κ(x)
        QuandleWord::Core => Some(move |x: usize, y: usize, s: usize, t: usize, mu: usize| {
            let g = e.mul(e.inv(ext.kappa[y]), ext.kappa[x]);
            let ts = e.mul(ext.kernel[t], e.inv(ext.kernel[s]));
            let inner = e.mul(e.mul(g, ts), e.inv(g));
            e.mul(e.mul(ext.kernel[mu], inner), ext.kernel[t])
        }),
        QuandleWord::Conj(_) => None,
    };
    transport(ext, base, total_q, fiber_q, closed, None)
}

/// `Alex_f(E) ≅ Alex_{f₁}(G) ×_α Alex_{f₂}(A)` for `f ∈ Aut(E)` with `f(A) = A`.
pub fn extension_transport_alex(ext: &GroupExtensionData, f: &Permutation) -> Result<Transport> {
    let e = &ext.total;
    if f.len() != e.size() {
        return Err(Error::ShapeMismatch("automorphism degree differs from the group order".into()));
    }
    e.check_automorphism(f.images()).map_err(|err| match err {
        Error::NotAHomomorphism { witness, .. } => Error::NotAHomomorphism { context: "Alexander map f", witness },
        other => other,
    })?;
    if let Some(&a) = ext.kernel.iter().find(|&&a| ext.kernel_index[f.apply(a)].is_none()) {
        return Err(Error::SubgroupNotPreserved { element: a });
    }
    let f1 = Permutation::new((0..ext.quotient.size()).map(|x| ext.pi[f.apply(ext.kappa[x])]).collect())?;
    let f2 = Permutation::new(
        ext.kernel.iter().map(|&a| ext.kernel_index[f.apply(a)].expect("f preserves A")).collect(),
    )?;
    let base = alexander_quandle(&ext.quotient, &f1)?;
    let total_q = alexander_quandle(e, f)?;
    let fiber_q = alexander_quandle(&ext.kernel_group(), &f2)?;
    // f(κ(x)s(κ(y)t)⁻¹)κ(y)t = κ(x*y) μ · g f(st⁻¹) g⁻¹ · t with g = κ(y)⁻¹f(κ(y))
    let closed = move |_x: usize, y: usize, s: usize, t: usize, mu: usize| {
        let g = e.mul(e.inv(ext.kappa[y]), f.apply(ext.kappa[y]));
        let st = f.apply(e.mul(ext.kernel[s], e.inv(ext.kernel[t])));
        let inner = e.mul(e.mul(g, st), e.inv(g));
        e.mul(e.mul(ext.kernel[mu], inner), ext.kernel[t])
    };
    transport(ext, base, total_q, fiber_q, Some(closed), Some((f1, f2)))
}

fn transport(
    ext: &GroupExtensionData,
    base: FiniteQuandle,
    total_q: FiniteQuandle,
    fiber_q: FiniteQuandle,
    closed: Option<impl Fn(usize, usize, usize, usize, usize) -> usize>,
    induced: Option<(Permutation, Permutation)>,
) -> Result<Transport> {
    let n = base.size();
    let m = ext.kernel.len();
    let mut alpha = Vec::with_capacity(n * n * m * m);
    for x in 0..n {
        for y in 0..n {
            let xy = base.op(x, y);
            for s in 0..m {
                for t in 0..m {
                    let prod = total_q.op(ext.lift(x, s), ext.lift(y, t));
                    let v = ext.gamma(xy, prod).ok_or(Error::NotAHomomorphism {
                        context: "projection on the quandles",
                        witness: vec![x, y, s, t],
                    })?;
                    alpha.push(v);
                }
            }
        }
    }
    let cocycle = DynamicalCocycle::new(base, m, alpha)?;
    // κ(x)·1 = κ(x), so μ(x,y) = α_{x,y}(1,1)
    let mu: Vec<usize> = (0..n * n).map(|k| cocycle.get(k / n, k % n, 0, 0)).collect();
    let witness: Vec<usize> = (0..n * m).map(|k| ext.lift(k / m, k % m)).collect();
    let built = cocycle.build_extension()?;
    let witness_is_isomorphism = built.is_isomorphism(&total_q, &witness);
    let identity_fiber_matches = cocycle.fiber_quandle(0)? == fiber_q;
    let closed_form_matches = closed.map(|c| {
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..m).all(|s| {
                    (0..m).all(|t| {
                        let e = c(x, y, s, t, mu[x * n + y]);
                        ext.kernel_index[e] == Some(cocycle.get(x, y, s, t))
                    })
                })
            })
        })
    });
    Ok(Transport {
        cocycle,
        mu,
        witness,
        witness_is_isomorphism,
        identity_fiber_matches,
        closed_form_matches,
        induced,
    })
}
