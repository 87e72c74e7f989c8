//! Fiber-preserving automorphisms of `X ×_α S`, their restriction to
//! `Aut^{x0}(X) × Σ_S`, and the counting form of the exact sequence.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{act_on_dynamical, DynamicalCocycle};
use crate::limits::{factorial, saturating_pow};
use crate::perm::{all_permutations, Permutation};
use crate::quandle::{automorphism_group, stabilizer_aut, FiniteQuandle};
use crate::{Error, Limits, Result};

/// `ψ(x, s) = (φ(x), τ_x(s))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtensionAutomorphism {
    pub phi: Permutation,
    pub tau: Vec<Permutation>,
}

impl ExtensionAutomorphism {
    /// Reads a permutation of `X × S` as `(φ, τ)` if it maps fibers to fibers.
    pub fn from_extension_permutation(p: &Permutation, base: usize, fiber: usize) -> Option<Self> {
        if p.len() != base * fiber {
            return None;
        }
        let mut phi = vec![0; base];
        let mut tau = Vec::with_capacity(base);
        for x in 0..base {
            let image_base = p.apply(x * fiber) / fiber;
            let mut t = Vec::with_capacity(fiber);
            for s in 0..fiber {
                let v = p.apply(x * fiber + s);
                if v / fiber != image_base {
                    return None;
                }
                t.push(v % fiber);
            }
            phi[x] = image_base;
            tau.push(Permutation::new(t).ok()?);
        }
        Some(ExtensionAutomorphism { phi: Permutation::new(phi).ok()?, tau })
    }

    pub fn to_permutation(&self) -> Permutation {
        let m = self.tau.first().map_or(0, Permutation::len);
        let images = (0..self.phi.len())
            .flat_map(|x| (0..m).map(move |s| (x, s)))
            .map(|(x, s)| self.phi.apply(x) * m + self.tau[x].apply(s))
            .collect();
        Permutation::from_vec_unchecked(images)
    }

    /// `ψψ′(x,s) = (φφ′(x), τ_{φ′(x)} τ′_x(s))`.
    pub fn compose(&self, other: &ExtensionAutomorphism) -> ExtensionAutomorphism {
        let tau = (0..self.phi.len()).map(|x| self.tau[other.phi.apply(x)].compose(&other.tau[x])).collect();
        ExtensionAutomorphism { phi: self.phi.compose(&other.phi), tau }
    }

    pub fn is_automorphism_of(&self, e: &FiniteQuandle) -> bool {
        let p = self.to_permutation();
        e.is_isomorphism(e, p.images())
    }
}

/// `Aut^{x0}_S(E)`: automorphisms of `E = X ×_α S` of fibered shape with `φ(x0) = x0`.
pub fn aut_x0_s(alpha: &DynamicalCocycle, x0: usize, limits: &Limits) -> Result<Vec<ExtensionAutomorphism>> {
    let (n, m) = (alpha.base().size(), alpha.fiber_size());
    if x0 >= n {
        return Err(Error::InvalidArgument(alloc::format!("base point {x0} out of range")));
    }
    let e = alpha.build_extension()?;
    let auts = automorphism_group(&e, limits)?;
    Ok(auts
        .iter()
        .filter_map(|p| ExtensionAutomorphism::from_extension_permutation(p, n, m))
        .filter(|psi| psi.phi.apply(x0) == x0)
        .collect())
}

/// `Φ(ψ) = (φ, τ_{x0})`.
pub fn phi_restrict(psi: &ExtensionAutomorphism, x0: usize) -> (Permutation, Permutation) {
    (psi.phi.clone(), psi.tau[x0].clone())
}

/// All `λ: X → Σ_S` with `β_{x,y}(s,t) = λ_{x*y}(α_{x,y}(λ_x⁻¹ s, λ_y⁻¹ t))`,
/// optionally with `λ_{pin} = id`.
struct TwistSearch<'a> {
    alpha: &'a DynamicalCocycle,
    beta: &'a DynamicalCocycle,
    order: Vec<usize>,
    position: Vec<usize>,
    candidates: Vec<Permutation>,
    pinned: Option<usize>,
    first_only: bool,
    found: Vec<Vec<Permutation>>,
}

impl TwistSearch<'_> {
    /// Checks every pair `(x, y)` whose three points `x, y, x*y` are assigned
    /// and whose latest point is at position `k`.
    fn consistent(&self, lambda: &[Option<Permutation>], k: usize) -> bool {
        let base = self.alpha.base();
        let m = self.alpha.fiber_size();
        let n = base.size();
        for x in 0..n {
            for y in 0..n {
                let xy = base.op(x, y);
                let latest = self.position[x].max(self.position[y]).max(self.position[xy]);
                if latest != k {
                    continue;
                }
                let (lx, ly, lxy) = (lambda[x].as_ref(), lambda[y].as_ref(), lambda[xy].as_ref());
                let (Some(lx), Some(ly), Some(lxy)) = (lx, ly, lxy) else { continue };
                for s in 0..m {
                    for t in 0..m {
                        if self.beta.get(x, y, lx.apply(s), ly.apply(t)) != lxy.apply(self.alpha.get(x, y, s, t)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, lambda: &mut Vec<Option<Permutation>>, k: usize) {
        if k == self.order.len() {
            self.found.push(lambda.iter().map(|l| l.clone().expect("assigned")).collect());
            return;
        }
        let x = self.order[k];
        let m = self.alpha.fiber_size();
        let choices: Vec<Permutation> =
            if self.pinned == Some(x) { vec![Permutation::identity(m)] } else { self.candidates.clone() };
        for c in choices {
            lambda[x] = Some(c);
            if self.consistent(lambda, k) {
                self.run(lambda, k + 1);
                if self.first_only && !self.found.is_empty() {
                    lambda[x] = None;
                    return;
                }
            }
        }
        lambda[x] = None;
    }
}

fn twists(
    alpha: &DynamicalCocycle,
    beta: &DynamicalCocycle,
    pinned: Option<usize>,
    first_only: bool,
    limits: &Limits,
) -> Result<Vec<Vec<Permutation>>> {
    let base = alpha.base();
    let n = base.size();
    let m = alpha.fiber_size();
    if beta.base() != base || beta.fiber_size() != m {
        return Err(Error::ShapeMismatch("cocycles live over different bases or fibers".into()));
    }
    limits.check_search("twist search space (|S|!)^|X|", saturating_pow(factorial(m), n))?;
    // pinned point first, then breadth-first along x ↦ x*y so constraints close early
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let starts = pinned.into_iter().chain(0..n);
    for start in starts {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut k = order.len();
        order.push(start);
        while k < order.len() {
            let x = order[k];
            for y in 0..n {
                for z in [base.op(x, y), base.op(y, x)] {
                    if !seen[z] {
                        seen[z] = true;
                        order.push(z);
                    }
                }
            }
            k += 1;
        }
    }
    let mut position = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        position[x] = i;
    }
    let mut search = TwistSearch {
        alpha,
        beta,
        order,
        position,
        candidates: all_permutations(m),
        pinned,
        first_only,
        found: Vec::new(),
    };
    search.run(&mut vec![None; n], 0);
    Ok(search.found)
}

/// A witness `λ` that `alpha` and `beta` are cohomologous, or `None`.
pub fn cohomologous_dynamical(
    alpha: &DynamicalCocycle,
    beta: &DynamicalCocycle,
    limits: &Limits,
) -> Result<Option<Vec<Permutation>>> {
    Ok(twists(alpha, beta, None, true, limits)?.into_iter().next())
}

/// `{λ : λ_{x0} = id, α = λ·α}`, which is isomorphic to `Ker Φ`.
pub fn kernel_twists(alpha: &DynamicalCocycle, x0: usize, limits: &Limits) -> Result<Vec<Vec<Permutation>>> {
    if x0 >= alpha.base().size() {
        return Err(Error::InvalidArgument(alloc::format!("base point {x0} out of range")));
    }
    twists(alpha, alpha, Some(x0), false, limits)
}

/// Pairs `(φ, θ)` with `φ ∈ Aut^{x0}(X)`, `θ` from `fiber_group`, and `^{(φ,θ)}[α] = [α]`.
pub fn stabilizer_of_class(
    alpha: &DynamicalCocycle,
    x0: usize,
    fiber_group: &[Permutation],
    limits: &Limits,
) -> Result<Vec<(Permutation, Permutation)>> {
    let mut out = Vec::new();
    for phi in stabilizer_aut(alpha.base(), x0, limits)? {
        for theta in fiber_group {
            let moved = act_on_dynamical(&phi, theta, alpha)?;
            if cohomologous_dynamical(alpha, &moved, limits)?.is_some() {
                out.push((phi.clone(), theta.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Result of checking `1 → Ker Φ → Aut^{x0}_S(E) → Aut^{x0}(X) × Σ_S → classes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellsDynamicalReport {
    pub x0: usize,
    pub group_order: usize,
    pub closed_under_composition: bool,
    pub restriction_is_homomorphism: bool,
    pub kernel_order: usize,
    pub kernel_twist_count: usize,
    /// `Ker Φ` read as `x ↦ τ_x⁻¹` equals the twist set.
    pub kernel_matches: bool,
    pub image_order: usize,
    pub stabilizer_order: usize,
    pub image_matches: bool,
    /// `|Aut^{x0}_S(E)| = |Ker Φ| · |Im Φ|`.
    pub order_identity: bool,
    /// The same comparison with `Σ_S` replaced by `Aut(S)` for a given fiber quandle:
    /// `(|Im Φ ∩ (Aut^{x0}(X) × Aut(S))|, |stabilizer in Aut^{x0}(X) × Aut(S)|)`.
    pub fiber_automorphism_variant: Option<(usize, usize)>,
}

impl WellsDynamicalReport {
    pub fn passed(&self) -> bool {
        self.closed_under_composition
            && self.restriction_is_homomorphism
            && self.kernel_matches
            && self.image_matches
            && self.order_identity
            && self.fiber_automorphism_variant.map_or(true, |(a, b)| a == b)
    }
}

/// Checks kernel, image and order identity of the restriction map `Φ`.
/// With `fiber_quandle`, also compares image and stabilizer inside `Aut^{x0}(X) × Aut(S)`.
pub fn verify_wells_dynamical(
    alpha: &DynamicalCocycle,
    x0: usize,
    fiber_quandle: Option<&FiniteQuandle>,
    limits: &Limits,
) -> Result<WellsDynamicalReport> {
    let m = alpha.fiber_size();
    let group = aut_x0_s(alpha, x0, limits)?;
    let size = group.len();
    limits.check_search("pairs of fiber-preserving automorphisms", (size as u128) * (size as u128))?;

    let members: BTreeSet<ExtensionAutomorphism> = group.iter().cloned().collect();
    let mut closed = true;
    let mut hom = true;
    for a in &group {
        for b in &group {
            let ab = a.compose(b);
            if !members.contains(&ab) {
                closed = false;
            }
            let (pa, ta) = phi_restrict(a, x0);
            let (pb, tb) = phi_restrict(b, x0);
            if phi_restrict(&ab, x0) != (pa.compose(&pb), ta.compose(&tb)) {
                hom = false;
            }
        }
    }

    let id_x = Permutation::identity(alpha.base().size());
    let id_s = Permutation::identity(m);
    let kernel: BTreeSet<Vec<Permutation>> = group
        .iter()
        .filter(|psi| phi_restrict(psi, x0) == (id_x.clone(), id_s.clone()))
        .map(|psi| psi.tau.iter().map(Permutation::inverse).collect())
        .collect();
    let twists: BTreeSet<Vec<Permutation>> = kernel_twists(alpha, x0, limits)?.into_iter().collect();

    let image: BTreeSet<(Permutation, Permutation)> = group.iter().map(|psi| phi_restrict(psi, x0)).collect();
    let stabilizer: BTreeSet<(Permutation, Permutation)> =
        stabilizer_of_class(alpha, x0, &all_permutations(m), limits)?.into_iter().collect();

    let variant = match fiber_quandle {
        Some(s) => {
            let auts: BTreeSet<Permutation> = automorphism_group(s, limits)?.into_iter().collect();
            let im = image.iter().filter(|(_, t)| auts.contains(t)).count();
            let st = stabilizer.iter().filter(|(_, t)| auts.contains(t)).count();
            Some((im, st))
        }
        None => None,
    };

    Ok(WellsDynamicalReport {
        x0,
        group_order: size,
        closed_under_composition: closed,
        restriction_is_homomorphism: hom,
        kernel_order: kernel.len(),
        kernel_twist_count: twists.len(),
        kernel_matches: kernel == twists,
        image_order: image.len(),
        stabilizer_order: stabilizer.len(),
        image_matches: image == stabilizer,
        order_identity: size == kernel.len() * image.len(),
        fiber_automorphism_variant: variant,
    })
}

/// The section `ζ(φ, θ)(x, s) = (φ(x), θ(s))` for the product cocycle `α_{x,y}(s,t) = s * t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingReport {
    pub pairs: usize,
    /// `^{(φ,θ)}α = α` for every pair, so the stabilizer is everything.
    pub stabilizer_is_whole_group: bool,
    pub sections_are_automorphisms: bool,
    /// `Φ ∘ ζ = id` elementwise.
    pub left_inverse: bool,
    pub section_is_homomorphism: bool,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.stabilizer_is_whole_group && self.sections_are_automorphisms && self.left_inverse && self.section_is_homomorphism
    }
}

pub fn splitting_section(
    base: &FiniteQuandle,
    fiber: &FiniteQuandle,
    x0: usize,
    limits: &Limits,
) -> Result<SplittingReport> {
    let alpha = DynamicalCocycle::from_fiber_quandle(base, fiber);
    let e = alpha.build_extension()?;
    let phis = stabilizer_aut(base, x0, limits)?;
    let thetas = automorphism_group(fiber, limits)?;
    let pairs: Vec<(Permutation, Permutation)> =
        phis.iter().flat_map(|p| thetas.iter().map(move |t| (p.clone(), t.clone()))).collect();
    limits.check_search("pairs of section elements", (pairs.len() as u128) * (pairs.len() as u128))?;
    let zeta = |(p, t): &(Permutation, Permutation)| ExtensionAutomorphism { phi: p.clone(), tau: vec![t.clone(); base.size()] };

    let mut stab = true;
    let mut autos = true;
    let mut inverse = true;
    for g in &pairs {
        if act_on_dynamical(&g.0, &g.1, &alpha)? != alpha {
            stab = false;
        }
        let z = zeta(g);
        if !z.is_automorphism_of(&e) || z.phi.apply(x0) != x0 {
            autos = false;
        }
        if phi_restrict(&z, x0) != *g {
            inverse = false;
        }
    }
    let mut hom = true;
    for g in &pairs {
        for h in &pairs {
            let gh = (g.0.compose(&h.0), g.1.compose(&h.1));
            if zeta(&gh) != zeta(g).compose(&zeta(h)) {
                hom = false;
            }
        }
    }
    Ok(SplittingReport {
        pairs: pairs.len(),
        stabilizer_is_whole_group: stab,
        sections_are_automorphisms: autos,
        left_inverse: inverse,
        section_is_homomorphism: hom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamical::twist_dynamical;
    use crate::quandle::{dihedral_quandle, trivial_quandle};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r4_over_t2() -> DynamicalCocycle {
        let t2 = trivial_quandle(2).unwrap();
        DynamicalCocycle::from_fn(t2, 2, |x, y, s, _| (s + usize::from(x != y)) % 2).unwrap()
    }

    #[test]
    fn self_cohomologous_via_identity() {
        let c = r4_over_t2();
        let lambda = cohomologous_dynamical(&c, &c, &Limits::default()).unwrap().unwrap();
        assert_eq!(twist_dynamical(&c, &lambda).unwrap(), c);
    }

    #[test]
    fn random_twists_are_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r3 = dihedral_quandle(3).unwrap();
        let s = dihedral_quandle(3).unwrap();
        let base = DynamicalCocycle::from_fiber_quandle(&r3, &s);
        let perms = all_permutations(3);
        for _ in 0..20 {
            let lambda: Vec<Permutation> = (0..3).map(|_| perms.choose(&mut rng).unwrap().clone()).collect();
            let twisted = twist_dynamical(&base, &lambda).unwrap();
            let w = cohomologous_dynamical(&base, &twisted, &Limits::default()).unwrap().unwrap();
            assert_eq!(twist_dynamical(&base, &w).unwrap(), twisted);
        }
    }

    #[test]
    fn trivial_and_r4_cocycles_are_not_cohomologous() {
        let c = r4_over_t2();
        let triv = DynamicalCocycle::trivial(c.base(), 2).unwrap();
        assert!(cohomologous_dynamical(&triv, &c, &Limits::default()).unwrap().is_none());
    }

    // Oracle: brute force over every λ: X → Σ_S.
    #[test]
    fn kernel_twists_match_brute_force() {
        let c = r4_over_t2();
        let perms = all_permutations(2);
        let mut brute = 0;
        for a in &perms {
            for b in &perms {
                let lambda = vec![a.clone(), b.clone()];
                if lambda[0].is_identity() && twist_dynamical(&c, &lambda).unwrap() == c {
                    brute += 1;
                }
            }
        }
        assert_eq!(kernel_twists(&c, 0, &Limits::default()).unwrap().len(), brute);
    }

    #[test]
    fn extension_automorphism_round_trip() {
        let c = r4_over_t2();
        let group = aut_x0_s(&c, 0, &Limits::default()).unwrap();
        assert!(!group.is_empty());
        for psi in &group {
            let back = ExtensionAutomorphism::from_extension_permutation(&psi.to_permutation(), 2, 2).unwrap();
            assert_eq!(&back, psi);
            assert_eq!(psi.compose(psi).to_permutation(), psi.to_permutation().compose(&psi.to_permutation()));
        }
        let id = group.iter().find(|p| p.to_permutation().is_identity()).unwrap();
        assert_eq!(phi_restrict(id, 0), (Permutation::identity(2), Permutation::identity(2)));
    }

    #[test]
    fn wells_on_trivial_product_and_r4() {
        let lim = Limits::default();
        let t2 = trivial_quandle(2).unwrap();
        let triv = DynamicalCocycle::trivial(&t2, 2).unwrap();
        let rep = verify_wells_dynamical(&triv, 0, None, &lim).unwrap();
        assert!(rep.passed(), "{rep:?}");
        // E = T_4 and Aut^{x0}_S(E) consists of φ = id with arbitrary τ_0, τ_1
        assert_eq!(rep.group_order, 4);

        let rep = verify_wells_dynamical(&r4_over_t2(), 0, None, &lim).unwrap();
        assert!(rep.passed(), "{rep:?}");

        let r3 = dihedral_quandle(3).unwrap();
        let prod = DynamicalCocycle::from_fiber_quandle(&r3, &t2);
        let rep = verify_wells_dynamical(&prod, 0, Some(&t2), &lim).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.stabilizer_order, 2 * 2);
    }

    #[test]
    fn splitting_examples() {
        let lim = Limits::default();
        let r3 = dihedral_quandle(3).unwrap();
        let r4 = dihedral_quandle(4).unwrap();
        let t2 = trivial_quandle(2).unwrap();
        let rep = splitting_section(&r3, &t2, 0, &lim).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.pairs, 2 * 2);
        assert!(splitting_section(&t2, &t2, 0, &lim).unwrap().passed());
        assert!(splitting_section(&r4, &r3, 0, &lim).unwrap().passed());
    }
}
