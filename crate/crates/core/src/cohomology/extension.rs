//! Abelian extensions `X ×_α A` and the automorphisms that respect the fibers.
//!
//! A fibered automorphism is `ψ(x, s) = (φ(x), λ_x + θ(s))`. It is a quandle
//! map exactly when `λ_{x*y} + θ(α_{x,y}) = λ_x + α_{φx,φy}` for all `x, y`,
//! and `Ψ(ψ) = (φ, θ)` lands in the stabilizer of `[α]`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{cohomology_group, require_two_cocycle, CohomologyGroup, FiniteAbelianCoefficients, QuandleCochain};
use crate::dynamical::DynamicalCocycle;
use crate::perm::Permutation;
use crate::quandle::{automorphism_group, inner_orbits, FiniteQuandle};
use crate::{Error, Limits, Result};

/// `(x, s)*(y, t) = (x*y, s + α_{x,y})` on indices `x·|A| + s`.
pub fn build_abelian_extension(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    alpha: &QuandleCochain,
) -> Result<FiniteQuandle> {
    require_two_cocycle(x, a, alpha)?;
    let m = a.order();
    Ok(FiniteQuandle::from_fn_unchecked(x.size() * m, |p, q| {
        let (px, ps, qx) = (p / m, p % m, q / m);
        x.op(px, qx) * m + a.add(ps, alpha.pair(px, qx))
    }))
}

/// The same extension seen as a dynamical cocycle `α_{x,y}(s, t) = s + α_{x,y}`.
pub fn abelian_as_dynamical(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    alpha: &QuandleCochain,
) -> Result<DynamicalCocycle> {
    require_two_cocycle(x, a, alpha)?;
    DynamicalCocycle::from_fn(x.clone(), a.order(), |p, q, s, _| a.add(s, alpha.pair(p, q)))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AbelianExtensionAutomorphism {
    pub phi: Permutation,
    pub theta: Permutation,
    /// `λ_x` as element indices of `A`.
    pub lambda: Vec<usize>,
}

impl AbelianExtensionAutomorphism {
    pub fn apply(&self, a: &FiniteAbelianCoefficients, x: usize, s: usize) -> (usize, usize) {
        (self.phi.apply(x), a.add(self.lambda[x], self.theta.apply(s)))
    }

    pub fn to_permutation(&self, a: &FiniteAbelianCoefficients) -> Permutation {
        let m = a.order();
        let images = (0..self.phi.len() * m)
            .map(|e| {
                let (y, t) = self.apply(a, e / m, e % m);
                y * m + t
            })
            .collect();
        Permutation::new(images).expect("fibered map with bijective parts")
    }

    /// `self ∘ other`: `(φφ′, θθ′, x ↦ λ_{φ′x} + θ(λ′_x))`.
    pub fn compose(&self, other: &Self, a: &FiniteAbelianCoefficients) -> Self {
        let lambda = (0..self.phi.len())
            .map(|x| a.add(self.lambda[other.phi.apply(x)], self.theta.apply(other.lambda[x])))
            .collect();
        AbelianExtensionAutomorphism {
            phi: self.phi.compose(&other.phi),
            theta: self.theta.compose(&other.theta),
            lambda,
        }
    }

    pub fn is_automorphism_of(&self, e: &FiniteQuandle, a: &FiniteAbelianCoefficients) -> bool {
        e.is_isomorphism(e, self.to_permutation(a).images())
    }
}

/// `Aut_A(E)`. For each `(φ, θ)` the condition on `λ` is propagated along
/// `x → x*y` inside each `Inn`-orbit; a consistent solution is then shifted by
/// every orbit-constant function. Every result is checked against the table of `E`.
pub fn aut_a(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    alpha: &QuandleCochain,
    limits: &Limits,
) -> Result<Vec<AbelianExtensionAutomorphism>> {
    let e = build_abelian_extension(x, a, alpha)?;
    let auts_x = automorphism_group(x, limits)?;
    let auts_a = a.automorphisms(limits)?;
    let orbits = inner_orbits(x);
    let shifts = crate::limits::saturating_pow(a.order() as u128, orbits.len());
    limits.check_search("fibered automorphism candidates", (auts_x.len() * auts_a.len()) as u128 * shifts)?;
    let mut out = Vec::new();
    for phi in &auts_x {
        for theta in &auts_a {
            // required value of λ_{x*y} − λ_x
            let step = |p: usize, q: usize| {
                a.sub(alpha.pair(phi.apply(p), phi.apply(q)), theta.apply(alpha.pair(p, q)))
            };
            let Some(base) = solve_lambda(x, a, &orbits, step) else { continue };
            let mut shift = vec![0usize; orbits.len()];
            loop {
                let mut lambda = base.clone();
                for (orbit, &c) in orbits.iter().zip(&shift) {
                    for &p in orbit {
                        lambda[p] = a.add(lambda[p], c);
                    }
                }
                let psi = AbelianExtensionAutomorphism { phi: phi.clone(), theta: theta.clone(), lambda };
                if !psi.is_automorphism_of(&e, a) {
                    return Err(Error::InvalidArgument("propagated fibered map is not an automorphism".into()));
                }
                out.push(psi);
                if !advance(&mut shift, a.order()) {
                    break;
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn solve_lambda(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    orbits: &[Vec<usize>],
    step: impl Fn(usize, usize) -> usize,
) -> Option<Vec<usize>> {
    let n = x.size();
    let mut lambda: Vec<Option<usize>> = vec![None; n];
    for orbit in orbits {
        lambda[orbit[0]] = Some(0);
        let mut queue = VecDeque::from([orbit[0]]);
        while let Some(p) = queue.pop_front() {
            let lp = lambda[p].expect("queued points are assigned");
            for q in 0..n {
                let target = x.op(p, q);
                let value = a.add(lp, step(p, q));
                match lambda[target] {
                    None => {
                        lambda[target] = Some(value);
                        queue.push_back(target);
                    }
                    Some(v) if v != value => return None,
                    Some(_) => {}
                }
            }
        }
    }
    lambda.into_iter().collect()
}

fn advance(v: &mut [usize], base: usize) -> bool {
    for slot in v.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// `Aut(X) × Aut(A)` with its action on `H^2(X; A)` tabulated.
struct ClassAction {
    h: CohomologyGroup,
    group: Vec<(Permutation, Permutation)>,
    classes: Vec<Vec<u64>>,
    index: BTreeMap<Vec<u64>, usize>,
    /// `act[g][c]` = index of `g·c`.
    act: Vec<Vec<usize>>,
    sum: Vec<usize>,
    neg: Vec<usize>,
    prod: Vec<usize>,
}

impl ClassAction {
    fn new(x: &FiniteQuandle, a: &FiniteAbelianCoefficients, limits: &Limits) -> Result<Self> {
        let h = cohomology_group(x, 2, a, limits)?;
        let group = acting_group(x, a, limits)?;
        let classes = h.classes(limits)?;
        let index: BTreeMap<Vec<u64>, usize> = classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let act = group
            .iter()
            .map(|(phi, theta)| classes.iter().map(|c| index[&h.act_on_class(phi, theta, c)]).collect())
            .collect();
        let nc = classes.len();
        let sum = (0..nc * nc).map(|k| index[&h.add_classes(&classes[k / nc], &classes[k % nc])]).collect();
        let neg = classes.iter().map(|c| index[&h.neg_class(c)]).collect();
        let positions: BTreeMap<&(Permutation, Permutation), usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let ng = group.len();
        let prod = (0..ng * ng)
            .map(|k| {
                let ((p1, t1), (p2, t2)) = (&group[k / ng], &group[k % ng]);
                positions[&(p1.compose(p2), t1.compose(t2))]
            })
            .collect();
        Ok(ClassAction { h, group, classes, index, act, sum, neg, prod })
    }

    fn add(&self, i: usize, j: usize) -> usize {
        self.sum[i * self.classes.len() + j]
    }

    fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg[j])
    }

    fn mul(&self, g: usize, k: usize) -> usize {
        self.prod[g * self.group.len() + k]
    }

    fn theta(&self, base: usize, g: usize) -> usize {
        self.sub(base, self.act[g][base])
    }
}

fn acting_group(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    limits: &Limits,
) -> Result<Vec<(Permutation, Permutation)>> {
    let auts_x = automorphism_group(x, limits)?;
    let auts_a = a.automorphisms(limits)?;
    Ok(auts_x.iter().flat_map(|p| auts_a.iter().map(move |t| (p.clone(), t.clone()))).collect())
}

/// `{(φ, θ) : Θ_{[α]}(φ, θ) = 0}`.
fn stabilizer(h: &CohomologyGroup, base: &[u64], group: &[(Permutation, Permutation)]) -> BTreeSet<(Permutation, Permutation)> {
    let zero = h.zero_class();
    group.iter().filter(|(p, t)| h.theta_map(base, p, t) == zero).cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellsAbelianReport {
    pub group_order: usize,
    pub closed_under_composition: bool,
    pub restriction_is_homomorphism: bool,
    pub kernel_order: usize,
    pub z1_order: usize,
    /// The `λ`s of kernel elements are exactly the enumerated `Z^1`.
    pub kernel_is_z1: bool,
    pub image_order: usize,
    pub stabilizer_order: usize,
    pub image_is_stabilizer: bool,
    /// `|Aut_A(E)| = |Z^1| · |stabilizer|`.
    pub order_identity: bool,
}

impl WellsAbelianReport {
    pub fn passed(&self) -> bool {
        self.closed_under_composition
            && self.restriction_is_homomorphism
            && self.kernel_is_z1
            && self.image_is_stabilizer
            && self.order_identity
    }
}

pub fn verify_wells_abelian(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    alpha: &QuandleCochain,
    limits: &Limits,
) -> Result<WellsAbelianReport> {
    let group = aut_a(x, a, alpha, limits)?;
    limits.check_search("composition pairs", (group.len() * group.len()) as u128)?;
    let members: BTreeSet<&AbelianExtensionAutomorphism> = group.iter().collect();
    let mut closed = true;
    let mut hom = true;
    for p in &group {
        for q in &group {
            let pq = p.compose(q, a);
            closed &= members.contains(&pq);
            hom &= pq.phi == p.phi.compose(&q.phi) && pq.theta == p.theta.compose(&q.theta);
        }
    }
    let id_x = Permutation::identity(x.size());
    let id_a = Permutation::identity(a.order());
    let kernel: BTreeSet<Vec<usize>> = group
        .iter()
        .filter(|p| p.phi == id_x && p.theta == id_a)
        .map(|p| p.lambda.clone())
        .collect();
    let z1: BTreeSet<Vec<usize>> =
        super::enumerate_z1(x, a, limits)?.into_iter().map(|c| c.values().to_vec()).collect();
    let image: BTreeSet<(Permutation, Permutation)> =
        group.iter().map(|p| (p.phi.clone(), p.theta.clone())).collect();
    let h = cohomology_group(x, 2, a, limits)?;
    let base = h.class_of(alpha).expect("aut_a checked the cocycle");
    let stab = stabilizer(&h, &base, &acting_group(x, a, limits)?);
    Ok(WellsAbelianReport {
        group_order: group.len(),
        closed_under_composition: closed,
        restriction_is_homomorphism: hom,
        kernel_order: kernel.len(),
        z1_order: z1.len(),
        kernel_is_z1: kernel == z1,
        image_order: image.len(),
        stabilizer_order: stab.len(),
        image_is_stabilizer: image == stab,
        order_identity: group.len() == z1.len() * stab.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitBound {
    pub group_order: usize,
    pub stabilizer_order: usize,
    /// Size of the orbit of `[α]`, `|Aut(X) × Aut(A)| / |stabilizer|`.
    pub bound: u128,
    /// `|H^2(X; A)|`.
    pub actual: u128,
}

impl OrbitBound {
    pub fn holds(&self) -> bool {
        self.bound <= self.actual
    }
}

pub fn orbit_lower_bound(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    alpha: &QuandleCochain,
    limits: &Limits,
) -> Result<OrbitBound> {
    require_two_cocycle(x, a, alpha)?;
    let h = cohomology_group(x, 2, a, limits)?;
    let base = h.class_of(alpha).expect("checked cocycle");
    let group = acting_group(x, a, limits)?;
    let stab = stabilizer(&h, &base, &group);
    Ok(OrbitBound {
        group_order: group.len(),
        stabilizer_order: stab.len(),
        bound: (group.len() / stab.len()) as u128,
        actual: h.order(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaDerivationReport {
    pub group_order: usize,
    pub pairs_checked: usize,
    /// `Θ(g₁g₂) = Θ(g₁) + g₁·Θ(g₂)` for every pair.
    pub derivation_holds: bool,
    pub classes_checked: usize,
    /// For every class `[α′]` some `[β]` has `Θ′(g) = −[β] + Θ(g) + g·[β]` for all `g`.
    pub differences_inner: bool,
    /// `[α] − [α′]` itself works as `[β]` in every case.
    pub difference_is_witness: bool,
}

impl ThetaDerivationReport {
    pub fn passed(&self) -> bool {
        self.derivation_holds && self.differences_inner && self.difference_is_witness
    }
}

pub fn check_theta_derivation(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    alpha: &QuandleCochain,
    limits: &Limits,
) -> Result<ThetaDerivationReport> {
    require_two_cocycle(x, a, alpha)?;
    let ca = ClassAction::new(x, a, limits)?;
    let (g, c) = (ca.group.len() as u128, ca.classes.len() as u128);
    limits.check_search("derivation checks", g * g + c * c * g)?;
    let base = ca.index[&ca.h.class_of(alpha).expect("checked cocycle")];
    let mut derivation = true;
    for g1 in 0..ca.group.len() {
        for g2 in 0..ca.group.len() {
            let lhs = ca.theta(base, ca.mul(g1, g2));
            let rhs = ca.add(ca.theta(base, g1), ca.act[g1][ca.theta(base, g2)]);
            derivation &= lhs == rhs;
        }
    }
    let inner_with = |other: usize, beta: usize| {
        (0..ca.group.len()).all(|k| {
            let rhs = ca.add(ca.sub(ca.theta(base, k), beta), ca.act[k][beta]);
            ca.theta(other, k) == rhs
        })
    };
    let mut inner = true;
    let mut witness = true;
    for other in 0..ca.classes.len() {
        inner &= (0..ca.classes.len()).any(|beta| inner_with(other, beta));
        witness &= inner_with(other, ca.sub(base, other));
    }
    Ok(ThetaDerivationReport {
        group_order: ca.group.len(),
        pairs_checked: ca.group.len() * ca.group.len(),
        derivation_holds: derivation,
        classes_checked: ca.classes.len(),
        differences_inner: inner,
        difference_is_witness: witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectReport {
    pub h2_order: usize,
    pub acting_group_order: usize,
    /// `Aut(X) × Aut(A)` acts on `H^2` by group automorphisms.
    pub acts_by_automorphisms: bool,
    pub identity_acts_trivially: bool,
    pub translations_act_by_addition: bool,
    /// `(e₁e₂)·b = e₁·(e₂·b)` in `H^2 ⋊ (Aut(X) × Aut(A))` for all `e₁, e₂, b`.
    pub action_compatible: bool,
}

impl SemidirectReport {
    pub fn passed(&self) -> bool {
        self.acts_by_automorphisms
            && self.identity_acts_trivially
            && self.translations_act_by_addition
            && self.action_compatible
    }
}

/// Elements `([c], g)` multiply as `([c], g)([d], h) = ([c] + g·[d], gh)` and act
/// by `([c], g)·[b] = [c] + g·[b]`.
pub fn semidirect_action_check(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    limits: &Limits,
) -> Result<SemidirectReport> {
    let ca = ClassAction::new(x, a, limits)?;
    let (nc, ng) = (ca.classes.len(), ca.group.len());
    limits.check_search("semidirect action checks", ((nc * ng) as u128).pow(2) * nc as u128)?;
    let zero = ca.index[&ca.h.zero_class()];
    let id = ca
        .group
        .iter()
        .position(|(p, t)| p.is_identity() && t.is_identity())
        .expect("identity in the acting group");
    let act = |c: usize, g: usize, b: usize| ca.add(c, ca.act[g][b]);

    let by_automorphisms =
        (0..ng).all(|g| (0..nc).all(|p| (0..nc).all(|q| ca.act[g][ca.add(p, q)] == ca.add(ca.act[g][p], ca.act[g][q]))));
    let identity = (0..nc).all(|b| act(zero, id, b) == b);
    let translations = (0..nc).all(|c| (0..nc).all(|b| act(c, id, b) == ca.add(c, b)));
    let mut compatible = true;
    for c1 in 0..nc {
        for g1 in 0..ng {
            for c2 in 0..nc {
                for g2 in 0..ng {
                    let (c12, g12) = (ca.add(c1, ca.act[g1][c2]), ca.mul(g1, g2));
                    compatible &= (0..nc).all(|b| act(c12, g12, b) == act(c1, g1, act(c2, g2, b)));
                }
            }
        }
    }
    Ok(SemidirectReport {
        h2_order: nc,
        acting_group_order: ng,
        acts_by_automorphisms: by_automorphisms,
        identity_acts_trivially: identity,
        translations_act_by_addition: translations,
        action_compatible: compatible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{act_on_cochain, coboundary_of};
    use crate::quandle::{are_isomorphic, dihedral_quandle, product_quandle, trivial_quandle};

    fn z(m: u64) -> FiniteAbelianCoefficients {
        FiniteAbelianCoefficients::cyclic(m).unwrap()
    }

    fn r4_cocycle() -> QuandleCochain {
        QuandleCochain::from_pairs(2, |_, _| 1)
    }

    #[test]
    fn extension_examples() {
        let lim = Limits::default();
        let t2 = trivial_quandle(2).unwrap();
        let e = build_abelian_extension(&t2, &z(2), &r4_cocycle()).unwrap();
        assert!(are_isomorphic(&e, &dihedral_quandle(4).unwrap(), &lim).unwrap().is_some());
        let r3 = dihedral_quandle(3).unwrap();
        let zero = build_abelian_extension(&r3, &z(3), &QuandleCochain::zero(3, 2)).unwrap();
        assert_eq!(zero, product_quandle(&r3, &trivial_quandle(3).unwrap()));
        let bad = QuandleCochain::from_pairs(3, |x, y| usize::from(x == 0 && y == 1));
        assert!(matches!(build_abelian_extension(&r3, &z(2), &bad), Err(Error::CocycleViolation { .. })));
    }

    #[test]
    fn cohomologous_extensions_are_isomorphic() {
        let r4 = dihedral_quandle(4).unwrap();
        let a = z(3);
        let lim = Limits::default();
        let h = cohomology_group(&r4, 2, &a, &lim).unwrap();
        let alpha = h.representative(&vec![1; h.coordinate_orders().len()]);
        let lambda = QuandleCochain::from_points(4, |p| (2 * p + 1) % 3);
        let beta = alpha.add(&coboundary_of(&r4, &a, &lambda), &a);
        let (e1, e2) = (build_abelian_extension(&r4, &a, &alpha).unwrap(), build_abelian_extension(&r4, &a, &beta).unwrap());
        // (x, s) ↦ (x, s + λ_x) carries the α-extension onto the β-extension
        let map: Vec<usize> = (0..12).map(|e| (e / 3) * 3 + a.add(e % 3, lambda.point(e / 3))).collect();
        assert!(e1.is_isomorphism(&e2, &map));
    }

    /// Brute force over every `(φ, θ, λ)`.
    fn aut_a_oracle(x: &FiniteQuandle, a: &FiniteAbelianCoefficients, alpha: &QuandleCochain) -> Vec<AbelianExtensionAutomorphism> {
        let lim = Limits::default();
        let e = build_abelian_extension(x, a, alpha).unwrap();
        let mut out = Vec::new();
        for phi in automorphism_group(x, &lim).unwrap() {
            for theta in a.automorphisms(&lim).unwrap() {
                let mut lam = vec![0; x.size()];
                loop {
                    let psi = AbelianExtensionAutomorphism { phi: phi.clone(), theta: theta.clone(), lambda: lam.clone() };
                    if psi.is_automorphism_of(&e, a) {
                        out.push(psi);
                    }
                    if !advance(&mut lam, a.order()) {
                        break;
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn aut_a_matches_oracle() {
        let lim = Limits::default();
        let t2 = trivial_quandle(2).unwrap();
        let zero = aut_a(&t2, &z(2), &QuandleCochain::zero(2, 2), &lim).unwrap();
        assert_eq!(zero.len(), 8);
        let cases = [
            (t2.clone(), z(2), r4_cocycle()),
            (trivial_quandle(3).unwrap(), z(2), QuandleCochain::from_pairs(3, |p, q| usize::from(p < q))),
            (dihedral_quandle(3).unwrap(), z(3), QuandleCochain::zero(3, 2)),
            (dihedral_quandle(4).unwrap(), z(2), QuandleCochain::zero(4, 2)),
        ];
        for (x, a, alpha) in cases {
            assert_eq!(aut_a(&x, &a, &alpha, &lim).unwrap(), aut_a_oracle(&x, &a, &alpha));
        }
    }

    #[test]
    fn wells_on_small_cases() {
        let lim = Limits::default();
        for (x, a) in [
            (trivial_quandle(2).unwrap(), z(2)),
            (dihedral_quandle(3).unwrap(), z(3)),
            (dihedral_quandle(4).unwrap(), z(2)),
        ] {
            let h = cohomology_group(&x, 2, &a, &lim).unwrap();
            for cls in h.classes(&lim).unwrap() {
                let report = verify_wells_abelian(&x, &a, &h.representative(&cls), &lim).unwrap();
                assert!(report.passed(), "{report:?}");
            }
        }
        let r = verify_wells_abelian(&trivial_quandle(2).unwrap(), &z(2), &r4_cocycle(), &lim).unwrap();
        assert_eq!((r.z1_order, r.stabilizer_order, r.group_order), (4, 2, 8));
    }

    #[test]
    fn theta_and_action_examples() {
        let lim = Limits::default();
        let t2 = trivial_quandle(2).unwrap();
        let a = z(2);
        let h = cohomology_group(&t2, 2, &a, &lim).unwrap();
        let base = h.class_of(&r4_cocycle()).unwrap();
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let id = Permutation::identity(2);
        assert_eq!(h.theta_map(&base, &swap, &id), h.zero_class());
        let one_sided = QuandleCochain::from_pairs(2, |p, _| usize::from(p == 0));
        let c = h.class_of(&one_sided).unwrap();
        assert_ne!(h.theta_map(&c, &swap, &id), h.zero_class());
        assert_eq!(act_on_cochain(&swap, &id, &one_sided).pair(1, 0), 1);
        for p in h.classes(&lim).unwrap() {
            for q in h.classes(&lim).unwrap() {
                let sum = h.add_classes(&p, &q);
                assert_eq!(
                    h.act_on_class(&swap, &id, &sum),
                    h.add_classes(&h.act_on_class(&swap, &id, &p), &h.act_on_class(&swap, &id, &q))
                );
            }
        }
    }

    #[test]
    fn orbit_bounds() {
        let lim = Limits::default();
        let t2 = trivial_quandle(2).unwrap();
        let b = orbit_lower_bound(&t2, &z(2), &QuandleCochain::zero(2, 2), &lim).unwrap();
        assert_eq!((b.bound, b.actual), (1, 4));
        let one_sided = QuandleCochain::from_pairs(2, |p, _| usize::from(p == 0));
        let b = orbit_lower_bound(&t2, &z(2), &one_sided, &lim).unwrap();
        assert_eq!(b.bound, 2);
        assert!(b.holds());
        let r3 = dihedral_quandle(3).unwrap();
        assert!(orbit_lower_bound(&r3, &z(2), &QuandleCochain::zero(3, 2), &lim).unwrap().holds());
    }

    #[test]
    fn derivation_and_semidirect() {
        let lim = Limits::default();
        let t2 = trivial_quandle(2).unwrap();
        let h = cohomology_group(&t2, 2, &z(2), &lim).unwrap();
        for cls in h.classes(&lim).unwrap() {
            assert!(check_theta_derivation(&t2, &z(2), &h.representative(&cls), &lim).unwrap().passed());
        }
        let r4 = dihedral_quandle(4).unwrap();
        let h4 = cohomology_group(&r4, 2, &z(2), &lim).unwrap();
        for cls in h4.classes(&lim).unwrap() {
            assert!(check_theta_derivation(&r4, &z(2), &h4.representative(&cls), &lim).unwrap().passed());
        }
        for (x, a) in [(t2, z(2)), (r4, z(2)), (dihedral_quandle(3).unwrap(), z(3))] {
            let r = semidirect_action_check(&x, &a, &lim).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn dynamical_view_of_abelian_extension() {
        let t2 = trivial_quandle(2).unwrap();
        let dyn_c = abelian_as_dynamical(&t2, &z(2), &r4_cocycle()).unwrap();
        assert_eq!(dyn_c.build_extension().unwrap(), build_abelian_extension(&t2, &z(2), &r4_cocycle()).unwrap());
    }
}
