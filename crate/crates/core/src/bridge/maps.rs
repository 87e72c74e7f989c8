//! The maps from group cohomology to quandle cohomology: `Λ` into factor sets
//! over `Core(G)` and `Γ` into 2-cocycles of `Conj(G)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::group::{group_h2, symmetric_classes, GroupCocycle2};
use super::module::{cohomologous_factor_sets, FactorSet, HomogeneousQuandleModule};
use crate::cohomology::{cohomology_group, require_two_cocycle, FiniteAbelianCoefficients, QuandleCochain};
use crate::group::FiniteGroup;
use crate::quandle::{conj_quandle, core_quandle};
use crate::{Error, Limits, Result};

/// `ν̌(x, y) = −ν(yx⁻¹, x) + ν(yx⁻¹, y)`, a factor set for the negate/double module
/// over `Core(G)`. `G` must be abelian and `ν` symmetric; `ν` is normalized first.
pub fn lambda_map(nu: &GroupCocycle2) -> Result<FactorSet> {
    let g = nu.group();
    g.require_abelian()?;
    if let Some((x, y)) = nu.asymmetry() {
        return Err(Error::NotSymmetric { x, y });
    }
    let nu = nu.normalized();
    let a = nu.coefficients();
    let module = HomogeneousQuandleModule::negate_double(&core_quandle(g), a)?;
    FactorSet::from_fn(module, |x, y| {
        let d = g.mul(y, g.inv(x));
        a.sub(nu.get(d, y), nu.get(d, x))
    })
}

/// `ν̆(x, y) = ν(x, y) − ν(y, y⁻¹xy)`, a 2-cocycle on `Conj(G)`.
pub fn gamma_map(nu: &GroupCocycle2) -> Result<QuandleCochain> {
    let g = nu.group();
    let a = nu.coefficients();
    let c = QuandleCochain::from_pairs(g.size(), |x, y| a.sub(nu.get(x, y), nu.get(y, g.conjugate(x, y))));
    require_two_cocycle(&conj_quandle(g, 1), a, &c)?;
    Ok(c)
}

fn check_coefficient_hom(a1: &FiniteAbelianCoefficients, a2: &FiniteAbelianCoefficients, h: &[usize]) -> Result<()> {
    let ok = h.len() == a1.order()
        && h.iter().all(|&v| v < a2.order())
        && (0..a1.order()).all(|p| (0..a1.order()).all(|q| h[a1.add(p, q)] == a2.add(h[p], h[q])));
    if ok {
        Ok(())
    } else {
        Err(Error::NotAHomomorphism { context: "h: A1 → A2", witness: Vec::new() })
    }
}

/// `ν′(x, y) = h(ν(f x, f y))` for `f: G2 → G1`, `h: A1 → A2`.
pub fn pull_push_cocycle(
    nu: &GroupCocycle2,
    g2: &FiniteGroup,
    a2: &FiniteAbelianCoefficients,
    f: &[usize],
    h: &[usize],
) -> Result<GroupCocycle2> {
    GroupCocycle2::from_fn(g2.clone(), a2.clone(), |x, y| h[nu.get(f[x], f[y])])
}

/// Instance data for `Λ: H^2(G; A)_sym → 𝓗^2(Core(G); A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    pub h2_order: u128,
    pub sym_order: usize,
    pub sym_is_subgroup: bool,
    /// Every image (of representatives and of twisted representatives) is a valid factor set.
    pub outputs_valid: bool,
    /// Twisting `ν` by a coboundary gives a cohomologous factor set.
    pub well_defined: bool,
    /// `Λ(c₁ + c₂) ~ Λ(c₁) + Λ(c₂)` on all class pairs.
    pub additive: bool,
    pub kernel_order: usize,
    pub image_order: usize,
    /// Each `Λ(ν)` extension equals `Core` of the group extension of `ν`, table for table.
    pub matches_core_of_extension: bool,
    /// Images as `(class of ν, ν̌)`.
    pub images: Vec<(Vec<u64>, FactorSet)>,
}

impl LambdaReport {
    pub fn passed(&self) -> bool {
        self.sym_is_subgroup && self.outputs_valid && self.well_defined && self.additive && self.matches_core_of_extension
    }
}

/// `twists` are maps `G → A` used for the well-definedness check.
pub fn lambda_report(
    g: &FiniteGroup,
    a: &FiniteAbelianCoefficients,
    twists: &[Vec<usize>],
    limits: &Limits,
) -> Result<LambdaReport> {
    let h = group_h2(g, a, limits)?;
    let sym = symmetric_classes(&h, limits)?;
    let sym_classes = sym.sym.classes(limits)?;
    let reps: Vec<GroupCocycle2> = sym_classes
        .iter()
        .map(|c| GroupCocycle2::from_fn(g.clone(), a.clone(), |x, y| sym.sym.representative_values(c)[x * g.size() + y]))
        .collect::<Result<_>>()?;
    let mut outputs_valid = true;
    let mut well_defined = true;
    let mut matches_core = true;
    let mut images = Vec::new();
    for (i, nu) in reps.iter().enumerate() {
        let img = lambda_map(nu)?;
        let ext = img.build_extension();
        outputs_valid &= ext.is_ok();
        matches_core &= ext.ok() == Some(core_quandle(&nu.extension_group(limits)?));
        for lam in twists {
            match lambda_map(&nu.twist(lam)) {
                Ok(t) => well_defined &= cohomologous_factor_sets(&img, &t, limits)?.is_some(),
                Err(_) => outputs_valid = false,
            }
        }
        images.push((sym.classes[i].clone(), img));
    }
    let zero = FactorSet::zero(images.first().map(|(_, f)| f.module().clone()).expect("zero class is present"));
    let mut additive = true;
    for (i, p) in reps.iter().enumerate() {
        for (j, q) in reps.iter().enumerate() {
            let sum = lambda_map(&p.add(q))?;
            let parts = images[i].1.add(&images[j].1);
            additive &= cohomologous_factor_sets(&sum, &parts, limits)?.is_some();
        }
    }
    let mut kernel_order = 0;
    for (_, img) in &images {
        if cohomologous_factor_sets(&zero, img, limits)?.is_some() {
            kernel_order += 1;
        }
    }
    Ok(LambdaReport {
        h2_order: h.order(),
        sym_order: reps.len(),
        sym_is_subgroup: sym.is_subgroup,
        outputs_valid,
        well_defined,
        additive,
        kernel_order,
        image_order: reps.len() / kernel_order.max(1),
        matches_core_of_extension: matches_core,
        images,
    })
}

/// Instance data for `Γ: H^2(G; A) → H^2(Conj(G); A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaReport {
    pub h2_order: u128,
    pub target_order: u128,
    pub outputs_valid: bool,
    pub well_defined: bool,
    pub additive: bool,
    pub kernel_order: usize,
    pub image_order: usize,
    /// `(class of ν, class of ν̆)`.
    pub images: Vec<(Vec<u64>, Vec<u64>)>,
}

impl GammaReport {
    pub fn passed(&self) -> bool {
        self.outputs_valid && self.well_defined && self.additive
    }
}

pub fn gamma_report(
    g: &FiniteGroup,
    a: &FiniteAbelianCoefficients,
    twists: &[Vec<usize>],
    limits: &Limits,
) -> Result<GammaReport> {
    let h = group_h2(g, a, limits)?;
    let conj = conj_quandle(g, 1);
    let target = cohomology_group(&conj, 2, a, limits)?;
    let classes = h.classes(limits)?;
    let mut outputs_valid = true;
    let mut well_defined = true;
    let mut images = Vec::new();
    for c in &classes {
        let nu = h.representative(c);
        let img = target.class_of(&gamma_map(&nu)?).expect("validated cocycle");
        for lam in twists {
            match gamma_map(&nu.twist(lam)) {
                Ok(t) => well_defined &= target.class_of(&t).as_ref() == Some(&img),
                Err(_) => outputs_valid = false,
            }
        }
        images.push((c.clone(), img));
    }
    let mut additive = true;
    for (i, p) in classes.iter().enumerate() {
        for (j, q) in classes.iter().enumerate() {
            let sum = h.add_classes(p, q);
            let k = classes.iter().position(|c| *c == sum).expect("closed");
            additive &= images[k].1 == target.add_classes(&images[i].1, &images[j].1);
        }
    }
    let zero = target.zero_class();
    let kernel_order = images.iter().filter(|(_, img)| *img == zero).count();
    let image_order = images.iter().map(|(_, img)| img.clone()).collect::<BTreeSet<_>>().len();
    Ok(GammaReport {
        h2_order: h.order(),
        target_order: target.order(),
        outputs_valid,
        well_defined,
        additive,
        kernel_order,
        image_order,
        images,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BridgeDirection {
    Lambda,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaturalityReport {
    pub classes_checked: usize,
    pub commutes: bool,
}

/// Pull back along `f: G2 → G1` and push along `h: A1 → A2`, before and after the bridge map.
pub fn check_naturality(
    direction: BridgeDirection,
    (g1, a1): (&FiniteGroup, &FiniteAbelianCoefficients),
    (g2, a2): (&FiniteGroup, &FiniteAbelianCoefficients),
    f: &[usize],
    h: &[usize],
    limits: &Limits,
) -> Result<NaturalityReport> {
    g2.check_homomorphism(g1, f)?;
    check_coefficient_hom(a1, a2, h)?;
    let h2 = group_h2(g1, a1, limits)?;
    let mut commutes = true;
    let mut checked = 0;
    match direction {
        BridgeDirection::Lambda => {
            let sym = symmetric_classes(&h2, limits)?;
            g2.require_abelian()?;
            let module2 = HomogeneousQuandleModule::negate_double(&core_quandle(g2), a2)?;
            for c in sym.sym.classes(limits)? {
                let nu = GroupCocycle2::new(g1.clone(), a1.clone(), sym.sym.representative_values(&c))?;
                let down = lambda_map(&pull_push_cocycle(&nu, g2, a2, f, h)?)?;
                let mu = lambda_map(&nu)?;
                let across = FactorSet::from_fn(module2.clone(), |x, y| h[mu.get(f[x], f[y])])?;
                commutes &= cohomologous_factor_sets(&down, &across, limits)?.is_some();
                checked += 1;
            }
        }
        BridgeDirection::Gamma => {
            let conj2 = conj_quandle(g2, 1);
            let target = cohomology_group(&conj2, 2, a2, limits)?;
            for c in h2.classes(limits)? {
                let nu = h2.representative(&c);
                let down = gamma_map(&pull_push_cocycle(&nu, g2, a2, f, h)?)?;
                let breve = gamma_map(&nu)?;
                let across = QuandleCochain::from_pairs(g2.size(), |x, y| h[breve.pair(f[x], f[y])]);
                commutes &= target.class_of(&down).is_some() && target.class_of(&down) == target.class_of(&across);
                checked += 1;
            }
        }
    }
    Ok(NaturalityReport { classes_checked: checked, commutes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamical::DynamicalCocycle;
    use crate::group::{cyclic_group, direct_product, symmetric_group};
    use crate::quandle::{are_isomorphic, dihedral_quandle, trivial_quandle};

    fn z(m: u64) -> FiniteAbelianCoefficients {
        FiniteAbelianCoefficients::cyclic(m).unwrap()
    }

    fn carry(m: usize) -> GroupCocycle2 {
        let g = cyclic_group(m, &Limits::default()).unwrap();
        GroupCocycle2::from_fn(g, z(m as u64), |x, y| usize::from(x + y >= m)).unwrap()
    }

    fn all_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0..k.pow(n as u32)).map(|mut c| (0..n).map(|_| { let d = c % k; c /= k; d }).collect()).collect()
    }

    #[test]
    fn lambda_of_carry_is_r4() {
        let lim = Limits::default();
        let nu = carry(2);
        let fs = lambda_map(&nu).unwrap();
        assert_eq!(fs.values(), &[0, 1, 1, 0]);
        let e = fs.build_extension().unwrap();
        assert!(are_isomorphic(&e, &dihedral_quandle(4).unwrap(), &lim).unwrap().is_some());
        assert_eq!(core_quandle(&nu.extension_group(&lim).unwrap()), e);
        let zero_fs = lambda_map(&GroupCocycle2::zero(nu.group().clone(), z(2))).unwrap();
        assert!(zero_fs.values().iter().all(|&v| v == 0));
        assert!(cohomologous_factor_sets(&zero_fs, &fs, &lim).unwrap().is_none());
        assert_eq!(trivial_quandle(2).unwrap(), *fs.module().base());
    }

    #[test]
    fn lambda_domain_errors() {
        let lim = Limits::default();
        let s3 = symmetric_group(3, &lim).unwrap();
        assert!(matches!(lambda_map(&GroupCocycle2::zero(s3, z(2))), Err(Error::NotAbelian { .. })));
        let z2 = cyclic_group(2, &lim).unwrap();
        let klein = direct_product(&z2, &z2, &lim).unwrap();
        let h = group_h2(&klein, &z(2), &lim).unwrap();
        let asym = h.classes(&lim).unwrap().into_iter().map(|c| h.representative(&c)).find(|n| !n.is_symmetric()).unwrap();
        assert!(matches!(lambda_map(&asym), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn lambda_reports() {
        let lim = Limits::default();
        let z2 = cyclic_group(2, &lim).unwrap();
        for (g, a) in [
            (z2.clone(), z(2)),
            (cyclic_group(4, &lim).unwrap(), z(2)),
            (cyclic_group(3, &lim).unwrap(), z(3)),
            (direct_product(&z2, &z2, &lim).unwrap(), z(2)),
        ] {
            let twists = all_maps(g.size(), a.order());
            let r = lambda_report(&g, &a, &twists, &lim).unwrap();
            assert!(r.passed(), "{:?}", (r.sym_order, r.outputs_valid, r.well_defined, r.additive, r.matches_core_of_extension));
            assert_eq!(r.kernel_order * r.image_order, r.sym_order);
        }
    }

    #[test]
    fn gamma_examples() {
        let lim = Limits::default();
        let nu = carry(3);
        assert!(gamma_map(&nu).unwrap().is_zero());
        let s3 = symmetric_group(3, &lim).unwrap();
        let twists = all_maps(6, 2).into_iter().step_by(7).collect::<Vec<_>>();
        let r = gamma_report(&s3, &z(2), &twists, &lim).unwrap();
        assert!(r.passed());
        assert_eq!(r.h2_order, 2);
        let z2 = cyclic_group(2, &lim).unwrap();
        let rk = gamma_report(&direct_product(&z2, &z2, &lim).unwrap(), &z(2), &all_maps(4, 2), &lim).unwrap();
        assert!(rk.passed());
        assert_eq!(rk.kernel_order * rk.image_order, 8);
    }

    #[test]
    fn naturality_squares() {
        let lim = Limits::default();
        let z2 = cyclic_group(2, &lim).unwrap();
        let z4 = cyclic_group(4, &lim).unwrap();
        let a = z(2);
        let id2 = [0, 1];
        let r = check_naturality(BridgeDirection::Lambda, (&z2, &a), (&z2, &a), &[0, 1], &id2, &lim).unwrap();
        assert!(r.commutes);
        let r = check_naturality(BridgeDirection::Lambda, (&z4, &a), (&z2, &a), &[0, 2], &id2, &lim).unwrap();
        assert!(r.commutes && r.classes_checked == 2);
        let s3 = symmetric_group(3, &lim).unwrap();
        let g = 3; // some non-central element
        let inner: Vec<usize> = (0..6).map(|x| s3.conjugate(x, g)).collect();
        let r = check_naturality(BridgeDirection::Gamma, (&s3, &a), (&s3, &a), &inner, &id2, &lim).unwrap();
        assert!(r.commutes && r.classes_checked == 2);
        assert!(check_naturality(BridgeDirection::Gamma, (&s3, &a), (&s3, &a), &[1, 0, 0, 0, 0, 0], &id2, &lim).is_err());
    }

    #[test]
    fn gamma_cochain_matches_dynamical_shape() {
        let lim = Limits::default();
        let s3 = symmetric_group(3, &lim).unwrap();
        let h = group_h2(&s3, &z(2), &lim).unwrap();
        let c = gamma_map(&h.representative(&[1])).unwrap();
        let conj = conj_quandle(&s3, 1);
        let a = z(2);
        assert!(DynamicalCocycle::from_fn(conj, 2, |x, y, s, _| a.add(s, c.pair(x, y))).is_ok());
    }
}
