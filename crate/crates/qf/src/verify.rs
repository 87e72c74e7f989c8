//! The full check suite behind `qf verify-all`, one group of reports per
//! acceptance criterion.

use anyhow::Result;
use qf_core::adjoint::{
    adjointness_count_check, extension_transport_alex, extension_transport_qw, q_w, r4_adjoint_report,
    GroupExtensionData, QuandleWord, Transport,
};
use qf_core::bridge::{gamma_report, lambda_map, lambda_report, GroupCocycle2};
use qf_core::cohomology::{
    abelian_as_dynamical, check_theta_derivation, cohomology_group, enumerate_z1, h2_by_enumeration,
    verify_wells_abelian, FiniteAbelianCoefficients, QuandleCochain,
};
use qf_core::dynamical::{
    fibers_isomorphic_report, splitting_section, twist_dynamical, verify_wells_dynamical, DynamicalCocycle,
};
use qf_core::group::{cyclic_group, dihedral_group, direct_product, group_automorphisms, FiniteGroup};
use qf_core::perm::{all_permutations, Permutation};
use qf_core::quandle::{
    alexander_quandle, are_isomorphic, conj_quandle, core_quandle, dihedral_quandle, inner_orbits, is_connected,
    trivial_quandle, FiniteQuandle,
};
use qf_core::Limits;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Report;
use crate::spec::{catalog_groups, catalog_quandles, parse_group, parse_quandle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scale {
    Small,
    Default,
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub limits: Limits,
    pub seed: u64,
    pub scale: Scale,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { limits: Limits::default(), seed: 0, scale: Scale::Default }
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "quandle axioms across constructors"),
    (2, "construction identities"),
    (3, "second cohomology by Smith form and by enumeration"),
    (4, "cohomology anchors"),
    (5, "automorphisms of abelian extensions: exactness by counting"),
    (6, "automorphisms of dynamical extensions"),
    (7, "obstruction map is a derivation"),
    (8, "group extensions transported to quandle extensions"),
    (9, "adjoint group of the four-point dihedral quandle"),
    (10, "adjointness by counting"),
    (11, "maps from group cohomology to quandle cohomology"),
    (12, "fiber quandles over connected bases"),
];

pub fn verify_all(settings: &Settings) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for (n, _) in CRITERIA {
        out.extend(criterion(n, settings)?);
    }
    Ok(out)
}

/// Reports for one criterion. Setup errors (an unbuildable catalog entry)
/// are returned as `Err`; everything else becomes a verdict.
pub fn criterion(n: u8, s: &Settings) -> Result<Vec<Report>> {
    match n {
        1 => axioms(s),
        2 => construction_identities(s),
        3 => cohomology_double_path(s),
        4 => cohomology_anchors(s),
        5 => wells_abelian(s),
        6 => wells_dynamical(s),
        7 => theta_derivation(s),
        8 => transport(s),
        9 => Ok(vec![r4_adjoint(s)]),
        10 => adjointness(s),
        11 => bridge(s),
        12 => fibers(s),
        _ => anyhow::bail!("no criterion {n}; criteria run from 1 to {}", CRITERIA.len()),
    }
}

fn axioms_report(claim: String, quandles: Vec<(String, FiniteQuandle)>) -> Report {
    Report::run(claim, || {
        let failures: Vec<Value> = quandles
            .iter()
            .filter_map(|(name, q)| q.check_axioms().err().map(|e| json!({ "quandle": name, "error": e.to_string() })))
            .collect();
        Ok((failures.is_empty(), json!({ "checked": quandles.len(), "failures": failures })))
    })
}

fn axioms(s: &Settings) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push(axioms_report(format!("axioms/dihedral:{n}"), vec![(format!("dihedral:{n}"), dihedral_quandle(n)?)]));
    }
    for (name, g) in catalog_groups(&s.limits)? {
        let mut qs = Vec::new();
        for k in 0..=2 {
            qs.push((format!("conj:{name}:{k}"), conj_quandle(&g, k)));
        }
        qs.push((format!("core:{name}"), core_quandle(&g)));
        for f in group_automorphisms(&g, &s.limits)? {
            qs.push((format!("alex:{name}:{:?}", f.images()), alexander_quandle(&g, &f)?));
        }
        out.push(axioms_report(format!("axioms/constructions-over-{name}"), qs));
    }
    Ok(out)
}

fn table_equal(claim: String, got: FiniteQuandle, want: FiniteQuandle) -> Report {
    Report::run(claim, || {
        let diff = (0..got.size().min(want.size()))
            .flat_map(|x| (0..got.size().min(want.size())).map(move |y| (x, y)))
            .find(|&(x, y)| got.op(x, y) != want.op(x, y));
        let same = got.size() == want.size() && diff.is_none();
        Ok((same, json!({ "sizes": [got.size(), want.size()], "first_difference": diff })))
    })
}

fn construction_identities(s: &Settings) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let z = cyclic_group(n, &s.limits)?;
        let r = dihedral_quandle(n)?;
        out.push(table_equal(format!("identities/core-of-Z{n}-is-dihedral"), core_quandle(&z), r.clone()));
        let neg = Permutation::new((0..n).map(|a| (n - a) % n).collect())?;
        out.push(table_equal(format!("identities/alexander-negation-on-Z{n}-is-dihedral"), alexander_quandle(&z, &neg)?, r));
    }
    for (name, g) in catalog_groups(&s.limits)? {
        let t = trivial_quandle(g.size())?;
        let id = Permutation::identity(g.size());
        out.push(table_equal(format!("identities/alexander-identity-on-{name}-is-trivial"), alexander_quandle(&g, &id)?, t.clone()));
        if g.is_abelian() {
            for k in 1..=2 {
                out.push(table_equal(format!("identities/conj{k}-of-abelian-{name}-is-trivial"), conj_quandle(&g, k), t.clone()));
            }
        }
    }
    Ok(out)
}

fn coefficient_list(moduli: &[u64]) -> Vec<(String, FiniteAbelianCoefficients)> {
    moduli
        .iter()
        .map(|&m| (format!("Z{m}"), FiniteAbelianCoefficients::cyclic(m).expect("modulus ≥ 2")))
        .collect()
}

fn cohomology_double_path(s: &Settings) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for (name, x) in catalog_quandles(&s.limits)?.into_iter().filter(|(_, q)| q.size() <= 4) {
        for (an, a) in coefficient_list(&[2, 3]) {
            out.push(Report::run(format!("h2-double-path/{name}/{an}"), || {
                let smith = cohomology_group(&x, 2, &a, &s.limits)?;
                let brute = h2_by_enumeration(&x, &a, &s.limits)?;
                let ok = smith.order() == brute.order() && smith.structure() == &brute.structure;
                Ok((
                    ok,
                    json!({
                        "smith": { "order": smith.order().to_string(), "factors": smith.structure().invariant_factors() },
                        "enumeration": { "order": brute.order().to_string(), "factors": brute.structure.invariant_factors(),
                                         "cocycles": brute.z2.len(), "coboundaries": brute.b2.len() },
                    }),
                ))
            }));
        }
    }
    Ok(out)
}

fn cohomology_anchors(s: &Settings) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let z2 = FiniteAbelianCoefficients::cyclic(2)?;
    let t2 = trivial_quandle(2)?;
    out.push(Report::run("anchors/h2-of-T2-in-Z2-has-order-4-and-no-coboundaries", || {
        let h = cohomology_group(&t2, 2, &z2, &s.limits)?;
        let ok = h.order() == 4 && h.coboundary_count() == 1;
        Ok((ok, json!({ "order": h.order().to_string(), "coboundaries": h.coboundary_count().to_string() })))
    }));
    let t3 = trivial_quandle(3)?;
    out.push(Report::run("anchors/h2-of-T3-in-Z2-has-order-64", || {
        let h = cohomology_group(&t3, 2, &z2, &s.limits)?;
        Ok((h.order() == 64, json!({ "order": h.order().to_string() })))
    }));
    for (name, x) in catalog_quandles(&s.limits)? {
        for (an, a) in coefficient_list(&[2, 3]) {
            out.push(Report::run(format!("anchors/h1-of-{name}-in-{an}-counts-orbits"), || {
                let orbits = inner_orbits(&x).len();
                let expected = (a.order() as u128).pow(orbits as u32);
                let h = cohomology_group(&x, 1, &a, &s.limits)?;
                let z1 = enumerate_z1(&x, &a, &s.limits)?.len() as u128;
                Ok((
                    h.order() == expected && z1 == expected,
                    json!({ "orbits": orbits, "expected": expected.to_string(), "smith": h.order().to_string(), "enumerated": z1.to_string() }),
                ))
            }));
        }
    }
    Ok(out)
}

/// Every class representative of `H^2(X; A)`.
fn class_representatives(x: &FiniteQuandle, a: &FiniteAbelianCoefficients, limits: &Limits) -> qf_core::Result<Vec<(Vec<u64>, QuandleCochain)>> {
    let h = cohomology_group(x, 2, a, limits)?;
    Ok(h.classes(limits)?.into_iter().map(|c| (c.clone(), h.representative(&c))).collect())
}

fn wells_abelian(s: &Settings) -> Result<Vec<Report>> {
    let mut cases = vec![("trivial:2", 2), ("dihedral:3", 3)];
    if s.scale == Scale::Default {
        cases.extend([("trivial:3", 2), ("dihedral:4", 2)]);
    }
    let mut out = Vec::new();
    for (spec, m) in cases {
        let x = parse_quandle(spec, &s.limits)?;
        let a = FiniteAbelianCoefficients::cyclic(m)?;
        out.push(Report::run(format!("wells-abelian/{spec}/Z{m}/every-class"), || {
            let mut rows = Vec::new();
            let mut ok = true;
            for (class, alpha) in class_representatives(&x, &a, &s.limits)? {
                let r = verify_wells_abelian(&x, &a, &alpha, &s.limits)?;
                ok &= r.passed();
                rows.push(json!({
                    "class": class, "automorphisms": r.group_order, "z1": r.z1_order,
                    "stabilizer": r.stabilizer_order, "passed": r.passed(),
                }));
            }
            Ok((ok, json!({ "classes": rows.len(), "per_class": rows })))
        }));
    }
    Ok(out)
}

fn r4_over_t2() -> qf_core::Result<DynamicalCocycle> {
    DynamicalCocycle::from_fn(trivial_quandle(2)?, 2, |x, y, s, _| (s + usize::from(x != y)) % 2)
}

fn wells_dynamical(s: &Settings) -> Result<Vec<Report>> {
    let t2 = trivial_quandle(2)?;
    let r3 = dihedral_quandle(3)?;
    let mut cases: Vec<(String, DynamicalCocycle, Option<FiniteQuandle>)> = vec![
        ("trivial-cocycle/T2/fiber-2".into(), DynamicalCocycle::trivial(&t2, 2)?, None),
        ("trivial-cocycle/R3/fiber-2".into(), DynamicalCocycle::trivial(&r3, 2)?, None),
        ("product/R3-by-T2".into(), DynamicalCocycle::from_fiber_quandle(&r3, &t2), Some(t2.clone())),
        ("product/T2-by-R3".into(), DynamicalCocycle::from_fiber_quandle(&t2, &r3), Some(r3.clone())),
        ("R4-over-T2".into(), r4_over_t2()?, None),
    ];
    if s.scale == Scale::Default {
        cases.push(("product/R3-by-R3".into(), DynamicalCocycle::from_fiber_quandle(&r3, &r3), Some(r3.clone())));
    }
    let mut out = Vec::new();
    for (name, alpha, fiber) in cases {
        out.push(Report::run(format!("wells-dynamical/{name}"), || {
            let r = verify_wells_dynamical(&alpha, 0, fiber.as_ref(), &s.limits)?;
            Ok((
                r.passed(),
                json!({
                    "automorphisms": r.group_order, "kernel": r.kernel_order, "twists": r.kernel_twist_count,
                    "image": r.image_order, "stabilizer": r.stabilizer_order,
                    "fiber_automorphism_variant": r.fiber_automorphism_variant,
                }),
            ))
        }));
    }
    for (name, base, fiber) in [("R3-by-T2", &r3, &t2), ("T2-by-T2", &t2, &t2)] {
        out.push(Report::run(format!("wells-dynamical/splitting-section/{name}"), || {
            let r = splitting_section(base, fiber, 0, &s.limits)?;
            Ok((r.passed(), json!({ "pairs": r.pairs, "left_inverse": r.left_inverse })))
        }));
    }
    Ok(out)
}

fn theta_derivation(s: &Settings) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for spec in ["trivial:2", "dihedral:4"] {
        let x = parse_quandle(spec, &s.limits)?;
        let a = FiniteAbelianCoefficients::cyclic(2)?;
        out.push(Report::run(format!("theta/{spec}/Z2/every-base-class"), || {
            let mut ok = true;
            let mut rows = Vec::new();
            for (class, alpha) in class_representatives(&x, &a, &s.limits)? {
                let r = check_theta_derivation(&x, &a, &alpha, &s.limits)?;
                ok &= r.passed();
                rows.push(json!({ "class": class, "group": r.group_order, "pairs": r.pairs_checked,
                                  "other_classes": r.classes_checked, "passed": r.passed() }));
            }
            Ok((ok, json!({ "per_class": rows })))
        }));
    }
    Ok(out)
}

fn transport_witness(t: &Transport) -> Value {
    json!({
        "mu": t.mu, "witness": t.witness, "isomorphism": t.witness_is_isomorphism,
        "identity_fiber": t.identity_fiber_matches, "closed_form": t.closed_form_matches,
    })
}

fn transport(s: &Settings) -> Result<Vec<Report>> {
    let l = &s.limits;
    let mut out = Vec::new();
    let z4 = cyclic_group(4, l)?;
    out.push(Report::run("transport/core/Z4-over-subgroup-0,2-rebuilds-R4", || {
        let ext = GroupExtensionData::from_normal_subgroup(z4.clone(), &[0, 2], None)?;
        let t = extension_transport_qw(&ext, QuandleWord::Core)?;
        let built = t.cocycle.build_extension()?;
        let iso = are_isomorphic(&built, &dihedral_quandle(4)?, l)?;
        let mu_ok = t.mu(0, 1) == 1 && t.mu(1, 0) == 1;
        Ok((t.passed() && iso.is_some() && mu_ok, transport_witness(&t)))
    }));
    out.push(Report::run("transport/alexander/Z4-negation-over-subgroup-0,2", || {
        let ext = GroupExtensionData::from_normal_subgroup(z4.clone(), &[0, 2], None)?;
        let t = extension_transport_alex(&ext, &Permutation::new(vec![0, 3, 2, 1])?)?;
        Ok((t.passed(), transport_witness(&t)))
    }));
    let products = [("Z3", "Z2", QuandleWord::Core), ("S3", "Z2", QuandleWord::Core), ("S3", "Z3", QuandleWord::Conj(1))];
    for (gn, an, word) in products {
        out.push(Report::run(format!("transport/{word}/product-{gn}x{an}-splits"), || {
            let (g, a) = (parse_group(gn, l).map_err(cap_or_invalid)?, parse_group(an, l).map_err(cap_or_invalid)?);
            let ext = GroupExtensionData::from_normal_subgroup(direct_product(&g, &a, l)?, &(0..a.size()).collect::<Vec<_>>(), None)?;
            let t = extension_transport_qw(&ext, word)?;
            let product = qf_core::quandle::product_quandle(&q_w(&g, word), &q_w(&a, word));
            let ok = t.passed() && t.mu_is_trivial() && t.cocycle.build_extension()? == product;
            Ok((ok, transport_witness(&t)))
        }));
    }
    out.push(Report::run("transport/alexander/product-Z3xZ2-with-negation-and-identity-splits", || {
        let (z3, z2) = (cyclic_group(3, l)?, cyclic_group(2, l)?);
        let e = direct_product(&z3, &z2, l)?;
        let f = Permutation::new((0..6).map(|k| ((3 - k / 2) % 3) * 2 + k % 2).collect())?;
        let ext = GroupExtensionData::from_normal_subgroup(e, &[0, 1], None)?;
        let t = extension_transport_alex(&ext, &f)?;
        let (f1, f2) = t.induced.clone().expect("alexander transport records induced maps");
        let product = qf_core::quandle::product_quandle(&alexander_quandle(&z3, &f1)?, &alexander_quandle(&z2, &f2)?);
        let ok = t.passed() && t.mu_is_trivial() && t.cocycle.build_extension()? == product;
        Ok((ok, transport_witness(&t)))
    }));
    out.push(Report::run("transport/conj:1/D4-over-center", || {
        let ext = GroupExtensionData::from_normal_subgroup(dihedral_group(4, l)?, &[0, 2], None)?;
        let t = extension_transport_qw(&ext, QuandleWord::Conj(1))?;
        Ok((t.passed(), transport_witness(&t)))
    }));
    Ok(out)
}

fn cap_or_invalid(e: anyhow::Error) -> qf_core::Error {
    match e.downcast::<qf_core::Error>() {
        Ok(inner) => inner,
        Err(other) => qf_core::Error::InvalidArgument(other.to_string()),
    }
}

fn r4_adjoint(s: &Settings) -> Report {
    Report::run("adjoint/four-point-dihedral-quandle", || {
        let r = r4_adjoint_report(&s.limits)?;
        Ok((
            r.passed(),
            json!({
                "abelianization": r.abelianization.invariant_factors(), "relators_checked": r.relators_checked,
                "first_violated_relator": r.first_violated_relator, "quotient_images": r.quotient_images,
                "b0_image": r.b0_image, "b0_order": r.b0_order,
            }),
        ))
    })
}

fn adjointness(s: &Settings) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for xs in ["trivial:2", "dihedral:3", "dihedral:4"] {
        let x = parse_quandle(xs, &s.limits)?;
        for gs in ["Z2", "Z4", "S3"] {
            let g = parse_group(gs, &s.limits)?;
            for word in [QuandleWord::Core, QuandleWord::Conj(1)] {
                out.push(Report::run(format!("adjointness/{xs}/{gs}/{word}"), || {
                    let r = adjointness_count_check(&x, &g, word, &s.limits)?;
                    Ok((r.passed(), json!({ "quandle_homs": r.quandle_homs, "assignments": r.group_assignments, "bijection": r.bijection_holds })))
                }));
            }
        }
    }
    Ok(out)
}

/// Every map `G → A`, so that representative + coboundary runs over all of `Z^2`.
fn all_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = code % k;
                code /= k;
            }
            v
        })
        .collect()
}

fn random_maps(rng: &mut ChaCha8Rng, count: usize, n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..count).map(|_| (0..n).map(|_| rng.gen_range(0..k)).collect()).collect()
}

pub const RANDOM_TWISTS: usize = 100;

fn bridge(s: &Settings) -> Result<Vec<Report>> {
    let l = &s.limits;
    let a = FiniteAbelianCoefficients::cyclic(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut out = Vec::new();
    let lambda_groups = ["Z2", "Z4", "Klein"];
    let mut groups: Vec<(&str, FiniteGroup)> = Vec::new();
    for name in lambda_groups.iter().chain(["S3"].iter()) {
        groups.push((name, parse_group(name, l)?));
    }
    for (name, g) in &groups {
        let every = all_maps(g.size(), a.order());
        let random = random_maps(&mut rng, RANDOM_TWISTS, g.size(), a.order());
        if lambda_groups.contains(name) {
            for (label, twists) in [("every-cocycle", &every), ("seeded-random-twists", &random)] {
                out.push(Report::run(format!("bridge/lambda/{name}/Z2/{label}"), || {
                    let r = lambda_report(g, &a, twists, l)?;
                    Ok((
                        r.passed(),
                        json!({
                            "twists": twists.len(), "h2": r.h2_order.to_string(), "symmetric": r.sym_order,
                            "valid": r.outputs_valid, "well_defined": r.well_defined, "additive": r.additive,
                            "kernel": r.kernel_order, "image": r.image_order, "core_of_extension": r.matches_core_of_extension,
                        }),
                    ))
                }));
            }
        }
        for (label, twists) in [("every-cocycle", &every), ("seeded-random-twists", &random)] {
            out.push(Report::run(format!("bridge/gamma/{name}/Z2/{label}"), || {
                let r = gamma_report(g, &a, twists, l)?;
                Ok((
                    r.passed(),
                    json!({
                        "twists": twists.len(), "h2": r.h2_order.to_string(), "target": r.target_order.to_string(),
                        "valid": r.outputs_valid, "well_defined": r.well_defined, "additive": r.additive,
                        "kernel": r.kernel_order, "image": r.image_order,
                    }),
                ))
            }));
        }
    }
    out.push(Report::run("bridge/lambda/carry-cocycle-rebuilds-R4", || {
        let z2 = cyclic_group(2, l)?;
        let carry = GroupCocycle2::from_fn(z2, a.clone(), |x, y| usize::from(x + y >= 2))?;
        let fs = lambda_map(&carry)?;
        let built = fs.build_extension()?;
        let iso = are_isomorphic(&built, &dihedral_quandle(4)?, l)?;
        Ok((iso.is_some(), json!({ "factor_set": fs.values(), "isomorphism": iso.map(|p| p.into_images()) })))
    }));
    Ok(out)
}

fn fibers(s: &Settings) -> Result<Vec<Report>> {
    let l = &s.limits;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed ^ 0x5eed);
    let fibers = [("T2", trivial_quandle(2)?), ("R3", dihedral_quandle(3)?)];
    let z2 = FiniteAbelianCoefficients::cyclic(2)?;
    let mut out = Vec::new();
    for (name, base) in catalog_quandles(l)?.into_iter().filter(|(_, q)| is_connected(q).0) {
        let mut cocycles: Vec<(String, DynamicalCocycle)> = Vec::new();
        for (fname, f) in &fibers {
            cocycles.push((format!("product-{fname}"), DynamicalCocycle::from_fiber_quandle(&base, f)));
        }
        if let Ok(reps) = class_representatives(&base, &z2, l) {
            for (class, alpha) in reps.into_iter().take(4) {
                cocycles.push((format!("abelian-Z2-class-{class:?}"), abelian_as_dynamical(&base, &z2, &alpha)?));
            }
        }
        let twisted: Vec<(String, DynamicalCocycle)> = cocycles
            .iter()
            .map(|(n, c)| {
                let perms = all_permutations(c.fiber_size());
                let lambda: Vec<Permutation> =
                    (0..base.size()).map(|_| perms.choose(&mut rng).expect("nonempty").clone()).collect();
                Ok((format!("{n}-twisted"), twist_dynamical(c, &lambda)?))
            })
            .collect::<qf_core::Result<_>>()?;
        cocycles.extend(twisted);
        out.push(Report::run(format!("fibers/{name}"), || {
            let mut ok = true;
            let mut rows = Vec::new();
            for (cn, c) in &cocycles {
                let r = fibers_isomorphic_report(c)?;
                ok &= r.passed();
                rows.push(json!({ "cocycle": cn, "orbits": r.orbits.len(), "passed": r.passed() }));
            }
            Ok((ok, json!({ "cocycles": rows })))
        }));
    }
    Ok(out)
}
