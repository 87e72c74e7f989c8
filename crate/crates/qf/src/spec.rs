//! Named constructors for groups, quandles, coefficient groups and words,
//! and the built-in catalog.
//!
//! Groups: `Z<n>`, `S<k>`, `D<m>` (order `2m`), `Klein`, and products such
//! as `Z3xZ2`. Quandles: `trivial:<n>`, `dihedral:<n>` (also `T<n>`, `R<n>`),
//! `conj:<G>[:<k>]`, `core:<G>`, `alex:Z<n>:<k>` (multiplication by `k`).
//! Anything naming an existing file is read as JSON instead.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qf_core::adjoint::QuandleWord;
use qf_core::cohomology::FiniteAbelianCoefficients;
use qf_core::group::{cyclic_group, dihedral_group, direct_product, symmetric_group, FiniteGroup};
use qf_core::perm::Permutation;
use qf_core::quandle::{alexander_quandle, conj_quandle, core_quandle, dihedral_quandle, trivial_quandle, FiniteQuandle};
use qf_core::Limits;

use crate::json;

fn number(s: &str, what: &str) -> Result<usize> {
    s.parse().with_context(|| format!("expected a number for {what}, got {s:?}"))
}

fn group_factor(s: &str, limits: &Limits) -> Result<FiniteGroup> {
    let g = match s {
        "Klein" | "V4" => direct_product(&cyclic_group(2, limits)?, &cyclic_group(2, limits)?, limits)?,
        _ if s.starts_with('Z') => cyclic_group(number(&s[1..], "Z<n>")?, limits)?,
        _ if s.starts_with('S') => symmetric_group(number(&s[1..], "S<k>")?, limits)?,
        _ if s.starts_with('D') => dihedral_group(number(&s[1..], "D<m>")?, limits)?,
        _ => bail!("unknown group {s:?}; expected Z<n>, S<k>, D<m>, Klein or a product like Z3xZ2"),
    };
    Ok(g)
}

pub fn parse_group(s: &str, limits: &Limits) -> Result<FiniteGroup> {
    if Path::new(s).is_file() {
        return json::read_group(Path::new(s));
    }
    let mut factors = s.split('x');
    let first = factors.next().filter(|f| !f.is_empty()).ok_or_else(|| anyhow!("empty group spec"))?;
    let mut g = group_factor(first, limits)?;
    for f in factors {
        g = direct_product(&g, &group_factor(f, limits)?, limits)?;
    }
    Ok(g)
}

pub fn parse_quandle(s: &str, limits: &Limits) -> Result<FiniteQuandle> {
    if Path::new(s).is_file() {
        return json::read_quandle(Path::new(s));
    }
    let parts: Vec<&str> = s.split(':').collect();
    let q = match parts.as_slice() {
        ["trivial", n] => trivial_quandle(number(n, "trivial:<n>")?)?,
        ["dihedral", n] => dihedral_quandle(number(n, "dihedral:<n>")?)?,
        [t] if t.starts_with('T') && t.len() > 1 => trivial_quandle(number(&t[1..], "T<n>")?)?,
        [r] if r.starts_with('R') && r.len() > 1 => dihedral_quandle(number(&r[1..], "R<n>")?)?,
        ["conj", g] => conj_quandle(&parse_group(g, limits)?, 1),
        ["conj", g, k] => {
            let k: i64 = k.parse().with_context(|| format!("bad exponent {k:?}"))?;
            conj_quandle(&parse_group(g, limits)?, k)
        }
        ["core", g] => core_quandle(&parse_group(g, limits)?),
        ["alex", g, k] => {
            let n = g.strip_prefix('Z').ok_or_else(|| anyhow!("alex:<G>:<k> needs a cyclic group Z<n>"))?;
            let n = number(n, "Z<n>")?;
            let k = number(k, "alex multiplier")?;
            let group = cyclic_group(n, limits)?;
            let f = Permutation::new((0..n).map(|a| a * k % n).collect())
                .map_err(|_| anyhow!("multiplication by {k} is not invertible on Z{n}"))?;
            alexander_quandle(&group, &f)?
        }
        _ => bail!("unknown quandle {s:?}; expected trivial:<n>, dihedral:<n>, conj:<G>[:<k>], core:<G> or alex:Z<n>:<k>"),
    };
    Ok(q)
}

/// `Z2`, `Z2,Z4` or `Z2xZ4`.
pub fn parse_coefficients(s: &str) -> Result<FiniteAbelianCoefficients> {
    let mut moduli = Vec::new();
    for part in s.split([',', 'x']).filter(|p| !p.is_empty()) {
        let m = part.strip_prefix('Z').ok_or_else(|| anyhow!("coefficient factor {part:?} must look like Z<n>"))?;
        moduli.push(number(m, "Z<n>")? as u64);
    }
    Ok(FiniteAbelianCoefficients::new(moduli)?)
}

/// `core`, `conj` or `conj:<n>`. Only these two shapes of word give quandles.
pub fn parse_word(s: &str) -> Result<QuandleWord> {
    match s.split(':').collect::<Vec<_>>().as_slice() {
        ["core"] => Ok(QuandleWord::Core),
        ["conj"] => Ok(QuandleWord::Conj(1)),
        ["conj", n] => Ok(QuandleWord::Conj(n.parse().with_context(|| format!("bad exponent {n:?}"))?)),
        _ => bail!("unsupported word {s:?}: only y x^-1 y (core) and y^-n x y^n (conj:<n>) define quandles on every group"),
    }
}

/// A list of indices such as `0,2,3` or `[0, 2, 3]`.
pub fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| number(p, "an index"))
        .collect()
}

#[derive(Debug, Clone)]
pub enum CatalogObject {
    Group(FiniteGroup),
    Quandle(FiniteQuandle),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub object: CatalogObject,
}

pub const CATALOG_GROUPS: [&str; 10] = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "S3", "D4", "Klein"];

pub fn catalog_quandle_specs() -> Vec<String> {
    let mut out: Vec<String> = (1..=4).map(|n| format!("trivial:{n}")).collect();
    out.extend((3..=8).map(|n| format!("dihedral:{n}")));
    for g in CATALOG_GROUPS {
        out.push(format!("conj:{g}"));
        out.push(format!("core:{g}"));
    }
    out.push("alex:Z5:2".into());
    out
}

pub fn catalog_groups(limits: &Limits) -> Result<Vec<(String, FiniteGroup)>> {
    CATALOG_GROUPS.iter().map(|&g| Ok((g.to_string(), parse_group(g, limits)?))).collect()
}

pub fn catalog_quandles(limits: &Limits) -> Result<Vec<(String, FiniteQuandle)>> {
    catalog_quandle_specs().into_iter().map(|s| Ok((s.clone(), parse_quandle(&s, limits)?))).collect()
}

/// Groups first, then quandles, in a fixed order.
pub fn catalog(limits: &Limits) -> Result<Vec<CatalogEntry>> {
    let mut out: Vec<CatalogEntry> = catalog_groups(limits)?
        .into_iter()
        .map(|(name, g)| CatalogEntry { name, object: CatalogObject::Group(g) })
        .collect();
    out.extend(
        catalog_quandles(limits)?
            .into_iter()
            .map(|(name, q)| CatalogEntry { name, object: CatalogObject::Quandle(q) }),
    );
    Ok(out)
}
