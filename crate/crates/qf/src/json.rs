//! JSON interchange formats.
//!
//! * group / quandle: `{"size": n, "table": [[...]]}`, `table[a][b] = a·b` or `a * b`
//! * dynamical cocycle: `{"base": <quandle>, "fiber_size": m, "alpha": [x][y][s][t]}`
//! * cochain: `{"degree": n, "entries": [[x_1, …, x_n, [a-coordinates]], ...]}`;
//!   entries left out are zero
//! * factor set: a degree-2 cochain plus `"a"` and `"b"` tables (`|X|²` rows of `|A|` images)
//! * presentation: `{"generators": k, "relators": [[+i, -j, ...], ...]}`

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qf_core::adjoint::GroupPresentation;
use qf_core::bridge::FactorSet;
use qf_core::cohomology::{FiniteAbelianCoefficients, QuandleCochain, TupleBasis};
use qf_core::dynamical::DynamicalCocycle;
use qf_core::group::FiniteGroup;
use qf_core::quandle::FiniteQuandle;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableJson {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl TableJson {
    fn checked_rows(&self) -> Result<&[Vec<usize>]> {
        if self.table.len() != self.size {
            bail!("\"size\" is {} but the table has {} rows", self.size, self.table.len());
        }
        Ok(&self.table)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DynamicalJson {
    pub base: TableJson,
    pub fiber_size: usize,
    pub alpha: Vec<Vec<Vec<Vec<usize>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: usize,
    pub relators: Vec<Vec<i64>>,
}

pub fn group_to_json(g: &FiniteGroup) -> TableJson {
    TableJson { size: g.size(), table: g.rows() }
}

pub fn quandle_to_json(q: &FiniteQuandle) -> TableJson {
    TableJson { size: q.size(), table: q.rows() }
}

pub fn group_from_json(t: &TableJson) -> Result<FiniteGroup> {
    Ok(FiniteGroup::from_table(t.checked_rows()?)?)
}

pub fn quandle_from_json(t: &TableJson) -> Result<FiniteQuandle> {
    Ok(FiniteQuandle::from_table(t.checked_rows()?)?)
}

pub fn dynamical_to_json(c: &DynamicalCocycle) -> DynamicalJson {
    DynamicalJson { base: quandle_to_json(c.base()), fiber_size: c.fiber_size(), alpha: c.nested() }
}

pub fn dynamical_from_json(d: &DynamicalJson) -> Result<DynamicalCocycle> {
    Ok(DynamicalCocycle::from_nested(quandle_from_json(&d.base)?, d.fiber_size, &d.alpha)?)
}

pub fn presentation_to_json(p: &GroupPresentation) -> PresentationJson {
    PresentationJson { generators: p.generators(), relators: p.relators().to_vec() }
}

pub fn presentation_from_json(p: &PresentationJson) -> Result<GroupPresentation> {
    Ok(GroupPresentation::new(p.generators, p.relators.clone())?)
}

/// Nonzero entries only.
pub fn cochain_to_json(c: &QuandleCochain, a: &FiniteAbelianCoefficients) -> Value {
    let entries: Vec<Value> = c
        .entries()
        .into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|(t, v)| {
            let mut row: Vec<Value> = t.into_iter().map(Value::from).collect();
            row.push(json!(a.decode(v)));
            Value::Array(row)
        })
        .collect();
    json!({ "degree": c.degree(), "entries": entries })
}

pub fn cochain_from_json(v: &Value, points: usize, a: &FiniteAbelianCoefficients) -> Result<QuandleCochain> {
    let degree = v["degree"].as_u64().context("cochain needs an integer \"degree\"")? as usize;
    let basis = TupleBasis::new(points, degree);
    let mut values = vec![0usize; basis.len()];
    let mut seen = BTreeMap::new();
    for (k, entry) in v["entries"].as_array().context("cochain needs an \"entries\" array")?.iter().enumerate() {
        let row = entry.as_array().with_context(|| format!("entry {k} is not an array"))?;
        if row.len() != degree + 1 {
            bail!("entry {k} should hold {degree} points and a coefficient");
        }
        let tuple: Vec<usize> = row[..degree]
            .iter()
            .map(|x| x.as_u64().filter(|&x| (x as usize) < points).map(|x| x as usize))
            .collect::<Option<_>>()
            .with_context(|| format!("entry {k} has a point outside 0..{points}"))?;
        let coords: Vec<u64> = serde_json::from_value(row[degree].clone())
            .with_context(|| format!("entry {k}: coefficient must be a list of integers"))?;
        if coords.len() != a.moduli().len() {
            bail!("entry {k}: coefficient has {} coordinates, expected {}", coords.len(), a.moduli().len());
        }
        let coords: Vec<u64> = coords.iter().zip(a.moduli()).map(|(c, m)| c % m).collect();
        let pos = basis.position(&tuple).with_context(|| format!("entry {k} is a degenerate tuple"))?;
        if seen.insert(pos, k).is_some() {
            bail!("entry {k} repeats tuple {tuple:?}");
        }
        values[pos] = a.encode(&coords);
    }
    Ok(QuandleCochain::from_values(points, degree, values)?)
}

pub fn factor_set_to_json(f: &FactorSet) -> Value {
    let m = f.module();
    let n = m.base().size();
    let cochain = QuandleCochain::from_pairs(n, |x, y| f.get(x, y));
    let mut v = cochain_to_json(&cochain, m.coefficients());
    v["a"] = json!(m.a_table());
    v["b"] = json!(m.b_table());
    v
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_group(path: &Path) -> Result<FiniteGroup> {
    group_from_json(&read_json(path)?)
}

pub fn read_quandle(path: &Path) -> Result<FiniteQuandle> {
    quandle_from_json(&read_json(path)?)
}

pub fn read_dynamical(path: &Path) -> Result<DynamicalCocycle> {
    dynamical_from_json(&read_json(path)?)
}

pub fn read_cochain(path: &Path, points: usize, a: &FiniteAbelianCoefficients) -> Result<QuandleCochain> {
    cochain_from_json(&read_json(path)?, points, a)
}

pub fn read_presentation(path: &Path) -> Result<GroupPresentation> {
    presentation_from_json(&read_json(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qf_core::quandle::dihedral_quandle;

    #[test]
    fn quandle_round_trip() {
        let q = dihedral_quandle(5).unwrap();
        let text = serde_json::to_string(&quandle_to_json(&q)).unwrap();
        let back: TableJson = serde_json::from_str(&text).unwrap();
        assert_eq!(quandle_from_json(&back).unwrap(), q);
    }

    #[test]
    fn bad_tables_are_rejected() {
        let t: TableJson = serde_json::from_str(r#"{"size": 2, "table": [[0, 0], [0, 1]]}"#).unwrap();
        assert!(quandle_from_json(&t).is_err());
        let t: TableJson = serde_json::from_str(r#"{"size": 3, "table": [[0, 1], [1, 0]]}"#).unwrap();
        assert!(group_from_json(&t).is_err());
    }

    #[test]
    fn cochain_round_trip() {
        let a = FiniteAbelianCoefficients::new(vec![2, 3]).unwrap();
        let c = QuandleCochain::from_pairs(3, |x, y| (x + 2 * y) % 6);
        let v = cochain_to_json(&c, &a);
        assert_eq!(cochain_from_json(&v, 3, &a).unwrap(), c);
    }

    #[test]
    fn cochain_errors() {
        let a = FiniteAbelianCoefficients::cyclic(2).unwrap();
        let degenerate = json!({"degree": 2, "entries": [[1, 1, [1]]]});
        assert!(cochain_from_json(&degenerate, 2, &a).is_err());
        let repeated = json!({"degree": 2, "entries": [[0, 1, [1]], [0, 1, [0]]]});
        assert!(cochain_from_json(&repeated, 2, &a).is_err());
        let wide = json!({"degree": 2, "entries": [[0, 1, [1, 0]]]});
        assert!(cochain_from_json(&wide, 2, &a).is_err());
    }

    #[test]
    fn dynamical_round_trip() {
        let base = dihedral_quandle(3).unwrap();
        let c = DynamicalCocycle::from_fiber_quandle(&base, &dihedral_quandle(3).unwrap());
        let text = serde_json::to_string(&dynamical_to_json(&c)).unwrap();
        let back: DynamicalJson = serde_json::from_str(&text).unwrap();
        assert_eq!(dynamical_from_json(&back).unwrap(), c);
    }
}
