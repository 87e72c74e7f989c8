//! Finite quandles given by operation tables.
//!
//! The table orientation is `table[x][y] = x * y`. The right translation
//! `S_y: x ↦ x * y` is column `y` of the table.

use alloc::format;
use alloc::vec::Vec;

use crate::group::FiniteGroup;
use crate::perm::{self, Permutation};
use crate::{Error, Result};

mod search;

pub use search::{are_isomorphic, automorphism_group, quandle_homs, stabilizer_aut};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    size: usize,
    table: Vec<usize>,
}

impl FiniteQuandle {
    /// Validates a row-major table against the three quandle axioms.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("empty quandle table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!("row {x} has length {}, expected {n}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::ShapeMismatch(format!("entry {v} out of range in row {x}")));
            }
            table.extend_from_slice(row);
        }
        let q = FiniteQuandle { size: n, table };
        q.check_axioms()?;
        Ok(q)
    }

    /// Tabulates `op` without validation.
    pub fn from_fn_unchecked(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(op(x, y));
            }
        }
        FiniteQuandle { size: n, table }
    }

    /// Tabulates `op` and validates the result.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeMismatch("empty quandle".into()));
        }
        let q = Self::from_fn_unchecked(n, op);
        if let Some(&v) = q.table.iter().find(|&&v| v >= n) {
            return Err(Error::ShapeMismatch(format!("entry {v} out of range")));
        }
        q.check_axioms()?;
        Ok(q)
    }

    /// Exhaustive check of the three axioms; the first failure is reported.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.size;
        for x in 0..n {
            if self.op(x, x) != x {
                return Err(Error::NotIdempotent(x));
            }
        }
        for y in 0..n {
            let mut preimage = alloc::vec![usize::MAX; n];
            for x in 0..n {
                let z = self.op(x, y);
                if preimage[z] != usize::MAX {
                    return Err(Error::ColumnNotBijective { y, x1: preimage[z], x2: x });
                }
                preimage[z] = x;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(xy, z) != self.op(self.op(x, z), self.op(y, z)) {
                        return Err(Error::NotSelfDistributive { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// `S_y: x ↦ x * y`.
    pub fn right_translation(&self, y: usize) -> Permutation {
        Permutation::from_vec_unchecked((0..self.size).map(|x| self.op(x, y)).collect())
    }

    /// `x ↦ y` with `x * s = y`, i.e. `S_s⁻¹`.
    pub fn right_division(&self, y: usize, s: usize) -> usize {
        (0..self.size).find(|&x| self.op(x, s) == y).expect("column is a bijection")
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.op(x, y) == x))
    }

    /// Checks `map` against `images[x*y] = images[x] * images[y]`.
    pub fn check_homomorphism(&self, target: &FiniteQuandle, map: &[usize]) -> Result<()> {
        if map.len() != self.size || map.iter().any(|&v| v >= target.size) {
            return Err(Error::ShapeMismatch("quandle map has wrong shape".into()));
        }
        for x in 0..self.size {
            for y in 0..self.size {
                if map[self.op(x, y)] != target.op(map[x], map[y]) {
                    return Err(Error::NotAHomomorphism { context: "quandle map", witness: alloc::vec![x, y] });
                }
            }
        }
        Ok(())
    }

    pub fn check_automorphism(&self, map: &[usize]) -> Result<Permutation> {
        let p = Permutation::new(map.to_vec())?;
        self.check_homomorphism(self, map)?;
        Ok(p)
    }

    pub fn is_isomorphism(&self, target: &FiniteQuandle, map: &[usize]) -> bool {
        self.size == target.size && Permutation::new(map.to_vec()).is_ok() && self.check_homomorphism(target, map).is_ok()
    }
}

/// A verified quandle homomorphism, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuandleMorphism {
    images: Vec<usize>,
}

impl QuandleMorphism {
    pub fn new(source: &FiniteQuandle, target: &FiniteQuandle, images: Vec<usize>) -> Result<Self> {
        source.check_homomorphism(target, &images)?;
        Ok(QuandleMorphism { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        QuandleMorphism { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }
}

/// `T_n`: `x * y = x`.
pub fn trivial_quandle(n: usize) -> Result<FiniteQuandle> {
    if n == 0 {
        return Err(Error::InvalidArgument("trivial quandle needs n ≥ 1".into()));
    }
    Ok(FiniteQuandle::from_fn_unchecked(n, |x, _| x))
}

/// `R_n`: `i * j = 2j − i (mod n)`.
pub fn dihedral_quandle(n: usize) -> Result<FiniteQuandle> {
    if n == 0 {
        return Err(Error::InvalidArgument("dihedral quandle needs n ≥ 1".into()));
    }
    Ok(FiniteQuandle::from_fn_unchecked(n, |i, j| (2 * j + n - i % n) % n))
}

/// `Conj_k(G)`: `a * b = b^{-k} a b^k`.
pub fn conj_quandle(group: &FiniteGroup, k: i64) -> FiniteQuandle {
    let powers: Vec<(usize, usize)> = (0..group.size()).map(|b| (group.pow(b, -k), group.pow(b, k))).collect();
    FiniteQuandle::from_fn_unchecked(group.size(), |a, b| {
        let (left, right) = powers[b];
        group.mul(group.mul(left, a), right)
    })
}

/// `Core(G)`: `a * b = b a^{-1} b`.
pub fn core_quandle(group: &FiniteGroup) -> FiniteQuandle {
    FiniteQuandle::from_fn_unchecked(group.size(), |a, b| group.mul(group.mul(b, group.inv(a)), b))
}

/// `Alex_f(G)`: `x * y = f(x y^{-1}) y`, for `f ∈ Aut(G)`.
pub fn alexander_quandle(group: &FiniteGroup, f: &Permutation) -> Result<FiniteQuandle> {
    if f.len() != group.size() {
        return Err(Error::ShapeMismatch("automorphism degree differs from group order".into()));
    }
    group.check_homomorphism(group, f.images()).map_err(|e| match e {
        Error::NotAHomomorphism { witness, .. } => Error::NotAHomomorphism { context: "Alexander map f", witness },
        other => other,
    })?;
    Ok(FiniteQuandle::from_fn_unchecked(group.size(), |x, y| {
        group.mul(f.apply(group.mul(x, group.inv(y))), y)
    }))
}

/// `X × Y` with the coordinatewise operation; `(x, y)` sits at `x·|Y| + y`.
pub fn product_quandle(x: &FiniteQuandle, y: &FiniteQuandle) -> FiniteQuandle {
    let m = y.size();
    FiniteQuandle::from_fn_unchecked(x.size() * m, |a, b| x.op(a / m, b / m) * m + y.op(a % m, b % m))
}

/// `Inn(X)`: the full closure of the right translations, sorted.
pub fn inner_group(q: &FiniteQuandle) -> Vec<Permutation> {
    let gens: Vec<Permutation> = (0..q.size()).map(|y| q.right_translation(y)).collect();
    perm::generate_group(q.size(), &gens)
}

/// Orbits of `Inn(X)`, each sorted, ordered by least element.
pub fn inner_orbits(q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let gens: Vec<Permutation> = (0..q.size()).map(|y| q.right_translation(y)).collect();
    perm::orbits(q.size(), &gens)
}

/// Connectivity together with the orbit partition.
pub fn is_connected(q: &FiniteQuandle) -> (bool, Vec<Vec<usize>>) {
    let orbits = inner_orbits(q);
    (orbits.len() == 1, orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, dihedral_group, symmetric_group};
    use crate::Limits;
    use alloc::vec;

    #[test]
    fn r3_table_is_a_quandle() {
        let q = FiniteQuandle::from_table(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(q, dihedral_quandle(3).unwrap());
    }

    #[test]
    fn t2_table_is_a_quandle() {
        let q = FiniteQuandle::from_table(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(q, trivial_quandle(2).unwrap());
        assert!(q.is_trivial());
    }

    #[test]
    fn non_bijective_column_is_rejected() {
        let err = FiniteQuandle::from_table(&[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::ColumnNotBijective { y: 0, x1: 0, x2: 1 });
    }

    #[test]
    fn q1_and_q3_failures_have_witnesses() {
        assert_eq!(FiniteQuandle::from_table(&[vec![1, 1], vec![0, 0]]).unwrap_err(), Error::NotIdempotent(0));
        let t = vec![vec![0, 2, 1, 0], vec![2, 1, 0, 1], vec![1, 0, 2, 3], vec![3, 3, 3, 2]];
        assert!(FiniteQuandle::from_table(&t).is_err());
    }

    #[test]
    fn dihedral_tables_match_formula() {
        assert_eq!(dihedral_quandle(1).unwrap().rows(), vec![vec![0]]);
        assert_eq!(
            dihedral_quandle(4).unwrap().rows(),
            vec![vec![0, 2, 0, 2], vec![3, 1, 3, 1], vec![2, 0, 2, 0], vec![1, 3, 1, 3]]
        );
        assert_eq!(trivial_quandle(1).unwrap().rows(), vec![vec![0]]);
    }

    #[test]
    fn conj_of_s3_orbits() {
        let s3 = symmetric_group(3, &Limits::default()).unwrap();
        let q = conj_quandle(&s3, 1);
        q.check_axioms().unwrap();
        let mut sizes: Vec<usize> = inner_orbits(&q).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(conj_quandle(&s3, 0).is_trivial());
    }

    #[test]
    fn core_and_alexander_identities() {
        let lim = Limits::default();
        for n in 1..=8 {
            let z = cyclic_group(n, &lim).unwrap();
            assert_eq!(core_quandle(&z), dihedral_quandle(n).unwrap());
            let neg = Permutation::new((0..n).map(|a| (n - a) % n).collect()).unwrap();
            assert_eq!(alexander_quandle(&z, &neg).unwrap(), dihedral_quandle(n).unwrap());
            assert!(alexander_quandle(&z, &Permutation::identity(n)).unwrap().is_trivial());
            assert!(conj_quandle(&z, 1).is_trivial());
        }
        let d4 = dihedral_group(4, &lim).unwrap();
        core_quandle(&d4).check_axioms().unwrap();
    }

    #[test]
    fn alexander_rejects_non_automorphism() {
        let z4 = cyclic_group(4, &Limits::default()).unwrap();
        let f = Permutation::new(vec![0, 2, 1, 3]).unwrap();
        assert!(matches!(alexander_quandle(&z4, &f), Err(Error::NotAHomomorphism { .. })));
    }

    #[test]
    fn alexander_z5_doubling_is_connected() {
        let z5 = cyclic_group(5, &Limits::default()).unwrap();
        let dbl = Permutation::new((0..5).map(|a| 2 * a % 5).collect()).unwrap();
        let q = alexander_quandle(&z5, &dbl).unwrap();
        q.check_axioms().unwrap();
        assert!(is_connected(&q).0);
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&dihedral_quandle(3).unwrap()).0);
        let (conn, orbits) = is_connected(&dihedral_quandle(4).unwrap());
        assert!(!conn);
        assert_eq!(orbits, vec![vec![0, 2], vec![1, 3]]);
        assert!(!is_connected(&trivial_quandle(2).unwrap()).0);
    }

    // Oracle: repeatedly compose column permutations until the set stops growing.
    fn closure_by_columns(q: &FiniteQuandle) -> usize {
        let cols: Vec<Permutation> = (0..q.size()).map(|y| q.right_translation(y)).collect();
        let mut set: Vec<Permutation> = vec![Permutation::identity(q.size())];
        loop {
            let mut grew = false;
            for a in set.clone() {
                for c in &cols {
                    let p = c.compose(&a);
                    if !set.contains(&p) {
                        set.push(p);
                        grew = true;
                    }
                }
            }
            if !grew {
                return set.len();
            }
        }
    }

    #[test]
    fn inner_group_orders() {
        assert_eq!(inner_group(&trivial_quandle(3).unwrap()).len(), 1);
        let r4 = dihedral_quandle(4).unwrap();
        assert_eq!(inner_group(&r4).len(), 4);
        assert_eq!(closure_by_columns(&r4), 4);
        let r3 = dihedral_quandle(3).unwrap();
        assert_eq!(inner_group(&r3).len(), closure_by_columns(&r3));
        for y in 0..r4.size() {
            assert_eq!(r4.right_translation(y).apply(y), y);
        }
    }

    #[test]
    fn product_examples() {
        let t1 = trivial_quandle(1).unwrap();
        let r3 = dihedral_quandle(3).unwrap();
        assert_eq!(product_quandle(&t1, &r3), r3);
        let t2 = trivial_quandle(2).unwrap();
        assert_eq!(product_quandle(&t2, &t2), trivial_quandle(4).unwrap());
        product_quandle(&r3, &t2).check_axioms().unwrap();
    }
}
