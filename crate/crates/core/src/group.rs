//! Finite groups given by Cayley tables.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::perm::{all_permutations, Permutation};
use crate::{Error, Limits, Result};

/// A finite group on `0..size` with identity 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    size: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a row-major Cayley table (`table[a][b] = a·b`).
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("empty group table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!("row {a} has length {}, expected {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::ShapeMismatch(format!("entry {v} out of range in row {a}")));
                }
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        let mul = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or(Error::NoIdentity)?;
        if identity != 0 {
            return Err(Error::IdentityNotZero(identity));
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul(a, b) == 0 && mul(b, a) == 0)
                .ok_or(Error::NoInverse(a))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { size: n, table, inverse })
    }

    /// Builds from a multiplication closure known to define a group with identity 0.
    pub(crate) fn from_fn_unchecked(n: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b));
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("group element without inverse")).collect();
        FiniteGroup { size: n, table, inverse }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.commutator_witness().is_none()
    }

    pub fn commutator_witness(&self) -> Option<(usize, usize)> {
        (0..self.size)
            .flat_map(|a| (a + 1..self.size).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn require_abelian(&self) -> Result<()> {
        match self.commutator_witness() {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotAbelian { a, b }),
        }
    }

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// A generating set chosen greedily, highest element order first.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.size).collect();
        by_order.sort_by_key(|&a| (core::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = BTreeSet::from([0]);
        for a in by_order {
            if span.contains(&a) {
                continue;
            }
            gens.push(a);
            span = self.subgroup_generated(&gens).into_iter().collect();
            if span.len() == self.size {
                break;
            }
        }
        gens
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let a = out[k];
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    out.push(b);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Checks that `map` is a homomorphism `self → target`.
    pub fn check_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> Result<()> {
        if map.len() != self.size || map.iter().any(|&v| v >= target.size) {
            return Err(Error::ShapeMismatch("homomorphism image list has wrong shape".into()));
        }
        for a in 0..self.size {
            for b in 0..self.size {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism { context: "group map", witness: vec![a, b] });
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
}

fn check_order(order: usize, limits: &Limits) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    if order > limits.max_group_order {
        return Err(Error::CapExceeded {
            what: "group order",
            needed: order as u128,
            cap: limits.max_group_order as u128,
        });
    }
    Ok(())
}

/// `Z_m` under addition.
pub fn cyclic_group(m: usize, limits: &Limits) -> Result<FiniteGroup> {
    check_order(m, limits)?;
    Ok(FiniteGroup::from_fn_unchecked(m, |a, b| (a + b) % m))
}

/// `G × H`, element `(g, h)` at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let nh = h.size();
    check_order(g.size().saturating_mul(nh), limits)?;
    Ok(FiniteGroup::from_fn_unchecked(g.size() * nh, |a, b| {
        g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh)
    }))
}

/// The dihedral group of order `2m`; index `i + m·e` is `r^i s^e`, so `r = 1` and `s = m`.
pub fn dihedral_group(m: usize, limits: &Limits) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidArgument("dihedral group needs m ≥ 1".into()));
    }
    check_order(2 * m, limits)?;
    Ok(FiniteGroup::from_fn_unchecked(2 * m, |a, b| {
        let (i, e) = (a % m, a / m);
        let (j, f) = (b % m, b / m);
        // r^i s^e r^j s^f = r^(i ± j) s^(e+f)
        let k = if e == 0 { (i + j) % m } else { (i + m - j) % m };
        k + m * ((e + f) % 2)
    }))
}

/// Symmetric group on `k ≤ 5` letters. Elements are the permutations in
/// lexicographic order and `a·b = a ∘ b` (apply `b` first).
pub fn symmetric_group(k: usize, limits: &Limits) -> Result<FiniteGroup> {
    if k == 0 || k > 5 {
        return Err(Error::InvalidArgument(format!("symmetric group degree {k} outside 1..=5")));
    }
    let perms = all_permutations(k);
    check_order(perms.len(), limits)?;
    let index = |p: &Permutation| perms.binary_search(p).expect("closed under composition");
    Ok(FiniteGroup::from_fn_unchecked(perms.len(), |a, b| index(&perms[a].compose(&perms[b]))))
}

/// The permutations of `0..k` that `symmetric_group(k)` uses as its elements.
pub fn symmetric_group_elements(k: usize) -> Vec<Permutation> {
    all_permutations(k)
}

/// All homomorphisms `source → target`, as image lists.
pub fn group_homomorphisms(source: &FiniteGroup, target: &FiniteGroup, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    hom_search(source, target, false, limits)
}

/// `Aut(G)` as permutations of the element indices.
pub fn group_automorphisms(group: &FiniteGroup, limits: &Limits) -> Result<Vec<Permutation>> {
    let maps = hom_search(group, group, true, limits)?;
    Ok(maps.into_iter().map(Permutation::from_vec_unchecked).collect())
}

fn hom_search(source: &FiniteGroup, target: &FiniteGroup, bijective: bool, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let gens = source.generators();
    // Candidate images per generator: order must divide (or equal, for automorphisms).
    let target_orders: Vec<usize> = (0..target.size()).map(|b| target.element_order(b)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let og = source.element_order(g);
            (0..target.size())
                .filter(|&b| if bijective { target_orders[b] == og } else { og % target_orders[b] == 0 })
                .collect()
        })
        .collect();
    let space = candidates.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    limits.check_search("group homomorphism search", space)?;

    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_from_generators(source, target, &gens, &images) {
            if !bijective || is_bijective(&map) {
                out.push(map);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                out.sort();
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn is_bijective(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&v| v < seen.len() && !core::mem::replace(&mut seen[v], true))
}

/// Extends generator images to a homomorphism when one exists.
fn extend_from_generators(source: &FiniteGroup, target: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.size()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut k = 0;
    while k < queue.len() {
        let a = queue[k];
        for (&g, &img) in gens.iter().zip(images) {
            let b = source.mul(a, g);
            let fb = target.mul(map[a], img);
            if map[b] == usize::MAX {
                map[b] = fb;
                queue.push(b);
            } else if map[b] != fb {
                return None;
            }
        }
        k += 1;
    }
    debug_assert!(map.iter().all(|&v| v != usize::MAX));
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::is_subgroup;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn z2_table_is_a_group() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::NoInverse(1));
    }

    #[test]
    fn nonassociative_table_is_reported() {
        // identity 0, every element self-inverse, but not associative
        let t = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
        assert!(matches!(FiniteGroup::from_table(&t), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn identity_must_be_index_zero() {
        let t = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(FiniteGroup::from_table(&t), Err(Error::IdentityNotZero(1)));
    }

    #[test]
    fn s3_is_valid_and_nonabelian() {
        let s3 = symmetric_group(3, &lim()).unwrap();
        let again = FiniteGroup::from_table(&s3.rows()).unwrap();
        assert_eq!(again.size(), 6);
        assert!(!again.is_abelian());
    }

    #[test]
    fn klein_four_from_product() {
        let z2 = cyclic_group(2, &lim()).unwrap();
        let v = direct_product(&z2, &z2, &lim()).unwrap();
        assert_eq!(v.size(), 4);
        assert!((1..4).all(|a| v.element_order(a) == 2));
    }

    #[test]
    fn d4_presentation_holds() {
        let d4 = dihedral_group(4, &lim()).unwrap();
        let (r, s) = (1, 4);
        assert_eq!(d4.element_order(r), 4);
        assert_eq!(d4.element_order(s), 2);
        assert_eq!(d4.mul(d4.mul(s, r), s), d4.inv(r));
        assert!(FiniteGroup::from_table(&d4.rows()).is_ok());
    }

    #[test]
    fn size_cap_is_enforced() {
        let small = Limits { max_group_order: 10, ..Limits::default() };
        assert!(matches!(cyclic_group(11, &small), Err(Error::CapExceeded { .. })));
    }

    // Oracle: brute force over all permutations of the elements.
    fn brute_force_automorphisms(g: &FiniteGroup) -> Vec<Permutation> {
        all_permutations(g.size())
            .into_iter()
            .filter(|p| g.check_homomorphism(g, p.images()).is_ok())
            .collect()
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let z2 = cyclic_group(2, &lim()).unwrap();
        let z4 = cyclic_group(4, &lim()).unwrap();
        let v4 = direct_product(&z2, &z2, &lim()).unwrap();
        let s3 = symmetric_group(3, &lim()).unwrap();
        for (g, expected) in [(&z2, 1), (&z4, 2), (&v4, 6), (&s3, 6)] {
            let auts = group_automorphisms(g, &lim()).unwrap();
            assert_eq!(auts.len(), expected);
            let mut brute = brute_force_automorphisms(g);
            brute.sort();
            assert_eq!(auts, brute);
            assert!(is_subgroup(g.size(), &auts));
        }
    }

    #[test]
    fn d4_has_eight_automorphisms() {
        let d4 = dihedral_group(4, &lim()).unwrap();
        let auts = group_automorphisms(&d4, &lim()).unwrap();
        assert_eq!(auts.len(), 8);
        assert!(is_subgroup(8, &auts));
    }

    #[test]
    fn homomorphisms_z4_to_z2() {
        let z2 = cyclic_group(2, &lim()).unwrap();
        let z4 = cyclic_group(4, &lim()).unwrap();
        assert_eq!(group_homomorphisms(&z4, &z2, &lim()).unwrap().len(), 2);
        assert_eq!(group_homomorphisms(&z2, &z4, &lim()).unwrap().len(), 2);
    }
}
