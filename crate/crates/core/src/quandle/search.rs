//! Backtracking search for quandle homomorphisms, automorphisms and isomorphisms.

use alloc::vec;
use alloc::vec::Vec;

use super::{inner_orbits, FiniteQuandle, QuandleMorphism};
use crate::perm::Permutation;
use crate::{Error, Limits, Result};

const UNSET: usize = usize::MAX;

/// Isomorphism invariants of an element: Inn-orbit size, cycle type of `S_x`,
/// and the number of `y` with `x * y = x`.
type Fingerprint = (usize, Vec<usize>, usize);

fn fingerprints(q: &FiniteQuandle) -> Vec<Fingerprint> {
    let n = q.size();
    let mut orbit_size = vec![0; n];
    for orbit in inner_orbits(q) {
        for &x in &orbit {
            orbit_size[x] = orbit.len();
        }
    }
    (0..n)
        .map(|x| {
            let fixed = (0..n).filter(|&y| q.op(x, y) == x).count();
            (orbit_size[x], q.right_translation(x).cycle_type(), fixed)
        })
        .collect()
}

fn division_table(q: &FiniteQuandle) -> Vec<usize> {
    let n = q.size();
    let mut div = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            div[q.op(x, y) * n + y] = x;
        }
    }
    div
}

struct Search<'a> {
    src: &'a FiniteQuandle,
    dst: &'a FiniteQuandle,
    src_div: Vec<usize>,
    dst_div: Vec<usize>,
    injective: bool,
    allowed: Option<Vec<bool>>,
    first_only: bool,
    nodes: u128,
    cap: u128,
    found: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(src: &'a FiniteQuandle, dst: &'a FiniteQuandle, injective: bool, cap: u128) -> Self {
        Search {
            src,
            dst,
            src_div: division_table(src),
            dst_div: division_table(dst),
            injective,
            allowed: None,
            first_only: false,
            nodes: 0,
            cap,
            found: Vec::new(),
        }
    }

    fn permitted(&self, a: usize, b: usize) -> bool {
        self.allowed.as_ref().map_or(true, |al| al[a * self.dst.size() + b])
    }

    fn assign(&self, map: &mut [usize], used: &mut [bool], a: usize, b: usize, queue: &mut Vec<usize>) -> bool {
        if map[a] != UNSET {
            return map[a] == b;
        }
        if !self.permitted(a, b) || (self.injective && used[b]) {
            return false;
        }
        map[a] = b;
        used[b] = true;
        queue.push(a);
        true
    }

    /// Closes the partial map under `*` and right division; false on contradiction.
    fn propagate(&self, map: &mut [usize], used: &mut [bool], start: usize) -> bool {
        let n = self.src.size();
        let m = self.dst.size();
        let mut queue = vec![start];
        let mut assigned: Vec<usize> = (0..n).filter(|&a| map[a] != UNSET && a != start).collect();
        while let Some(a) = queue.pop() {
            assigned.push(a);
            let snapshot = assigned.clone();
            for &b in &snapshot {
                for (p, q) in [(a, b), (b, a)] {
                    let (fp, fq) = (map[p], map[q]);
                    if !self.assign(map, used, self.src.op(p, q), self.dst.op(fp, fq), &mut queue) {
                        return false;
                    }
                    let d = self.src_div[p * n + q];
                    if !self.assign(map, used, d, self.dst_div[fp * m + fq], &mut queue) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, map: &mut Vec<usize>, used: &mut Vec<bool>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::CapExceeded { what: "quandle map search nodes", needed: self.nodes, cap: self.cap });
        }
        let Some(a) = map.iter().position(|&v| v == UNSET) else {
            self.found.push(map.clone());
            return Ok(());
        };
        for b in 0..self.dst.size() {
            if !self.permitted(a, b) || (self.injective && used[b]) {
                continue;
            }
            let mut m2 = map.clone();
            let mut u2 = used.clone();
            m2[a] = b;
            u2[b] = true;
            if self.propagate(&mut m2, &mut u2, a) {
                self.run(&mut m2, &mut u2)?;
                if self.first_only && !self.found.is_empty() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn start(&mut self) -> Result<()> {
        let mut map = vec![UNSET; self.src.size()];
        let mut used = vec![false; self.dst.size()];
        self.run(&mut map, &mut used)
    }
}

fn fingerprint_mask(x: &FiniteQuandle, y: &FiniteQuandle) -> Vec<bool> {
    let fx = fingerprints(x);
    let fy = fingerprints(y);
    let mut mask = vec![false; x.size() * y.size()];
    for a in 0..x.size() {
        for b in 0..y.size() {
            mask[a * y.size() + b] = fx[a] == fy[b];
        }
    }
    mask
}

/// Every quandle homomorphism `x → y`, in lexicographic order of image lists.
pub fn quandle_homs(x: &FiniteQuandle, y: &FiniteQuandle, limits: &Limits) -> Result<Vec<QuandleMorphism>> {
    let mut s = Search::new(x, y, false, limits.max_search);
    s.start()?;
    let mut found = s.found;
    found.sort();
    Ok(found.into_iter().map(QuandleMorphism::from_vec_unchecked).collect())
}

/// `Aut(X)`, sorted.
pub fn automorphism_group(x: &FiniteQuandle, limits: &Limits) -> Result<Vec<Permutation>> {
    limits.check_quandle("automorphism search quandle size", x.size())?;
    let mut s = Search::new(x, x, true, limits.max_search);
    s.allowed = Some(fingerprint_mask(x, x));
    s.start()?;
    let mut out: Vec<Permutation> = s.found.into_iter().map(Permutation::from_vec_unchecked).collect();
    out.sort();
    Ok(out)
}

/// `{φ ∈ Aut(X) : φ(x0) = x0}`.
pub fn stabilizer_aut(x: &FiniteQuandle, x0: usize, limits: &Limits) -> Result<Vec<Permutation>> {
    if x0 >= x.size() {
        return Err(Error::InvalidArgument(alloc::format!("base point {x0} out of range")));
    }
    Ok(automorphism_group(x, limits)?.into_iter().filter(|p| p.apply(x0) == x0).collect())
}

/// An isomorphism `x → y` if one exists.
pub fn are_isomorphic(x: &FiniteQuandle, y: &FiniteQuandle, limits: &Limits) -> Result<Option<Permutation>> {
    if x.size() != y.size() {
        return Ok(None);
    }
    limits.check_quandle("isomorphism search quandle size", x.size())?;
    let mut fx = fingerprints(x);
    let mut fy = fingerprints(y);
    fx.sort();
    fy.sort();
    if fx != fy {
        return Ok(None);
    }
    let mut s = Search::new(x, y, true, limits.max_search);
    s.allowed = Some(fingerprint_mask(x, y));
    s.first_only = true;
    s.start()?;
    Ok(s.found.into_iter().next().map(Permutation::from_vec_unchecked))
}
