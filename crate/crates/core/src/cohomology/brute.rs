//! Direct enumeration of low-degree cocycles and coboundaries. Exponential,
//! kept as an independent check on the Smith normal form route.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{FiniteAbelianCoefficients, QuandleCochain, TupleBasis};
use crate::abelian::AbelianGroupStructure;
use crate::quandle::FiniteQuandle;
use crate::{Limits, Result};

struct AddTable {
    n: usize,
    sum: Vec<usize>,
    neg: Vec<usize>,
}

impl AddTable {
    fn new(a: &FiniteAbelianCoefficients) -> Self {
        let n = a.order();
        let mut sum = vec![0; n * n];
        for p in 0..n {
            for q in 0..n {
                sum[p * n + q] = a.add(p, q);
            }
        }
        AddTable { n, sum, neg: (0..n).map(|p| a.neg(p)).collect() }
    }

    #[inline]
    fn add(&self, p: usize, q: usize) -> usize {
        self.sum[p * self.n + q]
    }
}

/// Calls `f` on every vector in `0..base` of length `len`, odometer order.
fn for_each_vector(base: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut cur = vec![0usize; len];
    loop {
        f(&cur);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < base {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// All `λ: X → A` with `λ_{x*y} = λ_x` for every `x, y`.
pub fn enumerate_z1(x: &FiniteQuandle, a: &FiniteAbelianCoefficients, limits: &Limits) -> Result<Vec<QuandleCochain>> {
    let n = x.size();
    limits.check_search("1-cochains to enumerate", crate::limits::saturating_pow(a.order() as u128, n))?;
    let mut out = Vec::new();
    for_each_vector(a.order(), n, |v| {
        if (0..n).all(|p| (0..n).all(|q| v[x.op(p, q)] == v[p])) {
            out.push(QuandleCochain::from_points(n, |p| v[p]));
        }
    });
    Ok(out)
}

/// `(Z^2, B^2)` by checking every off-diagonal function `X × X → A`
/// against the explicit cocycle identity, and every `λ_{x*y} − λ_x`.
pub fn enumerate_z2_b2(
    x: &FiniteQuandle,
    a: &FiniteAbelianCoefficients,
    limits: &Limits,
) -> Result<(Vec<QuandleCochain>, Vec<QuandleCochain>)> {
    let n = x.size();
    let basis = TupleBasis::new(n, 2);
    let order = a.order() as u128;
    limits.check_search("2-cochains to enumerate", crate::limits::saturating_pow(order, basis.len()))?;
    limits.check_search("1-cochains to enumerate", crate::limits::saturating_pow(order, n))?;
    let t = AddTable::new(a);
    let mut full = vec![0usize; n * n];
    let mut z2 = Vec::new();
    for_each_vector(a.order(), basis.len(), |v| {
        for (tuple, &val) in basis.tuples().iter().zip(v) {
            full[tuple[0] * n + tuple[1]] = val;
        }
        let f = |p: usize, q: usize| full[p * n + q];
        let ok = (0..n).all(|p| {
            (0..n).all(|q| {
                let pq = x.op(p, q);
                (0..n).all(|r| t.add(f(p, q), f(pq, r)) == t.add(f(p, r), f(x.op(p, r), x.op(q, r))))
            })
        });
        if ok {
            z2.push(QuandleCochain::from_values(n, 2, v.to_vec()).expect("basis length"));
        }
    });
    let mut b2 = BTreeSet::new();
    for_each_vector(a.order(), n, |lam| {
        b2.insert(QuandleCochain::from_pairs(n, |p, q| t.add(lam[x.op(p, q)], t.neg[lam[p]])));
    });
    Ok((z2, b2.into_iter().collect()))
}

/// `H^2(X; A)` computed from the enumerated cocycles and coboundaries.
#[derive(Debug, Clone)]
pub struct BruteForceH2 {
    pub z2: Vec<QuandleCochain>,
    pub b2: Vec<QuandleCochain>,
    pub structure: AbelianGroupStructure,
}

impl BruteForceH2 {
    pub fn order(&self) -> u128 {
        (self.z2.len() / self.b2.len()) as u128
    }
}

/// Invariant factors of `Z^2/B^2` read off from the `p^k`-torsion counts
/// `|{z ∈ Z^2 : p^k z ∈ B^2}| / |B^2|`.
pub fn h2_by_enumeration(x: &FiniteQuandle, a: &FiniteAbelianCoefficients, limits: &Limits) -> Result<BruteForceH2> {
    let (z2, b2) = enumerate_z2_b2(x, a, limits)?;
    let b_set: BTreeSet<&[usize]> = b2.iter().map(|c| c.values()).collect();
    let h = z2.len() / b2.len();
    let mut factors = Vec::new();
    let mut scaled = Vec::new();
    for p in prime_factors(h) {
        let mut part = 1usize;
        while h % (part * p) == 0 {
            part *= p;
        }
        // ranks[k-1] = log_p(|H[p^k]| / |H[p^{k-1}]|) = number of factors of order ≥ p^k
        let mut ranks = Vec::new();
        let (mut prev, mut pk) = (1usize, 1i64);
        while prev < part {
            pk *= p as i64;
            let count = z2
                .iter()
                .filter(|c| {
                    scaled.clear();
                    scaled.extend(c.values().iter().map(|&v| a.scale(pk, v)));
                    b_set.contains(scaled.as_slice())
                })
                .count()
                / b2.len();
            ranks.push(log_base(count / prev, p));
            prev = count;
        }
        for (k, &r) in ranks.iter().enumerate() {
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            let q = (p as u64).pow(k as u32 + 1);
            factors.extend(core::iter::repeat(q).take(r - next));
        }
    }
    let structure = AbelianGroupStructure::from_cyclic_orders(&factors);
    Ok(BruteForceH2 { z2, b2, structure })
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn log_base(mut n: usize, p: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}
