//! The quandle-valued functors `Q_w` on groups, the group presentations of
//! their left adjoints, and the transport of group extensions to quandle
//! extensions.
//!
//! Words in a presentation are sequences of signed, 1-based generator
//! indices: `+i` is `e_{i-1}` and `-i` is its inverse.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{cokernel_structure, AbelianGroupStructure};
use crate::group::{dihedral_group, FiniteGroup};
use crate::limits::saturating_pow;
use crate::matrix::IntMatrix;
use crate::perm::Permutation;
use crate::quandle::{conj_quandle, core_quandle, dihedral_quandle, quandle_homs, FiniteQuandle};
use crate::{Error, Limits, Result};

mod transport;

pub use transport::{extension_transport_alex, extension_transport_qw, GroupExtensionData, Transport};

/// The two shapes of binary word `w(x, y)` for which `Q_w` lands in quandles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuandleWord {
    /// `y x⁻¹ y`
    Core,
    /// `y⁻ⁿ x yⁿ`
    Conj(i64),
}

impl fmt::Display for QuandleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuandleWord::Core => write!(f, "core"),
            QuandleWord::Conj(n) => write!(f, "conj:{n}"),
        }
    }
}

impl QuandleWord {
    /// `w(x, y)` as a word in the letters `x` and `y`.
    pub fn expand(&self, x: i64, y: i64) -> Vec<i64> {
        match *self {
            QuandleWord::Core => vec![y, -x, y],
            QuandleWord::Conj(n) => {
                let (pre, post) = if n >= 0 { (-y, y) } else { (y, -y) };
                let k = n.unsigned_abs() as usize;
                let mut w = vec![pre; k];
                w.push(x);
                w.extend(core::iter::repeat(post).take(k));
                w
            }
        }
    }

    /// `w(a, b)` evaluated in `group`.
    pub fn eval(&self, group: &FiniteGroup, a: usize, b: usize) -> usize {
        match *self {
            QuandleWord::Core => group.mul(group.mul(b, group.inv(a)), b),
            QuandleWord::Conj(n) => group.mul(group.mul(group.pow(b, -n), a), group.pow(b, n)),
        }
    }
}

/// `Q_w(G)`.
pub fn q_w(group: &FiniteGroup, word: QuandleWord) -> FiniteQuandle {
    match word {
        QuandleWord::Core => core_quandle(group),
        QuandleWord::Conj(n) => conj_quandle(group, n),
    }
}

/// A finite presentation `⟨e_0, …, e_{k-1} | r_1, r_2, …⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Vec<i64>>) -> Result<Self> {
        for (k, r) in relators.iter().enumerate() {
            if let Some(&bad) = r.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > generators) {
                return Err(Error::InvalidArgument(format!(
                    "relator {k} uses letter {bad}, outside ±1..=±{generators}"
                )));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }

    /// The same presentation with every relator freely reduced and empty ones dropped.
    pub fn reduced(&self) -> GroupPresentation {
        let relators = self.relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
        GroupPresentation { generators: self.generators, relators }
    }

    /// `(G, images)` satisfies relator `r` when the word evaluates to the identity.
    pub fn satisfies(&self, group: &FiniteGroup, images: &[usize]) -> bool {
        self.relators.iter().all(|r| eval_word(group, images, r) == 0)
    }

    /// The first relator (by position) that `images` violates.
    pub fn first_violation(&self, group: &FiniteGroup, images: &[usize]) -> Option<usize> {
        self.relators.iter().position(|r| eval_word(group, images, r) != 0)
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(word: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Evaluates a word with `e_i ↦ images[i]`.
pub fn eval_word(group: &FiniteGroup, images: &[usize], word: &[i64]) -> usize {
    word.iter().fold(0, |acc, &l| {
        let g = images[l.unsigned_abs() as usize - 1];
        group.mul(acc, if l > 0 { g } else { group.inv(g) })
    })
}

fn letter(x: usize) -> i64 {
    x as i64 + 1
}

fn inverse_word(w: &[i64]) -> Vec<i64> {
    w.iter().rev().map(|&l| -l).collect()
}

/// `Adj_w(X)`: one relator `e_{x*y} · w(e_x, e_y)⁻¹` per ordered pair, in
/// row-major order of `(x, y)`.
pub fn adj_w_presentation(x: &FiniteQuandle, word: QuandleWord) -> GroupPresentation {
    let n = x.size();
    let mut relators = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut r = vec![letter(x.op(a, b))];
            r.extend(inverse_word(&word.expand(letter(a), letter(b))));
            relators.push(r);
        }
    }
    GroupPresentation { generators: n, relators }
}

/// `Adj_φ(X)`: relators `e_{x*y} · (e_{φx} e_{φy}⁻¹ e_y)⁻¹` for `φ ∈ Aut(X)`.
pub fn adj_phi_presentation(x: &FiniteQuandle, phi: &Permutation) -> Result<GroupPresentation> {
    if phi.len() != x.size() {
        return Err(Error::ShapeMismatch("phi has the wrong degree".into()));
    }
    x.check_automorphism(phi.images()).map_err(|e| match e {
        Error::NotAHomomorphism { witness, .. } => Error::NotAHomomorphism { context: "phi is not an automorphism", witness },
        other => other,
    })?;
    let n = x.size();
    let mut relators = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let w = [letter(phi.apply(a)), -letter(phi.apply(b)), letter(b)];
            let mut r = vec![letter(x.op(a, b))];
            r.extend(inverse_word(&w));
            relators.push(r);
        }
    }
    Ok(GroupPresentation { generators: n, relators })
}

/// The abelianization, via the Smith form of the exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroupStructure {
    let mut m = IntMatrix::zeros(p.generators, p.relators.len());
    for (j, r) in p.relators.iter().enumerate() {
        let mut sums = vec![0i64; p.generators];
        for &l in r {
            sums[l.unsigned_abs() as usize - 1] += l.signum();
        }
        for (i, &v) in sums.iter().enumerate() {
            if v != 0 {
                m.set(i, j, v.into());
            }
        }
    }
    cokernel_structure(&m, &vec![0; p.generators])
}

/// Every assignment of the generators to elements of `group` that kills all
/// relators, in lexicographic order.
pub fn presentation_homs_to(p: &GroupPresentation, group: &FiniteGroup, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    limits.check_search("generator assignments", saturating_pow(group.size() as u128, p.generators))?;
    // relators grouped by the last generator they mention
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); p.generators.max(1)];
    for (k, r) in p.relators.iter().enumerate() {
        // empty relators hold everywhere
        if let Some(last) = r.iter().map(|l| l.unsigned_abs() as usize - 1).max() {
            ready[last].push(k);
        }
    }
    let mut out = Vec::new();
    if p.generators == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    let mut images = vec![0usize; p.generators];
    let mut depth = 0usize;
    let mut next = vec![0usize; p.generators];
    loop {
        if next[depth] == group.size() {
            if depth == 0 {
                break;
            }
            next[depth] = 0;
            depth -= 1;
            continue;
        }
        images[depth] = next[depth];
        next[depth] += 1;
        let ok = ready[depth].iter().all(|&k| eval_word(group, &images, &p.relators[k]) == 0);
        if !ok {
            continue;
        }
        if depth + 1 == p.generators {
            out.push(images.clone());
        } else {
            depth += 1;
        }
    }
    Ok(out)
}

/// Both sides of the adjunction counted on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointnessReport {
    pub word: QuandleWord,
    pub quandle_homs: usize,
    pub group_assignments: usize,
    /// `φ ↦ (e_x ↦ φ(x))` matches the two sets exactly.
    pub bijection_holds: bool,
}

impl AdjointnessReport {
    pub fn passed(&self) -> bool {
        self.quandle_homs == self.group_assignments && self.bijection_holds
    }
}

/// Counts `Hom(X, Q_w(G))` and the relator-satisfying assignments of
/// `Adj_w(X)` into `G`, and compares the two sets elementwise.
pub fn adjointness_count_check(
    x: &FiniteQuandle,
    group: &FiniteGroup,
    word: QuandleWord,
    limits: &Limits,
) -> Result<AdjointnessReport> {
    let target = q_w(group, word);
    let homs: BTreeSet<Vec<usize>> = quandle_homs(x, &target, limits)?.into_iter().map(|h| h.images().to_vec()).collect();
    let p = adj_w_presentation(x, word);
    let assignments: BTreeSet<Vec<usize>> = presentation_homs_to(&p, group, limits)?.into_iter().collect();
    Ok(AdjointnessReport {
        word,
        quandle_homs: homs.len(),
        group_assignments: assignments.len(),
        bijection_holds: homs == assignments,
    })
}

/// The worked example of the adjoint group of the dihedral quandle on four points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R4AdjointReport {
    pub presentation: GroupPresentation,
    pub abelianization: AbelianGroupStructure,
    /// Images of `e_0, …, e_3` in the dihedral group of order 8.
    pub quotient_images: Vec<usize>,
    pub relators_checked: usize,
    pub first_violated_relator: Option<usize>,
    /// Image of `e_0 e_2⁻¹`.
    pub b0_image: usize,
    pub b0_order: usize,
    pub b0_is_half_turn: bool,
}

impl R4AdjointReport {
    pub fn passed(&self) -> bool {
        self.abelianization.invariant_factors() == [0, 0]
            && self.first_violated_relator.is_none()
            && self.b0_is_half_turn
            && self.b0_order == 2
    }
}

/// Builds `Adj(R_4)`, checks its abelianization is `Z²`, and certifies that
/// `e_0 e_2⁻¹` survives with order 2 in the quotient `e_i ↦ s·rⁱ` onto `D_4`.
pub fn r4_adjoint_report(limits: &Limits) -> Result<R4AdjointReport> {
    let r4 = dihedral_quandle(4)?;
    let presentation = adj_w_presentation(&r4, QuandleWord::Conj(1));
    let abelianization = abelianization(&presentation);
    let d4 = dihedral_group(4, limits)?;
    // r = 1, s = 4
    let quotient_images: Vec<usize> = (0..4).map(|i| d4.mul(4, i)).collect();
    let first_violated_relator = presentation.first_violation(&d4, &quotient_images);
    let b0_image = eval_word(&d4, &quotient_images, &[1, -3]);
    Ok(R4AdjointReport {
        relators_checked: presentation.relators().len(),
        presentation,
        abelianization,
        first_violated_relator,
        b0_image,
        b0_order: d4.element_order(b0_image),
        b0_is_half_turn: b0_image == d4.pow(1, 2),
        quotient_images,
    })
}
