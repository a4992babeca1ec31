use itertools::Itertools;

use super::{alpha_brute, alpha_tree_sum, AlphaError};
use crate::forms::{merge_sign, AlphaForm, DiffForm, Generator, Word};
use crate::graph::Graph;
use crate::poly::MPoly;

/// Coefficient of `da_E` in `α ∧ α`, with the squared prefactor cleared.
#[derive(Debug, Clone)]
pub struct QECoefficient {
    pub edges: Vec<usize>,
    pub value: MPoly,
}

/// True iff `2L > |E|`, in which case `α ∧ α` has no admissible word.
pub fn edge_bound_check(g: &Graph) -> bool {
    2 * g.loop_number() > g.edge_count()
}

/// Every `2L`-subset of the edges with its coefficient in `α ∧ α`. The
/// prefactor of the square is `α.prefactor²`.
pub fn wedge_self(alpha: &AlphaForm) -> Result<Vec<QECoefficient>, AlphaError> {
    let edges = alpha.prefactor.a_half.len();
    let Some(deg) = alpha.degree() else {
        return Ok(Vec::new());
    };
    if 2 * deg > edges {
        return Ok(Vec::new());
    }
    let square = square_even(&alpha.body, deg)?;
    Ok((1..=edges)
        .combinations(2 * deg)
        .map(|set| {
            let word: Word = set.iter().map(|&e| Generator::DA(e)).collect();
            QECoefficient { value: square.coefficient(&word), edges: set }
        })
        .collect())
}

/// `β ∧ β` for a homogeneous form of degree `deg`. For even positive degree
/// the words commute and square to zero, so each unordered pair is computed
/// once and doubled.
fn square_even(body: &DiffForm, deg: usize) -> Result<DiffForm, AlphaError> {
    if deg == 0 || deg % 2 == 1 {
        return Ok(body.wedge(body)?);
    }
    let terms: Vec<(&Word, &MPoly)> = body.terms().collect();
    let mut out = DiffForm::zero(body.registry());
    for (i, (w1, c1)) in terms.iter().enumerate() {
        for (w2, c2) in &terms[i + 1..] {
            let Some((sign, word)) = merge_sign(w1, w2) else { continue };
            let c = (*c1 * *c2).scale_int(if sign < 0 { -2 } else { 2 });
            out.add_term(word, c);
        }
    }
    Ok(out)
}

/// Outcome of comparing the two pipelines.
#[derive(Debug, Clone)]
pub struct Agreement {
    pub agree: bool,
    pub brute: AlphaForm,
    pub tree_sum: AlphaForm,
    /// First word whose cross-multiplied coefficients differ.
    pub witness: Option<(Word, MPoly, MPoly)>,
}

/// Bodies rescaled to a common prefactor, if the prefactors are comparable.
fn common_bodies(a: &AlphaForm, b: &AlphaForm) -> Option<(DiffForm, DiffForm)> {
    let (p, q) = (&a.prefactor, &b.prefactor);
    if p.pi_half != q.pi_half || p.a_half != q.a_half || a.psi != b.psi || (p.psi_half - q.psi_half) % 2 != 0 {
        return None;
    }
    let d = p.psi_half - q.psi_half;
    let lift = a.psi.pow(d.unsigned_abs() / 2);
    let mut lhs = a.body.map_coefficients(|c| c.scale(&p.rational));
    let mut rhs = b.body.map_coefficients(|c| c.scale(&q.rational));
    if d > 0 {
        lhs = lhs.map_coefficients(|c| c * &lift);
    } else if d < 0 {
        rhs = rhs.map_coefficients(|c| c * &lift);
    }
    Some((lhs, rhs))
}

pub fn pipelines_agree(g: &Graph) -> Result<Agreement, AlphaError> {
    let brute = alpha_brute(g)?;
    let tree_sum = alpha_tree_sum(g)?;
    let agree = brute.equals(&tree_sum);
    let mut witness = None;
    if !agree {
        let (lhs, rhs) = common_bodies(&brute, &tree_sum)
            .unwrap_or_else(|| (brute.body.clone(), tree_sum.body.clone()));
        let words: std::collections::BTreeSet<Word> = lhs.terms().chain(rhs.terms()).map(|(w, _)| w.clone()).collect();
        witness = words
            .into_iter()
            .map(|w| {
                let (l, r) = (lhs.coefficient(&w), rhs.coefficient(&w));
                (w, l, r)
            })
            .find(|(_, l, r)| l != r);
    }
    Ok(Agreement { agree, brute, tree_sum, witness })
}
