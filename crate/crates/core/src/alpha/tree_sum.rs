//! Spanning-tree route: one term per tree `T`, carrying the word `da_{T̄}` and
//! a sum over perfect matchings of `T̄` of products of edge Dodgsons.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{zero_form, AlphaError};
use crate::combinat::{matching_multiplicity, perfect_matchings};
use crate::dodgson::Dodgson;
use crate::forms::{AlphaForm, DiffForm, Generator, ScalarPrefactor};
use crate::graph::Graph;
use crate::poly::MPoly;

#[derive(Debug, Clone)]
pub struct TreeTerm {
    pub tree: Vec<usize>,
    /// `T̄ = E \ T`, ascending.
    pub complement: Vec<usize>,
    pub incidence_det: i64,
    /// `(-1)^{Σ T̄ + L/2} det I[T]`.
    pub sign: i64,
    /// The distinct perfect matchings of `T̄`.
    pub matchings: Vec<Vec<(usize, usize)>>,
    /// How many permutations of `T̄` give each matching's product.
    pub multiplicity: BigInt,
    /// `multiplicity · Σ_matchings Π ψ^{e,f}`.
    pub dodgson_sum: MPoly,
}

/// One term per spanning tree, in lexicographic tree order. Empty for odd `L`
/// and for disconnected graphs.
pub fn tree_terms(g: &Graph, d: &Dodgson) -> Result<Vec<TreeTerm>, AlphaError> {
    let loops = g.loop_number();
    if super::zero_reason(g).is_some() {
        return Ok(Vec::new());
    }
    let multiplicity = matching_multiplicity(loops);
    let scale = BigRational::from_integer(multiplicity.clone());
    let mut out = Vec::new();
    for tree in g.spanning_trees() {
        let complement: Vec<usize> = (1..=g.edge_count()).filter(|e| !tree.contains(e)).collect();
        let incidence_det = g.incidence_det(&tree)?;
        let sign = g.tree_sign(&tree)?;
        let matchings = perfect_matchings(&complement);
        let mut sum = MPoly::zero(d.registry());
        for m in &matchings {
            let mut prod = MPoly::one(d.registry());
            for &(e, f) in m {
                prod = &prod * &d.edge(e, f)?;
            }
            sum.add_assign_ref(&prod);
        }
        out.push(TreeTerm { tree, complement, incidence_det, sign, matchings, multiplicity: multiplicity.clone(), dodgson_sum: sum.scale(&scale) });
    }
    Ok(out)
}

/// `α = π^{(|V|-1)/2} / (4^L (L/2)! ψ^{(L+1)/2}) · Σ_T det I[T] · dodgson_sum(T) · da_{T̄}`.
pub fn alpha_tree_sum(g: &Graph) -> Result<AlphaForm, AlphaError> {
    if super::zero_reason(g).is_some() {
        return Ok(zero_form(g));
    }
    let d = Dodgson::new(g);
    let loops = g.loop_number();
    let reg = d.registry().clone();
    let mut body = DiffForm::zero(&reg);
    for t in tree_terms(g, &d)? {
        let word = t.complement.iter().map(|&e| Generator::DA(e)).collect();
        body.add_term(word, t.dodgson_sum.scale_int(t.incidence_det));
    }
    let den = (BigInt::one() << (2 * loops)) * crate::combinat::factorial(loops / 2);
    let prefactor = ScalarPrefactor {
        rational: BigRational::new(BigInt::one(), den),
        pi_half: i32::try_from(g.reduced_dim()).expect("small"),
        psi_half: -i32::try_from(loops + 1).expect("small"),
        a_half: vec![0; g.edge_count()],
    };
    let form = AlphaForm { prefactor, body, psi: d.psi(), v_star: g.v_star() };
    Ok(form.normalize()?)
}
