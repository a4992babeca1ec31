//! Direct route: expand `Π ρ_e`, keep the terms carrying every `dx`, and
//! integrate the `x`-monomials against the Gaussian by Isserlis' theorem.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{zero_form, AlphaError};
use crate::dodgson::Dodgson;
use crate::forms::{AlphaForm, DiffForm, Generator, ScalarPrefactor};
use crate::graph::Graph;
use crate::poly::{MPoly, VarRegistry};

pub const BRUTE_MAX_EDGES: usize = 12;
pub const BRUTE_MAX_TERMS: usize = 1 << 20;

/// `a1..a|E|, x1..x|V|-1`.
pub fn ax_registry(g: &Graph) -> Arc<VarRegistry> {
    Arc::new(VarRegistry::edges_and_vertices(g.edge_count(), g.reduced_dim()))
}

/// `ρ_e = (I x)_e da_e - 2 a_e Σ_j I_{e,j} dx_j`.
pub fn rho(g: &Graph, reg: &Arc<VarRegistry>, e: usize) -> Result<DiffForm, AlphaError> {
    g.edge(e)?;
    let m = g.edge_count();
    let inc = g.incidence_reduced();
    let mut ix = MPoly::zero(reg);
    let mut out = DiffForm::zero(reg);
    for j in 0..g.reduced_dim() {
        let c = inc.get(e - 1, j);
        if c != 0 {
            ix.add_assign_ref(&MPoly::var(reg, m + j).scale_int(c));
            out.add_term(vec![Generator::DX(j + 1)], MPoly::var(reg, e - 1).scale_int(-2 * c));
        }
    }
    let mut r = DiffForm::term(ix, &[Generator::DA(e)]);
    r = r.add(&out)?;
    Ok(r)
}

fn check_size(g: &Graph) -> Result<(), AlphaError> {
    if g.edge_count() > BRUTE_MAX_EDGES {
        return Err(AlphaError::TooLarge { what: "edge count", size: g.edge_count(), limit: BRUTE_MAX_EDGES });
    }
    Ok(())
}

/// The full mixed form `ρ_1 ∧ ... ∧ ρ_|E|`.
pub fn pbar(g: &Graph) -> Result<DiffForm, AlphaError> {
    expand(g, usize::MAX)
}

/// Keep exactly the terms containing every `dx_j`.
pub fn p_select(g: &Graph, form: &DiffForm) -> DiffForm {
    let n = g.reduced_dim();
    form.filter(|w| w.iter().filter(|x| matches!(x, Generator::DX(_))).count() == n)
}

/// Wedge the `ρ_e` in order, dropping words with more than `max_da` factors
/// `da` since those cannot reach the top `dx` degree.
fn expand(g: &Graph, max_da: usize) -> Result<DiffForm, AlphaError> {
    check_size(g)?;
    let reg = ax_registry(g);
    let mut acc = DiffForm::scalar(MPoly::one(&reg));
    for e in 1..=g.edge_count() {
        acc = acc.wedge(&rho(g, &reg, e)?)?;
        if max_da != usize::MAX {
            acc = acc.filter(|w| w.iter().filter(|x| matches!(x, Generator::DA(_))).count() <= max_da);
        }
        if acc.num_terms() > BRUTE_MAX_TERMS {
            return Err(AlphaError::TooLarge { what: "expanded form", size: acc.num_terms(), limit: BRUTE_MAX_TERMS });
        }
    }
    Ok(acc)
}

/// Gaussian moments `Σ_matchings Π (-1)^{p+q} ψ^{p,q}`, keyed by the
/// exponent vector of the `x`-monomial.
struct Moments<'a> {
    d: &'a Dodgson,
    cache: HashMap<Vec<u16>, MPoly>,
}

impl Moments<'_> {
    fn get(&mut self, exps: &[u16]) -> Result<MPoly, AlphaError> {
        if let Some(p) = self.cache.get(exps) {
            return Ok(p.clone());
        }
        let total: u32 = exps.iter().map(|&e| u32::from(e)).sum();
        let value = if total == 0 {
            MPoly::one(self.d.registry())
        } else if total % 2 == 1 {
            MPoly::zero(self.d.registry())
        } else {
            let j = exps.iter().position(|&e| e > 0).unwrap();
            let mut rest = exps.to_vec();
            rest[j] -= 1;
            let mut sum = MPoly::zero(self.d.registry());
            for k in 0..rest.len() {
                if rest[k] == 0 {
                    continue;
                }
                let copies = i64::from(rest[k]);
                let cov = self.d.inverse_laplacian_numerator(j + 1, k + 1)?;
                let mut sub = rest.clone();
                sub[k] -= 1;
                let tail = self.get(&sub)?;
                sum.add_assign_ref(&(&cov * &tail).scale_int(copies));
            }
            sum
        };
        self.cache.insert(exps.to_vec(), value.clone());
        Ok(value)
    }
}

/// `α` by brute-force expansion and Gaussian integration.
pub fn alpha_brute(g: &Graph) -> Result<AlphaForm, AlphaError> {
    check_size(g)?;
    if super::zero_reason(g).is_some() {
        return Ok(zero_form(g));
    }
    let m = g.edge_count();
    let n = g.reduced_dim();
    let loops = g.loop_number();
    let selected = p_select(g, &expand(g, loops)?);

    let d = Dodgson::new(g);
    let areg = d.registry().clone();
    let to_a: Vec<usize> = (0..m + n).map(|i| if i < m { i } else { 0 }).collect();
    let xvars: Vec<usize> = (m..m + n).collect();
    let mut moments = Moments { d: &d, cache: HashMap::new() };

    let mut body = DiffForm::zero(&areg);
    for (word, coeff) in selected.terms() {
        let da: Vec<Generator> = word.iter().copied().filter(|x| matches!(x, Generator::DA(_))).collect();
        let mut integrated = MPoly::zero(&areg);
        for (xexps, acoeff) in coeff.split_by(&xvars) {
            let moment = moments.get(&xexps)?;
            integrated.add_assign_ref(&(&acoeff.rename(&areg, &to_a)? * &moment));
        }
        body.add_term(da, integrated);
    }

    let two = BigInt::from(2);
    let rational = BigRational::new(
        if m % 2 == 0 { BigInt::one() } else { -BigInt::one() },
        two.pow(u32::try_from(m + loops / 2).expect("small")),
    );
    let prefactor = ScalarPrefactor {
        rational,
        pi_half: i32::try_from(n).expect("small"),
        psi_half: -i32::try_from(loops + 1).expect("small"),
        a_half: vec![-2; m],
    };
    let form = AlphaForm { prefactor, body, psi: d.psi(), v_star: g.v_star() };
    Ok(form.normalize()?)
}
