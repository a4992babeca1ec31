//! The form `alpha` by two independent routes, and the machinery for checking
//! `alpha ^ alpha = 0`.
//!
//! Both routes return an [`AlphaForm`] whose prefactor is
//! `q · π^{(|V|-1)/2} · ψ^{-(L+1)/2}` and whose body has polynomial
//! coefficients in the edge parameters.

mod brute;
mod certificate;
mod factorization;
mod qe;
mod relabel;
mod tree_sum;
mod wedge;

pub use brute::{alpha_brute, ax_registry, pbar, p_select, rho, BRUTE_MAX_EDGES, BRUTE_MAX_TERMS};
pub use certificate::{all_terms, cancellation_certificate, partner, AuxiliaryGraph, CertEntry, CertTerm, Certificate, Pair};
pub use factorization::{factorization_check, FactorizationKind, FactorizationReport};
pub use qe::{formal_registry, formal_symbol, qe_formal, qe_formal_unquotiented, qe_graph, QE_FORMAL_MAX_LOOPS};
pub use relabel::relabel_alpha;
pub use tree_sum::{alpha_tree_sum, tree_terms, TreeTerm};
pub use wedge::{edge_bound_check, pipelines_agree, wedge_self, Agreement, QECoefficient};

use crate::dodgson::DodgsonError;
use crate::forms::{AlphaForm, FormError};
use crate::graph::{Graph, GraphError};
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlphaError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Dodgson(#[from] DodgsonError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("{what} exceeds the size guard ({size} > {limit})")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("loop number {0} is odd")]
    OddLoops(usize),
    #[error("loop number {0} is outside the supported range 2..={max}", max = qe::QE_FORMAL_MAX_LOOPS)]
    LoopsOutOfRange(usize),
    #[error("edge set must have {expected} distinct edges of the graph, got {got:?}")]
    BadEdgeSet { expected: usize, got: Vec<usize> },
}

/// Why a pipeline returned the zero form without computing anything.
pub fn zero_reason(g: &Graph) -> Option<&'static str> {
    if !g.is_connected() {
        Some("disconnected graph")
    } else if g.loop_number() % 2 == 1 {
        Some("odd loop number")
    } else {
        None
    }
}

fn zero_form(g: &Graph) -> AlphaForm {
    let psi = crate::dodgson::Dodgson::new(g).psi();
    AlphaForm::zero(psi, g.edge_count(), g.v_star())
}
