use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use super::{Dodgson, DodgsonError};
use crate::graph::Graph;
use crate::poly::{MPoly, Monomial, VarClass, VarRegistry};

/// `Σ_T Π_{e ∉ T} a_e` over spanning trees.
pub fn symanzik_from_trees(g: &Graph) -> MPoly {
    let reg = g.edge_registry();
    let mut out = MPoly::zero(&reg);
    for t in g.spanning_trees() {
        let exps = (1..=g.edge_count()).map(|e| u16::from(!t.contains(&e))).collect();
        out.add_term(Monomial::from_exps(exps), BigRational::one());
    }
    out
}

/// Second Symanzik polynomial with opaque kinematics.
///
/// Variables are `a1..a|E|`, then `s_j_k = q_j · q_k` for reduced positions
/// `j <= k`, then `mu_e = m_e^2`.
pub struct SecondSymanzik {
    pub registry: Arc<VarRegistry>,
    pub psi: MPoly,
    pub phi: MPoly,
}

/// `φ = ψ qᵀ L⁻¹ q − ψ Σ a_e m_e²`, written as
/// `Σ_{j,k} s_jk (-1)^{j+k} ψ^{j,k} − ψ Σ a_e mu_e`.
pub fn symanzik_second(g: &Graph) -> Result<SecondSymanzik, DodgsonError> {
    let m = g.edge_count();
    let n = g.reduced_dim();
    let mut reg = VarRegistry::edges_and_vertices(m, 0);
    let mut s_index = vec![vec![0usize; n + 1]; n + 1];
    for j in 1..=n {
        for k in j..=n {
            let id = reg.add(format!("s_{j}_{k}"), VarClass::Other)?;
            s_index[j][k] = id;
            s_index[k][j] = id;
        }
    }
    let mu: Vec<usize> = (1..=m).map(|e| reg.add(format!("mu_{e}"), VarClass::Other)).collect::<Result<_, _>>()?;
    let reg = Arc::new(reg);
    let d = Dodgson::with_registry(g, reg.clone());
    let psi = d.psi();
    let mut phi = MPoly::zero(&reg);
    for j in 1..=n {
        for k in 1..=n {
            let entry = d.inverse_laplacian_numerator(j, k)?;
            phi.add_assign_ref(&(&MPoly::var(&reg, s_index[j][k]) * &entry));
        }
    }
    let mut masses = MPoly::zero(&reg);
    for (e, &id) in mu.iter().enumerate() {
        masses.add_assign_ref(&(&MPoly::var(&reg, e) * &MPoly::var(&reg, id)));
    }
    phi = &phi - &(&psi * &masses);
    Ok(SecondSymanzik { registry: reg, psi, phi })
}

/// `L D / 2 − Σ ν_e`.
pub fn superficial_degree(g: &Graph, dimension: &BigRational, weights: &[BigRational]) -> Result<BigRational, DodgsonError> {
    if weights.len() != g.edge_count() {
        return Err(DodgsonError::SizeMismatch { rows: weights.len(), cols: g.edge_count() });
    }
    let loops = BigRational::from_integer(g.loop_number().into());
    let total: BigRational = weights.iter().cloned().sum();
    Ok(loops * dimension / BigRational::from_integer(2.into()) - total)
}
