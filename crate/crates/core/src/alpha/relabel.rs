use super::AlphaError;
use crate::forms::{AlphaForm, Generator};
use crate::poly::VarRegistry;

/// Push `alpha` forward along an edge permutation (`edge_map[e-1]` is the new
/// label of `e`). The special vertex is passed explicitly since vertex labels
/// are not part of the form.
pub fn relabel_alpha(alpha: &AlphaForm, edge_map: &[usize], v_star: usize) -> Result<AlphaForm, AlphaError> {
    let m = alpha.prefactor.a_half.len();
    let mut check = edge_map.to_vec();
    check.sort_unstable();
    if check != (1..=m).collect::<Vec<_>>() {
        return Err(AlphaError::BadEdgeSet { expected: m, got: edge_map.to_vec() });
    }
    let reg = VarRegistry::edges(m);
    let var_map: Vec<usize> = edge_map.iter().map(|e| e - 1).collect();
    let body = alpha.body.rename(&reg, &var_map, |g| match g {
        Generator::DA(e) => Some(Generator::DA(edge_map[e - 1])),
        Generator::DX(_) => None,
    })?;
    let mut prefactor = alpha.prefactor.clone();
    for (e, &h) in alpha.prefactor.a_half.iter().enumerate() {
        prefactor.a_half[edge_map[e] - 1] = h;
    }
    Ok(AlphaForm { prefactor, body, psi: alpha.psi.rename(&reg, &var_map)?, v_star })
}
