//! How `α` behaves on graphs that are disconnected, have a cut vertex or have
//! a bridge: the form vanishes, or factors through the two pieces.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{alpha_tree_sum, AlphaError};
use crate::forms::{AlphaForm, DiffForm, Generator};
use crate::graph::{Graph, UnionFind};
use crate::poly::MPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorizationKind {
    Disconnected,
    CutVertex(usize),
    Bridge(usize),
    /// Connected, bridgeless and without cut vertex: nothing to check.
    Irreducible,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub kind: FactorizationKind,
    /// Edges of the two pieces, in the labels of the input graph.
    pub pieces: Vec<Vec<usize>>,
    pub alpha_zero: bool,
    /// `ψ = ψ_1 ψ_2` for the two pieces.
    pub psi_factorizes: bool,
    /// Sign `s` with `α = s · c · α_1 ∧ α_2`; `c = 1` at a cut vertex and
    /// `c = √π` at a bridge (which is `1` once π is dropped).
    pub sign: Option<i8>,
    pub holds: bool,
    /// At a bridge `e`, whether `α = ±2 a_e α_1 ∧ α_2` holds with π dropped.
    pub bridge_two_a_holds: Option<bool>,
}

/// Split `g` at the first disconnection, bridge or cut vertex found, in that
/// order, and check the corresponding statement.
pub fn factorization_check(g: &Graph) -> Result<FactorizationReport, AlphaError> {
    let profile = g.connectivity_profile();
    let alpha = alpha_tree_sum(g)?;
    if profile.components > 1 {
        let zero = alpha.is_zero();
        return Ok(FactorizationReport {
            kind: FactorizationKind::Disconnected,
            pieces: Vec::new(),
            alpha_zero: zero,
            psi_factorizes: alpha.psi.is_zero(),
            sign: zero.then_some(0),
            holds: zero,
            bridge_two_a_holds: None,
        });
    }
    let (kind, pieces) = if let Some(&b) = profile.bridges.first() {
        (FactorizationKind::Bridge(b), split_edges(g, &[b], None))
    } else if let Some(&c) = profile.cut_vertices.first() {
        (FactorizationKind::CutVertex(c), split_edges(g, &[], Some(c)))
    } else {
        return Ok(FactorizationReport {
            kind: FactorizationKind::Irreducible,
            pieces: vec![(1..=g.edge_count()).collect()],
            alpha_zero: alpha.is_zero(),
            psi_factorizes: true,
            sign: None,
            holds: true,
            bridge_two_a_holds: None,
        });
    };
    let reg = alpha.psi.registry().clone();
    let parts = pieces.iter().map(|p| piece_alpha(g, p, &reg)).collect::<Result<Vec<_>, _>>()?;
    let psi_factorizes = alpha.psi == &parts[0].psi * &parts[1].psi;
    let (extra_pi, two_a) = match kind {
        FactorizationKind::Bridge(b) => (1, Some(MPoly::var(&reg, b - 1).scale_int(2))),
        _ => (0, None),
    };
    let sign = proportional(&alpha, &parts[0], &parts[1], &MPoly::one(&reg), Some(extra_pi))?;
    let bridge_two_a_holds = match two_a {
        Some(c) => Some(proportional(&alpha, &parts[0], &parts[1], &c, None)?.is_some()),
        None => None,
    };
    Ok(FactorizationReport {
        kind,
        pieces,
        alpha_zero: alpha.is_zero(),
        psi_factorizes,
        sign,
        holds: psi_factorizes && sign.is_some(),
        bridge_two_a_holds,
    })
}

/// Edges of the two sides after deleting `removed` edges or splitting at `cut`.
/// With more than two sides, everything but the first is merged.
fn split_edges(g: &Graph, removed: &[usize], cut: Option<usize>) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.vertex_count());
    for (i, &(t, h)) in g.edges().iter().enumerate() {
        if removed.contains(&(i + 1)) || cut == Some(t) || cut == Some(h) {
            continue;
        }
        uf.union(t - 1, h - 1);
    }
    let side = |e: usize, uf: &mut UnionFind| {
        let (t, h) = g.edges()[e - 1];
        let v = if cut == Some(t) { h } else { t };
        uf.find(v - 1)
    };
    let keep: Vec<usize> = (1..=g.edge_count()).filter(|e| !removed.contains(e)).collect();
    let first_root = side(keep[0], &mut uf);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for e in keep {
        if side(e, &mut uf) == first_root {
            a.push(e);
        } else {
            b.push(e);
        }
    }
    vec![a, b]
}

/// `α` of the subgraph spanned by `edges`, written in the labels of `g`.
fn piece_alpha(g: &Graph, edges: &[usize], reg: &std::sync::Arc<crate::poly::VarRegistry>) -> Result<AlphaForm, AlphaError> {
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&e| [g.edges()[e - 1].0, g.edges()[e - 1].1]).collect();
    let verts: Vec<usize> = verts.into_iter().collect();
    let pos = |v: usize| verts.iter().position(|&x| x == v).unwrap() + 1;
    let sub_edges = edges.iter().map(|&e| (pos(g.edges()[e - 1].0), pos(g.edges()[e - 1].1))).collect();
    let sub = Graph::new(verts.len(), sub_edges)?;
    let a = alpha_tree_sum(&sub)?;
    let var_map: Vec<usize> = edges.iter().map(|e| e - 1).collect();
    let body = a.body.rename(reg, &var_map, |gen| match gen {
        Generator::DA(i) => Some(Generator::DA(edges[i - 1])),
        Generator::DX(_) => None,
    })?;
    let mut prefactor = a.prefactor.clone();
    prefactor.a_half = vec![0; g.edge_count()];
    Ok(AlphaForm { prefactor, body, psi: a.psi.rename(reg, &var_map)?, v_star: a.v_star })
}

/// Sign `s` with `α = s · c · π^{extra/2} · α_1 ∧ α_2`. With `extra_pi = None`
/// powers of π are ignored.
fn proportional(alpha: &AlphaForm, a1: &AlphaForm, a2: &AlphaForm, c: &MPoly, extra_pi: Option<i32>) -> Result<Option<i8>, AlphaError> {
    if a1.is_zero() || a2.is_zero() || alpha.is_zero() {
        return Ok((alpha.is_zero() && (a1.is_zero() || a2.is_zero())).then_some(0));
    }
    if let Some(extra) = extra_pi {
        if alpha.prefactor.pi_half != a1.prefactor.pi_half + a2.prefactor.pi_half + extra {
            return Ok(None);
        }
    }
    // α ∝ ψ1^{s/2} ψ2^{s/2}; the right side ∝ ψ1^{s1/2} ψ2^{s2/2}.
    let s = alpha.prefactor.psi_half;
    let (s1, s2) = (a1.prefactor.psi_half, a2.prefactor.psi_half);
    let lift = |p: &MPoly, d: i32| -> Option<MPoly> { (d % 2 == 0).then(|| p.pow(d.unsigned_abs() / 2)) };
    let (m1, m2) = (s.min(s1), s.min(s2));
    let (Some(l1), Some(l2), Some(r1), Some(r2)) = (lift(&a1.psi, s - m1), lift(&a2.psi, s - m2), lift(&a1.psi, s1 - m1), lift(&a2.psi, s2 - m2)) else {
        return Ok(None);
    };
    let lhs_scale = &(&l1 * &l2).scale(&alpha.prefactor.rational);
    let rhs_scale = &(&(&r1 * &r2) * c).scale(&(&a1.prefactor.rational * &a2.prefactor.rational));
    let lhs = alpha.body.scale(lhs_scale)?;
    let rhs: DiffForm = a1.body.wedge(&a2.body)?.scale(rhs_scale)?;
    Ok(if lhs == rhs {
        Some(1)
    } else if lhs == rhs.negate() {
        Some(-1)
    } else {
        None
    })
}
