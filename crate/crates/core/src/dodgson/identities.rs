//! Polynomial identities between Dodgson polynomials, each returned as an
//! explicit left/right pair so callers can inspect both sides.

use itertools::Itertools;
use serde::Serialize;

use super::{DIndex, Dodgson, DodgsonError};
use crate::poly::{MPoly, Monomial};

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: MPoly,
    pub rhs: MPoly,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// One signed vertex Dodgson in a combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexTerm {
    pub sign: i8,
    pub row: usize,
    pub col: usize,
}

fn signed(p: MPoly, negative: bool) -> MPoly {
    if negative {
        p.negate()
    } else {
        p
    }
}

/// Sign of a permutation given as a list of distinct positions.
pub(crate) fn permutation_parity(perm: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                odd = !odd;
            }
        }
    }
    odd
}

impl Dodgson {
    /// `ψ^{A,B} ψ^{k-1} = det [ψ^{a_i, b_j}]`, expanded over permutations,
    /// with `A` and `B` taken in increasing order.
    pub fn jacobi(&self, rows: &[usize], cols: &[usize]) -> Result<IdentityCheck, DodgsonError> {
        let (mut rows, mut cols) = (rows.to_vec(), cols.to_vec());
        rows.sort_unstable();
        cols.sort_unstable();
        let (rows, cols) = (&rows[..], &cols[..]);
        let k = rows.len();
        if k != cols.len() {
            return Err(DodgsonError::SizeMismatch { rows: k, cols: cols.len() });
        }
        let reg = self.registry();
        let lhs = &self.raw(rows, cols)? * &self.psi().pow(k.saturating_sub(1) as u32);
        let mut rhs = MPoly::zero(reg);
        for perm in (0..k).permutations(k) {
            let mut term = MPoly::one(reg);
            for (i, &j) in perm.iter().enumerate() {
                term = &term * &self.raw(&[rows[i]], &[cols[j]])?;
            }
            rhs.add_assign_ref(&signed(term, permutation_parity(&perm)));
        }
        Ok(IdentityCheck { name: format!("jacobi {rows:?} {cols:?}"), lhs, rhs })
    }

    /// Spanning-forest expansion of an edge Dodgson:
    /// `Σ_R ε(R) det I(R∪A) det I(R∪B) Π_R a_e`, summed over edge sets `R`
    /// disjoint from `A ∪ B` that leave `|V| - 1` rows. `I(S)` is the reduced
    /// incidence matrix with the rows in `S` deleted, and `ε(R)` is the parity of
    /// the number of pairs `(x, e)` with `x ∈ A ⊔ B`, `e ∈ R`, `x < e`.
    pub fn forest_expansion(&self, rows: &[usize], cols: &[usize]) -> Result<MPoly, DodgsonError> {
        let g = self.graph();
        let m = g.edge_count();
        if rows.len() != cols.len() {
            return Err(DodgsonError::SizeMismatch { rows: rows.len(), cols: cols.len() });
        }
        if let Some(&e) = rows.iter().chain(cols).find(|&&e| e == 0 || e > m) {
            return Err(DodgsonError::InvalidEdge(e));
        }
        let n = g.reduced_dim();
        let reg = self.registry();
        let inc = g.incidence_reduced();
        let all_cols: Vec<usize> = (0..n).collect();
        let det_without = |removed: &dyn Fn(usize) -> bool| -> Option<i64> {
            let keep: Vec<usize> = (1..=m).filter(|&e| !removed(e)).map(|e| e - 1).collect();
            (keep.len() == n).then(|| inc.submatrix(&keep, &all_cols).det())
        };
        let free: Vec<usize> = (1..=m).filter(|e| !rows.contains(e) && !cols.contains(e)).collect();
        let Some(size) = (m - n).checked_sub(rows.len()) else {
            return Ok(MPoly::zero(reg));
        };
        let mut out = MPoly::zero(reg);
        for r in free.into_iter().combinations(size) {
            let Some(da) = det_without(&|e| r.contains(&e) || rows.contains(&e)) else { continue };
            let Some(db) = det_without(&|e| r.contains(&e) || cols.contains(&e)) else { continue };
            if da * db == 0 {
                continue;
            }
            let crossings: usize = r
                .iter()
                .map(|&e| rows.iter().chain(cols).filter(|&&x| x < e).count())
                .sum();
            let sign = if crossings % 2 == 0 { da * db } else { -da * db };
            let mut exps = vec![0u16; reg.len()];
            for &e in &r {
                exps[e - 1] = 1;
            }
            out.add_term(Monomial::from_exps(exps), num_rational::BigRational::from_integer(sign.into()));
        }
        Ok(out)
    }

    /// For `e = v1 -> v2` and a vertex `v` other than `v_star`:
    /// `-(-1)^{p1} ψ^{v1,v} + (-1)^{p2} ψ^{v2,v} = (-1)^{e+|E|} a_e ψ^{e,v}`,
    /// with `p` the reduced position and terms at `v_star` dropped.
    pub fn vertex_edge(&self, e: usize, v: usize) -> Result<IdentityCheck, DodgsonError> {
        let g = self.graph();
        let (v1, v2) = g.edge(e)?;
        let reg = self.registry();
        let m = g.edge_count();
        let term = |u: usize| -> Result<MPoly, DodgsonError> {
            match g.reduced_position(u) {
                None => Ok(MPoly::zero(reg)),
                Some(p) => Ok(signed(self.vertex(u, v)?, p % 2 == 1)),
            }
        };
        let lhs = &term(v2)? - &term(v1)?;
        let ae = MPoly::var(reg, e - 1);
        let rhs = signed(&ae * &self.dodgson(&[DIndex::Edge(e)], &[DIndex::Vertex(v)])?, (e + m) % 2 == 1);
        Ok(IdentityCheck { name: format!("vertex-edge e{e} v{v}"), lhs, rhs })
    }

    /// The four signed vertex Dodgsons of the edge-edge combination, for
    /// `e1 = v1 -> v2` and `e2 = v3 -> v4`, before dropping `v_star` terms.
    pub fn edge_edge_terms(&self, e1: usize, e2: usize) -> Result<Vec<VertexTerm>, DodgsonError> {
        let g = self.graph();
        let (v1, v2) = g.edge(e1)?;
        let (v3, v4) = g.edge(e2)?;
        Ok(vec![
            VertexTerm { sign: 1, row: v2, col: v4 },
            VertexTerm { sign: -1, row: v1, col: v4 },
            VertexTerm { sign: 1, row: v1, col: v3 },
            VertexTerm { sign: -1, row: v2, col: v3 },
        ])
    }

    /// `Σ ± (-1)^{p+q} ψ^{p,q} = (-1)^{e1+e2+1} a_{e1} a_{e2} ψ^{e1,e2}` over the
    /// four terms of [`Dodgson::edge_edge_terms`].
    pub fn edge_edge(&self, e1: usize, e2: usize) -> Result<IdentityCheck, DodgsonError> {
        let g = self.graph();
        let reg = self.registry();
        let mut lhs = MPoly::zero(reg);
        for t in self.edge_edge_terms(e1, e2)? {
            let (Some(p), Some(q)) = (g.reduced_position(t.row), g.reduced_position(t.col)) else {
                continue;
            };
            let d = self.vertex(t.row, t.col)?;
            lhs.add_assign_ref(&signed(d, ((p + q) % 2 == 1) != (t.sign < 0)));
        }
        let prod = &MPoly::var(reg, e1 - 1) * &MPoly::var(reg, e2 - 1);
        let rhs = signed(&prod * &self.edge(e1, e2)?, (e1 + e2 + 1) % 2 == 1);
        Ok(IdentityCheck { name: format!("edge-edge e{e1} e{e2}"), lhs, rhs })
    }

    /// A deterministic battery of all four identities. Small graphs get every
    /// index combination; larger ones a spread-out sample.
    pub fn identity_suite(&self) -> Result<Vec<IdentityCheck>, DodgsonError> {
        let g = self.graph();
        let m = g.edge_count();
        let small = m + g.reduced_dim() <= 16;
        let spread = |n: usize, k: usize| -> Vec<usize> {
            if n <= k {
                (1..=n).collect()
            } else {
                (0..k).map(|i| 1 + i * (n - 1) / (k - 1)).dedup().collect()
            }
        };
        let edges = if small { (1..=m).collect() } else { spread(m, 6) };
        let verts: Vec<usize> = if small {
            g.reduced_vertices()
        } else {
            let r = g.reduced_vertices();
            spread(r.len(), 3).into_iter().map(|i| r[i - 1]).collect()
        };
        let mut out = Vec::new();
        for &e in &edges {
            for &v in &verts {
                out.push(self.vertex_edge(e, v)?);
            }
            for &f in &edges {
                if e != f {
                    out.push(self.edge_edge(e, f)?);
                }
            }
        }
        let loops = g.loop_number();
        let sets: Vec<Vec<usize>> = (1..=loops.min(2)).flat_map(|k| edges.iter().copied().combinations(k)).take(12).collect();
        for a in &sets {
            for b in sets.iter().filter(|b| b.len() == a.len()) {
                out.push(self.jacobi(a, b)?);
                if a.iter().all(|x| !b.contains(x)) {
                    let rhs = self.raw(a, b)?;
                    out.push(IdentityCheck { name: format!("forest {a:?} {b:?}"), lhs: self.forest_expansion(a, b)?, rhs });
                }
            }
        }
        Ok(out)
    }
}
