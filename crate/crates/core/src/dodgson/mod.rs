//! Symanzik and Dodgson polynomials from the expanded Laplacian
//! `M = [[D, I], [-I^T, 0]]`.
//!
//! Matrix indices are 1-based: edges occupy `1..=|E|`, and the vertex at
//! reduced position `p` occupies `|E| + p`. `ψ^{A,B}` is the determinant of `M`
//! with rows `A` and columns `B` deleted.

mod identities;
mod symanzik;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;

pub use identities::{IdentityCheck, VertexTerm};
pub use symanzik::{superficial_degree, symanzik_from_trees, symanzik_second, SecondSymanzik};

use crate::graph::{Graph, GraphError};
use crate::poly::{MPoly, PolyError, PolyMatrix, VarRegistry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DodgsonError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("row and column sets differ in size ({rows} vs {cols})")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("index {0} is repeated")]
    RepeatedIndex(usize),
    #[error("matrix index {index} out of range 1..={size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("vertex {0} is the special vertex and has no row")]
    SpecialVertex(usize),
    #[error("edge {0} does not exist")]
    InvalidEdge(usize),
}

/// An index into the expanded Laplacian, by meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DIndex {
    Edge(usize),
    /// Vertex label (not its reduced position).
    Vertex(usize),
}

/// Expanded Laplacian of one graph plus a cache of computed minors.
pub struct Dodgson {
    graph: Graph,
    reg: Arc<VarRegistry>,
    matrix: PolyMatrix,
    cache: Mutex<HashMap<(Vec<usize>, Vec<usize>), MPoly>>,
}

impl Dodgson {
    pub fn new(graph: &Graph) -> Self {
        Self::with_registry(graph, graph.edge_registry())
    }

    /// Use a registry whose first `|E|` variables are `a1..a|E|`.
    pub fn with_registry(graph: &Graph, reg: Arc<VarRegistry>) -> Self {
        let matrix = graph.expanded_laplacian(&reg);
        Dodgson { graph: graph.clone(), reg, matrix, cache: Mutex::new(HashMap::new()) }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Matrix index of an edge or vertex.
    pub fn index(&self, idx: DIndex) -> Result<usize, DodgsonError> {
        match idx {
            DIndex::Edge(e) if e >= 1 && e <= self.graph.edge_count() => Ok(e),
            DIndex::Edge(e) => Err(DodgsonError::InvalidEdge(e)),
            DIndex::Vertex(v) if v == self.graph.v_star() => Err(DodgsonError::SpecialVertex(v)),
            DIndex::Vertex(v) => self
                .graph
                .reduced_position(v)
                .map(|p| p + self.graph.edge_count())
                .ok_or(DodgsonError::Graph(GraphError::InvalidVertex { edge: 0, vertex: v, count: self.graph.vertex_count() })),
        }
    }

    /// `ψ = det M`.
    pub fn psi(&self) -> MPoly {
        self.raw(&[], &[]).expect("empty minor")
    }

    /// `ψ^{A,B}` with 1-based matrix indices.
    pub fn raw(&self, rows: &[usize], cols: &[usize]) -> Result<MPoly, DodgsonError> {
        if rows.len() != cols.len() {
            return Err(DodgsonError::SizeMismatch { rows: rows.len(), cols: cols.len() });
        }
        let size = self.size();
        for set in [rows, cols] {
            for (k, &i) in set.iter().enumerate() {
                if i == 0 || i > size {
                    return Err(DodgsonError::IndexOutOfRange { index: i, size });
                }
                if set[..k].contains(&i) {
                    return Err(DodgsonError::RepeatedIndex(i));
                }
            }
        }
        // Deleting rows and columns is insensitive to the order they are listed in.
        let mut key = (rows.to_vec(), cols.to_vec());
        key.0.sort_unstable();
        key.1.sort_unstable();
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let r: Vec<usize> = key.0.iter().map(|i| i - 1).collect();
        let c: Vec<usize> = key.1.iter().map(|i| i - 1).collect();
        let det = self.matrix.minor(&r, &c)?.det_bareiss()?;
        self.cache.lock().unwrap().insert(key, det.clone());
        Ok(det)
    }

    pub fn dodgson(&self, rows: &[DIndex], cols: &[DIndex]) -> Result<MPoly, DodgsonError> {
        let r = rows.iter().map(|&i| self.index(i)).collect::<Result<Vec<_>, _>>()?;
        let c = cols.iter().map(|&i| self.index(i)).collect::<Result<Vec<_>, _>>()?;
        self.raw(&r, &c)
    }

    /// Edge Dodgson `ψ^{e,f}`.
    pub fn edge(&self, e: usize, f: usize) -> Result<MPoly, DodgsonError> {
        self.dodgson(&[DIndex::Edge(e)], &[DIndex::Edge(f)])
    }

    /// Vertex Dodgson `ψ^{v,w}` by vertex label.
    pub fn vertex(&self, v: usize, w: usize) -> Result<MPoly, DodgsonError> {
        self.dodgson(&[DIndex::Vertex(v)], &[DIndex::Vertex(w)])
    }

    /// `(L^{-1})_{jk} = (-1)^{j+k} ψ^{j,k} / ψ` for reduced positions `j, k`.
    /// Returns the numerator; the denominator is [`Dodgson::psi`].
    pub fn inverse_laplacian_numerator(&self, j: usize, k: usize) -> Result<MPoly, DodgsonError> {
        let n = self.graph.reduced_dim();
        let m = self.graph.edge_count();
        for p in [j, k] {
            if p == 0 || p > n {
                return Err(DodgsonError::IndexOutOfRange { index: p, size: n });
            }
        }
        let d = self.raw(&[m + j], &[m + k])?;
        Ok(if (j + k) % 2 == 0 { d } else { d.negate() })
    }

    /// Exact entry of the inverse Laplacian as (numerator, ψ).
    pub fn inverse_laplacian_entry(&self, j: usize, k: usize) -> Result<(MPoly, MPoly), DodgsonError> {
        Ok((self.inverse_laplacian_numerator(j, k)?, self.psi()))
    }

    /// Evaluate `ψ^{A,B}` at a rational point, for cheap spot checks.
    pub fn evaluate(&self, rows: &[usize], cols: &[usize], point: &[BigRational]) -> Result<BigRational, DodgsonError> {
        Ok(self.raw(rows, cols)?.evaluate(point)?)
    }
}
