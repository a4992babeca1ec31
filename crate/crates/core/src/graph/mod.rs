//! Directed multigraphs, incidence matrices, Laplacians and spanning trees.
//!
//! Vertices and edges are numbered from 1. The special vertex `v_star`, whose
//! column is dropped from the reduced incidence matrix, defaults to the last
//! vertex.

mod connectivity;
pub mod families;
mod format;
mod intmatrix;
mod trees;

use std::sync::Arc;

pub use connectivity::ConnectivityProfile;
pub(crate) use connectivity::UnionFind;
pub use format::{graph_from_json, graph_from_text, graph_to_json, graph_to_text, parse_graph};
pub use intmatrix::IntMatrix;

use crate::poly::{MPoly, PolyMatrix, VarClass, VarRegistry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("edge {edge} references vertex {vertex}, but the graph has {count} vertices")]
    InvalidVertex { edge: usize, vertex: usize, count: usize },
    #[error("vertex {0} has no incident edges")]
    IsolatedVertex(usize),
    #[error("special vertex {v_star} is not among the {count} vertices")]
    InvalidVStar { v_star: usize, count: usize },
    #[error("edge {0} does not exist")]
    InvalidEdge(usize),
    #[error("edge set {0:?} is not a spanning tree")]
    NotSpanningTree(Vec<usize>),
    #[error("tree sign needs an even loop number, got {0}")]
    OddLoopNumber(usize),
    #[error("invalid relabeling: {0}")]
    InvalidRelabel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    v_star: usize,
}

impl Graph {
    /// Build a graph whose special vertex is the last one.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        Self::with_v_star(vertices, edges, vertices)
    }

    pub fn with_v_star(vertices: usize, edges: Vec<(usize, usize)>, v_star: usize) -> Result<Self, GraphError> {
        if vertices == 0 {
            return Err(GraphError::NoVertices);
        }
        for (i, &(t, h)) in edges.iter().enumerate() {
            for v in [t, h] {
                if v == 0 || v > vertices {
                    return Err(GraphError::InvalidVertex { edge: i + 1, vertex: v, count: vertices });
                }
            }
            if t == h {
                return Err(GraphError::SelfLoop { edge: i + 1, vertex: t });
            }
        }
        let mut touched = vec![false; vertices + 1];
        for &(t, h) in &edges {
            touched[t] = true;
            touched[h] = true;
        }
        if let Some(v) = (1..=vertices).find(|&v| !touched[v]) {
            return Err(GraphError::IsolatedVertex(v));
        }
        if v_star == 0 || v_star > vertices {
            return Err(GraphError::InvalidVStar { v_star, count: vertices });
        }
        Ok(Graph { vertices, edges, v_star })
    }

    pub fn set_v_star(&self, v_star: usize) -> Result<Self, GraphError> {
        Self::with_v_star(self.vertices, self.edges.clone(), v_star)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Tail and head of edge `e` (1-based).
    pub fn edge(&self, e: usize) -> Result<(usize, usize), GraphError> {
        e.checked_sub(1).and_then(|i| self.edges.get(i)).copied().ok_or(GraphError::InvalidEdge(e))
    }

    pub fn v_star(&self) -> usize {
        self.v_star
    }

    /// Number of rows of the reduced incidence matrix' column space.
    pub fn reduced_dim(&self) -> usize {
        self.vertices - 1
    }

    /// Vertex labels that survive the reduction, in order.
    pub fn reduced_vertices(&self) -> Vec<usize> {
        (1..=self.vertices).filter(|&v| v != self.v_star).collect()
    }

    /// 1-based column of vertex `v` in the reduced incidence matrix.
    pub fn reduced_position(&self, v: usize) -> Option<usize> {
        if v == self.v_star || v == 0 || v > self.vertices {
            None
        } else if v < self.v_star {
            Some(v)
        } else {
            Some(v - 1)
        }
    }

    pub fn components(&self) -> usize {
        connectivity::count_components(self.vertices, self.edges.iter().copied())
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }

    /// `|E| - |V| + components`.
    pub fn loop_number(&self) -> usize {
        self.edges.len() + self.components() - self.vertices
    }

    /// `|E| x |V|`, `-1` at the tail and `+1` at the head.
    pub fn incidence_full(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.edges.len(), self.vertices);
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            m.add(i, t - 1, -1);
            m.add(i, h - 1, 1);
        }
        m
    }

    /// Full incidence matrix without the `v_star` column.
    pub fn incidence_reduced(&self) -> IntMatrix {
        let cols: Vec<usize> = self.reduced_vertices().iter().map(|v| v - 1).collect();
        let rows: Vec<usize> = (0..self.edges.len()).collect();
        self.incidence_full().submatrix(&rows, &cols)
    }

    /// Registry `a1..a|E|`.
    pub fn edge_registry(&self) -> Arc<VarRegistry> {
        VarRegistry::edges(self.edges.len())
    }

    /// Laplacian `I^T D^{-1} I`, written in inverse parameters `b_e = 1/a_e`.
    pub fn laplacian(&self) -> (Arc<VarRegistry>, PolyMatrix) {
        let mut reg = VarRegistry::new();
        for e in 1..=self.edges.len() {
            reg.add(format!("b{e}"), VarClass::Other).unwrap();
        }
        let reg = Arc::new(reg);
        let inc = self.incidence_reduced();
        let n = self.reduced_dim();
        let lap = PolyMatrix::from_fn(&reg, n, n, |j, k| {
            let mut p = MPoly::zero(&reg);
            for e in 0..self.edges.len() {
                let c = inc.get(e, j) * inc.get(e, k);
                if c != 0 {
                    p.add_assign_ref(&MPoly::var(&reg, e).scale_int(c));
                }
            }
            p
        });
        (reg, lap)
    }

    /// `[[D, I], [-I^T, 0]]` over `a1..a|E|`.
    pub fn expanded_laplacian(&self, reg: &Arc<VarRegistry>) -> PolyMatrix {
        let m = self.edges.len();
        let n = self.reduced_dim();
        let inc = self.incidence_reduced();
        PolyMatrix::from_fn(reg, m + n, m + n, |i, j| match (i < m, j < m) {
            (true, true) if i == j => MPoly::var(reg, i),
            (true, true) => MPoly::zero(reg),
            (true, false) => MPoly::integer(reg, inc.get(i, j - m)),
            (false, true) => MPoly::integer(reg, -inc.get(j, i - m)),
            (false, false) => MPoly::zero(reg),
        })
    }

    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        trees::spanning_trees(self)
    }

    /// `det I[T]` with rows of `T` in increasing order.
    pub fn incidence_det(&self, tree: &[usize]) -> Result<i64, GraphError> {
        trees::incidence_det(self, tree)
    }

    /// `(-1)^{sum of edges outside T - L/2} det I[T]`; defined for even `L`.
    pub fn tree_sign(&self, tree: &[usize]) -> Result<i64, GraphError> {
        trees::tree_sign(self, tree)
    }

    pub fn connectivity_profile(&self) -> ConnectivityProfile {
        connectivity::profile(self)
    }

    /// Relabel vertices (`vertex_map[v-1]` is the new label of `v`), permute
    /// edges (`edge_map[e-1]` is the new index of `e`) and reverse the edges
    /// flagged in `flip` (indexed by old edge). `v_star` follows its vertex.
    pub fn relabel(&self, vertex_map: &[usize], edge_map: &[usize], flip: &[bool]) -> Result<Graph, GraphError> {
        check_permutation(vertex_map, self.vertices, "vertex map")?;
        check_permutation(edge_map, self.edges.len(), "edge map")?;
        if flip.len() != self.edges.len() {
            return Err(GraphError::InvalidRelabel("flip mask has the wrong length".into()));
        }
        let mut edges = vec![(0, 0); self.edges.len()];
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            let (t, h) = (vertex_map[t - 1], vertex_map[h - 1]);
            edges[edge_map[i] - 1] = if flip[i] { (h, t) } else { (t, h) };
        }
        Graph::with_v_star(self.vertices, edges, vertex_map[self.v_star - 1])
    }

    /// Vertices of `other` are shifted past ours; edges are appended.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertices;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(t, h)| (t + shift, h + shift)));
        Graph::new(self.vertices + other.vertices, edges).expect("union of valid graphs")
    }

    /// Identify vertex `u` of `self` with vertex `w` of `other`.
    pub fn vertex_join(&self, u: usize, other: &Graph, w: usize) -> Result<Graph, GraphError> {
        for (g, v) in [(self, u), (other, w)] {
            if v == 0 || v > g.vertices {
                return Err(GraphError::InvalidVStar { v_star: v, count: g.vertices });
            }
        }
        let mut map = vec![0; other.vertices + 1];
        let mut next = self.vertices;
        for v in 1..=other.vertices {
            map[v] = if v == w {
                u
            } else {
                next += 1;
                next
            };
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(t, h)| (map[t], map[h])));
        Graph::new(next, edges)
    }

    /// Disjoint union plus one edge from `u` (ours) to `w` (theirs). The bridge
    /// sits between the two edge blocks.
    pub fn bridge_join(&self, u: usize, other: &Graph, w: usize) -> Result<Graph, GraphError> {
        for (g, v) in [(self, u), (other, w)] {
            if v == 0 || v > g.vertices {
                return Err(GraphError::InvalidVStar { v_star: v, count: g.vertices });
            }
        }
        let shift = self.vertices;
        let mut edges = self.edges.clone();
        edges.push((u, w + shift));
        edges.extend(other.edges.iter().map(|&(t, h)| (t + shift, h + shift)));
        Graph::new(self.vertices + other.vertices, edges)
    }
}

fn check_permutation(map: &[usize], n: usize, what: &str) -> Result<(), GraphError> {
    let mut seen = vec![false; n + 1];
    if map.len() != n {
        return Err(GraphError::InvalidRelabel(format!("{what} has length {}, expected {n}", map.len())));
    }
    for &x in map {
        if x == 0 || x > n || seen[x] {
            return Err(GraphError::InvalidRelabel(format!("{what} is not a permutation of 1..={n}")));
        }
        seen[x] = true;
    }
    Ok(())
}
