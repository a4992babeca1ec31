use itertools::Itertools;

use super::connectivity::UnionFind;
use super::{Graph, GraphError};

/// All spanning trees as increasing lists of 1-based edge indices, in
/// lexicographic order.
pub(super) fn spanning_trees(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count() - 1;
    if g.edge_count() < n || !g.is_connected() {
        return Vec::new();
    }
    (1..=g.edge_count()).combinations(n).filter(|t| is_spanning_tree(g, t)).collect()
}

pub(super) fn is_spanning_tree(g: &Graph, tree: &[usize]) -> bool {
    if tree.len() != g.vertex_count() - 1 {
        return false;
    }
    let mut uf = UnionFind::new(g.vertex_count());
    tree.iter().all(|&e| {
        let (t, h) = g.edges()[e - 1];
        uf.union(t - 1, h - 1)
    })
}

fn check_tree(g: &Graph, tree: &[usize]) -> Result<Vec<usize>, GraphError> {
    if let Some(&e) = tree.iter().find(|&&e| e == 0 || e > g.edge_count()) {
        return Err(GraphError::InvalidEdge(e));
    }
    let mut sorted = tree.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != tree.len() || !is_spanning_tree(g, &sorted) {
        return Err(GraphError::NotSpanningTree(tree.to_vec()));
    }
    Ok(sorted)
}

pub(super) fn incidence_det(g: &Graph, tree: &[usize]) -> Result<i64, GraphError> {
    let sorted = check_tree(g, tree)?;
    let rows: Vec<usize> = sorted.iter().map(|e| e - 1).collect();
    let cols: Vec<usize> = (0..g.reduced_dim()).collect();
    Ok(g.incidence_reduced().submatrix(&rows, &cols).det())
}

pub(super) fn tree_sign(g: &Graph, tree: &[usize]) -> Result<i64, GraphError> {
    let loops = g.loop_number();
    if loops % 2 == 1 {
        return Err(GraphError::OddLoopNumber(loops));
    }
    let det = incidence_det(g, tree)?;
    let outside: usize = (1..=g.edge_count()).filter(|e| !tree.contains(e)).sum();
    let parity = (outside + loops / 2) % 2;
    Ok(if parity == 0 { det } else { -det })
}
