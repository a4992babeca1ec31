use serde::Serialize;

use super::Graph;

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

pub(crate) fn count_components(vertices: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut uf = UnionFind::new(vertices);
    let mut count = vertices;
    for (t, h) in edges {
        if uf.union(t - 1, h - 1) {
            count -= 1;
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityProfile {
    pub components: usize,
    /// Edges whose removal disconnects their component.
    pub bridges: Vec<usize>,
    /// Vertices whose removal disconnects their component.
    pub cut_vertices: Vec<usize>,
    /// Connected and bridgeless.
    pub one_pi: bool,
}

pub(super) fn profile(g: &Graph) -> ConnectivityProfile {
    let base = g.components();
    let bridges: Vec<usize> = (1..=g.edge_count())
        .filter(|&e| {
            let rest = g.edges().iter().enumerate().filter(|&(i, _)| i + 1 != e).map(|(_, &p)| p);
            count_components(g.vertex_count(), rest) > base
        })
        .collect();
    let cut_vertices: Vec<usize> = (1..=g.vertex_count())
        .filter(|&v| {
            // Drop v by relabeling the remaining vertices onto 1..n-1.
            let relabel = |u: usize| if u < v { u } else { u - 1 };
            let rest = g.edges().iter().filter(|&&(t, h)| t != v && h != v).map(|&(t, h)| (relabel(t), relabel(h)));
            count_components(g.vertex_count() - 1, rest) > base
        })
        .collect();
    ConnectivityProfile { components: base, one_pi: base == 1 && bridges.is_empty(), bridges, cut_vertices }
}
