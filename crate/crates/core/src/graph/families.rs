//! Named graph families and a seeded random generator.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

/// Three vertices, edges `2->1, 3->1, 3->2, 3->2`.
pub fn dunce_cap() -> Graph {
    Graph::new(3, vec![(2, 1), (3, 1), (3, 2), (3, 2)]).unwrap()
}

/// Dunce's cap with its first edge replaced by a path of `k` edges.
pub fn dunce_cap_subdivided(k: usize) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(GraphError::Parse("subdivision length must be positive".into()));
    }
    // Vertices 1..3 as in the dunce's cap, then the k-1 interior path vertices.
    let mut edges = Vec::new();
    let mut prev = 2;
    for i in 0..k - 1 {
        edges.push((prev, 4 + i));
        prev = 4 + i;
    }
    edges.push((prev, 1));
    edges.extend([(3, 1), (3, 2), (3, 2)]);
    Graph::new(k + 2, edges)
}

/// Two vertices joined by two parallel edges `1->2`.
pub fn multiedge() -> Graph {
    banana(2).unwrap()
}

/// Two vertices joined by `k` parallel edges `1->2`.
pub fn banana(k: usize) -> Result<Graph, GraphError> {
    Graph::new(2, vec![(1, 2); k])
}

pub fn path(edges: usize) -> Result<Graph, GraphError> {
    Graph::new(edges + 1, (1..=edges).map(|i| (i, i + 1)).collect())
}

pub fn cycle(k: usize) -> Result<Graph, GraphError> {
    if k < 2 {
        return banana(k);
    }
    Graph::new(k, (1..=k).map(|i| (i, i % k + 1)).collect())
}

/// Three paths of `a`, `b`, `c` edges from vertex 1 to a common end vertex.
///
/// Vertex 1, the interior vertices of the first two paths, the end vertex,
/// then the interior vertices of the third path. With `(5, 5, 5)` the end
/// vertex is 10 and the special vertex is 14.
pub fn theta_subdivided(a: usize, b: usize, c: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 || c == 0 {
        return Err(GraphError::Parse("path lengths must be positive".into()));
    }
    let end = a + b;
    let mut edges = Vec::new();
    for interior in [2..a + 1, a + 1..end, end + 1..end + c] {
        let mut prev = 1;
        for v in interior {
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, end));
    }
    Graph::new(a + b + c - 1, edges)
}

/// Rim `1..k` as a directed cycle, then spokes `i -> hub` with hub `k+1`.
pub fn wheel(k: usize) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(GraphError::Parse("a wheel needs at least three rim vertices".into()));
    }
    let mut edges: Vec<(usize, usize)> = (1..=k).map(|i| (i, i % k + 1)).collect();
    edges.extend((1..=k).map(|i| (i, k + 1)));
    Graph::new(k + 1, edges)
}

pub fn complete(k: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            edges.push((i, j));
        }
    }
    Graph::new(k, edges)
}

/// `K4` with the edge `1->2` doubled.
pub fn k4_doubled() -> Graph {
    let mut edges = complete(4).unwrap().edges().to_vec();
    edges.insert(1, (1, 2));
    Graph::new(4, edges).unwrap()
}

pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for i in 1..=3 {
        for j in 4..=6 {
            edges.push((i, j));
        }
    }
    Graph::new(6, edges).unwrap()
}

/// Two triangles `1,2,3` and `4,5,6` with rungs `i -> i+3`.
pub fn prism() -> Graph {
    Graph::new(6, vec![(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)]).unwrap()
}

/// Connected multigraph without self-loops: a random tree plus random extra
/// edges, random orientations and a shuffled edge order.
pub fn random_connected(seed: u64, vertices: usize, edges: usize) -> Result<Graph, GraphError> {
    if vertices < 2 {
        return Err(GraphError::Parse("random graphs need at least two vertices".into()));
    }
    if edges + 1 < vertices {
        return Err(GraphError::Parse(format!("{edges} edges cannot connect {vertices} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut list = Vec::with_capacity(edges);
    for v in 2..=vertices {
        list.push((rng.gen_range(1..v), v));
    }
    while list.len() < edges {
        let t = rng.gen_range(1..=vertices);
        let h = rng.gen_range(1..vertices);
        list.push((t, if h >= t { h + 1 } else { h }));
    }
    for e in &mut list {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    list.shuffle(&mut rng);
    Graph::new(vertices, list)
}

/// Every named graph used by the checks, smallest first within each family.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("dunce-cap".into(), dunce_cap()),
        ("multiedge".into(), multiedge()),
        ("k4-doubled".into(), k4_doubled()),
        ("k33".into(), k33()),
        ("prism".into(), prism()),
    ];
    for k in 2..=4 {
        out.push((format!("dunce-cap-subdivided-{k}"), dunce_cap_subdivided(k).unwrap()));
    }
    for k in 2..=6 {
        out.push((format!("banana-{k}"), banana(k).unwrap()));
    }
    for k in 3..=5 {
        out.push((format!("wheel-{k}"), wheel(k).unwrap()));
    }
    for k in 3..=5 {
        out.push((format!("complete-{k}"), complete(k).unwrap()));
    }
    for a in 1..=4 {
        for b in a..=4 {
            for c in b..=4 {
                if a + b + c <= 10 && c >= 2 {
                    out.push((format!("theta-{a}-{b}-{c}"), theta_subdivided(a, b, c).unwrap()));
                }
            }
        }
    }
    out
}

/// Every connected multigraph without self-loops on `2..=max_vertices`
/// vertices with at most `max_edges` edges, one per isomorphism class. Edges
/// point from the smaller to the larger label and are sorted.
pub fn enumerate_multigraphs(max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
        let perms: Vec<Vec<usize>> = (1..=n).permutations(n).collect();
        let mut seen = std::collections::HashSet::new();
        for m in n - 1..=max_edges {
            for edges in pairs.iter().copied().combinations_with_replacement(m) {
                if super::connectivity::count_components(n, edges.iter().copied()) != 1 {
                    continue;
                }
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut e: Vec<(usize, usize)> = edges
                            .iter()
                            .map(|&(t, h)| {
                                let (a, b) = (p[t - 1], p[h - 1]);
                                (a.min(b), a.max(b))
                            })
                            .collect();
                        e.sort_unstable();
                        e
                    })
                    .min()
                    .expect("at least one permutation");
                if seen.insert(canon.clone()) {
                    out.push(Graph::new(n, canon).expect("valid multigraph"));
                }
            }
        }
    }
    out
}
