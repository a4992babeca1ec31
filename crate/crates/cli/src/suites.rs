//! `alphaform verify ...`: batch checks over graph families.

use std::path::PathBuf;

use alphaform::alpha::{self, QE_FORMAL_MAX_LOOPS};
use alphaform::dodgson::Dodgson;
use alphaform::graph::{families, graph_to_text, parse_graph, Graph};
use clap::Subcommand;
use rayon::prelude::*;

use crate::Failure;

#[derive(Subcommand)]
pub enum Suite {
    /// `α ∧ α = 0` on every 1PI multigraph with even loop number.
    Nilpotency {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
    },
    /// Brute force against the tree sum.
    Pipelines {
        /// Number of random graphs on top of the exhaustive sweep.
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
    },
    /// Dodgson identities on the built-in corpus or a directory of graphs.
    DodgsonIdentities {
        #[arg(long)]
        graphs: Option<PathBuf>,
    },
    /// The formal quadratic expression vanishes.
    FormalQe {
        #[arg(long, default_value = "2,4")]
        loops: String,
    },
    /// Cancellation certificates for the formal sum.
    Certificates {
        #[arg(long, default_value = "2,4")]
        loops: String,
    },
}

fn loop_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("bad loop number {t:?}"))))
        .collect()
}

/// Report `n` checks; each failure carries a witness line. The first
/// (smallest) witness is shown in full.
fn report(name: &str, n: usize, mut failures: Vec<(usize, String)>) -> Result<(), Failure> {
    failures.sort();
    if failures.is_empty() {
        out!("{name}: {n} checks passed");
        return Ok(());
    }
    out!("{name}: {} of {n} checks failed", failures.len());
    for (_, w) in failures.iter().take(5) {
        out!("  {w}");
    }
    Err(Failure::Check(format!("{name}: first failure: {}", failures[0].1)))
}

fn describe(g: &Graph) -> String {
    graph_to_text(g).replace('\n', "; ")
}

fn nilpotency(max_vertices: usize, max_edges: usize) -> Result<(), Failure> {
    let graphs: Vec<Graph> = families::enumerate_multigraphs(max_vertices, max_edges)
        .into_iter()
        .filter(|g| g.connectivity_profile().one_pi && g.loop_number() % 2 == 0 && g.loop_number() > 0)
        .collect();
    let failures: Vec<(usize, String)> = graphs
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let bad = match alpha::alpha_tree_sum(g).map_err(|e| e.to_string()).and_then(|a| alpha::wedge_self(&a).map_err(|e| e.to_string())) {
                Ok(cs) => cs.iter().find(|c| !c.value.is_zero()).map(|c| format!("coefficient of {:?} is {}", c.edges, c.value)),
                Err(e) => Some(e),
            };
            bad.map(|b| (g.edge_count() * 100 + i, format!("{}: {b}", describe(g))))
        })
        .collect();
    report("nilpotency", graphs.len(), failures)
}

fn pipelines(random: usize, seed: u64, max_edges: usize) -> Result<(), Failure> {
    let mut graphs = families::enumerate_multigraphs(4, 6);
    for i in 0..random as u64 {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
        let v = 2 + (s % 4) as usize;
        let e = (v - 1) + (s / 4 % (max_edges + 2 - v) as u64) as usize;
        graphs.push(families::random_connected(s, v, e.min(max_edges))?);
    }
    let failures: Vec<(usize, String)> = graphs
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let bad = match alpha::pipelines_agree(g) {
                Ok(a) if a.agree => None,
                Ok(a) => Some(match a.witness {
                    Some((w, l, r)) => format!("word {w:?}: brute {l} vs tree sum {r}"),
                    None => "prefactors differ".to_string(),
                }),
                Err(e) => Some(e.to_string()),
            };
            bad.map(|b| (g.edge_count() * 1000 + i, format!("{}: {b}", describe(g))))
        })
        .collect();
    report("pipelines", graphs.len(), failures)
}

fn load_dir(dir: &PathBuf) -> Result<Vec<(String, Graph)>, Failure> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            let g = parse_graph(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), g))
        })
        .collect()
}

fn dodgson_identities(graphs: Option<PathBuf>) -> Result<(), Failure> {
    let graphs = match graphs {
        Some(dir) => load_dir(&dir)?,
        None => families::corpus(),
    };
    let results: Vec<(usize, Vec<(usize, String)>)> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, (name, g))| match Dodgson::new(g).identity_suite() {
            Ok(checks) => {
                let bad = checks.iter().filter(|c| !c.holds()).map(|c| (i, format!("{name}: {} fails", c.name))).collect();
                (checks.len(), bad)
            }
            Err(e) => (1, vec![(i, format!("{name}: {e}"))]),
        })
        .collect();
    let n = results.iter().map(|r| r.0).sum();
    report("dodgson-identities", n, results.into_iter().flat_map(|r| r.1).collect())
}

fn formal_qe(loops: &str) -> Result<(), Failure> {
    let mut failures = Vec::new();
    let list = loop_list(loops)?;
    for &l in &list {
        if l > QE_FORMAL_MAX_LOOPS {
            return Err(Failure::Usage(format!("formal expansion limited to L <= {QE_FORMAL_MAX_LOOPS}")));
        }
        let q = alpha::qe_formal(l)?;
        out!("L = {l}: Q_E has {} terms", q.num_terms());
        if !q.is_zero() {
            failures.push((l, format!("L = {l}: Q_E = {q}")));
        }
    }
    report("formal-qe", list.len(), failures)
}

fn certificates(loops: &str) -> Result<(), Failure> {
    let mut failures = Vec::new();
    let list = loop_list(loops)?;
    for &l in &list {
        let c = alpha::cancellation_certificate(l)?;
        out!("L = {l}: {} terms in {} cancelling pairs", c.terms, c.entries.len());
        if !c.complete() {
            let first = c.failures.first().cloned().or_else(|| c.unpaired.first().map(|t| format!("unpaired {}", t.render())));
            failures.push((l, format!("L = {l}: {}", first.unwrap_or_default())));
        }
    }
    report("certificates", list.len(), failures)
}

pub fn run(suite: Suite) -> Result<(), Failure> {
    match suite {
        Suite::Nilpotency { max_vertices, max_edges } => nilpotency(max_vertices, max_edges),
        Suite::Pipelines { random, seed, max_edges } => pipelines(random, seed, max_edges),
        Suite::DodgsonIdentities { graphs } => dodgson_identities(graphs),
        Suite::FormalQe { loops } => formal_qe(&loops),
        Suite::Certificates { loops } => certificates(&loops),
    }
}
