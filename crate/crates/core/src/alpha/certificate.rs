//! Pairing of the terms of the formal `Q_E` sum into cancelling pairs.
//!
//! A term is a permutation `S` of `1..=2L` together with perfect matchings of
//! its two halves. Its auxiliary graph joins `s_i` to `s_{L+i}` by a dashed
//! edge and the matched labels by solid edges. On the cycle through label 1,
//! reflecting the labels across the axis through 1 and its antipode gives a
//! term with the same factors and the opposite sign.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use super::AlphaError;
use crate::combinat::{is_odd_permutation, perfect_matchings};

pub type Pair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CertTerm {
    /// `E_1 ⊕ E_2`.
    pub s: Vec<usize>,
    /// Matching of the first half, pairs ascending.
    pub m1: Vec<Pair>,
    /// Matching of the second half.
    pub m2: Vec<Pair>,
}

fn canonical(m: &[Pair]) -> Vec<Pair> {
    let mut out: Vec<Pair> = m.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    out.sort_unstable();
    out
}

impl CertTerm {
    pub fn new(s: Vec<usize>, m1: &[Pair], m2: &[Pair]) -> Self {
        CertTerm { s, m1: canonical(m1), m2: canonical(m2) }
    }

    pub fn loops(&self) -> usize {
        self.s.len() / 2
    }

    pub fn sign(&self) -> i8 {
        if is_odd_permutation(&self.s) {
            -1
        } else {
            1
        }
    }

    /// Cross pairs `{s_i, s_{L+i}}`.
    pub fn dashed(&self) -> Vec<Pair> {
        let l = self.loops();
        (0..l).map(|i| (self.s[i], self.s[l + i])).collect()
    }

    /// All `2L` factors as sorted unordered pairs.
    pub fn factors(&self) -> Vec<Pair> {
        let mut all = canonical(&self.dashed());
        all.extend(&self.m1);
        all.extend(&self.m2);
        all.sort_unstable();
        all
    }

    /// Text such as `+(1,2)⊕(3,4) ψ^{1,3}ψ^{2,4}ψ^{1,2}ψ^{3,4}`.
    pub fn render(&self) -> String {
        let l = self.loops();
        let half = |v: &[usize]| v.iter().map(ToString::to_string).join(",");
        let psi = |p: &Pair| format!("ψ^{{{},{}}}", p.0, p.1);
        let factors: String = self.dashed().iter().chain(&self.m1).chain(&self.m2).map(psi).collect();
        format!(
            "{}({})⊕({}) {}",
            if self.sign() > 0 { '+' } else { '-' },
            half(&self.s[..l]),
            half(&self.s[l..]),
            factors
        )
    }
}

/// Labels `1..=2L`, colored by half, with dashed and solid edges.
#[derive(Debug, Clone, Serialize)]
pub struct AuxiliaryGraph {
    pub white: Vec<usize>,
    pub black: Vec<usize>,
    pub dashed: Vec<Pair>,
    pub solid: Vec<Pair>,
    /// Each cycle starts at its smallest label and leaves it along the dashed
    /// edge.
    pub cycles: Vec<Vec<usize>>,
}

impl AuxiliaryGraph {
    pub fn of(term: &CertTerm) -> Self {
        let l = term.loops();
        let n = 2 * l;
        let mut dashed_nb = vec![0; n + 1];
        let mut solid_nb = vec![0; n + 1];
        let dashed = term.dashed();
        for &(a, b) in &dashed {
            dashed_nb[a] = b;
            dashed_nb[b] = a;
        }
        let solid: Vec<Pair> = term.m1.iter().chain(&term.m2).copied().collect();
        for &(a, b) in &solid {
            solid_nb[a] = b;
            solid_nb[b] = a;
        }
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            let mut along_dashed = true;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = if along_dashed { dashed_nb[v] } else { solid_nb[v] };
                along_dashed = !along_dashed;
            }
            cycles.push(cycle);
        }
        let mut white = term.s[..l].to_vec();
        let mut black = term.s[l..].to_vec();
        white.sort_unstable();
        black.sort_unstable();
        AuxiliaryGraph { white, black, dashed, solid, cycles }
    }
}

/// The cancelling partner, the two fixed labels and the swapped pairs.
pub fn partner(term: &CertTerm) -> (CertTerm, Pair, Vec<Pair>) {
    let aux = AuxiliaryGraph::of(term);
    let cycle = &aux.cycles[0];
    let len = cycle.len();
    let half = len / 2;
    let mut tau: Vec<usize> = (0..=term.s.len()).collect();
    let mut swapped = Vec::new();
    for i in 1..half {
        let (a, b) = (cycle[i], cycle[len - i]);
        tau[a] = b;
        tau[b] = a;
        swapped.push((a.min(b), a.max(b)));
    }
    swapped.sort_unstable();
    let map = |m: &[Pair]| m.iter().map(|&(a, b)| (tau[a], tau[b])).collect::<Vec<_>>();
    let s = term.s.iter().map(|&x| tau[x]).collect();
    let fixed = (cycle[0].min(cycle[half]), cycle[0].max(cycle[half]));
    (CertTerm::new(s, &map(&term.m1), &map(&term.m2)), fixed, swapped)
}

#[derive(Debug, Clone, Serialize)]
pub struct CertEntry {
    pub term: CertTerm,
    pub partner: CertTerm,
    pub fixed: Pair,
    pub swapped: Vec<Pair>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub loops: usize,
    pub terms: usize,
    /// One entry per cancelling pair, keyed by the smaller term.
    pub entries: Vec<CertEntry>,
    pub unpaired: Vec<CertTerm>,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn complete(&self) -> bool {
        self.unpaired.is_empty() && self.failures.is_empty() && 2 * self.entries.len() == self.terms
    }
}

/// Every term of the sum, in permutation order.
pub fn all_terms(loops: usize) -> Vec<CertTerm> {
    let labels: Vec<usize> = (1..=2 * loops).collect();
    let mut out = Vec::new();
    for s in labels.iter().copied().permutations(2 * loops) {
        let (mut a, mut b) = (s[..loops].to_vec(), s[loops..].to_vec());
        a.sort_unstable();
        b.sort_unstable();
        let (ma, mb) = (perfect_matchings(&a), perfect_matchings(&b));
        for m1 in &ma {
            for m2 in &mb {
                out.push(CertTerm::new(s.clone(), m1, m2));
            }
        }
    }
    out
}

/// Pair off every term and check each pair: distinct, opposite sign, equal
/// factors, and mutually partnered.
pub fn cancellation_certificate(loops: usize) -> Result<Certificate, AlphaError> {
    if loops % 2 == 1 {
        return Err(AlphaError::OddLoops(loops));
    }
    if !(2..=super::QE_FORMAL_MAX_LOOPS).contains(&loops) {
        return Err(AlphaError::LoopsOutOfRange(loops));
    }
    let terms = all_terms(loops);
    let universe: HashSet<&CertTerm> = terms.iter().collect();
    let mut entries = Vec::new();
    let mut unpaired = Vec::new();
    let mut failures = Vec::new();
    for term in &terms {
        let (p, fixed, swapped) = partner(term);
        if !universe.contains(&p) || p == *term {
            unpaired.push(term.clone());
            continue;
        }
        if p.sign() == term.sign() {
            failures.push(format!("same sign: {} / {}", term.render(), p.render()));
        }
        if p.factors() != term.factors() {
            failures.push(format!("factors differ: {} / {}", term.render(), p.render()));
        }
        if partner(&p).0 != *term {
            failures.push(format!("not an involution at {}", term.render()));
        }
        if *term < p {
            entries.push(CertEntry { term: term.clone(), partner: p, fixed, swapped });
        }
    }
    Ok(Certificate { loops, terms: terms.len(), entries, unpaired, failures })
}
