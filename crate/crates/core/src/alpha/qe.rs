//! The coefficient `Q_E` of `da_E` in `α ∧ α`, written as a signed sum over
//! splittings of `E` into two halves, cross pairings and internal matchings.
//!
//! For labels `E = (l_1 < ... < l_2L)` the sum is
//!
//! `Σ_{S ∈ S_2L} sgn(S) Π_i D(s_i, s_{L+i}) · H(s_1..s_L) · H(s_{L+1}..s_2L)`
//!
//! where `H(X) = 2^{L/2}(L/2)! Σ_{matchings of X} Π D`. Reordering both halves
//! by the same permutation leaves a term unchanged, so the sum is `L!` times
//! the sum with the first half sorted.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use num_rational::BigRational;

use super::AlphaError;
use crate::combinat::{factorial, is_odd_permutation, matching_multiplicity, perfect_matchings};
use crate::dodgson::Dodgson;
use crate::graph::Graph;
use crate::poly::{MPoly, VarClass, VarRegistry};

pub const QE_FORMAL_MAX_LOOPS: usize = 4;

/// Commuting symbols `D_i_j` for `1 <= i < j <= 2L`.
pub fn formal_registry(loops: usize) -> Arc<VarRegistry> {
    let mut reg = VarRegistry::new();
    for i in 1..=2 * loops {
        for j in i + 1..=2 * loops {
            reg.add(format!("D_{i}_{j}"), VarClass::Formal).expect("fresh names");
        }
    }
    Arc::new(reg)
}

/// `D_{i,j} = D_{j,i}`.
pub fn formal_symbol(reg: &Arc<VarRegistry>, i: usize, j: usize) -> MPoly {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let id = reg.lookup(&format!("D_{i}_{j}")).expect("symbol in registry");
    MPoly::var(reg, id)
}

fn check_loops(loops: usize) -> Result<(), AlphaError> {
    if loops % 2 == 1 {
        return Err(AlphaError::OddLoops(loops));
    }
    if !(2..=QE_FORMAL_MAX_LOOPS).contains(&loops) {
        return Err(AlphaError::LoopsOutOfRange(loops));
    }
    Ok(())
}

struct Symbols<'a, F> {
    reg: &'a Arc<VarRegistry>,
    sym: F,
    halves: HashMap<Vec<usize>, MPoly>,
}

impl<F: Fn(usize, usize) -> Result<MPoly, AlphaError>> Symbols<'_, F> {
    /// `H(X)`.
    fn half(&mut self, set: &[usize]) -> Result<MPoly, AlphaError> {
        let mut key = set.to_vec();
        key.sort_unstable();
        if let Some(h) = self.halves.get(&key) {
            return Ok(h.clone());
        }
        let mut sum = MPoly::zero(self.reg);
        for m in perfect_matchings(&key) {
            let mut prod = MPoly::one(self.reg);
            for (i, j) in m {
                prod = &prod * &(self.sym)(i, j)?;
            }
            sum.add_assign_ref(&prod);
        }
        let h = sum.scale(&BigRational::from_integer(matching_multiplicity(key.len())));
        self.halves.insert(key, h.clone());
        Ok(h)
    }

    fn cross(&self, first: &[usize], second: &[usize]) -> Result<MPoly, AlphaError> {
        let mut prod = MPoly::one(self.reg);
        for (&i, &j) in first.iter().zip(second) {
            prod = &prod * &(self.sym)(i, j)?;
        }
        Ok(prod)
    }

    /// Quotiented sum: first half sorted, result multiplied by `L!`.
    fn quotiented(&mut self, labels: &[usize]) -> Result<MPoly, AlphaError> {
        let loops = labels.len() / 2;
        let mut total = MPoly::zero(self.reg);
        for first in labels.iter().copied().combinations(loops) {
            let rest: Vec<usize> = labels.iter().copied().filter(|l| !first.contains(l)).collect();
            let mut signed = MPoly::zero(self.reg);
            for second in rest.iter().copied().permutations(loops) {
                let s: Vec<usize> = first.iter().chain(&second).copied().collect();
                let p = self.cross(&first, &second)?;
                signed.add_assign_ref(&if is_odd_permutation(&s) { p.negate() } else { p });
            }
            if signed.is_zero() {
                continue;
            }
            let hh = &self.half(&first)? * &self.half(&rest)?;
            total.add_assign_ref(&(&signed * &hh));
        }
        Ok(total.scale(&BigRational::from_integer(factorial(loops))))
    }

    fn unquotiented(&mut self, labels: &[usize]) -> Result<MPoly, AlphaError> {
        let loops = labels.len() / 2;
        let mut total = MPoly::zero(self.reg);
        for s in labels.iter().copied().permutations(labels.len()) {
            let (first, second) = s.split_at(loops);
            let p = &(&self.cross(first, second)? * &self.half(first)?) * &self.half(second)?;
            total.add_assign_ref(&if is_odd_permutation(&s) { p.negate() } else { p });
        }
        Ok(total)
    }
}

/// The graph-independent sum over symbols `D_{i,j}`, using the `L!` quotient.
pub fn qe_formal(loops: usize) -> Result<MPoly, AlphaError> {
    check_loops(loops)?;
    let reg = formal_registry(loops);
    let labels: Vec<usize> = (1..=2 * loops).collect();
    let mut s = Symbols { reg: &reg, sym: |i, j| Ok(formal_symbol(&reg, i, j)), halves: HashMap::new() };
    s.quotiented(&labels)
}

/// The same sum over all of `S_2L`, without the quotient.
pub fn qe_formal_unquotiented(loops: usize) -> Result<MPoly, AlphaError> {
    check_loops(loops)?;
    let reg = formal_registry(loops);
    let labels: Vec<usize> = (1..=2 * loops).collect();
    let mut s = Symbols { reg: &reg, sym: |i, j| Ok(formal_symbol(&reg, i, j)), halves: HashMap::new() };
    s.unquotiented(&labels)
}

/// The sum with `D_{i,j} = ψ^{e_i,e_j}` for a set of `2L` edges of `g`.
pub fn qe_graph(g: &Graph, edges: &[usize]) -> Result<MPoly, AlphaError> {
    let loops = g.loop_number();
    let mut labels = edges.to_vec();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != edges.len() || edges.len() != 2 * loops || labels.iter().any(|&e| e == 0 || e > g.edge_count()) {
        return Err(AlphaError::BadEdgeSet { expected: 2 * loops, got: edges.to_vec() });
    }
    let d = Dodgson::new(g);
    let reg = d.registry().clone();
    let mut s = Symbols { reg: &reg, sym: |i, j| Ok(d.edge(i, j)?), halves: HashMap::new() };
    s.quotiented(&labels)
}
