use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::FormError;
use crate::poly::{MPoly, VarRegistry};

/// `da_e` or `dx_j` (1-based). All `da` sort before all `dx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    DA(usize),
    DX(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::DA(e) => write!(f, "da{e}"),
            Generator::DX(j) => write!(f, "dx{j}"),
        }
    }
}

/// Strictly increasing list of generators.
pub type Word = Vec<Generator>;

/// Sort `gens` into canonical order. Returns the sign of the sorting
/// permutation, or `None` if a generator repeats.
pub fn shuffle_sign(gens: &[Generator]) -> Option<(i8, Word)> {
    let mut word = gens.to_vec();
    let mut negative = false;
    // Insertion sort counts the inversions directly.
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && word[j - 1] == word[j] {
            return None;
        }
    }
    Some((if negative { -1 } else { 1 }, word))
}

/// Finite sum of `coefficient · word`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffForm {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<Word, MPoly>,
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffForm({self})")
    }
}

impl DiffForm {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        DiffForm { reg: reg.clone(), terms: BTreeMap::new() }
    }

    /// The 0-form `c`.
    pub fn scalar(c: MPoly) -> Self {
        let mut f = Self::zero(c.registry());
        f.add_term(Vec::new(), c);
        f
    }

    /// `c · g1 ∧ g2 ∧ ...` for generators in any order.
    pub fn term(coeff: MPoly, gens: &[Generator]) -> Self {
        let mut f = Self::zero(coeff.registry());
        if let Some((sign, word)) = shuffle_sign(gens) {
            f.add_term(word, if sign < 0 { coeff.negate() } else { coeff });
        }
        f
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &MPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[Generator]) -> MPoly {
        self.terms.get(word).cloned().unwrap_or_else(|| MPoly::zero(&self.reg))
    }

    /// Degree of every term, if they agree.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Vec::len);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Add `coeff · word` for a word already in canonical order.
    pub fn add_term(&mut self, word: Word, coeff: MPoly) {
        debug_assert!(word.windows(2).all(|w| w[0] < w[1]), "word not canonical");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &DiffForm) -> Result<DiffForm, FormError> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn negate(&self) -> DiffForm {
        self.map_coefficients(MPoly::negate)
    }

    pub fn scale(&self, c: &MPoly) -> Result<DiffForm, FormError> {
        let mut out = DiffForm::zero(&self.reg);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c.checked_mul(d)?);
        }
        Ok(out)
    }

    pub fn map_coefficients(&self, f: impl Fn(&MPoly) -> MPoly) -> DiffForm {
        let mut out = DiffForm::zero(&self.reg);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn try_map_coefficients<E>(&self, f: impl Fn(&MPoly) -> Result<MPoly, E>) -> Result<DiffForm, E> {
        let mut out = DiffForm::zero(&self.reg);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    fn check(&self, other: &DiffForm) -> Result<(), FormError> {
        if Arc::ptr_eq(&self.reg, &other.reg) || self.reg.names() == other.reg.names() {
            Ok(())
        } else {
            Err(FormError::RegistryMismatch)
        }
    }

    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm, FormError> {
        self.check(other)?;
        let mut out = DiffForm::zero(&self.reg);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let Some((sign, word)) = merge_sign(w1, w2) else { continue };
                let c = c1.checked_mul(c2)?;
                out.add_term(word, if sign < 0 { c.negate() } else { c });
            }
        }
        Ok(out)
    }

    /// Keep the terms whose word satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> DiffForm {
        DiffForm {
            reg: self.reg.clone(),
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Move coefficients into `target` via `var_map` and generators via `gen_map`,
    /// re-sorting words with the appropriate sign.
    pub fn rename(
        &self,
        target: &Arc<VarRegistry>,
        var_map: &[usize],
        gen_map: impl Fn(Generator) -> Option<Generator>,
    ) -> Result<DiffForm, FormError> {
        let mut out = DiffForm::zero(target);
        for (w, c) in &self.terms {
            let gens = w.iter().map(|&g| gen_map(g).ok_or(FormError::UnmappedGenerator(g))).collect::<Result<Vec<_>, _>>()?;
            let c = c.rename(target, var_map)?;
            if let Some((sign, word)) = shuffle_sign(&gens) {
                out.add_term(word, if sign < 0 { c.negate() } else { c });
            }
        }
        Ok(out)
    }

    /// The same form coefficient-wise in another registry.
    pub fn with_registry(&self, target: &Arc<VarRegistry>, var_map: &[usize]) -> Result<DiffForm, FormError> {
        self.rename(target, var_map, Some)
    }
}

/// Sign of sorting the concatenation of two canonical words, or `None` if they
/// share a generator.
pub(crate) fn merge_sign(w1: &[Generator], w2: &[Generator]) -> Option<(i8, Word)> {
    let mut word = Vec::with_capacity(w1.len() + w2.len());
    let (mut i, mut j) = (0, 0);
    let mut negative = false;
    while i < w1.len() || j < w2.len() {
        if j == w2.len() || (i < w1.len() && w1[i] < w2[j]) {
            word.push(w1[i]);
            i += 1;
        } else if i == w1.len() || w2[j] < w1[i] {
            // w2[j] jumps over the rest of w1.
            if (w1.len() - i) % 2 == 1 {
                negative = !negative;
            }
            word.push(w2[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((if negative { -1 } else { 1 }, word))
}

pub(crate) fn fmt_word(w: &[Generator]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join("∧")
}

impl fmt::Display for DiffForm {
    /// One line per word: `± coeff · da_i∧da_j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let single = c.num_terms() == 1;
            let lead_negative = c.leading_term().is_some_and(|(_, x)| x.is_negative());
            let (sign, body) = if single && lead_negative { ("-", c.negate()) } else { ("+", c.clone()) };
            let coeff = if single { body.to_string() } else { format!("({body})") };
            write!(f, "{sign} {coeff} · {}", fmt_word(w))?;
        }
        Ok(())
    }
}
