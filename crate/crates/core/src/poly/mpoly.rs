use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::registry::{same_registry, VarRegistry};
use super::PolyError;

/// Exponent vector, ordered graded-lexicographically.
///
/// The derived ordering compares total degree first, then the exponent of the
/// first variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: vec![0; nvars] }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { deg, exps }
    }

    pub fn var(nvars: usize, id: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[id] = 1;
        Monomial { deg: 1, exps }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    /// `self / other` if every exponent allows it.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { deg: self.deg - other.deg, exps })
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone)]
pub struct MPoly {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_registry(&self.reg, &other.reg) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl MPoly {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        MPoly { reg: reg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::constant(reg, BigRational::one())
    }

    pub fn constant(reg: &Arc<VarRegistry>, c: BigRational) -> Self {
        let mut p = Self::zero(reg);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(reg.len()), c);
        }
        p
    }

    pub fn integer(reg: &Arc<VarRegistry>, c: i64) -> Self {
        Self::constant(reg, BigRational::from_integer(c.into()))
    }

    pub fn var(reg: &Arc<VarRegistry>, id: usize) -> Self {
        assert!(id < reg.len(), "variable {id} out of range");
        let mut p = Self::zero(reg);
        p.terms.insert(Monomial::var(reg.len(), id), BigRational::one());
        p
    }

    pub fn monomial(reg: &Arc<VarRegistry>, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.exps.len(), reg.len());
        let mut p = Self::zero(reg);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        reg: &Arc<VarRegistry>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(reg);
        for (m, c) in terms {
            if m.exps.len() != reg.len() {
                return Err(PolyError::ArityMismatch { expected: reg.len(), got: m.exps.len() });
            }
            p.add_term(m, c);
        }
        Ok(p)
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

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.deg);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.deg == 0 && c.is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.deg == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &MPoly) -> Result<(), PolyError> {
        if same_registry(&self.reg, &other.reg) {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check(other)?;
        if let Some(out) = self.mul_small(other) {
            return Ok(out);
        }
        let mut out = MPoly::zero(&self.reg);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Integer coefficients that fit in an `i64`, if all of them do.
    fn small_coefficients(&self) -> Option<Vec<(&Monomial, i64)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                if !c.is_integer() {
                    return None;
                }
                i64::try_from(c.numer()).ok().map(|v| (m, v))
            })
            .collect()
    }

    // Products of small integer polynomials dominate the wedge and determinant
    // work; accumulating in i128 skips the per-term gcd of BigRational.
    fn mul_small(&self, other: &MPoly) -> Option<MPoly> {
        let (a, b) = (self.small_coefficients()?, other.small_coefficients()?);
        let mut acc: std::collections::HashMap<Monomial, i128> = std::collections::HashMap::with_capacity(a.len() * b.len());
        for &(m1, c1) in &a {
            for &(m2, c2) in &b {
                let slot = acc.entry(m1.mul(m2)).or_insert(0);
                *slot = slot.checked_add(i128::from(c1) * i128::from(c2))?;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (m, BigRational::from_integer(BigInt::from(c))))
            .collect();
        Some(MPoly { reg: self.reg.clone(), terms })
    }

    /// In-place `self += other`. Panics on registry mismatch.
    pub fn add_assign_ref(&mut self, other: &MPoly) {
        self.check(other).expect("registry mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, other: &MPoly, c: &BigRational) {
        self.check(other).expect("registry mismatch");
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.reg);
        }
        MPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> MPoly {
        self.scale(&BigRational::from_integer(c.into()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut out = MPoly::one(&self.reg);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Exact quotient; fails if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &MPoly) -> Result<MPoly, PolyError> {
        self.check(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let lm = lm.clone();
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.reg);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm).ok_or(PolyError::NotDivisible)?;
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.reg.len() {
            return Err(PolyError::ArityMismatch { expected: self.reg.len(), got: point.len() });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitute polynomial values for every variable.
    pub fn substitute(&self, target: &Arc<VarRegistry>, values: &[MPoly]) -> Result<MPoly, PolyError> {
        if values.len() != self.reg.len() {
            return Err(PolyError::ArityMismatch { expected: self.reg.len(), got: values.len() });
        }
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (v, &e) in values.iter().zip(&m.exps) {
                if e > 0 {
                    t = t.checked_mul(&v.pow(e as u32))?;
                }
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Move variable `i` to variable `map[i]` of `target`.
    pub fn rename(&self, target: &Arc<VarRegistry>, map: &[usize]) -> Result<MPoly, PolyError> {
        if map.len() != self.reg.len() {
            return Err(PolyError::ArityMismatch { expected: self.reg.len(), got: map.len() });
        }
        if let Some(&j) = map.iter().find(|&&j| j >= target.len()) {
            return Err(PolyError::VariableOutOfRange(j));
        }
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            for (i, &e) in m.exps.iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial::from_exps(exps), c.clone());
        }
        Ok(out)
    }

    /// Positive rational `g` such that `self / g` has coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(num.abs(), den)
        }
    }

    pub fn negate(&self) -> MPoly {
        MPoly {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    /// Collect coefficients with respect to the variables in `vars`; every
    /// other variable stays inside the coefficient polynomial.
    pub fn split_by(&self, vars: &[usize]) -> BTreeMap<Vec<u16>, MPoly> {
        let mut out: BTreeMap<Vec<u16>, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u16> = vars.iter().map(|&v| m.exps[v]).collect();
            let mut rest = m.exps.clone();
            for &v in vars {
                rest[v] = 0;
            }
            out.entry(key)
                .or_insert_with(|| MPoly::zero(&self.reg))
                .add_term(Monomial::from_exps(rest), c.clone());
        }
        out
    }

    /// Compare everything except the registry identity.
    pub fn cmp_terms(&self, other: &MPoly) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("registry mismatch")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("registry mismatch")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("registry mismatch")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.negate()
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.negate()
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn fmt_monomial(reg: &VarRegistry, m: &Monomial, sep: &str) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(reg.name(i).to_string()),
            _ => parts.push(format!("{}^{}", reg.name(i), e)),
        }
    }
    parts.join(sep)
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(&self.reg, m, "*");
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}
