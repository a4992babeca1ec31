use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// `q · π^{pi/2} · ψ^{psi/2} · Π a_e^{a_e/2}`; every exponent is stored doubled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarPrefactor {
    pub rational: BigRational,
    pub pi_half: i32,
    pub psi_half: i32,
    pub a_half: Vec<i32>,
}

impl ScalarPrefactor {
    pub fn one(edges: usize) -> Self {
        ScalarPrefactor { rational: BigRational::one(), pi_half: 0, psi_half: 0, a_half: vec![0; edges] }
    }

    pub fn rational(q: BigRational, edges: usize) -> Self {
        ScalarPrefactor { rational: q, ..Self::one(edges) }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    /// Product; parameter vectors are padded to the longer one.
    pub fn mul(&self, other: &ScalarPrefactor) -> ScalarPrefactor {
        let n = self.a_half.len().max(other.a_half.len());
        let a_half = (0..n)
            .map(|i| self.a_half.get(i).copied().unwrap_or(0) + other.a_half.get(i).copied().unwrap_or(0))
            .collect();
        ScalarPrefactor {
            rational: &self.rational * &other.rational,
            pi_half: self.pi_half + other.pi_half,
            psi_half: self.psi_half + other.psi_half,
            a_half,
        }
    }

    /// Same exponents, ignoring the rational factor.
    pub fn same_shape(&self, other: &ScalarPrefactor) -> bool {
        self.pi_half == other.pi_half && self.psi_half == other.psi_half && self.a_half == other.a_half
    }

    pub(crate) fn render(&self, with_pi: bool, latex: bool) -> String {
        let mut num = Vec::new();
        let mut den = Vec::new();
        let q = &self.rational;
        let power = |base: &str, half: i32| -> String {
            let h = half.abs();
            let exp = if h % 2 == 0 { (h / 2).to_string() } else { format!("{h}/2") };
            if exp == "1" {
                base.to_string()
            } else if latex {
                format!("{base}^{{{exp}}}")
            } else {
                format!("{base}^({exp})")
            }
        };
        let mut push = |base: String, half: i32| {
            if half > 0 {
                num.push(power(&base, half));
            } else if half < 0 {
                den.push(power(&base, half));
            }
        };
        if with_pi {
            push(if latex { "\\pi".into() } else { "π".into() }, self.pi_half);
        }
        for (e, &h) in self.a_half.iter().enumerate() {
            push(if latex { format!("a_{{{}}}", e + 1) } else { format!("a{}", e + 1) }, h);
        }
        push(if latex { "\\psi".into() } else { "ψ".into() }, self.psi_half);
        let qn = q.numer().to_string();
        let qd = q.denom().to_string();
        let mut top = if qn == "1" && !num.is_empty() { String::new() } else if qn == "-1" && !num.is_empty() { "-".into() } else { qn };
        let sep = if latex { " " } else { "·" };
        if !num.is_empty() {
            if !top.is_empty() && top != "-" {
                top.push_str(sep);
            }
            top.push_str(&num.join(sep));
        }
        let mut bottom = if qd == "1" { Vec::new() } else { vec![qd] };
        bottom.extend(den);
        if bottom.is_empty() {
            return top;
        }
        if latex {
            format!("\\frac{{{top}}}{{{}}}", bottom.join(" "))
        } else {
            format!("{top}/({})", bottom.join("·"))
        }
    }
}

impl fmt::Display for ScalarPrefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(true, false))
    }
}

#[derive(Serialize)]
pub(crate) struct PrefactorJson {
    pub numerator: String,
    pub denominator: String,
    pub pi_half_exponent: i32,
    pub psi_half_exponent: i32,
    pub a_half_exponents: Vec<i32>,
}

impl From<&ScalarPrefactor> for PrefactorJson {
    fn from(p: &ScalarPrefactor) -> Self {
        PrefactorJson {
            numerator: p.rational.numer().to_string(),
            denominator: p.rational.denom().to_string(),
            pi_half_exponent: p.pi_half,
            psi_half_exponent: p.psi_half,
            a_half_exponents: p.a_half.clone(),
        }
    }
}

