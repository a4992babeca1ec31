use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::diffform::fmt_word;
use super::{DiffForm, FormError, ScalarPrefactor};
use crate::poly::{poly_to_json, MPoly, Monomial};

/// `prefactor · body`, where the body has polynomial coefficients in `a_e` and
/// `psi` is the graph polynomial the prefactor's `ψ` refers to.
#[derive(Debug, Clone)]
pub struct AlphaForm {
    pub prefactor: ScalarPrefactor,
    pub body: DiffForm,
    pub psi: MPoly,
    pub v_star: usize,
}

impl AlphaForm {
    pub fn zero(psi: MPoly, edges: usize, v_star: usize) -> Self {
        AlphaForm { prefactor: ScalarPrefactor::one(edges), body: DiffForm::zero(psi.registry()), psi, v_star }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() || self.prefactor.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.body.degree()
    }

    /// Absorb even powers of the `a_e` into the body, move the positive content
    /// of the body into the rational factor, and send zero to a unit prefactor.
    pub fn normalize(mut self) -> Result<AlphaForm, FormError> {
        if self.is_zero() {
            let edges = self.prefactor.a_half.len();
            return Ok(AlphaForm::zero(self.psi, edges, self.v_star));
        }
        let reg = self.body.registry().clone();
        let mut up = vec![0u16; reg.len()];
        let mut down = vec![0u16; reg.len()];
        for (e, h) in self.prefactor.a_half.iter_mut().enumerate() {
            if *h % 2 != 0 {
                return Err(FormError::OddParameterPower(e + 1));
            }
            let k = u16::try_from(h.unsigned_abs() / 2).expect("exponent fits");
            if *h > 0 {
                up[e] = k;
            } else {
                down[e] = k;
            }
            *h = 0;
        }
        let up = Monomial::from_exps(up);
        let down = MPoly::monomial(&reg, Monomial::from_exps(down), BigRational::one());
        self.body = self.body.try_map_coefficients(|c| c.mul_monomial(&up).exact_div(&down))?;
        let content = self
            .body
            .terms()
            .fold(None::<(BigInt, BigInt)>, |acc, (_, c)| {
                let g = c.content();
                Some(match acc {
                    None => (g.numer().clone(), g.denom().clone()),
                    Some((n, d)) => {
                        use num_integer::Integer;
                        (n.gcd(g.numer()), d.lcm(g.denom()))
                    }
                })
            })
            .map_or_else(BigRational::one, |(n, d)| BigRational::new(n, d));
        let inv = BigRational::one() / &content;
        self.body = self.body.map_coefficients(|c| c.scale(&inv));
        self.prefactor.rational *= content;
        Ok(self)
    }

    /// Exact equality of the represented forms.
    pub fn equals(&self, other: &AlphaForm) -> bool {
        self.compare(other, false)
    }

    /// `Some(±1)` if `self = ±other`, `Some(0)` if both vanish.
    pub fn sign_relative_to(&self, other: &AlphaForm) -> Option<i8> {
        if self.is_zero() && other.is_zero() {
            return Some(0);
        }
        if self.compare(other, false) {
            Some(1)
        } else if self.compare(other, true) {
            Some(-1)
        } else {
            None
        }
    }

    fn compare(&self, other: &AlphaForm, negate: bool) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (p, q) = (&self.prefactor, &other.prefactor);
        if p.pi_half != q.pi_half || p.a_half != q.a_half || self.psi != other.psi {
            return false;
        }
        let d = p.psi_half - q.psi_half;
        if d % 2 != 0 {
            return false;
        }
        let lift = self.psi.pow(d.unsigned_abs() / 2);
        let (mut lhs, mut rhs) = (self.body.map_coefficients(|c| c.scale(&p.rational)), other.body.map_coefficients(|c| c.scale(&q.rational)));
        if d > 0 {
            lhs = lhs.map_coefficients(|c| c * &lift);
        } else if d < 0 {
            rhs = rhs.map_coefficients(|c| c * &lift);
        }
        if negate {
            rhs = rhs.negate();
        }
        lhs == rhs
    }

    /// `self ∧ other` for two forms over the same `ψ`.
    pub fn wedge(&self, other: &AlphaForm) -> Result<AlphaForm, FormError> {
        if self.psi != other.psi {
            return Err(FormError::PrefactorMismatch);
        }
        Ok(AlphaForm {
            prefactor: self.prefactor.mul(&other.prefactor),
            body: self.body.wedge(&other.body)?,
            psi: self.psi.clone(),
            v_star: self.v_star,
        })
    }

    /// Multi-line text: the prefactor, then one signed term per line.
    pub fn render_text(&self, with_pi: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        format!("{} ×\n{}", self.prefactor.render(with_pi, false), self.body)
    }

    pub fn render_latex(&self, with_pi: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, (w, c)) in self.body.terms().enumerate() {
            let single = c.num_terms() == 1;
            let negative = single && c.leading_term().is_some_and(|(_, x)| x.is_negative());
            let body = if negative { c.negate() } else { c.clone() };
            let coeff = latex_poly(&body);
            let coeff = if single { coeff } else { format!("\\left({coeff}\\right)") };
            let word = fmt_word(w).replace('∧', " \\wedge ").replace("da", "da_").replace("dx", "dx_");
            let sign = match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            parts.push(format!("{sign}{coeff}\\, {word}"));
        }
        format!("{} \\left[{}\\right]", self.prefactor.render(with_pi, true), parts.concat())
    }

    pub fn to_json(&self, with_pi: bool) -> Value {
        let mut pre = serde_json::to_value(super::prefactor::PrefactorJson::from(&self.prefactor)).unwrap();
        if !with_pi {
            pre["pi_half_exponent"] = json!(0);
            pre["pi_dropped"] = json!(true);
        }
        let terms: Vec<Value> = self
            .body
            .terms()
            .map(|(w, c)| json!({ "word": w.iter().map(ToString::to_string).collect::<Vec<_>>(), "coefficient": poly_to_json(c), "text": c.to_string() }))
            .collect();
        json!({
            "zero": self.is_zero(),
            "v_star": self.v_star,
            "prefactor": pre,
            "prefactor_text": self.prefactor.render(with_pi, false),
            "psi": self.psi.to_string(),
            "terms": terms,
        })
    }
}

/// Polynomial text with `_{}` subscripts and `^{}` exponents.
pub fn latex_poly(p: &MPoly) -> String {
    let s = p.to_string();
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '*' => {}
            'a' | 'x' if chars.peek().is_some_and(char::is_ascii_digit) => {
                out.push(c);
                out.push_str("_{");
                while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                    out.push(d);
                    chars.next();
                }
                out.push('}');
            }
            '^' => {
                out.push_str("^{");
                while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                    out.push(d);
                    chars.next();
                }
                out.push('}');
            }
            _ => out.push(c),
        }
    }
    out
}

impl fmt::Display for AlphaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text(true))
    }
}

impl PartialEq for AlphaForm {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
