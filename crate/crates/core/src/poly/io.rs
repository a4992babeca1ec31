use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use super::{MPoly, Monomial, PolyError, VarRegistry};

/// Parse text such as `a1*a3 - 2*a2^2 + 1/3`.
pub fn parse_poly(reg: &Arc<VarRegistry>, text: &str) -> Result<MPoly, PolyError> {
    let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut out = MPoly::zero(reg);
    let mut rest = src.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            negative = true;
        } else if !first {
            return Err(PolyError::Parse(format!("expected + or - before {rest:?}")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let (m, mut c) = parse_term(reg, term)?;
        if negative {
            c = -c;
        }
        out.add_term(m, c);
    }
    Ok(out)
}

fn parse_term(reg: &VarRegistry, term: &str) -> Result<(Monomial, BigRational), PolyError> {
    if term.is_empty() {
        return Err(PolyError::Parse("empty term".into()));
    }
    let mut exps = vec![0u16; reg.len()];
    let mut coeff = BigRational::one();
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(PolyError::Parse(format!("bad term {term:?}")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let p: u16 = p.parse().map_err(|_| PolyError::Parse(format!("bad exponent in {factor:?}")))?;
                (n, p)
            }
            None => (factor, 1),
        };
        let id = reg.lookup(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        exps[id] += power;
    }
    Ok((Monomial::from_exps(exps), coeff))
}

fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::Parse(format!("bad number {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `[[exps], num, den]` per term, in descending monomial order. Integers that
/// do not fit in an `i64` are written as strings.
pub fn poly_to_json(p: &MPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let exps: Vec<Value> = m.exps().iter().map(|&e| Value::from(e)).collect();
                Value::Array(vec![Value::Array(exps), int_json(c.numer()), int_json(c.denom())])
            })
            .collect(),
    )
}

fn int_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

fn json_int(v: &Value) -> Result<BigInt, PolyError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| PolyError::Parse(format!("non-integer coefficient {n}"))),
        Value::String(s) => s.parse().map_err(|_| PolyError::Parse(format!("bad integer {s:?}"))),
        other => Err(PolyError::Parse(format!("bad coefficient {other}"))),
    }
}

pub fn poly_from_json(reg: &Arc<VarRegistry>, v: &Value) -> Result<MPoly, PolyError> {
    let terms = v.as_array().ok_or_else(|| PolyError::Parse("expected a list of terms".into()))?;
    let mut out = MPoly::zero(reg);
    for t in terms {
        let parts = t.as_array().filter(|a| a.len() == 3).ok_or_else(|| PolyError::Parse(format!("bad term {t}")))?;
        let exps = parts[0].as_array().ok_or_else(|| PolyError::Parse(format!("bad exponents {}", parts[0])))?;
        if exps.len() != reg.len() {
            return Err(PolyError::ArityMismatch { expected: reg.len(), got: exps.len() });
        }
        let exps = exps
            .iter()
            .map(|e| e.as_u64().and_then(|e| u16::try_from(e).ok()))
            .collect::<Option<Vec<u16>>>()
            .ok_or_else(|| PolyError::Parse(format!("bad exponents {}", parts[0])))?;
        let den = json_int(&parts[2])?;
        if den.is_zero() {
            return Err(PolyError::Parse("zero denominator".into()));
        }
        out.add_term(Monomial::from_exps(exps), BigRational::new(json_int(&parts[1])?, den));
    }
    Ok(out)
}
