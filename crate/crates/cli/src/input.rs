use std::str::FromStr;

use hsl_core::{ExactDelta, Lattice64, TorusLattice};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// A number given on the command line: `p/q` and integers are exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(BigRational),
    Float(f64),
}

impl Number {
    pub fn value(&self) -> f64 {
        match self {
            Number::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Number::Float(v) => *v,
        }
    }
}

impl FromStr for Number {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Ok(q) = BigRational::from_str(s) {
            return Ok(Number::Exact(q));
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Number::Float(v)),
            _ => Err(format!("`{s}` is not a rational `p/q` or a finite real")),
        }
    }
}

/// `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{s}` is not a complex number of the form a+bi");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|v| Complex64::new(v, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let coeff = |c: &str| match c {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => c.parse::<f64>().map_err(|_| bad()),
    };
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().map_err(|_| bad())?, coeff(&body[k..])?),
        None => (0.0, coeff(body)?),
    };
    let z = Complex64::new(re, im);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// Grid resolution: a power of two in `[16, 4096]`.
pub fn parse_grid(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if !(16..=4096).contains(&n) || !n.is_power_of_two() {
        return Err(format!("grid must be a power of two in [16, 4096], got {n}"));
    }
    Ok(n)
}

/// Builds the lattice; exact when `δ₀` and `δ₁²` are both exact.
pub fn lattice(delta0: &Number, delta1: Option<&Number>, delta1sq: Option<&Number>) -> Result<Lattice64, String> {
    let d1sq = match (delta1, delta1sq) {
        (Some(_), Some(_)) => return Err("give only one of --delta1 and --delta1sq".into()),
        (None, Some(q)) => q.clone(),
        (Some(Number::Exact(q)), None) => {
            if !q.is_positive() {
                return Err(format!("delta1 must be positive, got {q}"));
            }
            Number::Exact(q * q)
        }
        (Some(Number::Float(v)), None) => {
            if *v <= 0.0 {
                return Err(format!("delta1 must be positive, got {v}"));
            }
            return TorusLattice::new(delta0.value(), *v).map_err(|e| e.to_string());
        }
        (None, None) => Number::Exact(BigRational::from_integer(BigInt::from(1))),
    };
    match (delta0, &d1sq) {
        (Number::Exact(a), Number::Exact(b)) => {
            TorusLattice::from_exact(ExactDelta::new(a.clone(), b.clone())).map_err(|e| e.to_string())
        }
        _ => {
            let v = d1sq.value();
            if v <= 0.0 {
                return Err(format!("delta1sq must be positive, got {v}"));
            }
            TorusLattice::new(delta0.value(), v.sqrt()).map_err(|e| e.to_string())
        }
    }
}
