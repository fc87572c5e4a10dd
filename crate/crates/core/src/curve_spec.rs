//! Closed analytic grammar for scalar flat-output functions.
//!
//! Text form: terms joined by `+`, each one of
//! `poly:c0,c1,...`, `sin:a,w`, `cos:a,w`, `exp:a,l`. Numbers are decimal
//! literals (optionally with an exponent) or exact rationals `p/q`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::RatPoly;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// `Σ coeffs[i] τ^i`
    Polynomial(Vec<BigRational>),
    /// `amplitude · sin(frequency · τ)`
    Sin {
        amplitude: BigRational,
        frequency: BigRational,
    },
    /// `amplitude · cos(frequency · τ)`
    Cos {
        amplitude: BigRational,
        frequency: BigRational,
    },
    /// `amplitude · exp(rate · τ)`
    Exp { amplitude: BigRational, rate: BigRational },
}

/// A nonempty sum of [`Term`]s; an entire function of one real variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveSpec {
    terms: Vec<Term>,
}

impl CurveSpec {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Parse("a curve spec needs at least one term".into()));
        }
        if terms.iter().any(|t| matches!(t, Term::Polynomial(c) if c.is_empty())) {
            return Err(Error::Parse("polynomial coefficient list is empty".into()));
        }
        Ok(CurveSpec { terms })
    }

    pub fn polynomial(coeffs: Vec<BigRational>) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![BigRational::zero()]
        } else {
            coeffs
        };
        CurveSpec {
            terms: vec![Term::Polynomial(coeffs)],
        }
    }

    /// Polynomial with integer coefficients, lowest degree first.
    pub fn poly_i64(coeffs: &[i64]) -> Self {
        Self::polynomial(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Polynomial from floating coefficients, converted exactly.
    pub fn poly_f64(coeffs: &[f64]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|&c| {
                BigRational::from_float(c).ok_or_else(|| Error::InvalidInput(format!("non-finite coefficient {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::polynomial(coeffs))
    }

    pub fn identity() -> Self {
        Self::poly_i64(&[0, 1])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Sum of two specs.
    pub fn plus(&self, other: &CurveSpec) -> CurveSpec {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        CurveSpec { terms }
    }

    /// True when the function is constant in τ, decided symbolically.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| match t {
            Term::Polynomial(c) => c.iter().skip(1).all(Zero::is_zero),
            Term::Sin { amplitude, frequency } | Term::Cos { amplitude, frequency } => {
                amplitude.is_zero() || frequency.is_zero()
            }
            Term::Exp { amplitude, rate } => amplitude.is_zero() || rate.is_zero(),
        })
    }

    /// The exact polynomial this spec denotes, if it only has polynomial terms
    /// (or terms that are constant, such as `cos:a,0`).
    pub fn as_polynomial(&self) -> Option<RatPoly> {
        let mut acc = RatPoly::zero();
        for t in &self.terms {
            let p = match t {
                Term::Polynomial(c) => RatPoly::new(c.clone()),
                Term::Sin { amplitude, frequency } if amplitude.is_zero() || frequency.is_zero() => RatPoly::zero(),
                Term::Cos { amplitude, frequency } if frequency.is_zero() => RatPoly::constant(amplitude.clone()),
                Term::Exp { amplitude, rate } if rate.is_zero() => RatPoly::constant(amplitude.clone()),
                Term::Exp { amplitude, .. } | Term::Cos { amplitude, .. } if amplitude.is_zero() => RatPoly::zero(),
                _ => return None,
            };
            acc = &acc + &p;
        }
        Some(acc)
    }

    pub fn from_poly(poly: &RatPoly) -> Self {
        Self::polynomial(poly.coeffs().to_vec())
    }

    /// Jet of order `order` at `tau`: `derivs[i]` is the exact `i`-th derivative.
    pub fn jet<T: Real>(&self, tau: T, order: usize) -> Jet<T> {
        let mut derivs = vec![T::zero(); order + 1];
        for term in &self.terms {
            term.accumulate(tau, &mut derivs);
        }
        Jet::new(derivs)
    }

    pub fn eval<T: Real>(&self, tau: T) -> T {
        self.jet(tau, 0).value()
    }
}

impl Term {
    fn accumulate<T: Real>(&self, tau: T, derivs: &mut [T]) {
        match self {
            Term::Polynomial(coeffs) => {
                let mut c: Vec<T> = coeffs.iter().map(T::from_rational).collect();
                for d in derivs.iter_mut() {
                    if c.is_empty() {
                        break;
                    }
                    *d += c.iter().rev().fold(T::zero(), |acc, &ci| acc * tau + ci);
                    // differentiate in place
                    c = c
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(i, &ci)| ci * T::lit(i as f64))
                        .collect();
                }
            }
            Term::Sin { amplitude, frequency } | Term::Cos { amplitude, frequency } => {
                let a = T::from_rational(amplitude);
                let w = T::from_rational(frequency);
                let (s, c) = (w * tau).sin_cos();
                // derivative cycle of sin: sin, cos, -sin, -cos
                let cycle = [s, c, -s, -c];
                let offset = usize::from(matches!(self, Term::Cos { .. }));
                let mut scale = a;
                for (i, d) in derivs.iter_mut().enumerate() {
                    *d += scale * cycle[(i + offset) % 4];
                    scale *= w;
                }
            }
            Term::Exp { amplitude, rate } => {
                let a = T::from_rational(amplitude);
                let l = T::from_rational(rate);
                let mut scale = a * (l * tau).exp();
                for d in derivs.iter_mut() {
                    *d += scale;
                    scale *= l;
                }
            }
        }
    }
}

/// Parses an exact rational from `p/q`, an integer, or a decimal literal with
/// optional exponent (`-1.25`, `3e-2`).
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid number {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= Pow::pow(&ten, shift as u32);
    } else {
        value /= Pow::pow(&ten, shift.unsigned_abs());
    }
    Ok(if negative { -value } else { value })
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

const KEYWORDS: [&str; 4] = ["poly:", "sin:", "cos:", "exp:"];

fn split_terms(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == '+' {
            let rest = text[i + 1..].trim_start();
            if KEYWORDS.iter().any(|k| rest.starts_with(k)) {
                parts.push(&text[start..i]);
                start = i + 1;
            }
        }
    }
    parts.push(&text[start..]);
    parts
}

fn parse_term(text: &str) -> Result<Term> {
    let text = text.trim();
    let (kind, args) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("term {text:?} lacks a `kind:` prefix")))?;
    let values = args.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    let pair = |name: &str| -> Result<(BigRational, BigRational)> {
        match values.as_slice() {
            [a, b] => Ok((a.clone(), b.clone())),
            _ => Err(Error::Parse(format!(
                "{name} takes exactly two parameters, got {}",
                values.len()
            ))),
        }
    };
    match kind.trim() {
        "poly" => Ok(Term::Polynomial(values)),
        "sin" => pair("sin").map(|(amplitude, frequency)| Term::Sin { amplitude, frequency }),
        "cos" => pair("cos").map(|(amplitude, frequency)| Term::Cos { amplitude, frequency }),
        "exp" => pair("exp").map(|(amplitude, rate)| Term::Exp { amplitude, rate }),
        other => Err(Error::Parse(format!("unknown term kind {other:?}"))),
    }
}

impl FromStr for CurveSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::Parse("empty curve spec".into()));
        }
        let terms = split_terms(text)
            .into_iter()
            .map(parse_term)
            .collect::<Result<Vec<_>>>()?;
        CurveSpec::new(terms)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Polynomial(c) => {
                let list: Vec<String> = c.iter().map(format_rational).collect();
                write!(f, "poly:{}", list.join(","))
            }
            Term::Sin { amplitude, frequency } => {
                write!(f, "sin:{},{}", format_rational(amplitude), format_rational(frequency))
            }
            Term::Cos { amplitude, frequency } => {
                write!(f, "cos:{},{}", format_rational(amplitude), format_rational(frequency))
            }
            Term::Exp { amplitude, rate } => {
                write!(f, "exp:{},{}", format_rational(amplitude), format_rational(rate))
            }
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl Serialize for CurveSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Largest coefficient magnitude, a rough scale for tolerances.
pub fn coefficient_scale(spec: &CurveSpec) -> f64 {
    let abs = |r: &BigRational| crate::scalar::rational_to_f64(&r.abs());
    spec.terms
        .iter()
        .flat_map(|t| match t {
            Term::Polynomial(c) => c.iter().map(abs).collect::<Vec<_>>(),
            Term::Sin { amplitude, .. } | Term::Cos { amplitude, .. } | Term::Exp { amplitude, .. } => {
                vec![abs(amplitude)]
            }
        })
        .fold(0.0, f64::max)
}
