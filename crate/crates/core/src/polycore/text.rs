//! Polynomial text format: comma-separated ascending coefficients, each a
//! rational `n/d`, a decimal (optionally with exponent), or a complex pair
//! `(re,im)`. Real-only inputs parse exactly; any complex pair switches the
//! whole polynomial to floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use super::poly::rational_to_f64;
use super::Poly;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("parse error at column {column}: {message} (near `{fragment}`)")]
pub struct ParseError {
    /// 1-based character column into the input text.
    pub column: usize,
    pub fragment: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParsedPoly {
    Exact(Poly<BigRational>),
    Float(Poly<Complex64>),
}

impl ParsedPoly {
    pub fn to_complex(&self) -> Poly<Complex64> {
        match self {
            ParsedPoly::Exact(p) => p.to_complex(),
            ParsedPoly::Float(p) => p.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            ParsedPoly::Exact(p) => p.degree(),
            ParsedPoly::Float(p) => p.degree(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ParsedPoly::Exact(_))
    }
}

impl FromStr for ParsedPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

enum Item {
    Real(BigRational),
    Complex(Complex64),
}

pub fn parse_poly(text: &str) -> Result<ParsedPoly, ParseError> {
    let mut items = Vec::new();
    for (start, raw) in split_top_level(text)? {
        let trimmed = raw.trim();
        let lead = raw.len() - raw.trim_start().len();
        let column = text[..start + lead].chars().count() + 1;
        let fail = |message: &str| ParseError {
            column,
            fragment: trimmed.to_string(),
            message: message.to_string(),
        };
        if trimmed.is_empty() {
            return Err(fail("empty coefficient"));
        }
        if let Some(inner) = trimmed.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| fail("unterminated complex pair"))?;
            let (re, im) = inner
                .split_once(',')
                .ok_or_else(|| fail("complex pair needs `(re,im)`"))?;
            let re = parse_real(re.trim()).ok_or_else(|| fail("invalid real part"))?;
            let im = parse_real(im.trim()).ok_or_else(|| fail("invalid imaginary part"))?;
            items.push(Item::Complex(Complex64::new(
                rational_to_f64(&re),
                rational_to_f64(&im),
            )));
        } else {
            let v = parse_real(trimmed).ok_or_else(|| fail("not a rational, decimal, or (re,im) pair"))?;
            items.push(Item::Real(v));
        }
    }

    if items.iter().all(|i| matches!(i, Item::Real(_))) {
        let coeffs = items
            .into_iter()
            .map(|i| match i {
                Item::Real(r) => r,
                Item::Complex(_) => unreachable!(),
            })
            .collect();
        Ok(ParsedPoly::Exact(Poly::new(coeffs)))
    } else {
        let coeffs = items
            .into_iter()
            .map(|i| match i {
                Item::Real(r) => Complex64::new(rational_to_f64(&r), 0.0),
                Item::Complex(c) => c,
            })
            .collect();
        Ok(ParsedPoly::Float(Poly::new(coeffs)))
    }
}

/// Split on commas outside parentheses, keeping byte offsets.
fn split_top_level(text: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| ParseError {
                    column: text[..i].chars().count() + 1,
                    fragment: ")".into(),
                    message: "unbalanced parenthesis".into(),
                })?
            }
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(ParseError {
            column: text.chars().count() + 1,
            fragment: text[start..].trim().into(),
            message: "unbalanced parenthesis".into(),
        });
    }
    out.push((start, &text[start..]));
    Ok(out)
}

/// Parse `n/d` or a decimal literal into an exact rational.
pub fn parse_real(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n.trim())?;
        let d = parse_decimal(d.trim())?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], Some(&s[k + 1..])),
        None => (s, None),
    };
    let (negative, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut shift = -(frac_part.len() as i64);
    if let Some(e) = exponent {
        shift += e.parse::<i64>().ok()?;
    }
    if shift.unsigned_abs() > 4096 {
        return None;
    }
    let factor: BigRational = Pow::pow(&ten, shift.unsigned_abs() as u32);
    if shift >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    if negative {
        value = -value;
    }
    Some(value)
}

/// Render an exact rational the way the text format accepts it.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
