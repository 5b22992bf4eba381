//! Quaternion literals such as `1+2i-3j+0.5k` or `-1/2+1/3i`.
//!
//! A literal is a sequence of optionally signed terms. Each term is a
//! coefficient (decimal in Float mode; integer or `integer/integer` in
//! Exact mode), optionally followed by one of the units `i`, `j`, `k`, or a
//! bare unit. Whitespace is ignored and repeated units accumulate.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::dynamic::AnyQuaternion;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::scalar::{Mode, Rational, Scalar};

/// Scalars that can be read from a literal coefficient.
pub trait LiteralScalar: Scalar {
    fn parse_coefficient(text: &str, position: usize) -> Result<Self>;
}

impl LiteralScalar for f64 {
    fn parse_coefficient(text: &str, position: usize) -> Result<Self> {
        if text.contains('/') {
            return Err(Error::Parse {
                position,
                message: format!("fraction `{text}` in float mode"),
            });
        }
        f64::from_str(text)
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse {
                position,
                message: format!("invalid coefficient `{text}`"),
            })
    }
}

impl LiteralScalar for Rational {
    fn parse_coefficient(text: &str, position: usize) -> Result<Self> {
        if text.contains(['.', 'e', 'E']) {
            return Err(Error::ModeUnsupported {
                op: "decimal coefficient",
                mode: Mode::Exact,
            });
        }
        let bad = || Error::Parse {
            position,
            message: format!("invalid coefficient `{text}`"),
        };
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(Error::Parse {
                position,
                message: "zero denominator".into(),
            });
        }
        Ok(Rational::new(n, d))
    }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    source: &'a str,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or(self.source.len())
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }
}

fn is_coefficient_char(c: char, prev: Option<char>) -> bool {
    c.is_ascii_digit()
        || c == '.'
        || c == '/'
        || c == 'e'
        || c == 'E'
        || ((c == '+' || c == '-') && matches!(prev, Some('e' | 'E')))
}

pub fn parse<S: LiteralScalar>(text: &str) -> Result<Quaternion<S>> {
    let mut cur = Cursor {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        source: text,
    };
    if cur.chars.is_empty() {
        return Err(cur.error("empty literal"));
    }
    let mut acc: [S; 4] = [S::zero(), S::zero(), S::zero(), S::zero()];
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some('+') => {
                cur.pos += 1;
                false
            }
            Some('-') => {
                cur.pos += 1;
                true
            }
            _ if first => false,
            _ => return Err(cur.error("expected `+` or `-` between terms")),
        };
        first = false;

        let start = cur.pos;
        let start_offset = cur.offset();
        let mut coef = String::new();
        while let Some(c) = cur.peek() {
            let prev = coef.chars().last();
            // `e` only continues a number when a digit or dot precedes it
            if matches!(c, 'e' | 'E') && !matches!(prev, Some(p) if p.is_ascii_digit() || p == '.') {
                break;
            }
            if !is_coefficient_char(c, prev) {
                break;
            }
            coef.push(c);
            cur.pos += 1;
        }
        let unit = match cur.peek() {
            Some('i') => Some(1),
            Some('j') => Some(2),
            Some('k') => Some(3),
            _ => None,
        };
        if unit.is_some() {
            cur.pos += 1;
        }
        if cur.pos == start {
            return Err(cur.error("expected a coefficient or one of i, j, k"));
        }
        let value = if coef.is_empty() {
            S::one()
        } else {
            S::parse_coefficient(&coef, start_offset)?
        };
        let value = if negative { -value } else { value };
        let slot = unit.unwrap_or(0);
        acc[slot] = acc[slot].clone() + value;
    }
    Ok(Quaternion::from_components(acc))
}

pub fn parse_quaternion(text: &str, mode: Mode) -> Result<AnyQuaternion> {
    Ok(match mode {
        Mode::Float => AnyQuaternion::Float(parse::<f64>(text)?),
        Mode::Exact => AnyQuaternion::Exact(parse::<Rational>(text)?),
    })
}

/// Canonical literal; parses back to the same value.
pub fn format<S: Scalar>(q: &Quaternion<S>) -> String {
    q.to_string()
}

/// Parses a `;`-separated tuple of literals.
pub fn parse_tuple<S: LiteralScalar>(line: &str) -> Result<Vec<Quaternion<S>>> {
    let mut offset = 0;
    let mut out = Vec::new();
    for part in line.split(';') {
        out.push(parse::<S>(part).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: position + offset,
                message,
            },
            other => other,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}
