//! Ordinals below ε₀ in Cantor normal form.
//!
//! An ordinal is stored as `ω^e₀·m₀ + ω^e₁·m₁ + ⋯` with strictly decreasing
//! exponents `eᵢ` (themselves ordinals) and multiplicities `mᵢ ≥ 1`. The
//! empty sum is zero.
//!
//! Textual form:
//!
//! ```text
//! ordinal := "0" | power ("+" power)*
//! power   := "w" ("^" factor)? ("*" nat)? | nat
//! factor  := nat | "(" ordinal ")"
//! ```
//!
//! Non-canonical input such as `1+w` or `w+w` is accepted and normalized.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{Cursor, SyntaxError};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("zero has no Cantor normal form summands")]
    Zero,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal {
            terms: vec![(exponent, 1)],
        }
    }

    /// `ω^exponent · mult`.
    pub fn omega_pow_mul(exponent: Ordinal, mult: u64) -> Self {
        if mult == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(exponent, mult)],
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, m)] if e.is_zero() => Some(*m),
            _ => None,
        }
    }

    /// The `(exponent, multiplicity)` pairs, leading summand first.
    pub fn cnf(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Splits a non-zero `ξ` as `ω^α₀ + η`, returning `(α₀, η)`.
    pub fn split_leading(&self) -> Option<(Ordinal, Ordinal)> {
        let ((e, m), rest) = self.terms.split_first()?;
        let mut tail = Vec::with_capacity(rest.len() + 1);
        if *m > 1 {
            tail.push((e.clone(), m - 1));
        }
        tail.extend(rest.iter().cloned());
        Some((e.clone(), Ordinal { terms: tail }))
    }

    /// The exponent sequence `(α₀, …, α_m)` with `self = ω^α₀ + ⋯ + ω^α_m`,
    /// non-increasing, multiplicities expanded into repetitions.
    pub fn summands(&self) -> Result<Vec<Ordinal>, OrdinalError> {
        if self.is_zero() {
            return Err(OrdinalError::Zero);
        }
        Ok(self
            .terms
            .iter()
            .flat_map(|(e, m)| std::iter::repeat_n(e.clone(), *m as usize))
            .collect())
    }

    /// Ordinal addition. Summands of `self` below the leading exponent of
    /// `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, _)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        for (e, m) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *m)),
                Ordering::Equal => {
                    let merged = m
                        .checked_add(other.terms[0].1)
                        .expect("ordinal multiplicity overflow");
                    terms.push((e.clone(), merged));
                    terms.extend(other.terms[1..].iter().cloned());
                    return Ordinal { terms };
                }
                Ordering::Less => break,
            }
        }
        terms.extend(other.terms.iter().cloned());
        Ordinal { terms }
    }

    pub fn parse(text: &str) -> Result<Ordinal, SyntaxError> {
        let mut cur = Cursor::new(text);
        let o = parse_ordinal(&mut cur)?;
        cur.finish()?;
        Ok(o)
    }
}

pub(crate) fn parse_ordinal(cur: &mut Cursor<'_>) -> Result<Ordinal, SyntaxError> {
    let mut acc = parse_power(cur)?;
    while cur.eat(b'+') {
        let next = parse_power(cur)?;
        acc = acc.add(&next);
    }
    Ok(acc)
}

fn parse_power(cur: &mut Cursor<'_>) -> Result<Ordinal, SyntaxError> {
    match cur.peek() {
        Some(b'w') => {
            cur.expect(b'w')?;
            let exponent = if cur.eat(b'^') {
                if cur.eat(b'(') {
                    let e = parse_ordinal(cur)?;
                    cur.expect(b')')?;
                    e
                } else {
                    Ordinal::nat(cur.nat()?)
                }
            } else {
                Ordinal::one()
            };
            let mult = if cur.eat(b'*') { cur.nat()? } else { 1 };
            Ok(Ordinal::omega_pow_mul(exponent, mult))
        }
        Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(cur.nat()?)),
        _ => Err(cur.unexpected("'w' or a natural number")),
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ma), (eb, mb)) in self.terms.iter().zip(&other.terms) {
            let c = ea.cmp(eb).then(ma.cmp(mb));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Ordinal {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ordinal::parse(s)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{m}")?;
                continue;
            }
            f.write_str("w")?;
            match e.as_nat() {
                Some(1) => {}
                Some(n) => write!(f, "^{n}")?,
                None => write!(f, "^({e})")?,
            }
            if *m > 1 {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}
