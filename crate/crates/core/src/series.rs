//! Truncated power series in `t` with exact rational coefficients.
//!
//! A [`TruncatedSeries`] knows its coefficients exactly below its horizon
//! `N`; nothing is known about the terms of order `≥ N`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<u32, BigRational>,
    trunc: u32,
}

impl TruncatedSeries {
    pub fn zero(trunc: u32) -> Result<Self> {
        if trunc == 0 {
            return Err(Error::HorizonExhausted(trunc));
        }
        Ok(Self {
            coeffs: BTreeMap::new(),
            trunc,
        })
    }

    pub fn one(trunc: u32) -> Result<Self> {
        Self::monomial(0, BigRational::one(), trunc)
    }

    /// `coeff · t^exponent`; vanishes if `exponent ≥ trunc`.
    pub fn monomial(exponent: u32, coeff: BigRational, trunc: u32) -> Result<Self> {
        let mut s = Self::zero(trunc)?;
        s.add_term(exponent, coeff);
        Ok(s)
    }

    pub fn from_terms<I>(terms: I, trunc: u32) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, BigRational)>,
    {
        let mut s = Self::zero(trunc)?;
        for (e, c) in terms {
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// Parses the `t^4 + 3/2 t^5` grammar; symbolic coefficients are rejected.
    pub fn parse(input: &str, trunc: u32) -> Result<Self> {
        let terms = parse_terms(input)?;
        let mut s = Self::zero(trunc)?;
        for term in terms {
            if let Some(sym) = term.symbol {
                return Err(Error::Parse {
                    pos: term.pos,
                    msg: format!("unexpected symbolic coefficient `{sym}`"),
                });
            }
            s.add_term(term.exponent, term.coeff);
        }
        Ok(s)
    }

    fn add_term(&mut self, exponent: u32, coeff: BigRational) {
        if exponent >= self.trunc || coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// `ν(f)`; `None` when every known coefficient vanishes.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Order, or the horizon for a series that is zero below it.
    fn valuation_bound(&self) -> u32 {
        self.order().unwrap_or(self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: u32) -> BigRational {
        self.coeffs
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn support(&self) -> Vec<u32> {
        self.coeffs.keys().copied().collect()
    }

    /// `(ν(f), LC(f))` with respect to the local order.
    pub fn leading_term(&self) -> Result<(u32, &BigRational)> {
        self.coeffs
            .iter()
            .next()
            .map(|(&e, c)| (e, c))
            .ok_or(Error::HorizonExhausted(self.trunc))
    }

    /// Drops every term of order `≥ n` (and lowers the horizon to `n`).
    pub fn truncate(&self, n: u32) -> Result<Self> {
        let trunc = n.min(self.trunc);
        let mut s = Self::zero(trunc)?;
        s.coeffs = self.coeffs.range(..trunc).map(|(&e, c)| (e, c.clone())).collect();
        Ok(s)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = Self {
            coeffs: BTreeMap::new(),
            trunc: self.trunc.min(other.trunc),
        };
        for (e, c) in self.terms().chain(other.terms()) {
            s.add_term(e, c.clone());
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self {
                coeffs: BTreeMap::new(),
                trunc: self.trunc,
            };
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * factor)).collect(),
            trunc: self.trunc,
        }
    }

    /// Product; exact below `min(N₁ + ν₂, N₂ + ν₁)`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc.saturating_add(other.valuation_bound()))
            .min(other.trunc.saturating_add(self.valuation_bound()));
        let mut s = Self {
            coeffs: BTreeMap::new(),
            trunc,
        };
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in other.coeffs.range(..trunc.saturating_sub(e1)) {
                s.add_term(e1 + e2, c1 * c2);
            }
        }
        s
    }

    /// Multiplication by the exact monomial `t^k`.
    pub fn shift(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            trunc: self.trunc.saturating_add(k),
        }
    }

    pub fn pow(&self, exponent: u32) -> Result<Self> {
        let mut acc = Self::one(self.trunc)?;
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Self> {
        let (_, lc) = self.leading_term()?;
        Ok(self.scale(&lc.recip()))
    }

    /// Whether the series is a single monomial `c·t^e` below its horizon.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Same coefficients below `n`.
    pub fn agrees_below(&self, other: &Self, n: u32) -> bool {
        self.coeffs.range(..n).eq(other.coeffs.range(..n))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            write_scaled_power(f, &c.abs(), e)?;
        }
        Ok(())
    }
}

/// Writes `|c| t^e` with unit coefficients and `t^0`, `t^1` abbreviated.
fn write_scaled_power(f: &mut fmt::Formatter<'_>, abs: &BigRational, e: u32) -> fmt::Result {
    if e == 0 {
        return write_rational(f, abs);
    }
    if !abs.is_one() {
        write_rational(f, abs)?;
        f.write_str(" ")?;
    }
    write_power(f, e)
}

pub(crate) fn write_power(f: &mut fmt::Formatter<'_>, e: u32) -> fmt::Result {
    match e {
        0 => f.write_str("1"),
        1 => f.write_str("t"),
        e => write!(f, "t^{e}"),
    }
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// One parsed term `coeff · [symbol] · t^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTerm {
    pub coeff: BigRational,
    pub symbol: Option<String>,
    pub exponent: u32,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            c if c.is_ascii_whitespace() => i += 1,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("ascii digits");
                tokens.push((start, Token::Number(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(input[start..i].to_string())));
            }
            '+' | '-' | '*' | '/' | '^' => {
                let tok = match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    _ => Token::Caret,
                };
                tokens.push((start, tok));
                i += 1;
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

/// Parses a sum of terms `[±] [a[/b]] [*] [name] [*] [t[^k]]`.
pub fn parse_terms(input: &str) -> Result<Vec<ParsedTerm>> {
    let tokens = tokenize(input)?;
    let end = input.len();
    let mut pos = 0;
    let at = |pos: usize| tokens.get(pos).map_or(end, |(p, _)| *p);
    let err = |pos: usize, msg: &str| Error::Parse {
        pos: at(pos),
        msg: msg.to_string(),
    };
    let mut terms = Vec::new();
    if tokens.is_empty() {
        return Err(err(0, "empty series"));
    }
    while pos < tokens.len() {
        let term_pos = at(pos);
        let mut negative = false;
        let mut signed = false;
        if let Some((_, tok @ (Token::Plus | Token::Minus))) = tokens.get(pos) {
            negative = *tok == Token::Minus;
            signed = true;
            pos += 1;
        }
        if !signed && !terms.is_empty() {
            return Err(err(pos, "expected `+` or `-` between terms"));
        }
        let mut coeff = BigRational::one();
        let mut symbol = None;
        let mut exponent = None;
        let mut seen_any = false;

        if let Some((_, Token::Number(n))) = tokens.get(pos) {
            pos += 1;
            let mut value = BigRational::from_integer(n.clone());
            if let Some((_, Token::Slash)) = tokens.get(pos) {
                pos += 1;
                match tokens.get(pos) {
                    Some((_, Token::Number(d))) if !d.is_zero() => {
                        value /= BigRational::from_integer(d.clone());
                        pos += 1;
                    }
                    _ => return Err(err(pos, "expected nonzero denominator")),
                }
            }
            coeff = value;
            seen_any = true;
            if let Some((_, Token::Star)) = tokens.get(pos) {
                pos += 1;
            }
        }
        if let Some((_, Token::Ident(name))) = tokens.get(pos) {
            if name != "t" {
                symbol = Some(name.clone());
                pos += 1;
                seen_any = true;
                if let Some((_, Token::Star)) = tokens.get(pos) {
                    pos += 1;
                }
            }
        }
        if let Some((_, Token::Ident(name))) = tokens.get(pos) {
            if name != "t" {
                return Err(err(pos, "expected `t`"));
            }
            pos += 1;
            seen_any = true;
            let mut e = 1u32;
            if let Some((_, Token::Caret)) = tokens.get(pos) {
                pos += 1;
                match tokens.get(pos) {
                    Some((_, Token::Number(k))) => {
                        e = k
                            .to_string()
                            .parse()
                            .map_err(|_| err(pos, "exponent out of range"))?;
                        pos += 1;
                    }
                    _ => return Err(err(pos, "expected exponent after `^`")),
                }
            }
            exponent = Some(e);
        }
        if !seen_any {
            return Err(err(pos, "expected a term"));
        }
        if negative {
            coeff = -coeff;
        }
        terms.push(ParsedTerm {
            coeff,
            symbol,
            exponent: exponent.unwrap_or(0),
            pos: term_pos,
        });
        if let Some((_, tok)) = tokens.get(pos) {
            if !matches!(tok, Token::Plus | Token::Minus) {
                return Err(err(pos, "unexpected token"));
            }
        }
    }
    Ok(terms)
}

/// Splits a comma-separated list of series.
pub fn parse_series_list(input: &str, trunc: u32) -> Result<Vec<TruncatedSeries>> {
    input
        .split(',')
        .map(|part| TruncatedSeries::parse(part, trunc))
        .collect()
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
