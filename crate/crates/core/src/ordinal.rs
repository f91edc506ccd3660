//! Ordinals below ω^ω^ω^ω in Cantor normal form.
//!
//! Text syntax uses `w` for ω: `w^2*3 + w*2 + 5`, `w^w`, `w^(w+1)*2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Deepest ω-tower accepted: finite = 0, ω^k = 1, ω^ω = 2, ω^ω^ω = 3.
pub const MAX_DEPTH: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PointClass {
    Zero,
    Successor,
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(1)
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// ω^e.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal {
            terms: vec![(e, 1)],
        }
    }

    /// ω^e · c, zero when c = 0.
    pub fn monomial(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds from raw terms, normalizing by left-to-right addition.
    pub fn from_terms(terms: impl IntoIterator<Item = (Ordinal, u64)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| acc.add(&Self::monomial(e, c)))
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Nesting depth of the ω-tower.
    pub fn depth(&self) -> usize {
        if self.is_finite() {
            0
        } else {
            1 + self.terms.iter().map(|(e, _)| e.depth()).max().unwrap_or(0)
        }
    }

    pub fn check_depth(self) -> Result<Self> {
        let depth = self.depth();
        if depth > MAX_DEPTH {
            Err(Error::DepthExceeded {
                depth,
                max: MAX_DEPTH,
            })
        } else {
            Ok(self)
        }
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Exponent of the last CNF term; 0 for the ordinal 0.
    pub fn last_exponent(&self) -> Ordinal {
        self.terms
            .last()
            .map(|(e, _)| e.clone())
            .unwrap_or_default()
    }

    pub fn classify(&self) -> PointClass {
        match self.terms.last() {
            None => PointClass::Zero,
            Some((e, _)) if e.is_zero() => PointClass::Successor,
            Some(_) => PointClass::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == PointClass::Limit
    }

    /// Ordinal sum `self + other`.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut carried = 0;
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => carried = *c,
                Ordering::Less => break,
            }
        }
        terms.push((lead.clone(), lead_c + carried));
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// `self + n` for a natural number n.
    pub fn add_nat(&self, n: u64) -> Ordinal {
        self.add(&Ordinal::finite(n))
    }

    /// Left multiplication ω·self: every exponent e becomes 1+e.
    pub fn mul_omega(&self) -> Ordinal {
        Ordinal {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Ordinal::one().add(e), *c))
                .collect(),
        }
    }

    /// The μ with ω·μ = self.
    pub fn omega_quotient(&self) -> Result<Ordinal> {
        if self.classify() == PointClass::Successor {
            return Err(Error::NotDivisible(self.to_string()));
        }
        Ok(Ordinal {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e = match e.as_finite() {
                        Some(k) => Ordinal::finite(k - 1),
                        None => e.clone(),
                    };
                    (e, *c)
                })
                .collect(),
        })
    }

    /// Difference `self - lower` when `lower <= self`, i.e. the unique δ with lower + δ = self.
    pub fn sub_left(&self, lower: &Ordinal) -> Option<Ordinal> {
        if lower > self {
            return None;
        }
        let mut i = 0;
        while i < lower.terms.len() && lower.terms[i] == self.terms[i] {
            i += 1;
        }
        if i == lower.terms.len() {
            return Some(Ordinal {
                terms: self.terms[i..].to_vec(),
            });
        }
        // lower is strictly smaller at position i.
        let (le, lc) = &lower.terms[i];
        let (se, sc) = &self.terms[i];
        let mut rest = Vec::new();
        if le == se {
            rest.push((se.clone(), sc - lc));
            rest.extend(self.terms[i + 1..].iter().cloned());
        } else {
            rest.extend(self.terms[i..].iter().cloned());
        }
        // Drop the remaining tail of lower: it is absorbed by the larger term.
        Some(Ordinal { terms: rest })
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
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

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w")?;
            if *e != Ordinal::one() {
                if e.is_finite() || *e == Ordinal::omega() {
                    write!(f, "^{e}")?;
                } else {
                    write!(f, "^({e})")?;
                }
            }
            if *c != 1 {
                write!(f, "*{c}")?;
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

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::OrdinalParse {
            input: self.src.to_string(),
            reason: format!("{} at position {}", reason.into(), self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.err("number too large"))
    }

    fn sum(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.eat('+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        let (e, mut c) = match self.peek() {
            Some('w') | Some('ω') => {
                self.pos += 1;
                let e = if self.eat('^') { self.exponent()? } else { Ordinal::one() };
                (e, 1)
            }
            Some(d) if d.is_ascii_digit() => (Ordinal::zero(), self.nat()?),
            _ => return Err(self.err("expected `w` or a number")),
        };
        while self.eat('*') {
            c = c
                .checked_mul(self.nat()?)
                .ok_or_else(|| self.err("coefficient overflow"))?;
        }
        Ok(Ordinal::monomial(e, c))
    }

    fn exponent(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some('w') | Some('ω') => {
                self.pos += 1;
                let inner = if self.eat('^') { self.exponent()? } else { Ordinal::one() };
                Ok(Ordinal::omega_pow(inner))
            }
            Some(d) if d.is_ascii_digit() => Ok(Ordinal::finite(self.nat()?)),
            _ => Err(self.err("expected an exponent")),
        }
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s,
            chars: s.chars().collect(),
            pos: 0,
        };
        let value = p.sum()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input"));
        }
        value.check_depth()
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Ordinal;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an ordinal string such as \"w^2*3 + 1\" or a natural number")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Ordinal, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Ordinal, E> {
                Ok(Ordinal::finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Ordinal, E> {
                u64::try_from(v)
                    .map(Ordinal::finite)
                    .map_err(|_| E::custom("negative ordinal"))
            }
        }
        d.deserialize_any(V)
    }
}

/// Three-way comparison returning the spec's LT/EQ/GT labels.
pub fn ord_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

pub fn ord_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.add(b)
}

pub fn classify_point(x: &Ordinal) -> PointClass {
    x.classify()
}

pub fn omega_quotient(x: &Ordinal) -> Result<Ordinal> {
    x.omega_quotient()
}
