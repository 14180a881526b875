//! Elements of the computable model: finitely supported rational sequences
//! `(r_0, r_1, ...)` under the lexicographic order, with `∞` adjoined on top.
//!
//! Literal syntax is `[q0, q1, ..., qk]` (trailing zeros allowed on input,
//! stripped on output), `[]` for zero and `inf` for `∞`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::rational::Rational;

/// A finitely supported sequence of rationals. Zero entries are never stored,
/// so the empty map is the group zero and derived equality is semantic.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaElement {
    coords: BTreeMap<usize, Rational>,
}

impl GammaElement {
    pub fn zero() -> Self {
        GammaElement::default()
    }

    /// Builds an element from dense coordinates; zeros are dropped.
    pub fn from_dense<I>(coords: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let coords = coords
            .into_iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .collect();
        GammaElement { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::from_dense(coords.iter().map(|&c| Rational::from(c)))
    }

    pub fn from_sparse<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut out = GammaElement::zero();
        for (i, q) in entries {
            out.add_at(i, &q);
        }
        out
    }

    /// The basis vector `e_n`.
    pub fn basis(n: usize) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(n, Rational::one());
        GammaElement { coords }
    }

    /// The staircase vector `E_n = e_0 + ... + e_{n-1}`.
    pub fn ones(n: usize) -> Self {
        GammaElement {
            coords: (0..n).map(|i| (i, Rational::one())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> Rational {
        self.coords.get(&i).cloned().unwrap_or_default()
    }

    pub fn coord_ref(&self, i: usize) -> Option<&Rational> {
        self.coords.get(&i)
    }

    /// Nonzero entries in increasing index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.coords.iter().map(|(&i, q)| (i, q))
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_index(&self) -> Option<usize> {
        self.coords.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coords.values().next()
    }

    /// One past the largest nonzero index (0 for the zero element).
    pub fn support_len(&self) -> usize {
        self.coords.keys().next_back().map_or(0, |&i| i + 1)
    }

    /// Dense coordinates up to the last nonzero entry.
    pub fn to_dense(&self) -> Vec<Rational> {
        (0..self.support_len()).map(|i| self.coord(i)).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.leading_coeff().is_some_and(Rational::is_positive)
    }

    pub fn is_negative(&self) -> bool {
        self.leading_coeff().is_some_and(Rational::is_negative)
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return GammaElement::zero();
        }
        GammaElement {
            coords: self.coords.iter().map(|(&i, c)| (i, c * q)).collect(),
        }
    }

    pub fn add_at(&mut self, i: usize, q: &Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.coords.entry(i).or_default();
        *entry += q;
        if entry.is_zero() {
            self.coords.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &GammaElement, q: &Rational) {
        if q.is_zero() {
            return;
        }
        for (&i, c) in &other.coords {
            self.add_at(i, &(c * q));
        }
    }

    /// The first `k` coordinates, zeros included.
    pub fn truncate(&self, k: usize) -> Vec<Rational> {
        (0..k).map(|i| self.coord(i)).collect()
    }

    /// Whether `self` and `other` agree on the first `k` coordinates.
    pub fn agrees_up_to(&self, other: &GammaElement, k: usize) -> bool {
        (0..k).all(|i| self.coord_ref(i) == other.coord_ref(i))
    }

    /// If `self = E_n` for some `n >= 1`, returns `n`.
    pub fn as_staircase(&self) -> Option<usize> {
        let n = self.coords.len();
        if n == 0 || self.support_len() != n {
            return None;
        }
        self.coords.values().all(Rational::is_one).then_some(n)
    }
}

impl Ord for GammaElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.coords.iter().peekable();
        let mut b = other.coords.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, qa)), None) => return qa.cmp(&&Rational::zero()),
                (None, Some((_, qb))) => return Rational::zero().cmp(qb),
                (Some((ia, qa)), Some((ib, qb))) => match ia.cmp(ib) {
                    Ordering::Less => return qa.cmp(&&Rational::zero()),
                    Ordering::Greater => return Rational::zero().cmp(qb),
                    Ordering::Equal => {
                        let ord = qa.cmp(qb);
                        if ord != Ordering::Equal {
                            return ord;
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for GammaElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &GammaElement {
    type Output = GammaElement;
    fn add(self, rhs: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Add for GammaElement {
    type Output = GammaElement;
    fn add(self, rhs: GammaElement) -> GammaElement {
        &self + &rhs
    }
}

impl Sub for &GammaElement {
    type Output = GammaElement;
    fn sub(self, rhs: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for GammaElement {
    type Output = GammaElement;
    fn sub(self, rhs: GammaElement) -> GammaElement {
        &self - &rhs
    }
}

impl Neg for &GammaElement {
    type Output = GammaElement;
    fn neg(self) -> GammaElement {
        GammaElement {
            coords: self.coords.iter().map(|(&i, q)| (i, -q)).collect(),
        }
    }
}

impl Neg for GammaElement {
    type Output = GammaElement;
    fn neg(self) -> GammaElement {
        -&self
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, q) in self.to_dense().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GammaElement {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<GammaExt>()? {
            GammaExt::Finite(g) => Ok(g),
            GammaExt::Infinity => Err(ParseError::new("expected a finite element, got `inf`", 0)),
        }
    }
}

/// An element of `Γ ∪ {∞}`. `Infinity` is above every finite element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaExt {
    Finite(GammaElement),
    Infinity,
}

impl GammaExt {
    pub fn zero() -> Self {
        GammaExt::Finite(GammaElement::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, GammaExt::Infinity)
    }

    pub fn finite(&self) -> Option<&GammaElement> {
        match self {
            GammaExt::Finite(g) => Some(g),
            GammaExt::Infinity => None,
        }
    }

    pub fn into_finite(self) -> Option<GammaElement> {
        match self {
            GammaExt::Finite(g) => Some(g),
            GammaExt::Infinity => None,
        }
    }
}

impl From<GammaElement> for GammaExt {
    fn from(g: GammaElement) -> Self {
        GammaExt::Finite(g)
    }
}

impl fmt::Display for GammaExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaExt::Finite(g) => fmt::Display::fmt(g, f),
            GammaExt::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for GammaExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GammaExt {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (value, end) = parse_literal(s, 0)?;
        let rest = &s[end..];
        if !rest.trim().is_empty() {
            return Err(ParseError::new(
                format!("unexpected trailing input `{}`", rest.trim()),
                end + (rest.len() - rest.trim_start().len()),
            ));
        }
        Ok(value)
    }
}

/// Parses one element literal starting at byte offset `start` (leading
/// whitespace skipped). Returns the value and the offset just past it.
pub(crate) fn parse_literal(s: &str, start: usize) -> Result<(GammaExt, usize), ParseError> {
    let bytes = s.as_bytes();
    let mut pos = start;
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    if s[pos..].starts_with("inf") {
        let after = pos + 3;
        let boundary = s[after..]
            .chars()
            .next()
            .is_none_or(|c| !(c.is_alphanumeric() || c == '_'));
        if boundary {
            return Ok((GammaExt::Infinity, after));
        }
    }
    if bytes.get(pos) != Some(&b'[') {
        return Err(ParseError::new("expected `[` or `inf`", pos));
    }
    let close = match s[pos..].find(']') {
        Some(off) => pos + off,
        None => return Err(ParseError::new("unterminated element literal", pos)),
    };
    let body = &s[pos + 1..close];
    if body.trim().is_empty() {
        return Ok((GammaExt::zero(), close + 1));
    }
    let mut coords = Vec::new();
    let mut offset = pos + 1;
    for piece in body.split(',') {
        let q: Rational = piece.parse().map_err(|e: ParseError| {
            let lead = piece.len() - piece.trim_start().len();
            ParseError::new(e.message, offset + lead)
        })?;
        coords.push(q);
        offset += piece.len() + 1;
    }
    Ok((GammaExt::Finite(GammaElement::from_dense(coords)), close + 1))
}

/// A point of the value set `Ψ = {E_n : n >= 1}`, identified by `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PsiPoint(u32);

impl PsiPoint {
    /// `s0 = E_1`, the least element of `Ψ`.
    pub const MIN: PsiPoint = PsiPoint(1);

    pub fn new(n: u32) -> Option<Self> {
        (n >= 1).then_some(PsiPoint(n))
    }

    pub fn ones(self) -> u32 {
        self.0
    }

    pub fn to_element(self) -> GammaElement {
        GammaElement::ones(self.0 as usize)
    }

    pub fn from_element(g: &GammaElement) -> Option<Self> {
        g.as_staircase().and_then(|n| PsiPoint::new(n as u32))
    }

    /// `s^k` applied to this point; `None` when a predecessor falls off `Ψ`.
    pub fn shift(self, k: i64) -> Option<Self> {
        let n = self.0 as i64 + k;
        if n >= 1 {
            u32::try_from(n).ok().map(PsiPoint)
        } else {
            None
        }
    }
}

impl fmt::Display for PsiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.0)
    }
}

/// Archimedean class of a nonzero element, identified by its leading index.
/// Larger index means a smaller class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ArchClassToken(pub usize);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(Rational::from(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for GammaElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GammaElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for GammaExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GammaExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
