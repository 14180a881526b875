//! Convex subgroups `Δ_φ`, the projections `Γ → Γ/Δ_φ` and exact finite
//! quotient images of small sets.
//!
//! For `φ = s^k0 = E_k`, `Δ_φ` is the set of elements vanishing on the first
//! `k` coordinates, so `Γ/Δ_φ` is `ℚ^k` under the lexicographic order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constraints::{Atom, DifferenceConstraints};
use crate::element::GammaElement;
use crate::error::{Error, ParseError, Result};
use crate::psi_function::PsiFunction;
use crate::rational::Rational;
use crate::small_set::SmallSet;

/// An element of `Ψ_∞`: `Finite(k)` is `s^k0 = E_k` (`k >= 1`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Phi {
    Finite(u32),
    Infinity,
}

impl Phi {
    pub fn finite(k: u32) -> Result<Phi> {
        if k == 0 {
            return Err(Error::Invalid("s^k0 needs k >= 1".into()));
        }
        Ok(Phi::Finite(k))
    }

    pub fn to_element(self) -> Option<GammaElement> {
        match self {
            Phi::Finite(k) => Some(GammaElement::ones(k as usize)),
            Phi::Infinity => None,
        }
    }
}

/// Prints `s^{k}0` or `inf`; the braces keep `s^{2}0` apart from `s^{20}`.
impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phi::Finite(k) => write!(f, "s^{{{k}}}0"),
            Phi::Infinity => f.write_str("inf"),
        }
    }
}

/// Accepts `inf`, `s^k0`, `s^{k}0`, `s^k` and `E_k`. In `s^k0` a final `0`
/// after at least one digit is read as the argument, so `s^30` and `s^3`
/// both mean `k = 3`; write `s^{10}` or `s^100` for `k = 10`.
impl FromStr for Phi {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        let bad = |msg: &str| ParseError::new(format!("{msg} in `{t}`"), 0);
        if t == "inf" || t == "∞" {
            return Ok(Phi::Infinity);
        }
        let digits = if let Some(rest) = t.strip_prefix("E_") {
            rest
        } else if let Some(rest) = t.strip_prefix("s^") {
            if let Some(inner) = rest.strip_prefix('{') {
                let (num, tail) = inner.split_once('}').ok_or_else(|| bad("unclosed brace"))?;
                if !(tail.is_empty() || tail == "0") {
                    return Err(bad("unexpected suffix"));
                }
                num
            } else if rest.len() >= 2 && rest.ends_with('0') {
                &rest[..rest.len() - 1]
            } else {
                rest
            }
        } else {
            return Err(bad("expected `s^k0`, `E_k` or `inf`"));
        };
        let k: u32 = digits.parse().map_err(|_| bad("expected a positive integer"))?;
        Phi::finite(k).map_err(|_| bad("k must be positive"))
    }
}

impl Serialize for Phi {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phi {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `Γ/Δ_{s^k0} ≅ ℚ^k`, stored densely.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruncatedVector(pub Vec<Rational>);

impl TruncatedVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }
}

impl fmt::Display for TruncatedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for TruncatedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for TruncatedVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub fn in_delta(g: &GammaElement, phi: Phi) -> bool {
    match phi {
        Phi::Finite(k) => g.leading_index().is_none_or(|i| i >= k as usize),
        Phi::Infinity => g.is_zero(),
    }
}

pub fn project(g: &GammaElement, k: usize) -> TruncatedVector {
    TruncatedVector(g.truncate(k))
}

/// The first `k` coordinates of `F` on any assignment whose capped profile
/// is `profile`: value `v < k` means `n_i = v`, value `k` means `n_i >= k`.
pub(crate) fn profile_truncation(f: &PsiFunction, profile: &[u32], k: usize) -> TruncatedVector {
    let mut out = f.offset().truncate(k);
    for (q, &v) in f.coeffs().iter().zip(profile) {
        for c in out.iter_mut().take(v as usize) {
            *c += q;
        }
    }
    TruncatedVector(out)
}

/// Difference-constraint atoms pinning an assignment to a capped profile.
pub(crate) fn profile_atoms(profile: &[u32], k: u32) -> Vec<Atom> {
    profile
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| {
            if v < k {
                Atom::eq_const(i, v as i64).to_vec()
            } else {
                vec![Atom::Ge { i, c: k as i64 }]
            }
        })
        .collect()
}

/// All capped profiles in `{1..k}^I` realised by some admissible assignment.
pub(crate) fn feasible_profiles(
    f: &PsiFunction,
    constraints: Option<&DifferenceConstraints>,
    k: u32,
) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(f.arity());
    extend_profiles(f.arity(), constraints, k, &mut current, &mut out);
    out
}

fn extend_profiles(
    arity: usize,
    constraints: Option<&DifferenceConstraints>,
    k: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if let Some(c) = constraints {
        // prune on the assigned prefix; unassigned variables stay free
        if c.solve(arity, &profile_atoms(current, k)).is_none() {
            return;
        }
    }
    if current.len() == arity {
        out.push(current.clone());
        return;
    }
    for v in 1..=k {
        current.push(v);
        extend_profiles(arity, constraints, k, current, out);
        current.pop();
    }
}

/// `π_{s^k0}(X)`, computed exactly from the capped profiles.
pub fn project_set(x: &SmallSet, k: usize) -> BTreeSet<TruncatedVector> {
    assert!(k >= 1, "projection length must be positive");
    let mut out = BTreeSet::new();
    for (f, c) in x.components() {
        for p in feasible_profiles(f, c, k as u32) {
            out.insert(profile_truncation(f, &p, k));
        }
    }
    out
}

/// `k ↦ |π_{s^k0}(X)|` over the given range.
pub fn count_function(x: &SmallSet, ks: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
    ks.into_iter().map(|k| (k, project_set(x, k).len())).collect()
}

/// The finite image `X̄ ⊆ Γ/Δ_φ`. Finiteness in the dense order `ℚ^k` makes
/// `X̄` closed and discrete.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClosedDiscreteCertificate {
    pub phi: Phi,
    pub points: BTreeSet<TruncatedVector>,
}

impl ClosedDiscreteCertificate {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

pub fn closed_discrete_certificate(x: &SmallSet, phi: Phi) -> Result<ClosedDiscreteCertificate> {
    let Phi::Finite(k) = phi else {
        return Err(Error::Invalid("certificate needs a finite φ".into()));
    };
    Ok(ClosedDiscreteCertificate {
        phi,
        points: project_set(x, k as usize),
    })
}

/// A polynomial through the tail of a counting table, found by exact
/// interpolation. It is a conjecture about eventual behaviour, not a proof.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConjecturalFit {
    pub degree: usize,
    /// Ascending coefficients in `k`.
    pub coeffs: Vec<Rational>,
    /// How many trailing table entries the polynomial reproduces.
    pub matched: usize,
}

impl ConjecturalFit {
    pub fn eval(&self, k: usize) -> Rational {
        let k = Rational::from(k as i64);
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &k + c)
    }
}

impl fmt::Display for ConjecturalFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let var = match d {
                0 => String::new(),
                1 => "k".into(),
                _ => format!("k^{d}"),
            };
            if d == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" (conjectural fit)")
    }
}

/// Smallest degree `d <= 4` whose interpolant through `d + 1` of the last
/// `d + 2` entries also hits the remaining one.
pub fn conjectural_fit(table: &[(usize, usize)]) -> Option<ConjecturalFit> {
    for d in 0..=4usize {
        if table.len() < d + 2 {
            break;
        }
        let tail = &table[table.len() - (d + 2)..];
        let coeffs = interpolate(&tail[..d + 1]);
        let fit = ConjecturalFit {
            degree: d,
            coeffs,
            matched: 0,
        };
        let (k, n) = tail[d + 1];
        if fit.eval(k) == Rational::from(n as i64) {
            let matched = table
                .iter()
                .rev()
                .take_while(|&&(k, n)| fit.eval(k) == Rational::from(n as i64))
                .count();
            return Some(ConjecturalFit { matched, ..fit });
        }
    }
    None
}

/// Coefficients of the Lagrange interpolant through the points.
fn interpolate(points: &[(usize, usize)]) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); points.len()];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (k − x_j)/(x_i − x_j), ascending
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = Rational::from(xj as i64);
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b;
                next[d] -= &(b * &xj);
            }
            basis = next;
            denom = denom * (Rational::from(xi as i64) - xj);
        }
        let scale = Rational::from(yi as i64) / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += &(b * &scale);
        }
    }
    coeffs
}
