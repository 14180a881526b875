//! Representable definable sets and their dimensions `dim_φ`.
//!
//! A unary set is a finite union of open intervals and thickened small sets
//! `X + Δ_ξ`; an n-ary set is a finite union of products of unary sets. The
//! class is closed under union and product, not under complement.

use std::fmt;
use std::ops::Add;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::couple::psi_elem;
use crate::element::{GammaElement, GammaExt};
use crate::error::{Error, Result};
use crate::member::in_small_set;
use crate::psi_function::{d_rank, ImageUnion};
use crate::quotient::{in_delta, project, project_set, Phi, TruncatedVector};
use crate::rational::Rational;
use crate::small_set::SmallSet;

/// `−∞` or a natural number.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dim {
    NegInf,
    Finite(u32),
}

impl Add for Dim {
    type Output = Dim;

    fn add(self, other: Dim) -> Dim {
        match (self, other) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
            _ => Dim::NegInf,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::NegInf => f.write_str("-inf"),
            Dim::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::NegInf => s.serialize_str("-inf"),
            Dim::Finite(d) => s.serialize_u32(*d),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Bound {
    NegInf,
    At(GammaElement),
    PosInf,
}

/// The open interval `(lo, hi)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Interval {
        Interval { lo, hi }
    }

    pub fn bounded(lo: GammaElement, hi: GammaElement) -> Interval {
        Interval::new(Bound::At(lo), Bound::At(hi))
    }

    pub fn line() -> Interval {
        Interval::new(Bound::NegInf, Bound::PosInf)
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi || self.lo == Bound::PosInf || self.hi == Bound::NegInf
    }

    /// `hi − lo`, or `None` when a side is unbounded.
    pub fn width(&self) -> Option<GammaElement> {
        match (&self.lo, &self.hi) {
            (Bound::At(a), Bound::At(b)) => Some(b - a),
            _ => None,
        }
    }

    pub fn contains(&self, x: &GammaElement) -> bool {
        let x = Bound::At(x.clone());
        self.lo < x && x < self.hi
    }

    /// A point of a nonempty interval.
    pub fn some_point(&self) -> Option<GammaElement> {
        if self.is_empty() {
            return None;
        }
        let one = GammaElement::basis(0);
        Some(match (&self.lo, &self.hi) {
            (Bound::At(a), Bound::At(b)) => (a + b).scale(&Rational::new(1, 2)),
            (Bound::At(a), _) => a + &one,
            (_, Bound::At(b)) => b - &one,
            _ => GammaElement::zero(),
        })
    }
}

/// `core + Δ_ξ`; `ξ = ∞` leaves the core as it is.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThickenedSmall {
    pub core: SmallSet,
    pub thicken: Phi,
}

impl ThickenedSmall {
    pub fn new(core: impl Into<SmallSet>, thicken: Phi) -> Self {
        ThickenedSmall {
            core: core.into(),
            thicken,
        }
    }

    pub fn contains(&self, x: &GammaElement) -> bool {
        match self.thicken {
            Phi::Infinity => in_small_set(x, &self.core),
            Phi::Finite(j) => project_set(&self.core, j as usize).contains(&project(x, j as usize)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Component {
    Interval(Interval),
    Small(ThickenedSmall),
}

impl Component {
    pub fn contains(&self, x: &GammaElement) -> bool {
        match self {
            Component::Interval(i) => i.contains(x),
            Component::Small(s) => s.contains(x),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Component::Interval(i) => i.is_empty(),
            Component::Small(s) => s.core.is_empty(),
        }
    }

    /// `dim_φ` from the rules: an interval is 1-dimensional exactly when its
    /// width is not in `Δ_φ`, i.e. `ψ(width) <= φ`; `X + Δ_ξ` is
    /// 0-dimensional exactly when `Δ_ξ ⊆ Δ_φ`, i.e. `ξ >= φ`.
    pub fn dim(&self, phi: Phi) -> Dim {
        if self.is_empty() {
            return Dim::NegInf;
        }
        match self {
            Component::Interval(i) => match (i.width(), phi.to_element()) {
                (None, _) | (_, None) => Dim::Finite(1),
                (Some(w), Some(p)) => Dim::Finite((psi_elem(&w) <= GammaExt::Finite(p)) as u32),
            },
            Component::Small(s) => Dim::Finite((s.thicken < phi) as u32),
        }
    }
}

impl From<Interval> for Component {
    fn from(i: Interval) -> Self {
        Component::Interval(i)
    }
}

impl From<ThickenedSmall> for Component {
    fn from(s: ThickenedSmall) -> Self {
        Component::Small(s)
    }
}

/// A finite union of components; the empty list is the empty set.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UnaryRep(pub Vec<Component>);

impl UnaryRep {
    pub fn empty() -> Self {
        UnaryRep(Vec::new())
    }

    pub fn single(c: impl Into<Component>) -> Self {
        UnaryRep(vec![c.into()])
    }

    pub fn components(&self) -> &[Component] {
        &self.0
    }

    pub fn contains(&self, x: &GammaElement) -> bool {
        self.0.iter().any(|c| c.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Component::is_empty)
    }

    pub fn union(&self, other: &UnaryRep) -> UnaryRep {
        UnaryRep(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn dim(&self, phi: Phi) -> Dim {
        self.0.iter().map(|c| c.dim(phi)).max().unwrap_or(Dim::NegInf)
    }

    /// A verified interval of width outside `Δ_φ` inside the set, if any.
    pub fn wide_interval(&self, phi: Phi) -> Option<Interval> {
        self.0.iter().find_map(|c| wide_witness(c, phi))
    }

    pub fn has_wide_interval(&self, phi: Phi) -> bool {
        self.wide_interval(phi).is_some()
    }
}

/// Route B for one component: build an explicit interval, check its width
/// against `Δ_φ` coordinatewise and confirm sampled interior points belong
/// to the component.
fn wide_witness(c: &Component, phi: Phi) -> Option<Interval> {
    let candidate = match c {
        Component::Interval(i) => {
            if i.is_empty() {
                return None;
            }
            i.clone()
        }
        Component::Small(s) => {
            let Phi::Finite(j) = s.thicken else {
                return None;
            };
            let center = s.core.some_point()?;
            let e = GammaElement::basis(j as usize);
            Interval::bounded(&center - &e, &center + &e)
        }
    };
    let wide = match candidate.width() {
        None => true,
        Some(w) => !in_delta(&w, phi),
    };
    if !wide {
        return None;
    }
    let probes = interval_probes(&candidate);
    assert!(
        probes.iter().all(|x| candidate.contains(x) && c.contains(x)),
        "witness interval {candidate:?} escapes its component"
    );
    Some(candidate)
}

fn interval_probes(i: &Interval) -> Vec<GammaElement> {
    let mid = i.some_point().expect("nonempty");
    let mut out = vec![mid.clone()];
    if let Some(w) = i.width() {
        for q in [Rational::new(-1, 3), Rational::new(1, 4), Rational::new(99, 200)] {
            out.push(&mid + &w.scale(&q));
        }
    }
    out
}

/// Route B: −∞ when no point is found, 1 when a wide interval is exhibited,
/// 0 otherwise.
pub fn dim_by_wide_intervals(rep: &UnaryRep, phi: Phi) -> Dim {
    if rep.has_wide_interval(phi) {
        return Dim::Finite(1);
    }
    let point = rep.0.iter().find_map(|c| match c {
        Component::Interval(i) => i.some_point(),
        Component::Small(s) => s.core.some_point(),
    });
    match point {
        Some(x) => {
            assert!(rep.contains(&x), "sample point {x} not in its set");
            Dim::Finite(0)
        }
        None => Dim::NegInf,
    }
}

/// A finite union of products of unary sets, all of arity `arity`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NaryRep {
    pub arity: usize,
    pub products: Vec<Vec<UnaryRep>>,
}

impl NaryRep {
    pub fn new(arity: usize, products: Vec<Vec<UnaryRep>>) -> Result<Self> {
        if let Some(p) = products.iter().find(|p| p.len() != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: p.len(),
            });
        }
        Ok(NaryRep { arity, products })
    }

    pub fn unary(rep: UnaryRep) -> Self {
        NaryRep {
            arity: 1,
            products: vec![vec![rep]],
        }
    }

    pub fn product(factors: Vec<UnaryRep>) -> Self {
        NaryRep {
            arity: factors.len(),
            products: vec![factors],
        }
    }

    /// The unary set when the arity is 1.
    pub fn as_unary(&self) -> Option<UnaryRep> {
        (self.arity == 1).then(|| UnaryRep(self.products.iter().flat_map(|p| p[0].0.clone()).collect()))
    }

    pub fn dim(&self, phi: Phi) -> Dim {
        self.products
            .iter()
            .map(|p| dim_product(p, phi))
            .max()
            .unwrap_or(Dim::NegInf)
    }

    pub fn has_wide_box(&self, phi: Phi) -> bool {
        self.products
            .iter()
            .any(|p| p.iter().all(|f| f.has_wide_interval(phi)))
    }

    pub fn contains(&self, point: &[GammaElement]) -> Result<bool> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        Ok(self
            .products
            .iter()
            .any(|p| p.iter().zip(point).all(|(f, x)| f.contains(x))))
    }

    pub fn union(&self, other: &NaryRep) -> Result<NaryRep> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(NaryRep {
            arity: self.arity,
            products: self.products.iter().chain(&other.products).cloned().collect(),
        })
    }
}

pub fn dim_product(factors: &[UnaryRep], phi: Phi) -> Dim {
    factors.iter().fold(Dim::Finite(0), |acc, f| acc + f.dim(phi))
}

/// Both dimension routes for a unary set, with the certificates that apply.
#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub phi: Phi,
    pub dim_rules: Dim,
    pub dim_wide_intervals: Dim,
    /// `|X̄|` in `Γ/Δ_φ` when `φ` is finite and the set is φ-small.
    pub quotient_size: Option<usize>,
    /// Derived-set rank when `φ = ∞` and the set is a union of image unions.
    pub d_rank: Option<usize>,
    pub discrepancies: Vec<String>,
}

impl CrosscheckReport {
    pub fn consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phi={}\tdim_rules={}\tdim_wide={}",
            self.phi, self.dim_rules, self.dim_wide_intervals
        )?;
        if let Some(q) = self.quotient_size {
            write!(f, "\tquotient={q}")?;
        }
        if let Some(r) = self.d_rank {
            write!(f, "\td_rank={r}")?;
        }
        if self.consistent() {
            f.write_str("\tconsistent")
        } else {
            write!(f, "\tDISCREPANCY: {}", self.discrepancies.join("; "))
        }
    }
}

/// The image of a φ-small unary set in `Γ/Δ_{s^k0}`. Narrow intervals
/// collapse to the class of their lower end, and `X + Δ_ξ` with `ξ >= s^k0`
/// projects like `X`. `None` when some component is not φ-small.
pub fn quotient_image(rep: &UnaryRep, k: u32) -> Option<std::collections::BTreeSet<TruncatedVector>> {
    let phi = Phi::Finite(k);
    let mut out = std::collections::BTreeSet::new();
    for c in &rep.0 {
        if c.is_empty() {
            continue;
        }
        match c {
            Component::Interval(i) => match (&i.lo, i.width()) {
                (Bound::At(lo), Some(w)) if in_delta(&w, phi) => {
                    out.insert(project(lo, k as usize));
                }
                _ => return None,
            },
            Component::Small(s) if s.thicken >= phi => {
                out.extend(project_set(&s.core, k as usize));
            }
            Component::Small(_) => return None,
        }
    }
    Some(out)
}

pub fn sst_crosscheck(rep: &UnaryRep, phi: Phi) -> CrosscheckReport {
    let a = rep.dim(phi);
    let b = dim_by_wide_intervals(rep, phi);
    let mut discrepancies = Vec::new();
    if a != b {
        discrepancies.push(format!("dimension rules give {a}, wide-interval scan gives {b}"));
    }
    let mut quotient_size = None;
    let mut rank = None;
    match phi {
        Phi::Finite(k) => {
            let image = quotient_image(rep, k);
            if (a <= Dim::Finite(0)) != image.is_some() {
                discrepancies.push(format!("dimension {a} but finite quotient image: {}", image.is_some()));
            }
            quotient_size = image.map(|s| s.len());
        }
        Phi::Infinity if a <= Dim::Finite(0) => {
            let cores: Option<Vec<&ImageUnion>> = rep
                .0
                .iter()
                .filter(|c| !c.is_empty())
                .map(|c| match c {
                    Component::Small(s) if s.thicken == Phi::Infinity => s.core.as_union(),
                    _ => None,
                })
                .collect();
            if let Some(cores) = cores {
                let all = cores.into_iter().fold(ImageUnion::new(Vec::new()), |acc, u| acc.union(u));
                rank = Some(d_rank(&all));
            }
        }
        Phi::Infinity => {}
    }
    CrosscheckReport {
        phi,
        dim_rules: a,
        dim_wide_intervals: b,
        quotient_size,
        d_rank: rank,
        discrepancies,
    }
}

/// Membership probes for a unary set: points of each component and small
/// perturbations of them.
pub fn sample_points<R: Rng>(rep: &UnaryRep, rng: &mut R, count: usize) -> Vec<GammaElement> {
    let mut out = Vec::new();
    if rep.0.is_empty() {
        return out;
    }
    for _ in 0..count {
        let c = &rep.0[rng.gen_range(0..rep.0.len())];
        let base = match c {
            Component::Interval(i) => i.some_point(),
            Component::Small(s) => s.core.sample_point(rng, 6),
        };
        let Some(mut x) = base else { continue };
        if rng.gen_bool(0.5) {
            let idx = rng.gen_range(0..8);
            x.add_at(idx, &Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=4)));
        }
        out.push(x);
    }
    out
}

// JSON

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bound::NegInf => s.serialize_str("-inf"),
            Bound::PosInf => s.serialize_str("+inf"),
            Bound::At(g) => g.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        match text.trim() {
            "-inf" => Ok(Bound::NegInf),
            "+inf" | "inf" => Ok(Bound::PosInf),
            t => t.parse().map(Bound::At).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ComponentJson {
    Interval { lo: Bound, hi: Bound },
    Small { core: SmallSet, thicken: Phi },
}

impl Serialize for Component {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.clone() {
            Component::Interval(i) => ComponentJson::Interval { lo: i.lo, hi: i.hi },
            Component::Small(t) => ComponentJson::Small {
                core: t.core,
                thicken: t.thicken,
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Component {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match ComponentJson::deserialize(d)? {
            ComponentJson::Interval { lo, hi } => Component::Interval(Interval { lo, hi }),
            ComponentJson::Small { core, thicken } => Component::Small(ThickenedSmall { core, thicken }),
        })
    }
}

/// A factor is written as one component or as an array of components.
impl Serialize for UnaryRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.as_slice() {
            [one] => one.serialize(s),
            many => many.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for UnaryRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Factor {
            Many(Vec<Component>),
            One(Component),
        }
        Ok(match Factor::deserialize(d)? {
            Factor::Many(v) => UnaryRep(v),
            Factor::One(c) => UnaryRep(vec![c]),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct NaryJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arity: Option<usize>,
    products: Vec<Vec<UnaryRep>>,
}

impl Serialize for NaryRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NaryJson {
            arity: Some(self.arity),
            products: self.products.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NaryRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = NaryJson::deserialize(d)?;
        // without `arity`, the first product decides it
        let arity = match (raw.arity, raw.products.first()) {
            (Some(n), _) => n,
            (None, Some(p)) => p.len(),
            (None, None) => return Err(serde::de::Error::custom("an empty representation needs `arity`")),
        };
        NaryRep::new(arity, raw.products).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi_function::PsiFunction;
    use crate::small_set::two_bump_set;

    fn el(s: &str) -> GammaElement {
        s.parse().unwrap()
    }

    fn psi_set() -> SmallSet {
        SmallSet::from(PsiFunction::from_ints(&[1], GammaElement::zero()))
    }

    fn iv(a: &str, b: &str) -> UnaryRep {
        UnaryRep::single(Interval::bounded(el(a), el(b)))
    }

    #[test]
    fn interval_dims() {
        assert_eq!(iv("[]", "[1]").dim(Phi::Finite(2)), Dim::Finite(1));
        assert_eq!(iv("[]", "[0, 0, 1]").dim(Phi::Finite(2)), Dim::Finite(0));
        assert_eq!(iv("[1]", "[]").dim(Phi::Finite(2)), Dim::NegInf);
        assert_eq!(iv("[1]", "[1]").dim(Phi::Infinity), Dim::NegInf);
        for phi in [Phi::Finite(1), Phi::Finite(5), Phi::Infinity] {
            assert_eq!(UnaryRep::single(Interval::line()).dim(phi), Dim::Finite(1));
            assert_eq!(UnaryRep::empty().dim(phi), Dim::NegInf);
        }
    }

    #[test]
    fn thickened_dims() {
        let t = UnaryRep::single(ThickenedSmall::new(psi_set(), Phi::Finite(1)));
        assert_eq!(t.dim(Phi::Finite(3)), Dim::Finite(1));
        assert_eq!(t.dim(Phi::Finite(1)), Dim::Finite(0));
        let bare = UnaryRep::single(ThickenedSmall::new(psi_set(), Phi::Infinity));
        assert_eq!(bare.dim(Phi::Infinity), Dim::Finite(0));
    }

    #[test]
    fn products() {
        let psi = UnaryRep::single(ThickenedSmall::new(psi_set(), Phi::Infinity));
        assert_eq!(dim_product(&[psi.clone(), psi.clone()], Phi::Infinity), Dim::Finite(0));
        assert_eq!(dim_product(&[iv("[]", "[1]"), psi.clone()], Phi::Finite(1)), Dim::Finite(1));
        assert_eq!(dim_product(&[UnaryRep::empty(), psi], Phi::Finite(1)), Dim::NegInf);
    }

    #[test]
    fn wide_boxes() {
        assert!(NaryRep::unary(iv("[]", "[1]")).has_wide_box(Phi::Finite(3)));
        let narrow = UnaryRep::single(ThickenedSmall::new(psi_set(), Phi::Finite(4)));
        assert!(!NaryRep::unary(narrow.clone()).has_wide_box(Phi::Finite(2)));
        assert!(NaryRep::unary(narrow).has_wide_box(Phi::Finite(5)));
        assert!(!NaryRep::unary(UnaryRep::empty()).has_wide_box(Phi::Finite(1)));
    }

    #[test]
    fn membership() {
        assert!(iv("[]", "[1]").contains(&el("[1/2]")));
        assert!(!iv("[]", "[1]").contains(&el("[1]")));
        let t = UnaryRep::single(ThickenedSmall::new(psi_set(), Phi::Finite(4)));
        assert!(t.contains(&el("[1, 1, 1, 0, 1/7]")));
        assert!(!t.contains(&el("[1, 1, 0, 1/7]")));
        let bare = UnaryRep::single(ThickenedSmall::new(psi_set(), Phi::Infinity));
        assert!(bare.contains(&el("[1, 1]")));
        assert!(!bare.contains(&el("[1, 1, 0, 1/7]")));
    }

    #[test]
    fn unions() {
        let a = NaryRep::unary(iv("[]", "[0, 1]"));
        let b = NaryRep::unary(UnaryRep::single(ThickenedSmall::new(psi_set(), Phi::Infinity)));
        let u = a.union(&b).unwrap();
        for phi in [Phi::Finite(1), Phi::Finite(2), Phi::Infinity] {
            assert_eq!(u.dim(phi), a.dim(phi).max(b.dim(phi)));
        }
        let pair = NaryRep::product(vec![iv("[]", "[1]"), iv("[]", "[1]")]);
        assert!(a.union(&pair).is_err());
        assert!(pair.contains(&[el("[1/2]"), el("[1/3]")]).unwrap());
        assert!(pair.contains(&[el("[1/2]")]).is_err());
    }

    #[test]
    fn crosschecks() {
        let bumps = UnaryRep::single(ThickenedSmall::new(two_bump_set(), Phi::Infinity));
        let r = sst_crosscheck(&bumps, Phi::Finite(5));
        assert!(r.consistent(), "{r}");
        assert_eq!(r.dim_rules, Dim::Finite(0));
        assert_eq!(r.quotient_size, Some(11));

        let r = sst_crosscheck(&iv("[]", "[1]"), Phi::Infinity);
        assert!(r.consistent());
        assert_eq!(r.dim_rules, Dim::Finite(1));

        let psi = UnaryRep::single(ThickenedSmall::new(psi_set(), Phi::Infinity));
        let r = sst_crosscheck(&psi, Phi::Infinity);
        assert!(r.consistent());
        assert_eq!((r.dim_rules, r.d_rank), (Dim::Finite(0), Some(1)));
    }

    #[test]
    fn json_schema() {
        let text = r#"{"arity":1,"products":[[{"kind":"interval","lo":"-inf","hi":"[1]"}],
            [{"kind":"small","core":{"vars":["x0"],"coeffs":{"x0":"1"},"offset":"[]"},"thicken":"s^30"}]]}"#;
        let rep: NaryRep = serde_json::from_str(text).unwrap();
        let u = rep.as_unary().unwrap();
        assert_eq!(u.0.len(), 2);
        assert_eq!(rep.dim(Phi::Finite(2)), Dim::Finite(1));
        let back: NaryRep = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
        assert_eq!(back, rep);
    }
}
