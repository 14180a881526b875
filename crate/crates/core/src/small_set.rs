//! Small sets as used by the quotient and dimension machinery: a finite union
//! of Ψ-function images, or one image restricted by difference constraints on
//! its indices.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constraints::{Atom, DifferenceConstraints};
use crate::element::GammaElement;
use crate::error::{Error, Result};
use crate::psi_function::{ImageUnion, PsiFunction, PsiFunctionJson};

/// `{F(α) : the staircase lengths of α satisfy the constraints}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstrainedImage {
    pub base: PsiFunction,
    pub constraints: DifferenceConstraints,
}

impl ConstrainedImage {
    pub fn new(base: PsiFunction, constraints: DifferenceConstraints) -> Result<Self> {
        if constraints.var_bound() > base.arity() {
            return Err(Error::Invalid(format!(
                "constraint mentions index {} but the function has {} indices",
                constraints.var_bound() - 1,
                base.arity()
            )));
        }
        Ok(ConstrainedImage { base, constraints })
    }

    pub fn is_empty(&self) -> bool {
        !self.constraints.is_satisfiable(self.base.arity())
    }

    pub fn admits(&self, levels: &[u32]) -> bool {
        let n: Vec<i64> = levels.iter().map(|&l| l as i64).collect();
        self.constraints.holds(&n)
    }
}

/// The set `X = {(sx − x) + (sy − y) : x ≠ y ∈ Ψ}` written as
/// `x0 − x1 + x2 − x3` with `n0 = n1 + 1`, `n2 = n3 + 1`, `n1 < n3`.
pub fn two_bump_set() -> ConstrainedImage {
    ConstrainedImage::new(
        PsiFunction::from_ints(&[1, -1, 1, -1], GammaElement::zero()),
        DifferenceConstraints::new(vec![
            Atom::DiffEq { i: 0, j: 1, c: 1 },
            Atom::DiffEq { i: 2, j: 3, c: 1 },
            Atom::DiffLe { i: 1, j: 3, c: -1 },
        ]),
    )
    .expect("valid indices")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SmallSet {
    Union(ImageUnion),
    Constrained(ConstrainedImage),
}

impl SmallSet {
    /// Components as `(function, constraints)`; unconstrained components
    /// carry `None`.
    pub fn components(&self) -> Vec<(&PsiFunction, Option<&DifferenceConstraints>)> {
        match self {
            SmallSet::Union(u) => u.components().iter().map(|f| (f, None)).collect(),
            SmallSet::Constrained(c) => vec![(&c.base, Some(&c.constraints))],
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SmallSet::Union(u) => u.is_empty(),
            SmallSet::Constrained(c) => c.is_empty(),
        }
    }

    pub fn as_union(&self) -> Option<&ImageUnion> {
        match self {
            SmallSet::Union(u) => Some(u),
            SmallSet::Constrained(_) => None,
        }
    }

    pub fn max_arity(&self) -> usize {
        self.components().iter().map(|(f, _)| f.arity()).max().unwrap_or(0)
    }

    /// Some point of the set, if it is nonempty.
    pub fn some_point(&self) -> Option<GammaElement> {
        self.components().into_iter().find_map(|(f, c)| {
            let levels = match c {
                None => vec![1; f.arity()],
                Some(c) => c.solve(f.arity(), &[])?.into_iter().map(|n| n as u32).collect(),
            };
            Some(f.eval_levels(&levels))
        })
    }

    /// A pseudo-random point with staircase lengths drawn from `1..=bound`;
    /// for constrained images, falls back to a solver witness when the draw
    /// is not admissible.
    pub fn sample_point<R: Rng>(&self, rng: &mut R, bound: u32) -> Option<GammaElement> {
        let comps = self.components();
        let (f, c) = *comps.choose(rng)?;
        let levels: Vec<u32> = (0..f.arity()).map(|_| rng.gen_range(1..=bound)).collect();
        match c {
            Some(c) if !c.holds(&levels.iter().map(|&n| n as i64).collect::<Vec<_>>()) => {
                let extra: Vec<Atom> = levels
                    .iter()
                    .enumerate()
                    .map(|(i, &n)| Atom::Ge { i, c: n as i64 })
                    .take(1)
                    .collect();
                let sol = c.solve(f.arity(), &extra).or_else(|| c.solve(f.arity(), &[]))?;
                Some(f.eval_levels(&sol.into_iter().map(|n| n as u32).collect::<Vec<_>>()))
            }
            _ => Some(f.eval_levels(&levels)),
        }
    }
}

impl From<ImageUnion> for SmallSet {
    fn from(u: ImageUnion) -> Self {
        SmallSet::Union(u)
    }
}

impl From<PsiFunction> for SmallSet {
    fn from(f: PsiFunction) -> Self {
        SmallSet::Union(ImageUnion::single(f))
    }
}

impl From<ConstrainedImage> for SmallSet {
    fn from(c: ConstrainedImage) -> Self {
        SmallSet::Constrained(c)
    }
}

#[derive(Serialize, Deserialize)]
struct ConstrainedJson {
    #[serde(flatten)]
    base: PsiFunctionJson,
    constraints: DifferenceConstraints,
}

impl Serialize for ConstrainedImage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConstrainedJson {
            base: PsiFunctionJson::from_function(&self.base),
            constraints: self.constraints.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConstrainedImage {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ConstrainedJson::deserialize(d)?;
        let json_order = raw.base.vars.clone();
        let base = raw.base.into_function().map_err(serde::de::Error::custom)?;
        // indices in the file refer to the file's `vars` order
        let remap = |i: usize| -> std::result::Result<usize, D::Error> {
            json_order
                .get(i)
                .and_then(|v| base.position(v))
                .ok_or_else(|| serde::de::Error::custom(format!("constraint index {i} out of range")))
        };
        let atoms = raw
            .constraints
            .atoms
            .iter()
            .map(|a| {
                Ok(match *a {
                    Atom::DiffLe { i, j, c } => Atom::DiffLe { i: remap(i)?, j: remap(j)?, c },
                    Atom::DiffEq { i, j, c } => Atom::DiffEq { i: remap(i)?, j: remap(j)?, c },
                    Atom::Ge { i, c } => Atom::Ge { i: remap(i)?, c },
                    Atom::Le { i, c } => Atom::Le { i: remap(i)?, c },
                })
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        ConstrainedImage::new(base, DifferenceConstraints::new(atoms)).map_err(serde::de::Error::custom)
    }
}

/// JSON: an array is an image union, an object with `constraints` a
/// constrained image, any other object a single Ψ-function.
impl Serialize for SmallSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SmallSet::Union(u) => u.serialize(s),
            SmallSet::Constrained(c) => c.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for SmallSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        let err = serde::de::Error::custom;
        match &value {
            serde_json::Value::Array(_) => serde_json::from_value(value).map(SmallSet::Union).map_err(err),
            serde_json::Value::Object(map) if map.contains_key("constraints") => {
                serde_json::from_value(value).map(SmallSet::Constrained).map_err(err)
            }
            serde_json::Value::Object(_) => serde_json::from_value::<PsiFunction>(value)
                .map(SmallSet::from)
                .map_err(err),
            _ => Err(serde::de::Error::custom("expected an array or an object")),
        }
    }
}
