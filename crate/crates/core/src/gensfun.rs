//! Generalized s-functions `F(α) = Σ_i Σ_j q_{i,j} s^{k_j}(α_i) + β` on `Ψ^m`,
//! where `s^k = p^{-k}` for negative `k`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::{GammaElement, GammaExt, PsiPoint};
use crate::error::{Error, Result};
use crate::psi_function::PsiFunction;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenSFunction {
    arity: usize,
    shifts: Vec<i64>,
    /// `coeffs[i][j]` multiplies `s^{shifts[j]}(α_i)`; zeros are kept.
    coeffs: Vec<Vec<Rational>>,
    offset: GammaExt,
}

impl GenSFunction {
    pub fn new(
        arity: usize,
        shifts: Vec<i64>,
        coeffs: Vec<Vec<Rational>>,
        offset: GammaExt,
    ) -> Result<Self> {
        let mut sorted = shifts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != shifts.len() {
            return Err(Error::Invalid("shift exponents must be distinct".into()));
        }
        if coeffs.len() != arity || coeffs.iter().any(|row| row.len() != shifts.len()) {
            return Err(Error::Invalid(format!(
                "coefficient table must be {arity} x {}",
                shifts.len()
            )));
        }
        Ok(GenSFunction {
            arity,
            shifts,
            coeffs,
            offset,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.coeffs[i][j]
    }

    pub fn offset(&self) -> &GammaExt {
        &self.offset
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(move |(j, q)| (i, j, q))
        })
    }

    /// Zero-coefficient entries are skipped, so a `p` that would fall off `Ψ`
    /// only forces `∞` when its term actually contributes.
    pub fn eval(&self, args: &[PsiPoint]) -> Result<GammaExt> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        let GammaExt::Finite(offset) = &self.offset else {
            return Ok(GammaExt::Infinity);
        };
        let mut out = offset.clone();
        for (i, j, q) in self.nonzero() {
            match args[i].shift(self.shifts[j]) {
                Some(p) => out.add_scaled(&p.to_element(), q),
                None => return Ok(GammaExt::Infinity),
            }
        }
        Ok(GammaExt::Finite(out))
    }

    fn cover_label(i: usize, j: usize) -> String {
        format!("a{i}_{j}")
    }

    /// A Ψ-function with one fresh index per nonzero `q_{i,j}` whose image
    /// contains every finite value of `F`. With `β = ∞` there are no finite
    /// values and the cover is the constant `0`.
    pub fn cover(&self) -> PsiFunction {
        let GammaExt::Finite(offset) = &self.offset else {
            return PsiFunction::constant(GammaElement::zero());
        };
        PsiFunction::new(
            self.nonzero().map(|(i, j, q)| (Self::cover_label(i, j), q.clone())),
            offset.clone(),
        )
        .expect("labels are distinct and coefficients nonzero")
    }

    /// Staircase lengths for `cover()` reproducing `F(args)`, when finite.
    pub fn cover_witness(&self, args: &[PsiPoint]) -> Option<Vec<u32>> {
        if self.offset.is_infinite() || args.len() != self.arity {
            return None;
        }
        let g = self.cover();
        let mut levels = vec![0; g.arity()];
        for (i, j, _) in self.nonzero() {
            let p = args[i].shift(self.shifts[j])?;
            levels[g.position(&Self::cover_label(i, j))?] = p.ones();
        }
        Some(levels)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    var: usize,
    shift: i64,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct GenSFunctionJson {
    arity: usize,
    terms: Vec<TermJson>,
    offset: GammaExt,
}

impl Serialize for GenSFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut terms = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, q) in row.iter().enumerate() {
                terms.push(TermJson {
                    var: i,
                    shift: self.shifts[j],
                    coeff: q.clone(),
                });
            }
        }
        GenSFunctionJson {
            arity: self.arity,
            terms,
            offset: self.offset.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenSFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GenSFunctionJson::deserialize(d)?;
        let mut shifts: Vec<i64> = raw.terms.iter().map(|t| t.shift).collect();
        shifts.sort_unstable();
        shifts.dedup();
        let mut coeffs = vec![vec![Rational::zero(); shifts.len()]; raw.arity];
        for t in raw.terms {
            if t.var >= raw.arity {
                return Err(serde::de::Error::custom(format!("variable {} out of range", t.var)));
            }
            let j = shifts.binary_search(&t.shift).expect("collected above");
            coeffs[t.var][j] += &t.coeff;
        }
        GenSFunction::new(raw.arity, shifts, coeffs, raw.offset).map_err(serde::de::Error::custom)
    }
}
