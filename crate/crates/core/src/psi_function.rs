//! Ψ-functions `F(α) = Σ_{i∈I} q_i α_i + β` on `Ψ^I`, their images, and the
//! exact derived-set recursion on finite unions of images.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::{GammaElement, PsiPoint};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An affine map `Ψ^I → Γ` with nonzero rational coefficients.
///
/// Index labels are kept sorted; assignments (`&[u32]`, one staircase length
/// per label) follow that order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PsiFunction {
    vars: Vec<String>,
    coeffs: Vec<Rational>,
    offset: GammaElement,
}

impl PsiFunction {
    /// Builds a Ψ-function; rejects zero coefficients and duplicate labels.
    pub fn new<I, S>(terms: I, offset: GammaElement) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (label, q) in terms {
            let label = label.into();
            if q.is_zero() {
                return Err(Error::Invalid(format!("coefficient of `{label}` is zero")));
            }
            if map.insert(label.clone(), q).is_some() {
                return Err(Error::Invalid(format!("duplicate label `{label}`")));
            }
        }
        let (vars, coeffs) = map.into_iter().unzip();
        Ok(PsiFunction {
            vars,
            coeffs,
            offset,
        })
    }

    /// `Σ q_i x_i` over labels `x0, x1, ...` with the given integer coefficients.
    pub fn from_ints(coeffs: &[i64], offset: GammaElement) -> Self {
        Self::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &q)| (format!("x{i}"), Rational::from(q))),
            offset,
        )
        .expect("nonzero integer coefficients")
    }

    pub fn constant(offset: GammaElement) -> Self {
        PsiFunction {
            vars: Vec::new(),
            coeffs: Vec::new(),
            offset,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn offset(&self) -> &GammaElement {
        &self.offset
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rational)> + '_ {
        self.vars.iter().map(String::as_str).zip(&self.coeffs)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(label)).ok()
    }

    /// `‖F‖ = Σ q_i`.
    pub fn norm(&self) -> Rational {
        self.coeffs.iter().sum()
    }

    /// `F_J`: keep the coefficients on `J`, same offset.
    pub fn restrict<S: AsRef<str>>(&self, labels: &[S]) -> Result<PsiFunction> {
        let mut keep = vec![false; self.arity()];
        for l in labels {
            let l = l.as_ref();
            let pos = self.position(l).ok_or_else(|| Error::NotSubset(l.to_string()))?;
            keep[pos] = true;
        }
        Ok(self.restrict_mask(&keep))
    }

    pub(crate) fn restrict_mask(&self, keep: &[bool]) -> PsiFunction {
        let (vars, coeffs) = self
            .vars
            .iter()
            .zip(&self.coeffs)
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|((v, q), _)| (v.clone(), q.clone()))
            .unzip();
        PsiFunction {
            vars,
            coeffs,
            offset: self.offset.clone(),
        }
    }

    /// `F(E_{n_0}, E_{n_1}, ...)` for staircase lengths `levels` (all `>= 1`).
    pub fn eval_levels(&self, levels: &[u32]) -> GammaElement {
        assert_eq!(levels.len(), self.arity(), "assignment arity");
        let mut out = self.offset.clone();
        for (q, &n) in self.coeffs.iter().zip(levels) {
            assert!(n >= 1, "staircase length must be positive");
            for i in 0..n as usize {
                out.add_at(i, q);
            }
        }
        out
    }

    pub fn eval_points(&self, args: &[PsiPoint]) -> GammaElement {
        let levels: Vec<u32> = args.iter().map(|p| p.ones()).collect();
        self.eval_levels(&levels)
    }

    /// Evaluates with a label-keyed assignment; missing labels are an error.
    pub fn eval_map(&self, assignment: &BTreeMap<String, u32>) -> Result<GammaElement> {
        let levels = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .copied()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::Invalid(format!("no staircase length for `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_levels(&levels))
    }

    /// Components of `image(F)'`: `F_{I∖J}` for each nonempty `J ⊆ I` with
    /// `‖F_J‖ = 0`.
    pub fn derived_components(&self) -> Vec<PsiFunction> {
        let n = self.arity();
        assert!(n < 32, "index set too large for subset enumeration");
        let mut out = Vec::new();
        for mask in 1u32..(1u32 << n) {
            let norm: Rational = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &self.coeffs[i])
                .sum();
            if norm.is_zero() {
                let keep: Vec<bool> = (0..n).map(|i| mask & (1 << i) == 0).collect();
                out.push(self.restrict_mask(&keep));
            }
        }
        out
    }
}

impl fmt::Display for PsiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, q) in self.terms() {
            let (neg, mag) = if q.is_negative() { (true, -q) } else { (false, q.clone()) };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(v)?;
            first = false;
        }
        if first {
            write!(f, "{}", self.offset)
        } else if !self.offset.is_zero() {
            write!(f, " + {}", self.offset)
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for PsiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a linear expression such as `x0 - x1 + 2*x2 - 1/2*x3 + [0, 1]`.
/// Repeated labels are combined; labels whose coefficients cancel are dropped.
pub fn parse_linear(text: &str) -> Result<PsiFunction> {
    use crate::error::ParseError;
    let mut coeffs: BTreeMap<String, Rational> = BTreeMap::new();
    let mut offset = GammaElement::zero();
    let src = text;
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while src[*pos..].starts_with(char::is_whitespace) {
            *pos += src[*pos..].chars().next().unwrap().len_utf8();
        }
    };
    let mut expect_term = true;
    let mut sign = Rational::one();
    loop {
        skip_ws(&mut pos);
        if pos >= src.len() {
            if expect_term {
                return Err(ParseError::new("unexpected end of input", pos).into());
            }
            break;
        }
        let c = src[pos..].chars().next().unwrap();
        if !expect_term {
            match c {
                '+' => sign = Rational::one(),
                '-' | '\u{2212}' => sign = -Rational::one(),
                _ => return Err(ParseError::new(format!("expected `+` or `-`, found `{c}`"), pos).into()),
            }
            pos += c.len_utf8();
            expect_term = true;
            continue;
        }
        if c == '-' || c == '\u{2212}' {
            sign = -sign;
            pos += c.len_utf8();
            continue;
        }
        if c == '+' {
            pos += 1;
            continue;
        }
        if c == '[' {
            let (lit, end) = crate::element::parse_literal(src, pos)?;
            let g = lit
                .into_finite()
                .ok_or_else(|| ParseError::new("offset must be finite", pos))?;
            offset.add_scaled(&g, &sign);
            pos = end;
            expect_term = false;
            continue;
        }
        let mut q = sign.clone();
        if c.is_ascii_digit() {
            let len = src[pos..]
                .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                .unwrap_or(src.len() - pos);
            let num: Rational = src[pos..pos + len]
                .parse()
                .map_err(|e: ParseError| ParseError::new(e.message, pos))?;
            q = &q * &num;
            pos += len;
            skip_ws(&mut pos);
            if !src[pos..].starts_with('*') {
                return Err(ParseError::new("expected `*` after coefficient", pos).into());
            }
            pos += 1;
            skip_ws(&mut pos);
        }
        let len = src[pos..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(src.len() - pos);
        if len == 0 || !src[pos..].starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return Err(ParseError::new("expected a label", pos).into());
        }
        let label = src[pos..pos + len].to_string();
        pos += len;
        *coeffs.entry(label).or_default() += &q;
        expect_term = false;
    }
    PsiFunction::new(coeffs.into_iter().filter(|(_, q)| !q.is_zero()), offset)
}

/// A finite union of images of Ψ-functions. The empty list is the empty set.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ImageUnion(pub Vec<PsiFunction>);

impl ImageUnion {
    pub fn new(components: Vec<PsiFunction>) -> Self {
        ImageUnion(components)
    }

    pub fn single(f: PsiFunction) -> Self {
        ImageUnion(vec![f])
    }

    pub fn components(&self) -> &[PsiFunction] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.0.iter().map(PsiFunction::arity).max().unwrap_or(0)
    }

    pub fn union(&self, other: &ImageUnion) -> ImageUnion {
        let mut out = self.0.clone();
        out.extend(other.0.iter().cloned());
        ImageUnion(out).normalized()
    }

    /// Drops components with identical `(I, q, β)`, keeping first occurrences.
    pub fn normalized(mut self) -> ImageUnion {
        let mut seen = std::collections::HashSet::new();
        self.0.retain(|f| seen.insert(f.clone()));
        self
    }

    /// `X ∪ X'`.
    pub fn closure(&self) -> ImageUnion {
        self.union(&derived_set(self))
    }
}

/// The exact derived set: `image(F)' = ⋃_{∅≠J⊆I, ‖F_J‖=0} image(F_{I∖J})`,
/// distributed over the union.
pub fn derived_set(x: &ImageUnion) -> ImageUnion {
    ImageUnion(
        x.0.iter()
            .flat_map(PsiFunction::derived_components)
            .collect(),
    )
    .normalized()
}

/// The iterated derived sets `X, X', X'', ...` up to and including the first
/// empty one.
pub fn derived_chain(x: &ImageUnion) -> Vec<ImageUnion> {
    let mut chain = vec![x.clone()];
    while !chain.last().unwrap().is_empty() {
        let next = derived_set(chain.last().unwrap());
        chain.push(next);
    }
    chain
}

/// Least `n` with `X^{(n)} = ∅`. Each step strictly shrinks every index set,
/// so this is at most `1 + max |I|`.
pub fn d_rank(x: &ImageUnion) -> usize {
    derived_chain(x).len() - 1
}

/// Canonical probe set for [`recover`] on arity `m`: all-`E_1`, then `E_2`
/// in one slot at a time.
pub fn standard_probes(arity: usize) -> Vec<Vec<u32>> {
    let mut probes = vec![vec![1; arity]];
    for i in 0..arity {
        let mut p = vec![1; arity];
        p[i] = 2;
        probes.push(p);
    }
    probes
}

/// Recovers the unique Ψ-function data from evaluations of a hidden
/// Ψ-function on `Ψ^m` (labels `x0..x{m-1}`; zero coefficients are dropped
/// from the index set).
///
/// Differences of evaluations eliminate the offset; the coefficients then
/// solve an exact linear system over the coordinates. All evaluations are
/// rechecked against the recovered function.
pub fn recover(arity: usize, evals: &[(Vec<u32>, GammaElement)]) -> Result<PsiFunction> {
    let (base_args, base_val) = evals
        .first()
        .ok_or_else(|| Error::Underdetermined("no evaluations".into()))?;
    for (args, _) in evals {
        if args.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: args.len(),
            });
        }
        if args.contains(&0) {
            return Err(Error::Invalid("staircase lengths must be positive".into()));
        }
    }
    let width = evals
        .iter()
        .map(|(a, v)| v.support_len().max(a.iter().copied().max().unwrap_or(0) as usize))
        .max()
        .unwrap_or(0);

    // Rows: for each other evaluation and coordinate c,
    //   Σ_i q_i ([n_i > c] - [b_i > c]) = v_c - base_c
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (args, val) in &evals[1..] {
        let diff = val - base_val;
        for c in 0..width {
            let mut row: Vec<Rational> = (0..arity)
                .map(|i| {
                    let a = (args[i] as usize > c) as i64;
                    let b = (base_args[i] as usize > c) as i64;
                    Rational::from(a - b)
                })
                .collect();
            row.push(diff.coord(c));
            rows.push(row);
        }
    }
    let q = solve_exact(rows, arity)?;
    let mut offset = base_val.clone();
    for (qi, &n) in q.iter().zip(base_args) {
        offset.add_scaled(&GammaElement::ones(n as usize), &-qi);
    }
    let f = PsiFunction::new(
        q.iter()
            .enumerate()
            .filter(|(_, qi)| !qi.is_zero())
            .map(|(i, qi)| (format!("x{i}"), qi.clone())),
        offset,
    )?;
    for (args, val) in evals {
        let levels: Vec<u32> = f
            .vars()
            .iter()
            .map(|v| args[v[1..].parse::<usize>().unwrap()])
            .collect();
        if &f.eval_levels(&levels) != val {
            return Err(Error::Inconsistent(format!(
                "no Ψ-function matches the value {val} at {args:?}"
            )));
        }
    }
    Ok(f)
}

/// Gauss-Jordan elimination on an augmented system with `n` unknowns.
fn solve_exact(mut rows: Vec<Vec<Rational>>, n: usize) -> Result<Vec<Rational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip().unwrap();
        for x in rows[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &(p * &factor);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::Inconsistent(
            "evaluations do not come from a single Ψ-function".into(),
        ));
    }
    if pivots.len() < n {
        return Err(Error::Underdetermined(
            "probe set does not separate all coefficients".into(),
        ));
    }
    let mut q = vec![Rational::zero(); n];
    for (r, &col) in pivots.iter().enumerate() {
        q[col] = rows[r][n].clone();
    }
    Ok(q)
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PsiFunctionJson {
    pub vars: Vec<String>,
    pub coeffs: BTreeMap<String, Rational>,
    pub offset: GammaElement,
}

impl PsiFunctionJson {
    pub(crate) fn into_function(self) -> Result<PsiFunction> {
        if self.coeffs.len() != self.vars.len() {
            return Err(Error::Invalid("`coeffs` keys must match `vars`".into()));
        }
        let terms = self
            .vars
            .iter()
            .map(|v| {
                self.coeffs
                    .get(v)
                    .cloned()
                    .map(|q| (v.clone(), q))
                    .ok_or_else(|| Error::Invalid(format!("no coefficient for `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        PsiFunction::new(terms, self.offset)
    }

    pub(crate) fn from_function(f: &PsiFunction) -> Self {
        PsiFunctionJson {
            vars: f.vars.clone(),
            coeffs: f.vars.iter().cloned().zip(f.coeffs.iter().cloned()).collect(),
            offset: f.offset.clone(),
        }
    }
}

impl Serialize for PsiFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PsiFunctionJson::from_function(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PsiFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PsiFunctionJson::deserialize(d)?
            .into_function()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for ImageUnion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ImageUnion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(ImageUnion(Vec::deserialize(d)?))
    }
}
