//! Seeded generators for elements, Ψ-functions and representations.
//!
//! Elements have support within the first 8 coordinates and numerators and
//! denominators bounded by 100. A quarter of them start with a run of `1`s so
//! that the integral map sees nontrivial staircase prefixes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::definable::{Bound, Component, Interval, ThickenedSmall, UnaryRep};
use crate::element::GammaElement;
use crate::psi_function::{ImageUnion, PsiFunction};
use crate::quotient::Phi;
use crate::rational::Rational;
use crate::small_set::{two_bump_set, SmallSet};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `[-bound, bound]`, denominator in `[1, bound]`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let q = rational(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

/// An element supported in the first `max_support` coordinates.
pub fn element_with<R: Rng>(rng: &mut R, max_support: usize, bound: i64) -> GammaElement {
    let len = rng.gen_range(0..=max_support);
    let mut dense: Vec<Rational> = Vec::with_capacity(len);
    if len > 0 && rng.gen_bool(0.25) {
        let run = rng.gen_range(1..=len);
        dense.extend(std::iter::repeat_n(Rational::one(), run));
    }
    while dense.len() < len {
        dense.push(if rng.gen_bool(0.3) { Rational::zero() } else { rational(rng, bound) });
    }
    GammaElement::from_dense(dense)
}

pub fn element<R: Rng>(rng: &mut R) -> GammaElement {
    element_with(rng, 8, 100)
}

pub fn nonzero_element<R: Rng>(rng: &mut R) -> GammaElement {
    loop {
        let g = element(rng);
        if !g.is_zero() {
            return g;
        }
    }
}

pub fn positive_element<R: Rng>(rng: &mut R) -> GammaElement {
    nonzero_element(rng).abs()
}

/// A Ψ-function with `1..=max_arity` indices (or none, rarely), coefficients
/// with numerators and denominators up to `bound`, and a small offset.
pub fn psi_function<R: Rng>(rng: &mut R, max_arity: usize, bound: i64) -> PsiFunction {
    let arity = if rng.gen_bool(0.05) { 0 } else { rng.gen_range(1..=max_arity) };
    // opposite pairs make zero-norm subsets, and hence derived sets, common
    let mut coeffs: Vec<Rational> = Vec::with_capacity(arity);
    while coeffs.len() < arity {
        if !coeffs.is_empty() && rng.gen_bool(0.4) {
            let q = coeffs.choose(rng).expect("nonempty").clone();
            coeffs.push(-q);
        } else {
            coeffs.push(nonzero_rational(rng, bound));
        }
    }
    let offset = if rng.gen_bool(0.5) {
        GammaElement::zero()
    } else {
        element_with(rng, 4, bound)
    };
    PsiFunction::new(
        coeffs.into_iter().enumerate().map(|(i, q)| (format!("x{i}"), q)),
        offset,
    )
    .expect("generated coefficients are nonzero")
}

/// A unary representation: up to three intervals and thickened small sets.
/// Interval ends and offsets live in the first 6 coordinates and thickenings
/// are `s^j0` with `j <= 6` or absent.
pub fn unary_rep<R: Rng>(rng: &mut R) -> UnaryRep {
    let n = rng.gen_range(0..=3);
    UnaryRep(
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    let mut bound = |neg: bool| {
                        if rng.gen_bool(0.15) {
                            if neg { Bound::NegInf } else { Bound::PosInf }
                        } else {
                            Bound::At(element_with(rng, 6, 9))
                        }
                    };
                    let lo = bound(true);
                    let hi = bound(false);
                    // a few reversed ends are kept as empty intervals
                    let (lo, hi) = if lo > hi && rng.gen_bool(0.8) { (hi, lo) } else { (lo, hi) };
                    Component::Interval(Interval::new(lo, hi))
                } else {
                    let core: SmallSet = match rng.gen_range(0..10) {
                        0 => two_bump_set().into(),
                        1 => ImageUnion::new(Vec::new()).into(),
                        _ => image_union(rng, 2, 3, 9).into(),
                    };
                    let thicken = if rng.gen_bool(0.3) {
                        Phi::Infinity
                    } else {
                        Phi::Finite(rng.gen_range(1..=6))
                    };
                    Component::Small(ThickenedSmall::new(core, thicken))
                }
            })
            .collect(),
    )
}

pub fn image_union<R: Rng>(rng: &mut R, max_components: usize, max_arity: usize, bound: i64) -> ImageUnion {
    let n = rng.gen_range(1..=max_components);
    ImageUnion::new((0..n).map(|_| psi_function(rng, max_arity, bound)).collect())
}

/// Staircase lengths in `1..=bound` for every index of `f`.
pub fn levels<R: Rng>(rng: &mut R, f: &PsiFunction, bound: u32) -> Vec<u32> {
    (0..f.arity()).map(|_| rng.gen_range(1..=bound)).collect()
}
