//! The asymptotic-couple primitives on `Γ_∞`: `ψ`, `δ_n`, the asymptotic
//! integral `∫`, successor `s` and predecessor `p`, plus a few derived
//! relations. Every primitive is total, with `∞` as the default value.

use crate::element::{ArchClassToken, GammaElement, GammaExt, PsiPoint};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub fn add(a: &GammaExt, b: &GammaExt) -> GammaExt {
    match (a, b) {
        (GammaExt::Finite(x), GammaExt::Finite(y)) => GammaExt::Finite(x + y),
        _ => GammaExt::Infinity,
    }
}

pub fn neg(a: &GammaExt) -> GammaExt {
    match a {
        GammaExt::Finite(x) => GammaExt::Finite(-x),
        GammaExt::Infinity => GammaExt::Infinity,
    }
}

/// `δ_n(a) = a / n` for `n >= 1`.
pub fn delta(n: u32, a: &GammaExt) -> GammaExt {
    assert!(n >= 1, "delta index must be positive");
    match a {
        GammaExt::Finite(x) => GammaExt::Finite(x.scale(&Rational::new(1, n as i64))),
        GammaExt::Infinity => GammaExt::Infinity,
    }
}

/// `ψ` on a finite element: leading index `n` gives `E_{n+1}`; `ψ(0) = ∞`.
pub fn psi_elem(a: &GammaElement) -> GammaExt {
    match a.leading_index() {
        Some(n) => GammaExt::Finite(GammaElement::ones(n + 1)),
        None => GammaExt::Infinity,
    }
}

/// `ψ` of a nonzero element as a point of `Ψ`.
pub fn psi_point(a: &GammaElement) -> Option<PsiPoint> {
    a.leading_index().and_then(|n| PsiPoint::new(n as u32 + 1))
}

pub fn psi(a: &GammaExt) -> GammaExt {
    match a {
        GammaExt::Finite(x) => psi_elem(x),
        GammaExt::Infinity => GammaExt::Infinity,
    }
}

/// Length of the initial run of coordinates equal to `1`.
fn leading_ones(a: &GammaElement) -> usize {
    let mut t = 0;
    while a.coord_ref(t).is_some_and(Rational::is_one) {
        t += 1;
    }
    t
}

/// The unique nonzero `β` with `β + ψ(β) = a`.
///
/// If `β` has leading index `m` then `β = a - E_{m+1}`, which forces
/// `a_0 = ... = a_{m-1} = 1` and `a_m != 1`; so `m` is the length of the
/// initial run of ones in `a`.
pub fn integral_elem(a: &GammaElement) -> GammaElement {
    let m = leading_ones(a);
    a - &GammaElement::ones(m + 1)
}

pub fn integral(a: &GammaExt) -> GammaExt {
    match a {
        GammaExt::Finite(x) => GammaExt::Finite(integral_elem(x)),
        GammaExt::Infinity => GammaExt::Infinity,
    }
}

/// `s(a) = ψ(∫a)`, always a point of `Ψ` for finite `a`.
pub fn succ_point(a: &GammaElement) -> PsiPoint {
    PsiPoint::new(leading_ones(a) as u32 + 1).expect("positive")
}

pub fn succ(a: &GammaExt) -> GammaExt {
    match a {
        GammaExt::Finite(x) => GammaExt::Finite(succ_point(x).to_element()),
        GammaExt::Infinity => GammaExt::Infinity,
    }
}

/// Predecessor on `Ψ^{>s0}`; `∞` everywhere else.
pub fn pred(a: &GammaExt) -> GammaExt {
    let prev = a
        .finite()
        .and_then(PsiPoint::from_element)
        .and_then(|p| p.shift(-1));
    match prev {
        Some(p) => GammaExt::Finite(p.to_element()),
        None => GammaExt::Infinity,
    }
}

/// For `ε > 0`, the pair `(δ0, δ1) = (sψ(ε), ψ(ε))`, which satisfies
/// `0 < δ0 - δ1` and `ψ(δ0 - δ1) > ψ(ε)`.
pub fn small_diff_witness(eps: &GammaElement) -> Result<(PsiPoint, PsiPoint)> {
    if !eps.is_positive() {
        return Err(Error::NotPositive);
    }
    let d1 = psi_point(eps).expect("nonzero");
    let d0 = succ_point(&d1.to_element());
    Ok((d0, d1))
}

/// `x ∼_ψ y` iff `ψ(x) < ψ(x - y)`.
pub fn rv_equiv(x: &GammaElement, y: &GammaElement) -> Result<bool> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(psi_elem(x) < psi_elem(&(x - y)))
}

pub fn arch_class(a: &GammaElement) -> Result<ArchClassToken> {
    a.leading_index().map(ArchClassToken).ok_or(Error::ZeroArgument)
}

/// `a ≺_ψ b` iff `ψ(a) > ψ(b)`.
pub fn psi_precedes(a: &GammaElement, b: &GammaElement) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(psi_elem(a) > psi_elem(b))
}
