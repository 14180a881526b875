//! The basic identities of `T_log` checked on seeded random elements: the
//! Integral, Fixed Point and Successor Identities, the defining property and
//! monotonicity of `∫`, `s`/`p` inversion, and the valuation and asymptotic
//! couple axioms for `ψ`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::couple::{integral_elem, psi_elem, succ_point};
use crate::element::{GammaElement, GammaExt, PsiPoint};
use crate::random;
use crate::rational::Rational;

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub elements: usize,
    /// Checks performed, by identity.
    pub checks: BTreeMap<&'static str, usize>,
    /// Failed checks with the offending inputs.
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checks.entry(name).or_default() += 1;
        if !ok {
            self.failures.push(format!("{name}: {}", detail()));
        }
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity\tchecks")?;
        for (name, n) in &self.checks {
            writeln!(f, "{name}\t{n}")?;
        }
        for fail in &self.failures {
            writeln!(f, "FAIL {fail}")?;
        }
        write!(
            f,
            "{} elements, {} failures",
            self.elements,
            self.failures.len()
        )
    }
}

fn fin(g: GammaElement) -> GammaExt {
    GammaExt::Finite(g)
}

/// Runs the suite on `n` random elements drawn from `seed`.
pub fn run_identities(n: usize, seed: u64) -> IdentityReport {
    let mut rng = random::rng(seed);
    let mut report = IdentityReport {
        elements: n,
        ..Default::default()
    };
    for _ in 0..n {
        let a = random::element(&mut rng);
        let b = random::element(&mut rng);
        check_pair(&mut report, &a, &b, &mut rng);
    }
    report
}

fn check_pair<R: Rng>(report: &mut IdentityReport, a: &GammaElement, b: &GammaElement, rng: &mut R) {
    let sa = succ_point(a);
    let sb = succ_point(b);
    let ia = integral_elem(a);

    report.check("integral", ia == a - &sa.to_element(), || format!("a = {a}"));
    report.check(
        "integral_roundtrip",
        !ia.is_zero() && fin(a.clone()) == add_ext(&ia, &psi_elem(&ia)),
        || format!("a = {a}, int a = {ia}"),
    );
    if a < b {
        report.check("integral_monotone", ia < integral_elem(b), || format!("a = {a}, b = {b}"));
    }

    // β = ψ(α − β) exactly for β = sα, tested against nearby points of Ψ
    let mut candidates = vec![sa, PsiPoint::new(rng.gen_range(1..=10)).expect("positive")];
    candidates.extend(sa.shift(-1));
    candidates.extend(sa.shift(1));
    for beta in candidates {
        let e = beta.to_element();
        let fixed = psi_elem(&(a - &e)) == fin(e.clone());
        report.check("fixed_point", fixed == (beta == sa), || format!("a = {a}, beta = {e}"));
    }
    // off Ψ the equation never holds
    report.check("fixed_point", psi_elem(&(a - b)) != fin(b.clone()) || b.as_staircase().is_some(), || {
        format!("a = {a}, beta = {b}")
    });

    if sa < sb {
        report.check("successor", psi_elem(&(b - a)) == fin(sa.to_element()), || format!("a = {a}, b = {b}"));
    }

    report.check("succ_pred", sa.shift(1).and_then(|t| t.shift(-1)) == Some(sa), || format!("a = {a}"));

    if !a.is_zero() {
        let q = random::nonzero_rational(rng, 100);
        report.check("psi_scaling", psi_elem(&a.scale(&q)) == psi_elem(a), || format!("a = {a}, q = {q}"));
        report.check("psi_symmetric", psi_elem(&-a) == psi_elem(a), || format!("a = {a}"));
        if !b.is_zero() && a + b != GammaElement::zero() {
            let lo = psi_elem(a).min(psi_elem(b));
            report.check("psi_ultrametric", psi_elem(&(a + b)) >= lo, || format!("a = {a}, b = {b}"));
        }
        if !b.is_zero() {
            let rhs = add_ext(&b.abs(), &psi_elem(b));
            report.check("couple_axiom", psi_elem(a) < rhs, || format!("a = {a}, b = {b}"));
        }
        let ratio = Rational::new(rng.gen_range(1..=100), rng.gen_range(1..=100));
        // ψ is constant on (a/2, 2a) for a > 0
        let pos = a.abs();
        let lo = pos.scale(&Rational::new(1, 2));
        let probe = pos.scale(&ratio);
        if lo < probe && probe < pos.scale(&Rational::from(2)) {
            report.check("psi_locally_constant", psi_elem(&probe) == psi_elem(&pos), || {
                format!("a = {pos}, x = {probe}")
            });
        }
    }
}

fn add_ext(a: &GammaElement, b: &GammaExt) -> GammaExt {
    match b {
        GammaExt::Finite(b) => fin(a + b),
        GammaExt::Infinity => GammaExt::Infinity,
    }
}
