//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails. Runs without the libtest harness so the lines always show.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::Rng;

use logcouple_core::couple::{psi_elem, small_diff_witness};
use logcouple_core::definable::{dim_product, quotient_image, sst_crosscheck, Component, Dim, Interval, NaryRep, ThickenedSmall, UnaryRep};
use logcouple_core::equilateral::equilateral_max_clique;
use logcouple_core::identities::run_identities;
use logcouple_core::member::{is_member, member};
use logcouple_core::probe::LimitProbe;
use logcouple_core::product::{derived_by_formula, derived_by_iteration, probe_pairs};
use logcouple_core::psi_function::{d_rank, derived_chain, derived_set, recover, standard_probes};
use logcouple_core::quotient::{count_function, project, project_set};
use logcouple_core::random;
use logcouple_core::small_set::two_bump_set;
use logcouple_core::{GammaElement, GammaExt, ImageUnion, Phi, PsiFunction, Rational, SmallSet};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn in_union(x: &GammaElement, u: &ImageUnion) -> bool {
    u.components().iter().any(|f| is_member(x, f))
}

/// All assignments in `{1..bound}^I` grouped by value.
fn window_values(f: &PsiFunction, bound: u32) -> BTreeMap<GammaElement, BTreeSet<Vec<u32>>> {
    let k = f.arity() as u32;
    let mut out: BTreeMap<GammaElement, BTreeSet<Vec<u32>>> = BTreeMap::new();
    for code in 0..bound.pow(k) {
        let mut c = code;
        let levels: Vec<u32> = (0..k)
            .map(|_| {
                let v = c % bound + 1;
                c /= bound;
                v
            })
            .collect();
        out.entry(f.eval_levels(&levels)).or_default().insert(levels);
    }
    out
}

/// The 200 instances shared by criteria 4 and 5.
fn instances() -> Vec<PsiFunction> {
    let mut rng = random::rng(4);
    (0..200).map(|_| random::psi_function(&mut rng, 3, 9)).collect()
}

fn identity_suite() -> Outcome {
    let r = run_identities(10_000, 1);
    let checks: usize = r.checks.values().sum();
    if r.passed() {
        ok(format!("{checks} exact checks on 10000 elements"))
    } else {
        fail(format!("{} failures, first: {}", r.failures.len(), r.failures[0]))
    }
}

fn two_bump_chain() -> Outcome {
    let x = ImageUnion::single(PsiFunction::from_ints(&[1, -1, 1, -1], GammaElement::zero()));
    let rank = d_rank(&x);
    if rank != 3 {
        return fail(format!("d_rank {rank}"));
    }
    let chain = derived_chain(&x);
    let second = &chain[2];
    let zero = GammaElement::zero();
    if !in_union(&zero, second) {
        return fail("0 not in X''");
    }
    let mut rng = random::rng(2);
    let second_set = SmallSet::from(second.clone());
    for _ in 0..200 {
        let p = second_set.sample_point(&mut rng, 8).expect("nonempty");
        if p != zero {
            return fail(format!("X'' contains {p}"));
        }
        let q = random::element_with(&mut rng, 5, 9);
        if in_union(&q, second) != q.is_zero() {
            return fail(format!("X'' membership wrong at {q}"));
        }
    }

    let bumps = SmallSet::from(two_bump_set());
    let probe = LimitProbe::new(&bumps, 8);
    let mut members = vec![zero.clone()];
    members.extend((1..=12).map(GammaElement::basis));
    for g in &members {
        if !probe.test(g) {
            return fail(format!("limit point {g} rejected"));
        }
    }
    let mut rejected = 0;
    while rejected < 50 {
        let g = if rejected % 2 == 0 {
            let a = rng.gen_range(1..6);
            let b = rng.gen_range(a + 1..7);
            &GammaElement::basis(a) + &GammaElement::basis(b)
        } else {
            random::element_with(&mut rng, 6, 9)
        };
        // X' is {0} together with the basis vectors e_m, m >= 1
        if g.is_zero() || g == GammaElement::basis(g.support_len() - 1) {
            continue;
        }
        if probe.test(&g) {
            return fail(format!("non-limit point {g} accepted"));
        }
        rejected += 1;
    }
    ok(format!("d_rank 3, X'' = {{0}}, {} limit points accepted, 50 non-members rejected", members.len()))
}

fn counting_polynomial() -> Outcome {
    let bumps = SmallSet::from(two_bump_set());
    for (k, n) in count_function(&bumps, 1..=12) {
        if 2 * n != k * k - k + 2 {
            return fail(format!("k={k}: {n}"));
        }
    }
    ok("|π_k X| = k²/2 − k/2 + 1 for k = 1..12 (k=5: 11)")
}

fn derived_oracle(instances: &[PsiFunction]) -> Outcome {
    let mut rng = random::rng(44);
    let (mut accepted, mut rejected) = (0, 0);
    for f in instances {
        let x = ImageUnion::single(f.clone());
        let d = derived_set(&x);
        let set = SmallSet::from(x.clone());
        let probe = LimitProbe::new(&set, 8);
        if !d.is_empty() {
            let dset = SmallSet::from(d.clone());
            for _ in 0..5 {
                let g = dset.sample_point(&mut rng, 6).expect("nonempty");
                if !probe.test(&g) {
                    return fail(format!("{g} in derived set of {f} rejected"));
                }
                accepted += 1;
            }
        }
        let mut outside = 0;
        let mut attempts = 0;
        while outside < 10 && attempts < 1000 {
            attempts += 1;
            let g = if rng.gen_bool(0.5) && f.arity() > 0 {
                let mut g = f.eval_levels(&random::levels(&mut rng, f, 6));
                g.add_at(rng.gen_range(0..6), &random::nonzero_rational(&mut rng, 9));
                g
            } else {
                &random::element_with(&mut rng, 5, 9) + f.offset()
            };
            if is_member(&g, f) || in_union(&g, &d) {
                continue;
            }
            if probe.test(&g) {
                return fail(format!("{g} outside X ∪ X' of {f} accepted"));
            }
            outside += 1;
            rejected += 1;
        }
        if outside < 10 {
            return fail(format!("could not sample non-members of {f}"));
        }
    }
    ok(format!("{accepted} derived-set points accepted, {rejected} outside points rejected"))
}

fn membership_completeness(instances: &[PsiFunction]) -> Outcome {
    let mut rng = random::rng(55);
    let mut targets_checked = 0;
    for f in instances {
        let brute = window_values(f, 6);
        let mut targets: Vec<GammaElement> = brute.keys().cloned().collect();
        for _ in 0..5 {
            targets.push(&random::element_with(&mut rng, 5, 9) + f.offset());
        }
        for g in &targets {
            let got: BTreeSet<Vec<u32>> = member(g, f).iter().flat_map(|fam| fam.expand(f, 6)).collect();
            let want = brute.get(g).cloned().unwrap_or_default();
            if got != want {
                return fail(format!("{f} at {g}: solver {} vs brute {}", got.len(), want.len()));
            }
            targets_checked += 1;
        }
    }
    ok(format!("{targets_checked} targets agree with {{1..6}}^I enumeration"))
}

fn rank_bound(instances: &[PsiFunction]) -> Outcome {
    let mut rng = random::rng(66);
    let extra: Vec<PsiFunction> = (0..800).map(|_| random::psi_function(&mut rng, 6, 9)).collect();
    let mut checked = 0;
    for f in instances.iter().chain(&extra).filter(|f| f.arity() >= 1) {
        let r = d_rank(&ImageUnion::single(f.clone()));
        if r > f.arity() {
            return fail(format!("{f}: d_rank {r}"));
        }
        checked += 1;
    }
    ok(format!("{checked} functions with d_rank <= |I|"))
}

fn witness_construction() -> Outcome {
    let mut rng = random::rng(7);
    for _ in 0..100 {
        let eps = random::positive_element(&mut rng);
        let Ok((d0, d1)) = small_diff_witness(&eps) else {
            return fail(format!("no witness for {eps}"));
        };
        let pe = psi_elem(&eps);
        let (e0, e1) = (d0.to_element(), d1.to_element());
        let diff = &e0 - &e1;
        let good = GammaExt::Finite(e0.clone()) >= pe
            && GammaExt::Finite(e1.clone()) >= pe
            && diff.is_positive()
            && psi_elem(&diff) > pe;
        if !good {
            return fail(format!("eps = {eps}: ({e0}, {e1})"));
        }
    }
    ok("100 witnesses verified")
}

fn product_formula() -> Outcome {
    let mut rng = random::rng(8);
    let mut probes = 0;
    for _ in 0..20 {
        let a = random::image_union(&mut rng, 2, 3, 3).closure();
        let c = random::image_union(&mut rng, 2, 3, 3).closure();
        for k in 0..=3 {
            let f = derived_by_formula(&a, &c, k);
            let g = derived_by_iteration(&a, &c, k);
            let mut pts = probe_pairs(&mut rng, &a, &c, &f, 50);
            pts.extend(probe_pairs(&mut rng, &a, &c, &g, 50));
            for (x, y) in &pts {
                if f.contains(x, y) != g.contains(x, y) {
                    return fail(format!("k={k} at ({x}, {y})"));
                }
            }
            probes += pts.len();
        }
    }
    ok(format!("{probes} membership probes agree"))
}

fn dimension_crosschecks() -> Outcome {
    let mut rng = random::rng(9);
    let mut phis: Vec<Phi> = (1..=6).map(Phi::Finite).collect();
    phis.push(Phi::Infinity);
    let reps: Vec<UnaryRep> = (0..300).map(|_| random::unary_rep(&mut rng)).collect();

    let singleton = UnaryRep::single(ThickenedSmall::new(PsiFunction::constant(GammaElement::basis(2)), Phi::Infinity));
    let line = UnaryRep::single(Interval::line());
    for &phi in &phis {
        if UnaryRep::empty().dim(phi) != Dim::NegInf || singleton.dim(phi) != Dim::Finite(0) || line.dim(phi) != Dim::Finite(1) {
            return fail(format!("(D1) fails at {phi}"));
        }
    }
    for (i, a) in reps.iter().enumerate() {
        let b = &reps[(i * 7 + 3) % reps.len()];
        for &phi in &phis {
            let r = sst_crosscheck(a, phi);
            if !r.consistent() {
                return fail(format!("rep #{i} at {phi}: {r}"));
            }
            if a.union(b).dim(phi) != a.dim(phi).max(b.dim(phi)) {
                return fail(format!("(D2) fails for #{i} at {phi}"));
            }
            let prod = NaryRep::product(vec![a.clone(), b.clone()]);
            if prod.dim(phi) != a.dim(phi) + b.dim(phi) || dim_product(&[a.clone(), b.clone()], phi) != prod.dim(phi) {
                return fail(format!("product rule fails for #{i} at {phi}"));
            }
        }
        for w in phis.windows(2) {
            if a.dim(w[0]) > a.dim(w[1]) {
                return fail(format!("monotonicity fails for #{i} between {} and {}", w[0], w[1]));
            }
        }
        if a.dim(Phi::Finite(8)) != a.dim(Phi::Infinity) {
            return fail(format!("rep #{i} not stable by s^80"));
        }
    }
    ok(format!("300 reps x {} values of φ", phis.len()))
}

/// Windowed brute force for a component's image in `Γ/Δ_{s^k0}`.
fn brute_projection(c: &Component, k: usize) -> BTreeSet<logcouple_core::TruncatedVector> {
    let mut out = BTreeSet::new();
    match c {
        Component::Interval(i) => {
            let (Some(lo), Some(w)) = (i.some_point(), i.width()) else { return out };
            for q in [Rational::zero(), Rational::new(1, 3), Rational::new(-2, 5)] {
                out.insert(project(&(&lo + &w.scale(&q)), k));
            }
        }
        Component::Small(s) => {
            for (f, cons) in s.core.components() {
                for (_, assignments) in window_values(f, k as u32 + 3) {
                    for levels in assignments {
                        let n: Vec<i64> = levels.iter().map(|&v| v as i64).collect();
                        if cons.is_none_or(|c| c.holds(&n)) {
                            out.insert(project(&f.eval_levels(&levels), k));
                        }
                    }
                }
            }
        }
    }
    out
}

fn quotient_certificates() -> Outcome {
    let mut rng = random::rng(10);
    let mut certified = 0;
    for i in 0..300 {
        let rep = random::unary_rep(&mut rng);
        for k in 1..=6u32 {
            if rep.dim(Phi::Finite(k)) > Dim::Finite(0) {
                continue;
            }
            let Some(image) = quotient_image(&rep, k) else {
                return fail(format!("rep #{i}: φ-small at s^{k}0 without a finite image"));
            };
            let brute: BTreeSet<_> = rep
                .components()
                .iter()
                .filter(|c| !c.is_empty())
                .flat_map(|c| brute_projection(c, k as usize))
                .collect();
            if brute != image {
                return fail(format!("rep #{i} at s^{k}0: {} vs brute {}", image.len(), brute.len()));
            }
            certified += 1;
        }
    }
    // the shipped example set, directly
    let bumps = SmallSet::from(two_bump_set());
    for k in 1..=6 {
        let c = Component::Small(ThickenedSmall::new(bumps.clone(), Phi::Infinity));
        if brute_projection(&c, k) != project_set(&bumps, k) {
            return fail(format!("two-bump set at k={k}"));
        }
    }
    ok(format!("{certified} φ-small (rep, k) pairs matched by brute force"))
}

fn recovery() -> Outcome {
    let mut rng = random::rng(11);
    for _ in 0..100 {
        let hidden = random::psi_function(&mut rng, 4, 9);
        let m = hidden.arity();
        let evals: Vec<(Vec<u32>, GammaElement)> = standard_probes(m)
            .into_iter()
            .map(|p| {
                let v = hidden.eval_levels(&p);
                (p, v)
            })
            .collect();
        let got = match recover(m, &evals) {
            Ok(g) => g,
            Err(e) => return fail(format!("{hidden}: {e}")),
        };
        if got.coeffs() != hidden.coeffs() || got.offset() != hidden.offset() {
            return fail(format!("{hidden} recovered as {got}"));
        }
        for _ in 0..10 {
            let levels = random::levels(&mut rng, &hidden, 9);
            if got.eval_levels(&levels) != hidden.eval_levels(&levels) {
                return fail(format!("{hidden} differs at {levels:?}"));
            }
        }
    }
    ok("100 hidden functions recovered exactly")
}

/// The first `n` distinct points of `X`, by total staircase length.
fn window(x: &ImageUnion, n: usize) -> Vec<GammaElement> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for total in 0..64u32 {
        for f in x.components() {
            let m = f.arity() as u32;
            if m == 0 {
                if total == 0 && seen.insert(f.offset().clone()) {
                    out.push(f.offset().clone());
                }
                continue;
            }
            for levels in compositions(total, m) {
                let v = f.eval_levels(&levels);
                if seen.insert(v.clone()) {
                    out.push(v);
                }
                if out.len() == n {
                    return out;
                }
            }
        }
        if out.len() >= n {
            break;
        }
    }
    out.truncate(n);
    out
}

/// Tuples of `m` positive integers summing to `total`.
fn compositions(total: u32, m: u32) -> Vec<Vec<u32>> {
    if m == 1 {
        return if total >= 1 { vec![vec![total]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in compositions(total - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn anti_equilateral() -> Outcome {
    let mut rng = random::rng(12);
    let mut growth = Vec::new();
    let mut runs = 0;
    for i in 0..50 {
        let x = random::image_union(&mut rng, 2, 3, 9);
        let small = window(&x, 12);
        let large = window(&x, 24);
        for k in 2..=5 {
            let a = equilateral_max_clique(&small, Phi::Finite(k)).expect("finite φ").len();
            let b = equilateral_max_clique(&large, Phi::Finite(k)).expect("finite φ").len();
            if a != b {
                growth.push(format!("#{i} E_{k}: {a} -> {b}"));
            }
            runs += 1;
        }
    }
    if growth.is_empty() {
        ok(format!("{runs} (union, φ) pairs, no clique growth from N=12 to N=24"))
    } else {
        // reported for investigation; not a rejection
        let shown: Vec<&str> = growth.iter().take(5).map(String::as_str).collect();
        ok(format!(
            "FLAG {} of {runs} pairs grew, e.g. {}",
            growth.len(),
            shown.join(", ")
        ))
    }
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let instances = instances();
    let criteria: Vec<Criterion> = vec![
        ("identity suite", Duration::from_secs(10), Box::new(identity_suite)),
        ("two-bump derived chain", Duration::from_secs(30), Box::new(two_bump_chain)),
        ("counting polynomial", Duration::from_secs(30), Box::new(counting_polynomial)),
        ("derived-set oracle", Duration::from_secs(120), Box::new(|| derived_oracle(&instances))),
        ("membership completeness", Duration::from_secs(60), Box::new(|| membership_completeness(&instances))),
        ("d-rank bound", Duration::from_secs(60), Box::new(|| rank_bound(&instances))),
        ("witness construction", Duration::from_secs(60), Box::new(witness_construction)),
        ("product derived formula", Duration::from_secs(120), Box::new(product_formula)),
        ("dimension crosschecks", Duration::from_secs(120), Box::new(dimension_crosschecks)),
        ("quotient certificates", Duration::from_secs(120), Box::new(quotient_certificates)),
        ("uniqueness and recovery", Duration::from_secs(60), Box::new(recovery)),
        ("anti-equilateral monitoring", Duration::from_secs(120), Box::new(anti_equilateral)),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if took > *budget {
            outcome.pass = false;
            outcome.detail = format!("{} [over budget]", outcome.detail);
        }
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {} ({:.2}s, budget {}s)",
            if outcome.pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
