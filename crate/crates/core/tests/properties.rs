use std::collections::BTreeSet;

use proptest::prelude::*;

use logcouple_core::couple;
use logcouple_core::member::is_member;
use logcouple_core::psi_function::{d_rank, derived_set};
use logcouple_core::quotient::{in_delta, project};
use logcouple_core::term::{parse, Env, Term};
use logcouple_core::{GammaElement, GammaExt, ImageUnion, Phi, PsiFunction, Rational, SmallSet};

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn elem() -> impl Strategy<Value = GammaElement> {
    prop_oneof![
        proptest::collection::vec(rat(), 0..6).prop_map(GammaElement::from_dense),
        (1usize..6, proptest::collection::vec(rat(), 0..3)).prop_map(|(run, tail)| {
            let mut v = vec![Rational::one(); run];
            v.extend(tail);
            GammaElement::from_dense(v)
        }),
    ]
}

fn ext() -> impl Strategy<Value = GammaExt> {
    prop_oneof![9 => elem().prop_map(GammaExt::Finite), 1 => Just(GammaExt::Infinity)]
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        ext().prop_map(Term::Const),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            inner.clone().prop_map(Term::neg),
            (1u32..5, inner.clone()).prop_map(|(n, a)| Term::delta(n, a)),
            inner.clone().prop_map(Term::psi),
            inner.clone().prop_map(Term::succ),
            inner.clone().prop_map(Term::pred),
            inner.prop_map(Term::integ),
        ]
    })
}

fn env() -> impl Strategy<Value = Env> {
    (ext(), ext(), ext()).prop_map(|(x, y, z)| {
        [("x", x), ("y", y), ("z", z)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    })
}

fn psi_fn() -> impl Strategy<Value = PsiFunction> {
    (
        proptest::collection::vec(prop_oneof![-2i64..=-1, 1i64..=2], 0..4),
        proptest::collection::vec(-2i64..=2, 0..3),
    )
        .prop_map(|(q, off)| PsiFunction::from_ints(&q, GammaElement::from_ints(&off)))
}

proptest! {
    #[test]
    fn print_parse_round_trip(t in term()) {
        let printed = t.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), t, "{}", printed);
    }

    #[test]
    fn integral_identity_on_terms(t in term(), env in env()) {
        let lhs = Term::integ(t.clone()).eval(&env).unwrap();
        let rhs = Term::sub(t.clone(), Term::succ(t)).eval(&env).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluator_matches_primitives(a in ext(), b in ext(), n in 1u32..7) {
        let env: Env = [("a".to_string(), a.clone()), ("b".to_string(), b.clone())].into();
        let ev = |s: &str| parse(s).unwrap().eval(&env).unwrap();
        prop_assert_eq!(ev("a + b"), couple::add(&a, &b));
        prop_assert_eq!(ev("-a"), couple::neg(&a));
        prop_assert_eq!(ev(&format!("d{n}(a)")), couple::delta(n, &a));
        prop_assert_eq!(ev("psi(a)"), couple::psi(&a));
        prop_assert_eq!(ev("s(a)"), couple::succ(&a));
        prop_assert_eq!(ev("p(a)"), couple::pred(&a));
        prop_assert_eq!(ev("int(a)"), couple::integral(&a));
    }

    #[test]
    fn element_syntax_round_trips(g in ext()) {
        prop_assert_eq!(g.to_string().parse::<GammaExt>().unwrap(), g);
    }

    #[test]
    fn projection_is_an_ordered_homomorphism(a in elem(), b in elem(), k in 1usize..7) {
        let pa = project(&a, k);
        let pb = project(&b, k);
        let sum: Vec<Rational> = pa.0.iter().zip(&pb.0).map(|(x, y)| x + y).collect();
        prop_assert_eq!(project(&(&a + &b), k).0, sum);
        if a < b && pa != pb {
            prop_assert!(pa < pb);
        }
        prop_assert_eq!(in_delta(&a, Phi::Finite(k as u32)), pa.is_zero());
    }

    #[test]
    fn delta_is_the_psi_cut(a in elem(), k in 1u32..7) {
        let phi = GammaExt::Finite(GammaElement::ones(k as usize));
        prop_assert_eq!(in_delta(&a, Phi::Finite(k)), couple::psi_elem(&a) > phi);
    }

    #[test]
    fn d_rank_of_union_is_the_max(f in psi_fn(), g in psi_fn()) {
        let u = ImageUnion::new(vec![f.clone(), g.clone()]);
        let rf = d_rank(&ImageUnion::single(f.clone()));
        let rg = d_rank(&ImageUnion::single(g.clone()));
        prop_assert_eq!(d_rank(&u), rf.max(rg));
        prop_assert!(d_rank(&u) <= 1 + f.arity().max(g.arity()));
    }

    #[test]
    fn derived_of_closure_within_closure_of_derived(f in psi_fn(), seed in 0u64..1000) {
        let x = ImageUnion::single(f);
        let lhs = derived_set(&x.closure());
        let rhs = derived_set(&x).closure();
        let lhs_set = SmallSet::from(lhs);
        let mut rng = logcouple_core::random::rng(seed);
        for _ in 0..10 {
            if let Some(p) = lhs_set.sample_point(&mut rng, 6) {
                prop_assert!(rhs.components().iter().any(|c| is_member(&p, c)), "{}", p);
            }
        }
    }
}

#[test]
fn term_evaluation_examples() {
    let env: Env = [("x".to_string(), "[]".parse().unwrap())].into();
    assert_eq!(parse("psi(int(x))").unwrap().eval(&env).unwrap().to_string(), "[1]");
    let env: Env = [("x".to_string(), "[1, 1]".parse().unwrap())].into();
    assert_eq!(parse("x - s(x)").unwrap().eval(&env).unwrap().to_string(), "[0, 0, -1]");
    let env: Env = [("x".to_string(), "[2]".parse().unwrap())].into();
    assert_eq!(parse("p(x)").unwrap().eval(&env).unwrap(), GammaExt::Infinity);
}

#[test]
fn psi_quotient_is_injective_below_the_successor() {
    // distinct E_n with n <= k stay distinct modulo Δ_{s^k0}
    for k in 1..8 {
        let images: BTreeSet<_> = (1..=k).map(|n| project(&GammaElement::ones(n), k)).collect();
        assert_eq!(images.len(), k);
    }
}
