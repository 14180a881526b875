//! Derived sets of products `A × C` of unary image unions, computed two ways:
//! by the closed-set formula `(A×C)^{(k)} = ⋃_{m+n=k} A^{(m)} × C^{(n)}` and
//! by iterating the product-topology rule
//! `(P×Q)' = (P' × cl Q) ∪ (cl P × Q')`.

use rand::Rng;

use crate::element::GammaElement;
use crate::member::is_member;
use crate::psi_function::{derived_chain, derived_set, ImageUnion};
use crate::rational::Rational;
use crate::small_set::SmallSet;

/// A finite union of rectangles `P × Q`.
#[derive(Clone, Debug, Default)]
pub struct RectUnion(pub Vec<(ImageUnion, ImageUnion)>);

impl RectUnion {
    pub fn contains(&self, x: &GammaElement, y: &GammaElement) -> bool {
        self.0.iter().any(|(p, q)| in_union(x, p) && in_union(y, q))
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|(p, q)| p.is_empty() || q.is_empty())
    }

    fn pruned(self) -> RectUnion {
        RectUnion(
            self.0
                .into_iter()
                .filter(|(p, q)| !p.is_empty() && !q.is_empty())
                .collect(),
        )
    }
}

fn in_union(x: &GammaElement, u: &ImageUnion) -> bool {
    u.components().iter().any(|f| is_member(x, f))
}

fn nth_derived(chain: &[ImageUnion], n: usize) -> ImageUnion {
    chain.get(n).cloned().unwrap_or_default()
}

/// `⋃_{m+n=k} A^{(m)} × C^{(n)}`; valid when `A` and `C` are closed.
pub fn derived_by_formula(a: &ImageUnion, c: &ImageUnion, k: usize) -> RectUnion {
    let ca = derived_chain(a);
    let cc = derived_chain(c);
    RectUnion((0..=k).map(|m| (nth_derived(&ca, m), nth_derived(&cc, k - m))).collect()).pruned()
}

/// `k` applications of the rectangle rule to `A × C`.
pub fn derived_by_iteration(a: &ImageUnion, c: &ImageUnion, k: usize) -> RectUnion {
    let mut current = RectUnion(vec![(a.clone(), c.clone())]);
    for _ in 0..k {
        let mut next = Vec::new();
        for (p, q) in current.0 {
            let dp = derived_set(&p);
            let dq = derived_set(&q);
            next.push((dp.clone(), q.union(&dq)));
            next.push((p.union(&dp), dq));
        }
        current = RectUnion(next).pruned();
    }
    current
}

/// Probe pairs: points of the rectangles of `r`, of `A × C`, and
/// perturbations of them.
pub fn probe_pairs<R: Rng>(
    rng: &mut R,
    a: &ImageUnion,
    c: &ImageUnion,
    r: &RectUnion,
    count: usize,
) -> Vec<(GammaElement, GammaElement)> {
    let mut out = Vec::with_capacity(count);
    let full = (a.clone(), c.clone());
    while out.len() < count {
        let (p, q) = if !r.0.is_empty() && rng.gen_bool(0.6) {
            &r.0[rng.gen_range(0..r.0.len())]
        } else {
            &full
        };
        let (Some(mut x), Some(mut y)) = (
            SmallSet::from(p.clone()).sample_point(rng, 7),
            SmallSet::from(q.clone()).sample_point(rng, 7),
        ) else {
            break;
        };
        if rng.gen_bool(0.2) {
            x.add_at(rng.gen_range(0..6), &Rational::new(1, 2));
        }
        if rng.gen_bool(0.2) {
            y.add_at(rng.gen_range(0..6), &Rational::new(-1, 3));
        }
        out.push((x, y));
    }
    out
}
