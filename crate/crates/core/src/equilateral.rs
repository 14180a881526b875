//! Maximum φ-equilateral subsets: all pairwise differences have `ψ = φ`.

use crate::couple::psi_elem;
use crate::element::{GammaElement, GammaExt};
use crate::error::{Error, Result};
use crate::quotient::Phi;

/// Largest subset of `sample` whose pairwise differences all have `ψ = φ`,
/// by exhaustive clique search. Ties go to the lexicographically first set of
/// sample positions.
pub fn equilateral_max_clique(sample: &[GammaElement], phi: Phi) -> Result<Vec<GammaElement>> {
    let target = GammaExt::Finite(
        phi.to_element()
            .ok_or_else(|| Error::Invalid("equilateral cliques need a finite φ".into()))?,
    );
    let n = sample.len();
    if n > 64 {
        return Err(Error::Invalid(format!("sample of {n} points is too large")));
    }
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if sample[i] == sample[j] {
                return Err(Error::Invalid(format!("repeated sample point {}", sample[i])));
            }
            if psi_elem(&(&sample[i] - &sample[j])) == target {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let mut best = 0u64;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    grow(&adj, 0, all, &mut best);
    Ok((0..n)
        .filter(|&i| best & (1 << i) != 0)
        .map(|i| sample[i].clone())
        .collect())
}

/// Branch and bound over candidates in index order.
fn grow(adj: &[u64], clique: u64, candidates: u64, best: &mut u64) {
    if candidates == 0 {
        if clique.count_ones() > best.count_ones() {
            *best = clique;
        }
        return;
    }
    if clique.count_ones() + candidates.count_ones() <= best.count_ones() {
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    let bit = 1u64 << v;
    grow(adj, clique | bit, candidates & adj[v], best);
    grow(adj, clique, candidates & !bit, best);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> GammaElement {
        s.parse().unwrap()
    }

    /// Brute force over all subsets.
    fn oracle(sample: &[GammaElement], phi: Phi) -> usize {
        let t = GammaExt::Finite(phi.to_element().unwrap());
        let n = sample.len();
        (0u32..1 << n)
            .filter(|m| {
                (0..n).all(|i| {
                    (i + 1..n).all(|j| {
                        m & (1 << i) == 0 || m & (1 << j) == 0 || psi_elem(&(&sample[i] - &sample[j])) == t
                    })
                })
            })
            .map(u32::count_ones)
            .max()
            .unwrap_or(0) as usize
    }

    #[test]
    fn examples() {
        let s = vec![el("[0, 1, 1]"), el("[0, 1, 0, 1]"), el("[0, 1, 0, 0, 1]")];
        assert_eq!(equilateral_max_clique(&s, Phi::Finite(3)).unwrap().len(), 2);
        let s = vec![GammaElement::ones(1), GammaElement::ones(2), GammaElement::ones(3)];
        let c = equilateral_max_clique(&s, Phi::Finite(2)).unwrap();
        assert_eq!(c, vec![GammaElement::ones(1), GammaElement::ones(2)]);
        assert_eq!(equilateral_max_clique(&[el("[5]")], Phi::Finite(1)).unwrap().len(), 1);
        assert!(equilateral_max_clique(&s, Phi::Infinity).is_err());
        assert!(equilateral_max_clique(&[el("[1]"), el("[1]")], Phi::Finite(1)).is_err());
    }

    #[test]
    fn agrees_with_subset_search() {
        let mut r = crate::random::rng(11);
        for _ in 0..40 {
            let mut s: Vec<GammaElement> = (0..10)
                .map(|_| crate::random::element_with(&mut r, 4, 2))
                .collect();
            s.sort();
            s.dedup();
            for k in 1..=4 {
                let got = equilateral_max_clique(&s, Phi::Finite(k)).unwrap();
                assert_eq!(got.len(), oracle(&s, Phi::Finite(k)));
            }
        }
    }
}
