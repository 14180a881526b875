//! Membership in images of Ψ-functions by the staircase solver.
//!
//! `Σ q_i E_{n_i}` has coordinate `c` equal to `Σ_{n_i > c} q_i`, so for
//! `δ = γ − β` with support length `N` the indices at staircase length `L`
//! (`1 <= L <= N`) must sum to the jump `δ_{L-1} − δ_L`. Indices beyond the
//! support form a zero-sum tail, which can be pushed arbitrarily far out; such
//! solutions are reported as one parametric family.

use std::collections::BTreeMap;

use crate::constraints::{solve_atoms, Atom};
use crate::element::GammaElement;
use crate::psi_function::PsiFunction;
use crate::rational::Rational;
use crate::small_set::{ConstrainedImage, SmallSet};

/// A family of solutions of `F(α) = γ`.
///
/// Positions in `fixed` have the given staircase length (at most `support`).
/// Positions in `tail` have lengths `> support`, and any grouping of them into
/// zero-sum blocks at distinct lengths is a solution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MemberFamily {
    pub fixed: BTreeMap<usize, u32>,
    pub tail: Vec<usize>,
    pub support: u32,
}

impl MemberFamily {
    pub fn is_parametric(&self) -> bool {
        !self.tail.is_empty()
    }

    /// Canonical witness: every tail position at length `support + 1`.
    pub fn witness(&self, arity: usize) -> Vec<u32> {
        let mut out = vec![self.support + 1; arity];
        for (&i, &n) in &self.fixed {
            out[i] = n;
        }
        out
    }

    /// All concrete solutions in this family with every length `<= bound`.
    pub fn expand(&self, f: &PsiFunction, bound: u32) -> Vec<Vec<u32>> {
        if self.fixed.values().any(|&n| n > bound) {
            return Vec::new();
        }
        let base = self.witness(f.arity());
        if self.tail.is_empty() {
            return vec![base];
        }
        if bound <= self.support {
            return Vec::new();
        }
        let choices = bound - self.support;
        let mut out = Vec::new();
        let mut current = base;
        let total = (choices as u64).pow(self.tail.len() as u32);
        for code in 0..total {
            let mut c = code;
            for &t in &self.tail {
                current[t] = self.support + 1 + (c % choices as u64) as u32;
                c /= choices as u64;
            }
            let mut sums: BTreeMap<u32, Rational> = BTreeMap::new();
            for &t in &self.tail {
                *sums.entry(current[t]).or_default() += &f.coeffs()[t];
            }
            if sums.values().all(Rational::is_zero) {
                out.push(current.clone());
            }
        }
        out
    }
}

/// All solution families of `F(α) = γ`. Empty means `γ ∉ image(F)`.
/// Families are pairwise disjoint.
pub fn member(gamma: &GammaElement, f: &PsiFunction) -> Vec<MemberFamily> {
    let delta = gamma - f.offset();
    let support = delta.support_len();
    let jumps: Vec<Rational> = (1..=support)
        .map(|l| delta.coord(l - 1) - delta.coord(l))
        .collect();
    let mut out = Vec::new();
    let mut assigned = vec![0u32; f.arity()];
    assign_levels(f.coeffs(), &jumps, 0, &mut assigned, &mut out);
    out.into_iter()
        .map(|assignment| {
            let mut fixed = BTreeMap::new();
            let mut tail = Vec::new();
            for (i, &lvl) in assignment.iter().enumerate() {
                if lvl == 0 {
                    tail.push(i);
                } else {
                    fixed.insert(i, lvl);
                }
            }
            MemberFamily {
                fixed,
                tail,
                support: support as u32,
            }
        })
        .collect()
}

/// Chooses, for each level in turn, a subset of the unassigned positions
/// whose coefficients sum to that level's jump. Unassigned positions at the
/// end form the tail (marked `0`) and must sum to zero.
fn assign_levels(
    coeffs: &[Rational],
    jumps: &[Rational],
    level: usize,
    assigned: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let free: Vec<usize> = (0..coeffs.len()).filter(|&i| assigned[i] == 0).collect();
    if level == jumps.len() {
        let tail_sum: Rational = free.iter().map(|&i| &coeffs[i]).sum();
        if tail_sum.is_zero() {
            out.push(assigned.clone());
        }
        return;
    }
    let target = &jumps[level];
    for mask in 0u64..(1u64 << free.len()) {
        let sum: Rational = free
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &i)| &coeffs[i])
            .sum();
        if &sum != target {
            continue;
        }
        for (b, &i) in free.iter().enumerate() {
            if mask & (1 << b) != 0 {
                assigned[i] = level as u32 + 1;
            }
        }
        assign_levels(coeffs, jumps, level + 1, assigned, out);
        for (b, &i) in free.iter().enumerate() {
            if mask & (1 << b) != 0 {
                assigned[i] = 0;
            }
        }
    }
}

/// Whether `γ ∈ image(F)`.
pub fn is_member(gamma: &GammaElement, f: &PsiFunction) -> bool {
    !member(gamma, f).is_empty()
}

/// Whether `γ` lies in some component of the small set.
pub fn in_small_set(gamma: &GammaElement, set: &SmallSet) -> bool {
    match set {
        SmallSet::Union(u) => u.components().iter().any(|f| is_member(gamma, f)),
        SmallSet::Constrained(c) => member_constrained(gamma, c).is_some(),
    }
}

/// A constrained solution of `F(α) = γ`, if one exists.
///
/// Each family's tail is split into zero-sum blocks; each ordering of the
/// blocks becomes a chain of strict difference constraints above the support,
/// and the whole system is decided by negative-cycle detection.
pub fn member_constrained(gamma: &GammaElement, c: &ConstrainedImage) -> Option<Vec<u32>> {
    let f = &c.base;
    for family in member(gamma, f) {
        let mut atoms: Vec<Atom> = family
            .fixed
            .iter()
            .flat_map(|(&i, &n)| Atom::eq_const(i, n as i64))
            .collect();
        if family.tail.is_empty() {
            if let Some(sol) = c.constraints.solve(f.arity(), &atoms) {
                return Some(to_levels(&sol));
            }
            continue;
        }
        for partition in zero_sum_partitions(&family.tail, f.coeffs()) {
            for order in permutations(partition.len()) {
                let base_len = atoms.len();
                let first = &partition[order[0]];
                atoms.push(Atom::Ge {
                    i: first[0],
                    c: family.support as i64 + 1,
                });
                for block in &partition {
                    for w in block.windows(2) {
                        atoms.push(Atom::DiffEq { i: w[0], j: w[1], c: 0 });
                    }
                }
                for w in order.windows(2) {
                    let lo = partition[w[0]][0];
                    let hi = partition[w[1]][0];
                    atoms.push(Atom::DiffLe { i: lo, j: hi, c: -1 });
                }
                let solved = solve_atoms(f.arity(), c.constraints.atoms.iter().chain(&atoms));
                atoms.truncate(base_len);
                if let Some(sol) = solved {
                    return Some(to_levels(&sol));
                }
            }
        }
    }
    None
}

fn to_levels(sol: &[i64]) -> Vec<u32> {
    sol.iter().map(|&n| n as u32).collect()
}

/// Set partitions of `items` into blocks whose coefficients sum to zero.
pub(crate) fn zero_sum_partitions(items: &[usize], coeffs: &[Rational]) -> Vec<Vec<Vec<usize>>> {
    set_partitions(items)
        .into_iter()
        .filter(|p| {
            p.iter()
                .all(|block| block.iter().map(|&i| &coeffs[i]).sum::<Rational>().is_zero())
        })
        .collect()
}

pub(crate) fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for b in 0..p.len() {
            let mut q = p.clone();
            q[b].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
