//! A semi-decision oracle for limit points: `γ` passes at depth `K` when, for
//! every `k <= K`, some point of `X ∖ {γ}` shares its first `k` coordinates.
//!
//! Each depth is decided exactly. Points sharing a capped profile share their
//! truncation, so only matching profiles are inspected. Within a profile, the
//! capped indices are refined to exact lengths up to `M` (the larger of `k`
//! and the support of `γ − β`) or to an ordered grouping beyond `M`; on each
//! refined cell `F` is either constantly `γ` or never `γ`, so one witness per
//! cell settles the question.

use crate::constraints::{solve_atoms, Atom, DifferenceConstraints};
use crate::element::GammaElement;
use crate::member::{permutations, set_partitions};
use crate::psi_function::PsiFunction;
use crate::quotient::{feasible_profiles, profile_atoms, profile_truncation, TruncatedVector};
use crate::small_set::SmallSet;

struct Component<'a> {
    f: &'a PsiFunction,
    constraints: Option<&'a DifferenceConstraints>,
    /// `tables[k - 1]` lists the feasible capped profiles at depth `k`.
    tables: Vec<Vec<(Vec<u32>, TruncatedVector)>>,
}

/// Profile tables for a set, reusable across many probed points.
pub struct LimitProbe<'a> {
    components: Vec<Component<'a>>,
    depth: usize,
}

impl<'a> LimitProbe<'a> {
    pub fn new(x: &'a SmallSet, depth: usize) -> Self {
        assert!(depth >= 1, "probe depth must be positive");
        let components = x
            .components()
            .into_iter()
            .map(|(f, constraints)| Component {
                f,
                constraints,
                tables: (1..=depth as u32)
                    .map(|k| {
                        feasible_profiles(f, constraints, k)
                            .into_iter()
                            .map(|p| {
                                let t = profile_truncation(f, &p, k as usize);
                                (p, t)
                            })
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        LimitProbe { components, depth }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Whether `γ` passes at every depth up to the table depth.
    pub fn test(&self, gamma: &GammaElement) -> bool {
        (1..=self.depth).all(|k| self.passes_at(gamma, k))
    }

    /// Whether some point of `X ∖ {γ}` agrees with `γ` on `k` coordinates.
    pub fn passes_at(&self, gamma: &GammaElement, k: usize) -> bool {
        let target = TruncatedVector(gamma.truncate(k));
        self.components.iter().any(|c| {
            c.tables[k - 1]
                .iter()
                .filter(|(_, t)| *t == target)
                .any(|(p, _)| other_point_in_profile(c.f, c.constraints, p, k as u32, gamma))
        })
    }
}

/// One-shot form of [`LimitProbe`].
pub fn limit_point_probe(gamma: &GammaElement, x: &SmallSet, depth: usize) -> bool {
    LimitProbe::new(x, depth).test(gamma)
}

fn other_point_in_profile(
    f: &PsiFunction,
    constraints: Option<&DifferenceConstraints>,
    profile: &[u32],
    k: u32,
    gamma: &GammaElement,
) -> bool {
    let extra = constraints.map_or(&[][..], |c| &c.atoms[..]);
    let base = profile_atoms(profile, k);
    let capped: Vec<usize> = (0..profile.len()).filter(|&i| profile[i] == k).collect();
    let m = k.max((gamma - f.offset()).support_len() as u32);
    let arity = f.arity();
    // every capped index gets an exact length in k..=m or goes beyond m
    let choices = (m - k + 2) as u64;
    for code in 0..choices.pow(capped.len() as u32) {
        let mut c = code;
        let mut atoms = base.clone();
        let mut far = Vec::new();
        for &i in &capped {
            let v = (c % choices) as u32;
            c /= choices;
            if k + v <= m {
                atoms.extend(Atom::eq_const(i, (k + v) as i64));
            } else {
                far.push(i);
            }
        }
        for partition in set_partitions(&far) {
            for order in permutations(partition.len()) {
                let mut cell = atoms.clone();
                if let Some(&first) = order.first() {
                    cell.push(Atom::Ge {
                        i: partition[first][0],
                        c: m as i64 + 1,
                    });
                }
                for block in &partition {
                    for w in block.windows(2) {
                        cell.push(Atom::DiffEq { i: w[0], j: w[1], c: 0 });
                    }
                }
                for w in order.windows(2) {
                    cell.push(Atom::DiffLe {
                        i: partition[w[0]][0],
                        j: partition[w[1]][0],
                        c: -1,
                    });
                }
                if let Some(sol) = solve_atoms(arity, extra.iter().chain(&cell)) {
                    let levels: Vec<u32> = sol.iter().map(|&n| n as u32).collect();
                    if &f.eval_levels(&levels) != gamma {
                        return true;
                    }
                }
            }
        }
    }
    false
}
