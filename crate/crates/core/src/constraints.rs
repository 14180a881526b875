//! Conjunctions of difference constraints over positive integer index
//! variables `n_0, n_1, ...`, decided by negative-cycle detection.

use serde::{Deserialize, Serialize};

/// One atom. Variables are positions in the owning Ψ-function's index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Atom {
    /// `n_i - n_j <= c`
    DiffLe { i: usize, j: usize, c: i64 },
    /// `n_i - n_j = c`
    DiffEq { i: usize, j: usize, c: i64 },
    /// `n_i >= c`
    Ge { i: usize, c: i64 },
    /// `n_i <= c`
    Le { i: usize, c: i64 },
}

impl Atom {
    pub fn eq_const(i: usize, c: i64) -> [Atom; 2] {
        [Atom::Ge { i, c }, Atom::Le { i, c }]
    }

    pub fn holds(&self, n: &[i64]) -> bool {
        match *self {
            Atom::DiffLe { i, j, c } => n[i] - n[j] <= c,
            Atom::DiffEq { i, j, c } => n[i] - n[j] == c,
            Atom::Ge { i, c } => n[i] >= c,
            Atom::Le { i, c } => n[i] <= c,
        }
    }

    fn max_var(&self) -> usize {
        match *self {
            Atom::DiffLe { i, j, .. } | Atom::DiffEq { i, j, .. } => i.max(j),
            Atom::Ge { i, .. } | Atom::Le { i, .. } => i,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DifferenceConstraints {
    pub atoms: Vec<Atom>,
}

impl DifferenceConstraints {
    pub fn new(atoms: Vec<Atom>) -> Self {
        DifferenceConstraints { atoms }
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Largest variable index mentioned, plus one.
    pub fn var_bound(&self) -> usize {
        self.atoms.iter().map(|a| a.max_var() + 1).max().unwrap_or(0)
    }

    pub fn holds(&self, n: &[i64]) -> bool {
        n.iter().all(|&x| x >= 1) && self.atoms.iter().all(|a| a.holds(n))
    }

    /// A solution in positive integers of these atoms together with `extra`,
    /// or `None` when the system is unsatisfiable.
    pub fn solve(&self, num_vars: usize, extra: &[Atom]) -> Option<Vec<i64>> {
        solve_atoms(num_vars, self.atoms.iter().chain(extra))
    }

    pub fn is_satisfiable(&self, num_vars: usize) -> bool {
        self.solve(num_vars, &[]).is_some()
    }
}

/// Bellman-Ford over the constraint graph with an extra zero node; an edge
/// `u -> v` of weight `w` encodes `x_v - x_u <= w`. Every variable carries the
/// implicit bound `n_i >= 1`.
pub fn solve_atoms<'a, I>(num_vars: usize, atoms: I) -> Option<Vec<i64>>
where
    I: IntoIterator<Item = &'a Atom>,
{
    let zero = num_vars;
    let mut edges: Vec<(usize, usize, i64)> = (0..num_vars).map(|i| (i, zero, -1)).collect();
    for atom in atoms {
        match *atom {
            Atom::DiffLe { i, j, c } => edges.push((j, i, c)),
            Atom::DiffEq { i, j, c } => {
                edges.push((j, i, c));
                edges.push((i, j, -c));
            }
            Atom::Ge { i, c } => edges.push((i, zero, -c)),
            Atom::Le { i, c } => edges.push((zero, i, c)),
        }
    }
    let nodes = num_vars + 1;
    let mut dist = vec![0i64; nodes];
    for round in 0..=nodes {
        let mut changed = false;
        for &(u, v, w) in &edges {
            if dist[u] + w < dist[v] {
                dist[v] = dist[u] + w;
                changed = true;
            }
        }
        if !changed {
            let base = dist[zero];
            return Some(dist[..num_vars].iter().map(|d| d - base).collect());
        }
        if round == nodes {
            break;
        }
    }
    None
}
