use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use logcouple_core::couple;
use logcouple_core::definable::sst_crosscheck;
use logcouple_core::equilateral::equilateral_max_clique;
use logcouple_core::identities::run_identities;
use logcouple_core::member::{member, member_constrained};
use logcouple_core::psi_function::{d_rank, derived_set, recover};
use logcouple_core::quotient::{conjectural_fit, count_function, project, project_set};
use logcouple_core::term::parse;
use logcouple_core::{GammaElement, GammaExt, Phi, SmallSet};

use crate::input::{self, Session};

#[derive(Parser, Debug)]
#[command(name = "logcouple", version, about = "Exact computation in the standard model of T_log")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for commands that draw random elements.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

/// Where a small set comes from.
#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    /// Ψ-functions separated by `;`, e.g. "x0-x1+x2-x3".
    #[arg(long, conflicts_with = "rep")]
    pub union: Option<String>,

    /// JSON file (or `@name` in the REPL) holding a set or representation.
    #[arg(long)]
    pub rep: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a term.
    Eval {
        term: String,
        /// Variable binding `name=elem`; repeatable.
        #[arg(long = "env")]
        env: Vec<String>,
    },
    /// ψ of an element.
    Psi { elem: String },
    /// The asymptotic integral.
    Int { elem: String },
    /// The successor `s = ψ∘∫`.
    S { elem: String },
    /// The predecessor on `Ψ`.
    P { elem: String },
    /// Derived set of an image union.
    Dset {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Derived-set rank of an image union.
    Drank {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Solutions of `F(α) = γ`.
    Member {
        elem: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// First `k` coordinates of an element.
    Project {
        elem: String,
        #[arg(long)]
        k: String,
    },
    /// Image of a small set in `Γ/Δ_{s^k0}`.
    ProjectSet {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        k: String,
    },
    /// `k ↦ |π_{s^k0}(X)|` as a table.
    Count {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        k: String,
        /// Append a conjectural polynomial fit of the tail.
        #[arg(long)]
        fit: bool,
    },
    /// `dim_φ` of a representation, one line per φ.
    Dim {
        #[arg(long)]
        rep: String,
        #[arg(long, default_value = "inf")]
        phi: String,
    },
    /// Compare the dimension routes for a unary representation.
    Crosscheck {
        #[arg(long)]
        rep: String,
        #[arg(long, default_value = "s^1,s^2,s^3,s^4,s^5,s^6,inf")]
        phi: String,
    },
    /// The pair `(sψ(ε), ψ(ε))` for `ε > 0`.
    Witness { eps: String },
    /// Largest φ-equilateral subset of the given elements.
    Clique {
        #[arg(long)]
        phi: String,
        #[arg(required = true)]
        elems: Vec<String>,
    },
    /// Recover a Ψ-function from evaluations in a JSON file
    /// `[{"args": [n0, n1, ...], "value": elem}, ...]`.
    Recover { file: String },
    /// Check the basic identities on random elements.
    Identities {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
    /// Interactive session.
    Repl,
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub enum Failure {
    Invalid(anyhow::Error),
    Discrepancy(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

fn text(s: impl Into<String>) -> Output {
    let mut s = s.into();
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    Output { text: s, code: 0 }
}

fn render(cli: &Cli, plain: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> Output {
    if cli.json {
        text(json().to_string())
    } else {
        text(plain())
    }
}

fn load_set(set: &SetArgs, session: &Session) -> Result<SmallSet> {
    match (&set.union, &set.rep) {
        (Some(u), _) => Ok(input::union_text(u)?.into()),
        (None, Some(path)) => input::small_set(input::rep_value(path, session)?),
        (None, None) => bail!("give the set with --union or --rep"),
    }
}

fn unary_op(cli: &Cli, elem: &str, f: fn(&GammaExt) -> GammaExt) -> Result<Output> {
    let v = f(&input::ext(elem)?);
    Ok(render(cli, || v.to_string(), || json!(v)))
}

pub fn run(cli: &Cli, session: &mut Session) -> Result<Output, Failure> {
    Ok(match &cli.command {
        Command::Eval { term, env } => {
            let t = parse(term).with_context(|| format!("cannot parse `{term}`"))?;
            let mut bound = session.env.clone();
            for b in env {
                let (name, value) = input::binding(b)?;
                bound.insert(name, value);
            }
            let v = t.eval(&bound).map_err(anyhow::Error::from)?;
            render(cli, || v.to_string(), || json!(v))
        }
        Command::Psi { elem } => unary_op(cli, elem, couple::psi)?,
        Command::Int { elem } => unary_op(cli, elem, couple::integral)?,
        Command::S { elem } => unary_op(cli, elem, couple::succ)?,
        Command::P { elem } => unary_op(cli, elem, couple::pred)?,
        Command::Dset { set } => {
            let x = load_set(set, session)?;
            let u = x
                .as_union()
                .ok_or_else(|| anyhow!("derived sets are computed for image unions only"))?;
            let d = derived_set(u);
            render(
                cli,
                || {
                    if d.is_empty() {
                        "empty".into()
                    } else {
                        d.components().iter().map(|f| format!("{f}\n")).collect()
                    }
                },
                || json!(d),
            )
        }
        Command::Drank { set } => {
            let x = load_set(set, session)?;
            let u = x
                .as_union()
                .ok_or_else(|| anyhow!("d-rank is computed for image unions only"))?;
            let r = d_rank(u);
            render(cli, || r.to_string(), || json!(r))
        }
        Command::Member { elem, set } => {
            let g = input::element(elem)?;
            member_output(cli, &g, &load_set(set, session)?)
        }
        Command::Project { elem, k } => {
            let k = single_k(k)?;
            let v = project(&input::element(elem)?, k);
            render(cli, || v.to_string(), || json!(v))
        }
        Command::ProjectSet { set, k } => {
            let k = single_k(k)?;
            let pts = project_set(&load_set(set, session)?, k);
            render(
                cli,
                || pts.iter().map(|v| format!("{v}\n")).collect(),
                || json!(pts),
            )
        }
        Command::Count { set, k, fit } => {
            let x = load_set(set, session)?;
            let table = count_function(&x, input::k_range(k)?);
            let fitted = if *fit { conjectural_fit(&table) } else { None };
            render(
                cli,
                || {
                    let mut s = String::from("k\tcount\n");
                    for (k, n) in &table {
                        writeln!(s, "{k}\t{n}").unwrap();
                    }
                    if *fit {
                        match &fitted {
                            Some(p) => writeln!(s, "# {p}, matches last {} rows", p.matched).unwrap(),
                            None => writeln!(s, "# no polynomial of degree <= 4 fits the tail").unwrap(),
                        }
                    }
                    s
                },
                || {
                    let rows: Vec<Value> = table.iter().map(|(k, n)| json!({"k": k, "count": n})).collect();
                    json!({"table": rows, "fit": fitted.as_ref().map(|p| json!({
                        "polynomial": p.to_string(), "coeffs": p.coeffs, "matched": p.matched,
                    }))})
                },
            )
        }
        Command::Dim { rep, phi } => {
            let r = input::nary(input::rep_value(rep, session)?)?;
            let phis = input::phi_list(phi)?;
            let dims: Vec<(Phi, String)> = phis.iter().map(|&p| (p, r.dim(p).to_string())).collect();
            render(
                cli,
                || dims.iter().map(|(p, d)| format!("{p}\t{d}\n")).collect(),
                || json!(dims.iter().map(|(p, d)| json!({"phi": p, "dim": d})).collect::<Vec<_>>()),
            )
        }
        Command::Crosscheck { rep, phi } => {
            let r = input::nary(input::rep_value(rep, session)?)?;
            let unary = r.as_unary().ok_or_else(|| anyhow!("crosscheck needs a unary representation"))?;
            let reports: Vec<_> = input::phi_list(phi)?
                .into_iter()
                .map(|p| sst_crosscheck(&unary, p))
                .collect();
            let bad = reports.iter().any(|r| !r.consistent());
            let mut out = render(
                cli,
                || reports.iter().map(|r| format!("{r}\n")).collect(),
                || json!(reports),
            );
            if bad {
                out.code = 2;
            }
            out
        }
        Command::Witness { eps } => {
            let e = input::element(eps)?;
            let (d0, d1) = couple::small_diff_witness(&e).map_err(anyhow::Error::from)?;
            let (a, b) = (d0.to_element(), d1.to_element());
            render(cli, || format!("{a}\n{b}"), || json!([a, b]))
        }
        Command::Clique { phi, elems } => {
            let phi: Phi = phi.parse().with_context(|| format!("bad φ `{phi}`"))?;
            let sample = elems.iter().map(|e| input::element(e)).collect::<Result<Vec<_>>>()?;
            let c = equilateral_max_clique(&sample, phi).map_err(anyhow::Error::from)?;
            render(
                cli,
                || {
                    let mut s = format!("{}\n", c.len());
                    for g in &c {
                        writeln!(s, "{g}").unwrap();
                    }
                    s
                },
                || json!({"size": c.len(), "members": c}),
            )
        }
        Command::Recover { file } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {file}"))?;
            let raw: Vec<Value> = serde_json::from_str(&text).with_context(|| format!("{file} is not a JSON array"))?;
            let evals = raw.iter().map(evaluation).collect::<Result<Vec<_>>>()?;
            let arity = evals.first().map_or(0, |(a, _)| a.len());
            if evals.iter().any(|(a, _)| a.len() != arity) {
                return Err(anyhow!("evaluations disagree on arity").into());
            }
            let f = recover(arity, &evals).map_err(anyhow::Error::from)?;
            render(cli, || f.to_string(), || json!(f))
        }
        Command::Identities { n } => {
            let r = run_identities(*n, cli.seed);
            if !r.passed() {
                return Err(Failure::Discrepancy(r.to_string()));
            }
            render(cli, || r.to_string(), || json!(r))
        }
        Command::Repl => {
            crate::repl::run(cli.json, session).map_err(Failure::Invalid)?;
            text("")
        }
    })
}

fn single_k(k: &str) -> Result<usize> {
    let r = input::k_range(k)?;
    if r.start() != r.end() {
        bail!("expected a single k, got `{k}`");
    }
    Ok(*r.start())
}

/// `{"args": [...], "value": elem}`; arguments are staircase lengths or
/// elements of `Ψ`.
fn evaluation(v: &Value) -> Result<(Vec<u32>, GammaElement)> {
    let args = v
        .get("args")
        .and_then(Value::as_array)
        .ok_or_else(|| anyhow!("evaluation without an `args` array"))?
        .iter()
        .map(|a| match a {
            Value::Number(n) => n
                .as_u64()
                .filter(|&n| n >= 1)
                .map(|n| n as u32)
                .ok_or_else(|| anyhow!("staircase length must be a positive integer")),
            Value::String(s) => input::element(s)?
                .as_staircase()
                .map(|n| n as u32)
                .ok_or_else(|| anyhow!("`{s}` is not in Ψ")),
            _ => Err(anyhow!("bad argument {a}")),
        })
        .collect::<Result<Vec<_>>>()?;
    let value = v
        .get("value")
        .and_then(Value::as_str)
        .ok_or_else(|| anyhow!("evaluation without a `value`"))?;
    Ok((args, input::element(value)?))
}

fn member_output(cli: &Cli, g: &GammaElement, x: &SmallSet) -> Output {
    match x {
        SmallSet::Constrained(c) => {
            let w = member_constrained(g, c);
            render(
                cli,
                || match &w {
                    Some(levels) => format!("member\t{}", assignment(c.base.vars(), levels)),
                    None => "not a member".into(),
                },
                || json!({"member": w.is_some(), "witness": w}),
            )
        }
        SmallSet::Union(u) => {
            let mut lines = String::new();
            let mut found = Vec::new();
            for (idx, f) in u.components().iter().enumerate() {
                for fam in member(g, f) {
                    let w = fam.witness(f.arity());
                    let tail: Vec<&str> = fam.tail.iter().map(|&i| f.vars()[i].as_str()).collect();
                    let flag = if fam.is_parametric() { "parametric" } else { "exact" };
                    writeln!(lines, "{idx}\t{flag}\t{}", assignment(f.vars(), &w)).unwrap();
                    found.push(json!({
                        "component": idx,
                        "witness": w,
                        "parametric": fam.is_parametric(),
                        "tail": tail,
                        "support": fam.support,
                    }));
                }
            }
            render(
                cli,
                || if found.is_empty() { "not a member".into() } else { lines },
                || json!({"member": !found.is_empty(), "families": found}),
            )
        }
    }
}

fn assignment(vars: &[String], levels: &[u32]) -> String {
    vars.iter()
        .zip(levels)
        .map(|(v, n)| format!("{v}=E_{n}"))
        .collect::<Vec<_>>()
        .join(" ")
}
