use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use logcouple_core::definable::{Component, NaryRep, ThickenedSmall, UnaryRep};
use logcouple_core::psi_function::parse_linear;
use logcouple_core::term::Env;
use logcouple_core::{GammaElement, GammaExt, ImageUnion, Phi, SmallSet};

/// Named elements and representations kept between REPL lines.
#[derive(Default, Debug)]
pub struct Session {
    pub env: Env,
    pub reps: BTreeMap<String, Value>,
}

pub fn element(text: &str) -> Result<GammaElement> {
    text.parse().with_context(|| format!("bad element `{text}`"))
}

pub fn ext(text: &str) -> Result<GammaExt> {
    text.parse().with_context(|| format!("bad element `{text}`"))
}

/// `name=elem`
pub fn binding(text: &str) -> Result<(String, GammaExt)> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| anyhow!("expected name=elem, got `{text}`"))?;
    Ok((name.trim().to_string(), ext(value)?))
}

/// `a..b` or a single `k`.
pub fn k_range(text: &str) -> Result<RangeInclusive<usize>> {
    let parse = |s: &str| -> Result<usize> {
        let k: usize = s.trim().parse().with_context(|| format!("bad k `{s}`"))?;
        if k == 0 {
            bail!("k must be positive");
        }
        Ok(k)
    };
    let range = match text.split_once("..") {
        Some((a, b)) => parse(a)?..=parse(b.trim_start_matches('='))?,
        None => {
            let k = parse(text)?;
            k..=k
        }
    };
    if range.is_empty() {
        bail!("empty range `{text}`");
    }
    Ok(range)
}

pub fn phi_list(text: &str) -> Result<Vec<Phi>> {
    text.split(',')
        .map(|s| s.parse::<Phi>().with_context(|| format!("bad φ `{s}`")))
        .collect()
}

/// Components separated by `;`, each like `x0 - 1/2*x1 + [0, 1]`.
pub fn union_text(text: &str) -> Result<ImageUnion> {
    let parts = text
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_linear(p).with_context(|| format!("bad Ψ-function `{}`", p.trim())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ImageUnion::new(parts))
}

/// A representation file, or `@name` for one loaded into the session.
pub fn rep_value(path: &str, session: &Session) -> Result<Value> {
    if let Some(name) = path.strip_prefix('@') {
        return session
            .reps
            .get(name)
            .cloned()
            .ok_or_else(|| anyhow!("no representation named `{name}` in this session"));
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("{path} is not JSON"))
}

/// A small set from either form: a small-set document, or a unary
/// representation whose components are all unthickened small sets.
pub fn small_set(value: Value) -> Result<SmallSet> {
    if value.get("products").is_none() && value.get("kind").is_none() {
        return serde_json::from_value(value).context("not a small set");
    }
    let rep = nary(value)?;
    let unary = rep.as_unary().ok_or_else(|| anyhow!("expected a unary set"))?;
    let mut parts = Vec::new();
    for c in unary.0 {
        match c {
            Component::Small(ThickenedSmall {
                core,
                thicken: Phi::Infinity,
            }) => parts.push(core),
            _ => bail!("only unthickened small sets are accepted here"),
        }
    }
    match parts.len() {
        1 => Ok(parts.pop().expect("one part")),
        _ => {
            let mut all = ImageUnion::default();
            for p in parts {
                let u = p
                    .as_union()
                    .ok_or_else(|| anyhow!("a constrained image cannot be merged with other sets"))?;
                all = all.union(u);
            }
            Ok(all.into())
        }
    }
}

/// A representation from any accepted form: an n-ary document, a single
/// component, or a bare small set (read as unthickened).
pub fn nary(value: Value) -> Result<NaryRep> {
    if value.get("products").is_some() {
        return serde_json::from_value(value).context("bad representation");
    }
    if value.get("kind").is_some() {
        let c: Component = serde_json::from_value(value).context("bad component")?;
        return Ok(NaryRep::unary(UnaryRep(vec![c])));
    }
    let core: SmallSet = serde_json::from_value(value).context("not a representation or a small set")?;
    Ok(NaryRep::unary(UnaryRep::single(ThickenedSmall::new(core, Phi::Infinity))))
}
