use std::io::{self, BufRead, Write};

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde_json::{json, Value};

use logcouple_core::term::parse;
use logcouple_core::GammaExt;

use crate::commands::{self, Cli, Failure};
use crate::input::{self, Session};

const HELP: &str = "\
  let NAME = TERM     bind NAME to the value of TERM
  rep NAME PATH       load a representation file; refer to it as @NAME
  save PATH           write bindings and representations to PATH
  load PATH           read them back
  env                 list bindings
  help | quit
Any other line is a logcouple command, e.g. `psi [1,2]` or `count --rep @x --k 1..5`.
Bindings are visible to `eval`.
";

pub fn run(json: bool, session: &mut Session) -> Result<()> {
    let stdin = io::stdin();
    let mut out = io::stdout();
    loop {
        write!(out, "> ")?;
        out.flush()?;
        let mut line = String::new();
        if stdin.lock().read_line(&mut line)? == 0 {
            break;
        }
        match step(line.trim(), json, session) {
            Ok(Some(text)) => print!("{text}"),
            Ok(None) => break,
            Err(e) => println!("error: {e:#}"),
        }
    }
    Ok(())
}

/// One line; `None` means quit.
pub fn step(line: &str, json: bool, session: &mut Session) -> Result<Option<String>> {
    if line.is_empty() || line.starts_with('#') {
        return Ok(Some(String::new()));
    }
    if let Some(rest) = line.strip_prefix("let ") {
        let (name, term) = rest
            .split_once('=')
            .ok_or_else(|| anyhow!("expected `let NAME = TERM`"))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            bail!("bad name `{name}`");
        }
        let value = parse(term.trim())?.eval(&session.env)?;
        let shown = format!("{name} = {value}\n");
        session.env.insert(name.to_string(), value);
        return Ok(Some(shown));
    }
    let words = shlex::split(line).ok_or_else(|| anyhow!("unbalanced quotes"))?;
    match words.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["quit" | "exit"] => Ok(None),
        ["help"] => Ok(Some(HELP.to_string())),
        ["env"] => Ok(Some(
            session.env.iter().map(|(k, v)| format!("{k} = {v}\n")).collect(),
        )),
        ["rep", name, path] => {
            let value = input::rep_value(path, session)?;
            session.reps.insert(name.to_string(), value);
            Ok(Some(format!("loaded @{name}\n")))
        }
        ["save", path] => {
            let env: serde_json::Map<String, Value> = session
                .env
                .iter()
                .map(|(k, v)| (k.clone(), json!(v.to_string())))
                .collect();
            let doc = json!({"env": env, "reps": session.reps});
            std::fs::write(path, serde_json::to_string_pretty(&doc)?)
                .with_context(|| format!("cannot write {path}"))?;
            Ok(Some(format!("saved to {path}\n")))
        }
        ["load", path] => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
            let doc: Value = serde_json::from_str(&text)?;
            if let Some(env) = doc.get("env").and_then(Value::as_object) {
                for (k, v) in env {
                    let s = v.as_str().ok_or_else(|| anyhow!("binding `{k}` is not a string"))?;
                    session.env.insert(k.clone(), s.parse::<GammaExt>()?);
                }
            }
            if let Some(reps) = doc.get("reps").and_then(Value::as_object) {
                for (k, v) in reps {
                    session.reps.insert(k.clone(), v.clone());
                }
            }
            Ok(Some(format!("loaded {path}\n")))
        }
        [] => Ok(Some(String::new())),
        _ => {
            let mut args = vec!["logcouple".to_string()];
            if json {
                args.push("--json".into());
            }
            args.extend(words);
            let cli = Cli::try_parse_from(args).map_err(|e| anyhow!("{}", e.render()))?;
            if matches!(cli.command, commands::Command::Repl) {
                bail!("already in a session");
            }
            match commands::run(&cli, session) {
                Ok(out) => Ok(Some(out.text)),
                Err(Failure::Invalid(e)) => Err(e),
                Err(Failure::Discrepancy(msg)) => Ok(Some(format!("discrepancy: {msg}\n"))),
            }
        }
    }
}
