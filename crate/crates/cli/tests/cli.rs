use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_logcouple"))
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_with_binding() {
    let o = run(&["eval", "psi(int(x))", "--env", "x=[]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "[1]\n");
}

#[test]
fn two_bump_count_table() {
    let o = run(&["count", "--rep", &data("two_bump.json"), "--k", "1..5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("k\tcount\n"));
    assert!(out.trim_end().ends_with("5\t11"), "{out}");
}

#[test]
fn count_json_has_rows() {
    let o = run(&["--json", "count", "--rep", &data("two_bump.json"), "--k", "1..4", "--fit"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["table"][3]["count"], 7);
    assert!(v["fit"]["polynomial"].as_str().unwrap().contains("conjectural"));
}

#[test]
fn alternating_four_has_rank_three() {
    let o = run(&["drank", "--union", "x0-x1+x2-x3"]);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn membership_in_the_constrained_image() {
    let yes = run(&["member", "[0, 1, 1]", "--rep", &data("two_bump.json")]);
    assert!(stdout(&yes).starts_with("member\t"));
    let no = run(&["member", "[0, 1, -1]", "--rep", &data("two_bump.json")]);
    assert_eq!(stdout(&no), "not a member\n");
}

#[test]
fn crosscheck_of_sample_rep_is_consistent() {
    let o = run(&["crosscheck", "--rep", &data("interval_and_bumps.json")]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn recover_from_evaluations() {
    let dir = std::env::temp_dir().join(format!("logcouple-recover-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("evals.json");
    // F(x) = x - [0, 1] on a few levels
    let evals: Vec<_> = (1..=4)
        .map(|n: usize| {
            let mut v = vec!["1".to_string(); n];
            while v.len() < 2 {
                v.push("0".into());
            }
            let q1: i64 = if n >= 2 { 0 } else { -1 };
            v[1] = q1.to_string();
            serde_json::json!({"args": [n], "value": format!("[{}]", v.join(", "))})
        })
        .collect();
    std::fs::write(&file, serde_json::to_string(&evals).unwrap()).unwrap();
    let o = run(&["recover", file.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("[0, -1]"), "{out}");
}

#[test]
fn identities_pass() {
    let o = run(&["identities", "--n", "300", "--seed", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failures"));
}

#[test]
fn bad_input_exits_one() {
    let o = run(&["psi", "[1, 2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(run(&["eval", "psi(("]).status.code(), Some(1));
}

#[test]
fn repl_session() {
    let mut child = bin()
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let script = format!(
        "let a = [0, 1]\neval 'psi(a) + a'\nrep x {}\ncount --rep @x --k 3\nbogus\nquit\n",
        data("two_bump.json")
    );
    child.stdin.take().unwrap().write_all(script.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("a = [0, 1]"), "{out}");
    assert!(out.contains("[1, 2]"), "{out}");
    assert!(out.contains("3\t4"), "{out}");
    assert!(out.contains("error:"), "{out}");
}
