use std::process::{Command, Output};

use serde_json::Value;

fn dabru(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dabru"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("DABRU_THREADS", t);
    }
    cmd.output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn invpp_worked_instance() {
    let out = dabru(&["invpp", "--x", "pi{l=1,nu=[0],k=0} t[0] e", "--root", "b[1; r=0; n=1]"], None);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["count"], 5);
    assert_eq!(recs[0]["oracle_agrees"], true);
    assert_eq!(recs[1]["summary"], true);
    for r in &recs {
        let anchor = r["anchor"].as_str().unwrap();
        assert!(!anchor.is_empty() && !anchor.contains('§') && !anchor.contains("Eq"));
    }
}

#[test]
fn chain_for_worked_instance() {
    let out = dabru(&["chain", "--x", "pi{l=1,nu=[0],k=0} t[0] e", "--root", "b[1; r=0; n=1]"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["lengths"], serde_json::json!([0, 1, 4, 5]));
}

#[test]
fn parse_errors_exit_2() {
    let out = dabru(&["ell", "--x", "pi{l=1,nu=[0]} t[0] e"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = dabru(&["ell", "--ground", "A1", "--finite", "--x", "pi{l=1,nu=[0],k=0} t[0] e"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = dabru(&["chain", "--finite", "--x", "e", "--root", "b[1; n=1]"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inconclusive_exits_3() {
    let out = dabru(
        &[
            "deodhar",
            "--x",
            "pi{l=2,nu=[1],k=0} t[1] e",
            "--y",
            "pi{l=2,nu=[1],k=0} t[1] e",
            "--z",
            "pi{l=2,nu=[1],k=1} t[0] e",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(lines(&out)[0]["status"], "inconclusive");
}

#[test]
fn campaigns_do_not_depend_on_thread_count() {
    let args = ["verify", "length-diff", "--ground", "A2", "--samples", "200", "--seed", "11"];
    let one = dabru(&args, Some("1"));
    let four = dabru(&args, Some("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let recs = lines(&one);
    let idx: Vec<u64> = recs.iter().filter_map(|r| r["index"].as_u64()).collect();
    assert_eq!(idx, (0..200).collect::<Vec<_>>());
}
