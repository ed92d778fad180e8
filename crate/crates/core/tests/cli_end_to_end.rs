use std::process::{Command, Output};

fn ssym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssym"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn expect(args: &[&str], code: i32, out: &str) {
    let o = ssym(args);
    assert_eq!(
        o.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o), out, "{args:?}");
}

#[test]
fn antipode_examples() {
    expect(&["antipode", "213"], 0, "-132 +231 -312");
    expect(&["antipode", "e"], 0, "+e");
    expect(&["antipode", "1"], 0, "-1");
    let rec = stdout(&ssym(&["antipode", "4312"]));
    expect(&["antipode", "4312", "--method", "closed"], 0, &rec);
    expect(&["antipode", "4312", "--method", "recursive"], 0, &rec);
}

#[test]
fn antipode_errors() {
    assert_eq!(
        ssym(&["antipode", "4321", "--method", "closed"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ssym(&["antipode", "1223"]).status.code(), Some(2));
    assert_eq!(ssym(&["antipode", "13"]).status.code(), Some(2));
    assert_eq!(ssym(&["antipode", "1234567890"]).status.code(), Some(2));
    assert_eq!(ssym(&["antipode"]).status.code(), Some(2));
    assert_eq!(ssym(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn comma_syntax_for_large_degree() {
    let o = ssym(&["sigma", "10", "10", "3"]);
    assert_eq!(stdout(&o), "10,3,1,2,4,5,6,7,8,9");
    let o = ssym(&[
        "antipode",
        "10,3,1,2,4,5,6,7,8,9",
        "--method",
        "closed",
        "--format",
        "records",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let closed: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let o = ssym(&["antipode", "10,3,1,2,4,5,6,7,8,9", "--format", "records"]);
    let rec: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(closed, rec);
}

#[test]
fn sigma_examples() {
    expect(&["sigma", "7", "5", "2"], 0, "5213467");
    expect(&["sigma", "2", "2", "1"], 0, "21");
    expect(&["sigma", "4", "4", "3"], 0, "4312");
    expect(&["sigma", "4", "3", "3"], 2, "");
    expect(&["sigma", "4", "5", "1"], 2, "");
    expect(
        &["sigma", "4", "4", "3", "--format", "records"],
        0,
        r#"{"permutation":[4,3,1,2]}"#,
    );
}

#[test]
fn component_examples() {
    expect(
        &["component", "4", "4", "3", "2"],
        0,
        "case (g)\n-134 -314 -341 -431",
    );
    expect(&["component", "6", "3", "2", "5"], 0, "case (n)\n0");
    expect(
        &["component", "5", "5", "1", "1"],
        0,
        "case (a)\n+2543 +5243 +5423",
    );
    expect(&["component", "4", "4", "3", "5"], 2, "");
    expect(&["component", "4", "4", "3", "0"], 2, "");
    let o = ssym(&["component", "4", "4", "3", "2", "--format", "records"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["case"], "g");
    assert_eq!(v["terms"][0]["word"], serde_json::json!([1, 3, 4]));
    assert_eq!(v["terms"][0]["coeff"], -1);
}

#[test]
fn verify_examples() {
    let o = ssym(&["verify", "table2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("status: PASS"));
    let o = ssym(&["verify", "equivalence", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("checked: 35 (predicted 35)"));
    assert_eq!(
        ssym(&["verify", "equivalence", "--max-n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ssym(&["verify", "axioms", "--max-n", "7"]).status.code(),
        Some(2)
    );
    assert_eq!(ssym(&["verify", "nonsense"]).status.code(), Some(2));
    let o = ssym(&[
        "verify",
        "axioms",
        "--max-n",
        "4",
        "--format",
        "records",
        "--deterministic",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checked"], 33);
    assert!(v.get("wall_time").is_none());
}

#[test]
fn cancellation_audit_reports_multiplicities() {
    let o = ssym(&["verify", "cancellation", "--max-n", "4", "--deterministic"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("[coefficients] (n=3, a=3, b=1)"));
    assert!(out.contains("312: -2"));
    assert!(!out.contains("sign-coherence"));
}

#[test]
fn deterministic_output_is_byte_identical() {
    for args in [
        &["verify", "lemmas", "--max-n", "6", "--deterministic"][..],
        &[
            "bench",
            "--max-n-recursive",
            "5",
            "--max-n-closed",
            "6",
            "--deterministic",
        ][..],
        &[
            "verify",
            "all",
            "--max-n",
            "5",
            "--deterministic",
            "--format",
            "records",
        ][..],
    ] {
        let a = ssym(args);
        let b = ssym(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("wall_time"));
    }
}

#[test]
fn jobs_flag_does_not_change_results() {
    let one = ssym(&[
        "verify",
        "equivalence",
        "--max-n",
        "6",
        "--jobs",
        "1",
        "--deterministic",
    ]);
    let many = ssym(&[
        "verify",
        "equivalence",
        "--max-n",
        "6",
        "--jobs",
        "4",
        "--deterministic",
    ]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn bench_reports_counts() {
    let o = ssym(&[
        "bench",
        "--max-n-recursive",
        "4",
        "--max-n-closed",
        "4",
        "--deterministic",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = out
        .lines()
        .find(|l| l.trim_start().starts_with("4 "))
        .unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols, ["4", "6", "147", "-", "78", "-", "54"]);
    assert_eq!(
        ssym(&["bench", "--max-n-recursive", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn identities_command() {
    expect(
        &["identities", "delta-eta", "2", "4"],
        0,
        "lhs: -43\nrhs: -43\nequal",
    );
    let o = ssym(&["identities", "hook-eta", "--max-n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "hook-eta: 15 parameter tuples, 0 failures");
    assert_eq!(
        ssym(&["identities", "delta-eta", "4", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(ssym(&["identities", "bogus"]).status.code(), Some(2));
}

#[test]
fn degree_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ssym"))
        .args(["antipode", "4312"])
        .env("MR_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_ssym"))
        .args(["antipode", "312"])
        .env("MR_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
