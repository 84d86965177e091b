use std::process::{Command, Output};

fn micz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_micz"))
        .args(args)
        .env_remove("MICZ_SIZE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hydrogen_spectrum() {
    let o = micz(&["spectrum", "--dim", "3", "--mu", "0", "--levels", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let energies: Vec<&str> = v["levels"].as_array().unwrap().iter().map(|l| l["E"].as_str().unwrap()).collect();
    assert_eq!(energies, ["-1/2", "-1/8", "-1/18", "-1/32"]);
    let degs: Vec<u64> = v["levels"].as_array().unwrap().iter().map(|l| l["degeneracy"].as_u64().unwrap()).collect();
    assert_eq!(degs, [1, 4, 9, 16]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn monopole_suite_passes() {
    let o = micz(&["verify-monopole", "--dim", "5", "--mu", "1", "--points", "20", "--seed", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert!(rows.len() >= 8);
    for r in rows {
        assert_eq!(r["pass"], true);
        assert_eq!(r["D"], 5);
        assert_eq!(r["mu"], "1");
        assert_eq!(r["points_checked"], 20);
        assert!(r["max_residual_entries"].as_array().unwrap().is_empty());
    }
}

#[test]
fn even_dimension_restricts_the_charge() {
    let o = micz(&["verify-operators", "--dim", "4", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("requires mu = 0 or 1/2"), "{err}");
}

#[test]
fn decimal_charge_is_rejected() {
    assert_eq!(micz(&["spectrum", "--dim", "5", "--mu", "0.5"]).status.code(), Some(2));
    assert_eq!(micz(&["spectrum", "--dim", "5", "--mu", "1/3"]).status.code(), Some(2));
    assert_eq!(micz(&["spectrum", "--dim", "2", "--mu", "0"]).status.code(), Some(2));
}

#[test]
fn budget_overflow_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_micz"))
        .args(["verify-rep", "--dim", "7", "--mu", "3/2"])
        .env("MICZ_SIZE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(micz(&["verify-rep", "--dim", "7", "--mu", "3/2", "--budget", "10"]).status.code(), Some(3));
    assert_eq!(micz(&["verify-rep", "--dim", "7", "--mu", "3/2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify-operators", "--dim", "3", "--mu", "1/2", "--points", "2", "--sections", "1", "--format", "csv"];
    let a = micz(&args);
    let b = micz(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("suite,identity,D,mu,points_checked,max_residual_entries,pass\n"));
    assert_eq!(text.lines().count(), 1 + 6);
}

#[test]
fn low_jet_order_skips_relations() {
    let o = micz(&["verify-operators", "--dim", "3", "--mu", "0", "--points", "1", "--sections", "1", "--order", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 1);
}

#[test]
fn level_table_csv() {
    let o = micz(&["level-table", "--dim", "3", "--mu", "1/2", "--levels", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "D,mu,I,E,weight,degeneracy,k,l,constituent_weight,constituent_dim");
    assert_eq!(lines.len(), 1 + 1 + 2);
    assert!(lines[1].starts_with("3,1/2,0,-2/9,"));
}

#[test]
fn rep_claim_ladder_and_probe() {
    for cmd in ["verify-rep", "verify-claim", "verify-ladder"] {
        assert_eq!(micz(&[cmd, "--dim", "5", "--mu", "3/2"]).status.code(), Some(0), "{cmd}");
    }
    assert_eq!(micz(&["verify-claim", "--dim", "6", "--mu", "1/2"]).status.code(), Some(0));
    assert_eq!(micz(&["verify-ladder", "--dim", "6", "--mu", "1/2"]).status.code(), Some(2));
    let o = micz(&["conjecture-probe", "--dim", "5", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("residual nonzero"));
}

#[test]
fn clifford_all_dimensions() {
    let o = micz(&["verify-clifford", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7 * 5);
}

#[test]
fn ladder_on_the_negative_chirality_fiber() {
    for mu in ["-1/2", "-1", "-3/2"] {
        let o = micz(&["verify-ladder", "--dim", "5", "--mu", mu]);
        assert_eq!(o.status.code(), Some(0), "mu={mu}: {}", stdout(&o));
    }
}
