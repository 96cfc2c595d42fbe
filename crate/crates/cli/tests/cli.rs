use std::process::{Command, Output};

fn nx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nx")).args(args).env_remove("NX_MONOMIAL_BUDGET").output().expect("nx runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn betti_text_starts_with_the_table() {
    let o = nx(&["betti", "--genus", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("1 0 1 4 1 0 1"));
    assert!(s.contains("cross-check: ok"));
}

#[test]
fn betti_json_genus_three() {
    let o = nx(&["betti", "--genus", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let betti: Vec<u64> = v["betti"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(betti.len(), 13);
    assert_eq!(&betti[..5], &[1, 0, 1, 6, 2]);
    assert_eq!(v["cross_check"], "ok");
}

#[test]
fn genus_one_full_ring_is_a_usage_error() {
    let o = nx(&["betti", "--genus", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("genus ≥ 2"));
}

#[test]
fn relations_low_genus() {
    let g1 = stdout(&nx(&["relations", "--genus", "1"]));
    assert!(g1.contains("q1 (degree 2) = α"));
    assert!(!g1.contains("relation space"));
    let g3 = nx(&["relations", "--genus", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&g3)).unwrap();
    assert_eq!(v["q"][0]["polynomial"], "α^3 + 5·αβ + 4·γ");
    assert_eq!(v["q"][2]["degree"], 10);
}

#[test]
fn budget_exhaustion_is_reported() {
    let o = nx(&["minimal-model", "--genus", "2", "--max-degree", "8", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nx"))
        .args(["minimal-model", "--genus", "2", "--max-degree", "8"])
        .env("NX_MONOMIAL_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn minimal_model_json_schema() {
    let o = nx(&["minimal-model", "--genus", "2", "--max-degree", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["genus"], 2);
    let stages = v["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 4);
    let five = &stages[3];
    assert_eq!(five["degree"], 5);
    assert_eq!(five["dim"], 6);
    let mut irreps: Vec<(Vec<u64>, u64)> = five["irreps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let label = r["label"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            (label, r["mult"].as_u64().unwrap())
        })
        .collect();
    irreps.sort();
    assert_eq!(irreps, vec![(vec![0, 0], 1), (vec![0, 1], 1)]);
    assert_eq!(five["generators"].as_array().unwrap().len(), 6);
}

#[test]
fn invariant_model_genus_two_text() {
    let s = stdout(&nx(&["minimal-model", "--genus", "2", "--max-degree", "9", "--target", "invariant"]));
    assert!(s.contains("ρ = α"));
    assert!(s.contains("(degree 7): d = v2_(0,0)_0^4, ρ = 0"));
}

#[test]
fn verify_reports_failures_through_exit_code() {
    let ok = nx(&["verify", "--suite", "genus2-table"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).lines().all(|l| !l.starts_with("FAIL")));
    let red = nx(&["verify", "--suite", "invariant-model", "--genus", "2"]);
    assert_eq!(red.status.code(), Some(1));
    assert!(stdout(&red).contains("FAIL  g=2 generator degrees"));
    let green = nx(&["verify", "--suite", "invariant-model", "--genus", "4", "--max-degree", "12"]);
    assert!(green.status.success(), "{}", stdout(&green));
}
