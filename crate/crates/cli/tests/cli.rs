use std::process::{Command, Output};

fn bmenet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmenet")).args(args).env_remove("BMENET_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("bmenet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const N1: &str = r#"{"n":5,"ordering":[1,2,3,4,5],"bridges":[[3,4,5]]}"#;

// Split metric of N1 with unit weights.
const N1_PHYLIP: &str = "5\na 0 2 4 5 4\nb 2 0 4 5 4\nc 4 4 0 3 4\nd 5 5 3 0 3\ne 4 4 4 3 0\n";

#[test]
fn count_row() {
    let o = bmenet(&["count", "--n", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "5,12,30,15\n");
    let all = stdout(&bmenet(&["count"]));
    assert_eq!(all.lines().count(), 7);
    assert_eq!(all.lines().last().unwrap(), "9,20160,272160,1134000,2079000,1871100,810810,135135");
}

#[test]
fn vector_csv_sums_to_n_times_two_to_the_k() {
    let o = bmenet(&["vector", r#"{"n":5,"ordering":[1,2,3,4,5],"bridges":[[4,5]]}"#]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("i,j,x_ij"));
    let values: Vec<i64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 10);
    assert_eq!(values.iter().sum::<i64>(), 10);
}

#[test]
fn enumerate_streams_literals() {
    let o = bmenet(&["enumerate", "--n", "5", "--k", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 30);
    assert!(text.lines().next().unwrap().starts_with(r#"{"n":5,"ordering":[1,2,3,4,5],"bridges":"#));
    // Partitions together give the full stream.
    let mut merged: Vec<String> = (0..3)
        .flat_map(|p| {
            stdout(&bmenet(&["enumerate", "--n", "5", "--k", "1", "--part", &p.to_string(), "--parts", "3"]))
                .lines()
                .map(String::from)
                .collect::<Vec<_>>()
        })
        .collect();
    merged.sort();
    let mut full: Vec<String> = text.lines().map(String::from).collect();
    full.sort();
    assert_eq!(merged, full);
}

#[test]
fn minimize_recovers_n1() {
    let m = write_temp("n1.phy", N1_PHYLIP);
    let o = bmenet(&["minimize", "--k", "1", "--matrix", &m]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["minimum"], "32");
    assert_eq!(v["argmin"].as_array().unwrap().len(), 1);
    assert_eq!(v["argmin"][0].to_string(), N1);
    let parallel = bmenet(&["minimize", "--k", "1", "--matrix", &m, "--jobs", "3"]);
    assert_eq!(stdout(&parallel), stdout(&o));

    let tsp = stdout(&bmenet(&["minimize", "--k", "0", "--matrix", &m, "--format", "text"]));
    assert_eq!(tsp, "minimum 16\nevaluated 12\n(1,2,3,4,5)\n(1,2,5,4,3)\n");
}

#[test]
fn budget_is_enforced() {
    let m = write_temp("budget.phy", N1_PHYLIP);
    let o = Command::new(env!("CARGO_BIN_EXE_bmenet"))
        .args(["minimize", "--k", "1", "--matrix", &m])
        .env("BMENET_BUDGET", "29")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(bmenet(&["minimize", "--k", "1", "--matrix", &m, "--budget", "30"]).status.code(), Some(0));
}

#[test]
fn decompose_recovers_unit_weights() {
    let m = write_temp("dec.phy", N1_PHYLIP);
    let o = bmenet(&["decompose", &m]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ordering"], serde_json::json!([1, 2, 3, 4, 5]));
    let splits = v["splits"].as_array().unwrap();
    assert_eq!(splits.len(), 8);
    assert!(splits.iter().all(|s| s["weight"] == "1"));

    // Three pairwise crossing cherries: no circular ordering fits.
    let csv = "i,j,d_ij\n1,2,2\n1,3,2\n1,4,2\n1,5,3\n2,3,2\n2,4,2\n2,5,1\n3,4,2\n3,5,1\n4,5,1\n";
    let bad = write_temp("bad.csv", csv);
    assert_eq!(bmenet(&["decompose", &bad]).status.code(), Some(1));
}

#[test]
fn verify_suites_pass() {
    for suite in ["equalities", "facets51", "table1", "nesting"] {
        let o = bmenet(&["verify", "--suite", suite, "--n", "6"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
    }
    let o = bmenet(&["verify", "--suite", "faces", "--n", "5", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bmenet(&["verify", "--suite", "recovery", "--n", "6", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn facets51_reports_are_json() {
    let o = bmenet(&["verify", "--suite", "facets51"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 62);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["family"], "split");
    assert_eq!(first["tight_count"], 9);
    assert_eq!(first["tight_dim"], 4);
    assert_eq!(first["functional"]["sense"], "<=");
}

#[test]
fn export_dot_with_weights() {
    let w = write_temp("w.json", r#"{"n":5,"splits":[{"part":[3,4,5],"weight":"1.5"},{"part":[2],"weight":"1/3"}]}"#);
    let o = bmenet(&["export-dot", N1, "--weights", &w]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("graph network {"));
    assert!(dot.contains("weight=\"1.5\""));
    assert!(dot.contains("weight=\"1/3\""));
    let plain = stdout(&bmenet(&["export-dot", N1]));
    assert!(!plain.contains("weight"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(bmenet(&["vector", "{not json"]).status.code(), Some(2));
    assert_eq!(bmenet(&["vector", r#"{"n":5,"ordering":[1,2,3,4,5],"bridges":[[2,4]]}"#]).status.code(), Some(2));
    assert_eq!(bmenet(&["enumerate", "--n", "5", "--k", "3"]).status.code(), Some(2));
    assert_eq!(bmenet(&["minimize", "--k", "1", "--matrix", "/nonexistent"]).status.code(), Some(2));
    let asym = write_temp("asym.phy", "3\na 0 1 2\nb 1 0 3\nc 2 4 0\n");
    assert_eq!(bmenet(&["minimize", "--k", "0", "--matrix", &asym]).status.code(), Some(2));
    assert_eq!(bmenet(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}
