use repvar::cli::run;
use serde_json::Value;

fn json(args: &[&str]) -> Value {
    let mut argv = vec!["repvar"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["repvar"];
    argv.extend_from_slice(args);
    let out = run(argv);
    (out.code, out.stderr)
}

#[test]
fn envelope_echoes_config() {
    let v = json(&["--seed", "3", "group", "--group", "SL2,q=3"]);
    assert_eq!(v["tool"], "repvar");
    assert_eq!(v["seed"], 3);
    assert_eq!(v["config"]["seed"], 3);
    assert_eq!(v["config"]["command"]["group"]["group"], "SL2,q=3");
    assert_eq!(v["result"]["order"], 24);
    assert_eq!(v["result"]["classes"], 7);
    let sizes: u64 = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["size"].as_u64().unwrap())
        .sum();
    assert_eq!(sizes, 24);
}

#[test]
fn group_spec_forms_agree() {
    let a = json(&["group", "--group", "GL2,p=2,m=2"]);
    let b = json(&["group", "--kind", "GL", "--n", "2", "--q", "4"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["order"], 180);
}

#[test]
fn counts_with_oracles() {
    let v = json(&["count", "commutator", "--group", "GL2,q=2", "--oracle"]);
    assert_eq!(v["result"]["count"], 18);
    assert_eq!(v["result"]["agrees"], true);
    let v = json(&[
        "count", "squares", "--group", "SL2,q=3", "--terms", "2", "--oracle",
    ]);
    assert_eq!(v["result"]["agrees"], true);
    let v = json(&[
        "count",
        "brute",
        "--group",
        "GL2,q=2",
        "--relators",
        "[x1,x2]",
    ]);
    assert_eq!(v["result"]["count"], 18);
    let v = json(&["wordmap", "fiber", "--group", "GL2,q=2", "--word", "x1^2"]);
    assert_eq!(v["result"]["count"], 4);
}

#[test]
fn chartable_rows() {
    let v = json(&["chartable", "--group", "SL2,q=4"]);
    let degrees: Vec<u64> = v["result"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect();
    assert_eq!(degrees, vec![1, 3, 3, 4, 5]);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn torsion_and_charbound_commands() {
    let v = json(&["torsion", "classes", "--kind", "free-product", "--l", "7"]);
    assert_eq!(v["result"]["count"], 12);
    let v = json(&[
        "torsion", "witness", "--l", "7", "--n", "7", "--mode", "cond2", "--index", "0",
    ]);
    assert_eq!(v["result"]["rows"][0]["verified"], true);
    let v = json(&["charbound", "gaussian", "--a", "4", "--w", "2", "--q", "2"]);
    assert_eq!(v["result"]["value"], 35);
    let v = json(&["verify", "--up-to", "24"]);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn csv_projection() {
    let out = run(["repvar", "--format", "csv", "group", "--group", "GL2,q=2"]);
    assert_eq!(out.code, 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "size"));
    assert_eq!(rdr.records().count(), 3);

    let out = run([
        "repvar",
        "--format",
        "csv",
        "charbound",
        "gaussian",
        "--a",
        "3",
        "--w",
        "1",
        "--q",
        "3",
    ]);
    assert_eq!(out.stdout, "a,q,value,w\n3,3,13,1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["frobnicate"]).0, 2);
    let (c, err) = code(&["group", "--group", "SL2,q=6"]);
    assert_eq!(c, 2);
    assert!(err.contains("prime power"));
    assert_eq!(
        code(&["--max-order", "100", "group", "--group", "GL3,q=3"]).0,
        3
    );
    assert_eq!(
        code(&[
            "--budget",
            "10",
            "count",
            "brute",
            "--group",
            "SL2,q=3",
            "--relators",
            "[x1,x2]"
        ])
        .0,
        3
    );
    assert_eq!(
        code(&[
            "charbound",
            "check",
            "--group",
            "GL2,q=3",
            "--alpha",
            "0.45",
            "--beta",
            "0.99"
        ])
        .0,
        2
    );
    assert_eq!(
        code(&["count", "commutator", "--group", "SL2,q=3", "--class", "99"]).0,
        2
    );
    assert_eq!(run(["repvar", "--help"]).code, 0);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "chartable", "--group", "GL2,q=3"];
    let cold = json(&args);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 2);
    let warm = json(&args);
    let uncached = json(&["chartable", "--group", "GL2,q=3"]);
    assert_eq!(cold, warm);
    assert_eq!(cold, uncached);
}

#[test]
fn documented_examples() {
    let v = json(&[
        "count", "surface", "--group", "SL2,q=3", "--genus", "2", "--oracle",
    ]);
    assert_eq!(v["result"]["count"], v["result"]["oracle_count"]);
    assert_eq!(v["result"]["count"], 53376);
    let v = json(&["torsion", "bk", "--l", "7", "--k", "2"]);
    assert_eq!(v["result"]["count"], 3);
    let v = json(&["group", "--kind", "SL", "--n", "2", "--q", "3"]);
    assert_eq!(
        (
            v["result"]["order"].as_u64(),
            v["result"]["classes"].as_u64()
        ),
        (Some(24), Some(7))
    );
}
