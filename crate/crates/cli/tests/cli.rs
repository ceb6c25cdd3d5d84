use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ditcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ditcalc"))
        .args(args)
        .env_remove("DITCALC_BASE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = ditcalc(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&ok(&all)).expect("valid JSON")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

#[test]
fn entropy_of_four_singletons() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "d.txt", "a\nb\nc\nd\n");
    let text = ok(&["entropy", s(&f)]);
    assert!(text.contains("h       = 3/4 (0.75)"), "{text}");
    assert!(text.contains("H_2     = 2\n"), "{text}");
    assert!(text.contains("H_m     = 4\n"), "{text}");

    let v = json(&["entropy", s(&f)]);
    let r = &v["report"];
    assert_eq!(r["logical"]["num"], 3);
    assert_eq!(r["logical"]["den"], 4);
    assert!(close(r["shannon"].as_f64().unwrap(), 2.0));
    assert!(close(r["block_count"].as_f64().unwrap(), 4.0));
    assert_eq!(r["blocks"].as_array().unwrap().len(), 4);
}

#[test]
fn entropy_of_one_block() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "blob.txt", "# everything together\na b c d\n");
    let r = &json(&["entropy", s(&f)])["report"];
    assert_eq!(r["logical"]["num"], 0);
    assert!(close(r["shannon"].as_f64().unwrap(), 0.0));
    assert!(close(r["block_count"].as_f64().unwrap(), 1.0));
}

#[test]
fn entropy_lists_dits_on_request() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.txt", "a b\nc\n");
    let text = ok(&["entropy", s(&f), "--dits"]);
    assert!(text.contains("dit set: (a,c) (b,c) (c,a) (c,b)"), "{text}");
    let v = json(&["entropy", s(&f), "--dits"]);
    assert_eq!(v["dits"]["pairs"].as_array().unwrap().len(), 4);
}

#[test]
fn entropy_reads_json_partitions() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "p.json",
        r#"{"universe": ["x", "y", "z"], "blocks": [["z", "x"], ["y"]]}"#,
    );
    let r = &json(&["entropy", s(&f)])["report"];
    assert_eq!(r["logical"]["num"], 4);
    assert_eq!(r["logical"]["den"], 9);
}

#[test]
fn duplicate_label_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "dup.txt", "a b\nc a\n");
    let o = ditcalc(&["entropy", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("`a`") || err.contains("'a'") || err.contains("\"a\""), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_file_and_bad_base_are_input_errors() {
    let o = ditcalc(&["entropy", "/nonexistent/partition.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.txt", "a\nb\n");
    for base in ["1", "0", "-2"] {
        let o = ditcalc(&["entropy", s(&f), "--base", base]);
        assert_eq!(o.status.code(), Some(2), "base {base}");
    }
}

#[test]
fn dist_of_uniform_counts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.csv", "label,count\na,1\nb,1\nc,1\nd,1\n");
    let v = json(&["dist", s(&f)]);
    assert!(close(v["logical_entropy"].as_f64().unwrap(), 0.75));
    assert!(close(v["repeat_rate"].as_f64().unwrap(), 0.25));
    assert!(close(v["numbers_equivalent"].as_f64().unwrap(), 4.0));
    assert!(close(v["shannon_entropy"].as_f64().unwrap(), 2.0));
    assert!(close(v["block_count_entropy"].as_f64().unwrap(), 4.0));
    assert!(v["parametric"].is_null());
    assert!(v["quadratic_entropy"].is_null());
}

#[test]
fn dist_single_outcome_and_bad_sums() {
    let dir = TempDir::new().unwrap();
    let one = write(&dir, "one.csv", "label,prob\nonly,1.0\n");
    let v = json(&["dist", s(&one)]);
    assert!(close(v["logical_entropy"].as_f64().unwrap(), 0.0));
    assert!(close(v["block_count_entropy"].as_f64().unwrap(), 1.0));

    let short = write(&dir, "short.csv", "label,prob\na,0.5\nb,0.4\n");
    let o = ditcalc(&["dist", s(&short)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sum"), "{}", stderr(&o));

    let neg = write(&dir, "neg.csv", "label,count\na,1\nb,-1\n");
    let o = ditcalc(&["dist", s(&neg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 3"), "{}", stderr(&o));
}

#[test]
fn dist_parametric_and_quadratic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.csv", "label,prob\na,0.5\nb,0.25\nc,0.25\n");
    let m = write(&dir, "m.txt", "0 1 1\n1 0 1\n1 1 0\n");
    let h = 1.0 - (0.25 + 0.0625 + 0.0625);
    for (family, param, want) in [
        ("tsallis", "2", h),
        ("patil-taillie", "1", h),
        ("degree-alpha", "2", 2.0 * h),
        ("havrda-charvat", "2", 2.0 * h),
    ] {
        let v = json(&[
            "dist", s(&f), "--family", family, "--param", param, "--quadratic", s(&m),
        ]);
        let got = v["parametric"]["value"].as_f64().unwrap();
        assert!(close(got, want), "{family}: {got} vs {want}");
        assert!(close(v["quadratic_entropy"].as_f64().unwrap(), h));
    }
    let asym = write(&dir, "bad.txt", "0 1 1\n2 0 1\n1 1 0\n");
    let o = ditcalc(&["dist", s(&f), "--quadratic", s(&asym)]);
    assert_eq!(o.status.code(), Some(2));
    let small = write(&dir, "small.txt", "0 1\n1 0\n");
    let o = ditcalc(&["dist", s(&f), "--quadratic", s(&small)]);
    assert_eq!(o.status.code(), Some(2));
    let o = ditcalc(&["dist", s(&f), "--family", "tsallis", "--param", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn entropy_and_dist_agree_on_block_counts() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "a b c\nd e\nf\ng h i j\n");
    let c = write(&dir, "c.csv", "label,count\nB0,3\nB1,2\nB2,1\nB3,4\n");
    for base in ["2", "3", "10", "2.718281828459045"] {
        let e = &json(&["entropy", s(&p), "--base", base])["report"];
        let d = json(&["dist", s(&c), "--base", base]);
        let h = e["logical"]["value"].as_f64().unwrap();
        assert!(close(h, d["logical_entropy"].as_f64().unwrap()));
        assert!(close(
            e["shannon"].as_f64().unwrap(),
            d["shannon_entropy"].as_f64().unwrap()
        ));
        assert!(close(
            e["block_count"].as_f64().unwrap(),
            d["block_count_entropy"].as_f64().unwrap()
        ));
    }
}

#[test]
fn base_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "d.txt", "a\nb\nc\n");
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_ditcalc"));
        cmd.args(["entropy", s(&f), "--json"]).args(extra);
        match env {
            Some(b) => cmd.env("DITCALC_BASE", b),
            None => cmd.env_remove("DITCALC_BASE"),
        };
        let o = cmd.output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["report"]["shannon"].as_f64().unwrap()
    };
    assert!(close(run(None, &[]), 3f64.log2()));
    assert!(close(run(Some("3"), &[]), 1.0));
    assert!(close(run(Some("3"), &["--base", "2"]), 3f64.log2()));
}

#[test]
fn compare_rows_and_columns_of_a_grid() {
    let dir = TempDir::new().unwrap();
    let rows = write(&dir, "rows.txt", "a b\nc d\n");
    let cols = write(&dir, "cols.txt", "a c\nb d\n");
    let v = json(&["compare", s(&rows), s(&cols)]);
    assert_eq!(v["independent"], true);
    assert_eq!(v["logical_mutual_info"]["num"], 1);
    assert_eq!(v["logical_mutual_info"]["den"], 4);
    assert_eq!(v["modular_law"]["holds"], true);
    assert!(v["shannon_mutual_info"].as_f64().unwrap().abs() <= 1e-12);
    assert_eq!(v["join"]["blocks"].as_array().unwrap().len(), 4);
    assert_eq!(v["meet"]["blocks"].as_array().unwrap().len(), 1);

    let text = ok(&["compare", s(&rows), s(&cols)]);
    assert!(text.contains("m(A,B) = 1/4 (0.25)"), "{text}");
    assert!(text.contains("independent: yes"), "{text}");
}

#[test]
fn compare_with_itself_and_with_the_blob() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "a b\nc\nd\n");
    let q = write(&dir, "q.txt", "d\nc\nb a\n");
    let blob = write(&dir, "blob.txt", "d c b a\n");

    let v = json(&["compare", s(&p), s(&q)]);
    assert_eq!(v["logical_mutual_info"], v["logical_entropy"]["a"]);
    assert_eq!(v["join"], v["a"]);
    assert_eq!(v["meet"], v["a"]);
    assert_eq!(v["independent"], false);

    let v = json(&["compare", s(&p), s(&blob)]);
    assert_eq!(v["logical_mutual_info"]["num"], 0);
    assert_eq!(v["independent"], true);
    assert!(v["shannon_mutual_info"].as_f64().unwrap().abs() <= 1e-12);
}

#[test]
fn compare_needs_the_same_labels() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "a b\nc\n");
    let q = write(&dir, "q.txt", "a b\nz\n");
    let o = ditcalc(&["compare", s(&p), s(&q)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn binary_demo_counts_new_dits() {
    let text = ok(&["demo", "binary", "--n", "2"]);
    assert!(text.contains("step 1: +8 dits"), "{text}");
    assert!(text.contains("step 2: +4 dits"), "{text}");
    assert!(text.contains("total dits: 12"), "{text}");
    let v = json(&["demo", "binary", "--n", "3"]);
    let steps: Vec<u64> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["new_dits"].as_u64().unwrap())
        .collect();
    assert_eq!(steps, [32, 16, 8]);
    assert_eq!(v["total_dits"], 56);
}

#[test]
fn coin_demo() {
    let v = json(&["demo", "coins", "--n", "1"]);
    assert_eq!(v["total_dits"], 6);
    assert!(close(v["shannon_entropy"].as_f64().unwrap(), 1.0));
    let v = json(&["demo", "coins", "--n", "2"]);
    assert_eq!(v["total_dits"], 72);
    assert!(close(v["shannon_entropy"].as_f64().unwrap(), 2.0));
    let steps: Vec<u64> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["new_dits"].as_u64().unwrap())
        .collect();
    assert_eq!(steps, [54, 18]);
}

#[test]
fn demo_rejects_out_of_range_sizes() {
    for args in [
        ["demo", "binary", "--n", "0"],
        ["demo", "coins", "--n", "0"],
        ["demo", "binary", "--n", "17"],
        ["demo", "coins", "--n", "11"],
    ] {
        let o = ditcalc(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error:"));
    }
}

#[test]
fn verify_passes_by_default() {
    let text = ok(&["verify", "--trials", "200"]);
    assert!(text.contains(", 0 failed"), "{text}");
    assert!(!text.contains("FAIL"));
    let v = json(&["verify", "--max-n", "4", "--trials", "50", "--grid", "2x2"]);
    assert_eq!(v["passed"], true);
    assert!(v["reports"].as_array().unwrap().len() > 20);
}

#[test]
fn verify_rejects_bad_sizes() {
    for args in [
        vec!["verify", "--max-n", "1"],
        vec!["verify", "--max-n", "7"],
        vec!["verify", "--grid", "1x3"],
        vec!["verify", "--grid", "banana"],
    ] {
        let o = ditcalc(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_reports_an_injected_fault() {
    let o = ditcalc(&["verify", "--trials", "20", "--inject-fault", "corrupt-meet"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("FAIL meet_dit_interior"), "{text}");
    assert!(text.contains("pi:"), "{text}");
    assert!(text.contains("sigma:"), "{text}");

    let o = ditcalc(&[
        "verify", "--max-n", "4", "--trials", "20", "--json", "--inject-fault", "corrupt-meet",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn verify_is_reproducible_for_a_seed() {
    let a = ok(&["verify", "--max-n", "3", "--trials", "100", "--seed", "7", "--json"]);
    let b = ok(&["verify", "--max-n", "3", "--trials", "100", "--seed", "7", "--json"]);
    assert_eq!(a, b);
}
