use std::path::PathBuf;

use serde_json::Value;
use spectre_cli::run_with;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.out).unwrap_or_else(|e| panic!("{e}: {}", self.out))
    }
}

fn run(args: &[&str]) -> Run {
    let mut argv = vec!["spectre".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

#[test]
fn spectre_of_symmetric_triple() {
    let r = run(&["spectre", "--set", &fixture("sym3.json")]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.json()["display"], "{-1, 0, 1}");
    let r = run(&["spectre", "--set", &fixture("sym3.json"), "--mode", "oracle", "--format", "csv"]);
    assert_eq!(r.out, "x1\n-1\n0\n1\n");
}

#[test]
fn planar_example() {
    let r = run(&["planar", "example", "--check"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = r.json();
    assert_eq!(v["points"].as_array().unwrap().len(), 12);
    assert_eq!(v["largest_gaps"][0]["a"], "3/8");
    assert_eq!(v["largest_gaps"][0]["d"], "1");
    assert_eq!(v["corner_is_term"], false);
}

#[test]
fn unsorted_series_is_a_usage_error() {
    let r = run(&["series", "third-gap", "--series", &fixture("geo4.json")]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("nonincreasing"), "{}", r.err);
}

#[test]
fn budget_exceeded_exits_3() {
    let r = run(&["series", "enumerate", "--series", &fixture("geo4.json"), "--budget", "15"]);
    assert_eq!(r.code, 3);
    let r = run(&["series", "enumerate", "--series", &fixture("geo4.json"), "--budget", "16"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["size"], 16);
}

#[test]
fn failed_checks_exit_1() {
    let tri = fixture("tri.json");
    assert_eq!(run(&["netset", "check", "--set", &tri]).code, 0);
    let r = run(&["nonsliding", "check", "--set", &tri]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["non_sliding"], false);
    assert_eq!(run(&["netset", "check", "--set", &fixture("sym3.json")]).code, 1);
    assert_eq!(run(&["nonsliding", "check", "--set", &fixture("net_triple.json")]).code, 0);
}

#[test]
fn format_errors_exit_2() {
    let r = run(&["spectre", "--set", &fixture("dup.json")]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("points[2]") && r.err.contains("points[1]"), "{}", r.err);
    let r = run(&["spectre", "--set", "/nonexistent/set.json"]);
    assert_eq!(r.code, 2);
    assert_eq!(run(&["spectre"]).code, 2);
    assert_eq!(run(&["netset", "make", "--set", &fixture("sym3.json"), "--eps", "1/0"]).code, 2);
    assert_eq!(run(&["planar", "second-gap", "--series", &fixture("planar_example.json"), "--rect", "0,1"]).code, 2);
}

#[test]
fn help_exits_0() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("planar"));
}

#[test]
fn refute_image() {
    let r = run(&["refute-image", "--group", "Z7", "--target", &fixture("z7_target.json")]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.json()["result"]["verdict"], "not-in-image");
    let r = run(&["refute-image", "--group", "Z6", "--target", &fixture("z6_even.json")]);
    assert_eq!(r.json()["result"]["verdict"], "witness");
    assert_eq!(run(&["refute-image", "--group", "Z8", "--target", &fixture("z6_even.json")]).code, 2);
    assert_eq!(run(&["refute-image", "--group", "Q", "--target", &fixture("z6_even.json")]).code, 2);
    assert_eq!(run(&["refute-image", "--group", "Z7", "--target", &fixture("z7_target.json"), "--budget", "100"]).code, 3);
}

#[test]
fn series_commands() {
    let f = fixture("planar_example.json");
    assert_eq!(run(&["series", "spectre-props", "--series", &f]).code, 0);
    assert_eq!(run(&["series", "gaps", "--series", &f]).code, 2);
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    std::fs::write(&s, r#"{"terms": [["1"], ["1/4"], ["1/16"]]}"#).unwrap();
    let s = s.display().to_string();
    let r = run(&["series", "third-gap", "--series", &s, "--format", "csv"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "alpha,beta,m\n0,1/16,3\n1/16,1/4,2\n5/16,1,1\n");
    let r = run(&["series", "first-gap", "--series", &s, "--k", "1"]);
    assert_eq!(r.json()["gap"]["alpha"], "5/16");
    let r = run(&["series", "gaps", "--series", &s, "--format", "csv"]);
    assert!(r.out.starts_with("alpha,beta,length,dominating\n0,1/16,1/16,true\n"), "{}", r.out);
}

#[test]
fn planar_commands() {
    let f = fixture("planar_example.json");
    let r = run(&["planar", "first-gap", "--series", &f, "--k", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["x_gap"]["predicted"]["lo"], "1/2");
    let r = run(&["planar", "second-gap", "--series", &f, "--rect", "3/8,1,3/8,1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.json()["k"], 2);
    assert_eq!(r.json()["f"], serde_json::json!(["0", "0"]));
    assert_eq!(run(&["planar", "second-gap", "--series", &f, "--rect", "0,1,0,1"]).code, 2);
    let r = run(&["planar", "gaps", "--series", &f, "--largest", "--format", "csv"]);
    assert!(r.out.contains("rect,3/8,1,3/8,1,25/64"), "{}", r.out);
}

#[test]
fn psum_commands() {
    let p = fixture("pspec.json");
    let r = run(&["psum", "enumerate", "--pspec", &p]);
    assert_eq!(r.json()["size"], 9);
    let r = run(&["psum", "gap-translate", "--pspec", &p, "--gap", "1/16,1/8"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(run(&["psum", "gap-translate", "--pspec", &p, "--gap", "0,1/8"]).code, 2);
    let r = run(&["psum", "cantor-demo", "--levels", "3", "--format", "csv"]);
    assert_eq!(r.out, "level,epsilon\n0,1/2\n1,1/16\n2,1/64\n3,1/256\n");
    assert_eq!(run(&["psum", "cantor-demo", "--levels", "9"]).code, 2);
}

#[test]
fn probes() {
    let r = run(&["probe", "continuity", "--set", &fixture("sym3.json"), "--eps", "1/8"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["verdict"], "discontinuity-witnessed");
    let net = fixture("net_triple.json");
    let r = run(&["probe", "usc", "--set", &net, "--eps", "1/8", "--seed", "3"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.json()["family"], "random-perturbation");
    assert_eq!(r.json()["usc_holds_on_tail"], true);

    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    std::fs::write(&fam, r#"{"group": {"type": "Qd", "dim": 1}, "sets": [[["0"], ["1"], ["3"]], [["0"], ["1"], ["2"], ["3"]]]}"#)
        .unwrap();
    let r = run(&["probe", "usc", "--set", &net, "--eps", "1/8", "--family", &fam.display().to_string()]);
    assert_eq!(r.code, 1);
}

#[test]
fn same_inputs_same_bytes() {
    let net = fixture("net_triple.json");
    let args = ["probe", "continuity", "--set", net.as_str(), "--eps", "1/8", "--seed", "11"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.out, b.out);
    let c = run(&["probe", "continuity", "--set", &net, "--eps", "1/8", "--seed", "11", "--threads", "1"]);
    assert_eq!(a.out, c.out);
}

#[test]
fn svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.svg");
    let p = path.display().to_string();
    assert_eq!(run(&["planar", "gaps", "--series", &fixture("planar_example.json"), "--svg", &p]).code, 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 12);
    assert!(svg.contains("stroke="));
    assert_eq!(run(&["hausdorff", "--a", &fixture("sym3.json"), "--b", &fixture("sym3.json"), "--svg", &p]).code, 2);
}

#[test]
fn netset_make_and_center() {
    let r = run(&["netset", "make", "--set", &fixture("sym3.json"), "--eps", "1/8"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.json()["net_set"], true);
    let r = run(&["center", "--set", &fixture("sym3.json")]);
    assert_eq!(r.json()["center"], serde_json::json!(["0", "1"]));
    let r = run(&["hausdorff", "--a", &fixture("sym3.json"), "--b", &fixture("net_triple.json")]);
    assert_eq!(r.json()["hausdorff"], "2");
}
