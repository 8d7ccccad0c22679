use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use splicezeta::algebra::{fmt_q, q, Poly, RatFunc, UnityRoot};
use splicezeta::allowed::is_allowed;
use splicezeta::format::{parse_splice, print_splice};
use splicezeta::zeta::zeta_splice;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("splicezeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splicezeta"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

fn coeffs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

fn lin(a: i128, b: i128) -> RatFunc {
    RatFunc::from_poly(Poly::linear(q(b), q(a)))
}

#[test]
fn zeta_json_is_the_worked_example_value() {
    let one = RatFunc::constant(q(1));
    let a = one.div(&lin(6, -13)).unwrap();
    let b = one.div(&lin(1, -2)).unwrap();
    let want = RatFunc::constant(q(8))
        .mul(&a)
        .add(&b.mul(&RatFunc::constant(q(-1)).add(&one.div(&lin(1, 1)).unwrap())))
        .add(&RatFunc::constant(q(2)).mul(&a).mul(&b));
    let strs = |p: &Poly| p.coeffs().iter().map(fmt_q).collect::<Vec<_>>();
    for file in ["example.sd", "example.pg"] {
        let v = json(&["zeta", corpus(file).to_str().unwrap()]);
        assert_eq!(coeffs(&v["numerator"]), strs(want.numerator()), "{file}");
        assert_eq!(
            coeffs(&v["denominator"]),
            strs(want.denominator()),
            "{file}"
        );
        assert!(!v["terms"].as_array().unwrap().is_empty());
    }
}

#[test]
fn validate_reports_the_non_coprime_node() {
    let p = scratch(
        "bad.sd",
        "splice-diagram bad\nvertex a\nvertex x\nvertex y\nvertex z\n\
         edge a x 2 1\nedge a y 4 1\nedge a z 3 1\n",
    );
    let o = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("coprime") && out.contains("`a`"), "{out}");
    // other commands refuse it
    assert_eq!(run(&["zeta", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn realize_prints_warrow_records_that_recheck() {
    let f = corpus("example.sd");
    let o = run(&[
        "realize",
        f.to_str().unwrap(),
        "--lambda",
        "1/6",
        "--effective",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    let records: String = out
        .lines()
        .filter(|l| l.starts_with("warrow "))
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(!records.is_empty(), "{out}");
    let base = std::fs::read_to_string(&f).unwrap();
    let d = parse_splice(&format!("{base}{records}")).unwrap();
    assert!(d.warrows.iter().all(|w| w.value >= 1));
    assert!(is_allowed(&d).unwrap().allowed);
    let z = zeta_splice(&d).unwrap();
    let lam = UnityRoot::new(1, 6).unwrap();
    let hit = z
        .poles()
        .unwrap()
        .iter()
        .any(|p| UnityRoot::from_rational(&p.at).unwrap() == lam);
    assert!(hit);
}

#[test]
fn realize_reports_unrealizable_in_the_payload() {
    let v = json(&[
        "realize",
        corpus("example_n7.sd").to_str().unwrap(),
        "--lambda",
        "37/42",
    ]);
    assert_eq!(v["status"], "unrealizable");
    assert_eq!(v["search"]["impossible"], true);
}

#[test]
fn exit_codes() {
    let f = corpus("example.sd");
    let f = f.to_str().unwrap();
    assert_eq!(run(&["frobnicate", f]).status.code(), Some(1));
    assert_eq!(run(&["eig", f]).status.code(), Some(1));
    assert_eq!(run(&["eig", f, "--lambda", "x"]).status.code(), Some(1));
    assert_eq!(run(&["zeta", "/nonexistent.sd"]).status.code(), Some(1));
    let p = scratch("garbage.sd", "splice-diagram g\nhedge a b\n");
    assert_eq!(run(&["zeta", p.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(
        run(&["splice", f, "--edge", "v1-v0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["splice", f, "--edge", "v1:l1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["splice", f, "--edge", "v1:v0"]).status.code(),
        Some(0)
    );
}

#[test]
fn convert_round_trips() {
    let o = run(&["convert", corpus("example.pg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let d = parse_splice(&text).unwrap();
    assert_eq!(print_splice(&d), text);
    let p = scratch("converted.sd", &text);
    let again = run(&["convert", p.to_str().unwrap()]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn eig_and_alexander() {
    let f = corpus("example.sd");
    let f = f.to_str().unwrap();
    assert_eq!(json(&["eig", f, "--lambda", "1/6"])["eigenvalue"], true);
    assert_eq!(json(&["eig", f, "--lambda", "1/4"])["eigenvalue"], false);
    let a = json(&["alexander", f]);
    // (t^2 - t + 1)^2
    assert_eq!(
        coeffs(&a["alexander"]["coeffs"]),
        ["1", "-2", "3", "-2", "1"]
    );
    let rod = json(&[
        "eig",
        corpus("rodrigues.pg").to_str().unwrap(),
        "--lambda",
        "1/3",
    ]);
    assert_eq!(rod["eigenvalue"], false);
}

#[test]
fn output_is_deterministic() {
    let f = corpus("example.sd");
    let a = run(&[
        "realize",
        f.to_str().unwrap(),
        "--lambda",
        "5/6",
        "--count",
        "3",
        "--json",
    ]);
    let b = run(&[
        "realize",
        f.to_str().unwrap(),
        "--lambda",
        "5/6",
        "--count",
        "3",
        "--json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selfcheck_small() {
    let v = json(&["selfcheck", "--cases", "10"]);
    assert_eq!(v["ok"], true, "{v}");
    assert!(v["suites"].as_array().unwrap().len() >= 9);
}

#[test]
fn report_commands_run_on_the_corpus() {
    for file in ["example.sd", "staircase.sd", "unimod_b_n2.pg"] {
        let f = corpus(file);
        let f = f.to_str().unwrap();
        for cmd in [
            "validate",
            "poles",
            "semigroup",
            "allowed",
            "stars",
            "goal1",
        ] {
            let o = run(&[cmd, f]);
            assert_eq!(
                o.status.code(),
                Some(0),
                "{cmd} {file}: {}",
                String::from_utf8_lossy(&o.stderr)
            );
        }
    }
    let s = json(&["semigroup", corpus("unimod_b_n1.pg").to_str().unwrap()]);
    assert_eq!(s["ok"], false);
}
