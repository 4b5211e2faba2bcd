use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use trunckit::dsl::parse;
use trunckit::trunc::pi0;
use trunckit_cli::{run, Report, Status};

fn corpus(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(file)
}

fn main_corpus() -> String {
    corpus("corpus.gd").display().to_string()
}

fn binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trunckit")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Report {
    run(std::iter::once("trunckit").chain(args.iter().copied())).expect("arguments parse")
}

fn json(out: &Output) -> Value {
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(stdout.lines().count(), 1, "one line of JSON: {stdout}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn pi0_prints_the_component_count() {
    let out = binary(&["pi0", &main_corpus(), "--groupoid", "A1"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().next(), Some("2 components"));
}

#[test]
fn non_null_functor_fails_with_a_named_counterexample() {
    let out = binary(&["factor", &main_corpus(), "--functor", "IdBZ2", "--n", "0", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "property-failed");
    assert_eq!(v["payload"]["counterexample"]["object"], "o");
    assert_eq!(v["payload"]["counterexample"]["loop"], "g");
    assert_eq!(v["payload"]["counterexample"]["image"], "g");
}

#[test]
fn null_functor_factors_with_a_witness() {
    let r = report(&["factor", &main_corpus(), "--functor", "F"]);
    assert_eq!(r.status, Status::Ok);
    let witness: Vec<&str> =
        r.payload["witness"].as_array().unwrap().iter().map(|w| w["morphism"].as_str().unwrap()).collect();
    assert_eq!(witness, ["id_o", "g"]);
    assert_eq!(r.payload["components"][0]["image"], "o");
}

#[test]
fn every_broken_fixture_is_invalid_input_at_its_annotated_position() {
    let mut seen = 0;
    for entry in fs::read_dir(corpus("broken")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let header = text.lines().next().unwrap().strip_prefix("# expect: ").unwrap();
        let (pos, kind) = header.split_once(' ').unwrap();
        let out = binary(&["validate", path.to_str().unwrap(), "--json"]);
        assert_eq!(out.status.code(), Some(2), "{}", path.display());
        let stderr = String::from_utf8(out.stderr.clone()).unwrap();
        assert!(stderr.contains(&format!(":{pos}:")), "{stderr}");
        let err = &json(&out)["payload"]["error"];
        assert_eq!(format!("{}:{}", err["line"], err["col"]), pos);
        assert_eq!(err["kind"], kind);
        seen += 1;
    }
    assert_eq!(seen, 15);
}

#[test]
fn json_output_is_byte_stable_and_has_three_fields() {
    let args = ["represent", &main_corpus(), "--groupoid", "C2xBZ2", "--json"];
    let (a, b) = (binary(&args), binary(&args));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "payload", "status"]);
    assert_eq!(v["command"], "represent");
    assert_eq!(v["payload"]["naturality_equations"], 16);
}

#[test]
fn exit_code_follows_status() {
    let c = main_corpus();
    let cases: Vec<Vec<&str>> = vec![
        vec!["validate", &c],
        vec!["loops", &c, "--groupoid", "BS3", "--object", "o"],
        vec!["loops", &c, "--groupoid", "BS3", "--object", "nowhere"],
        vec!["braided", &c, "--groupoid", "BS3"],
        vec!["braided", &c, "--groupoid", "C2xBZ2"],
        vec!["hit-check", &c, "--groupoid", "A1"],
        vec!["descent", &c, "--functor", "IdBZ2"],
        vec!["oracle", &c, "--groupoid", "BS3", "--cap", "10"],
        vec!["pi0", &c],
        vec!["pi0", "/nonexistent/file.gd", "--groupoid", "A1"],
    ];
    let expected = [0, 0, 2, 1, 0, 0, 1, 2, 2, 2];
    for (args, want) in cases.iter().zip(expected) {
        let out = binary(args);
        assert_eq!(out.status.code(), Some(want), "{args:?}");
        assert_eq!(report(args).exit_code(), want, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(binary(&["frobnicate", &main_corpus()]).status.code(), Some(2));
    assert_eq!(binary(&["pi0"]).status.code(), Some(2));
    assert_eq!(binary(&["factor", &main_corpus(), "--functor", "F", "--n", "1"]).status.code(), Some(2));
    assert!(run(["trunckit", "pi0", "x.gd", "--cap", "many"]).is_err());
}

#[test]
fn truncation_at_minus_one_needs_a_set_codomain() {
    let c = main_corpus();
    let ok = report(&["factor", &c, "--functor", "Collapse", "--n", "-1"]);
    assert_eq!((ok.status, ok.payload["value"].as_str()), (Status::Ok, Some("x0")));
    let refused = report(&["factor", &c, "--functor", "F", "--n", "-1"]);
    assert_eq!(refused.status, Status::InvalidInput);
    assert_eq!(refused.payload["error"]["kind"], "not-a-set");
    let explicit = corpus("explicit.gd").display().to_string();
    let pt = report(&["factor", &explicit, "--functor", "ToPt", "--n", "-1"]);
    assert_eq!((pt.status, pt.payload["value"].as_str()), (Status::Ok, Some("p")));
}

#[test]
fn non_braided_witness_really_fails_to_commute() {
    let r = report(&["braided", &main_corpus(), "--groupoid", "BS3"]);
    assert_eq!(r.status, Status::PropertyFailed);
    let doc = parse(&fs::read_to_string(corpus("corpus.gd")).unwrap()).unwrap();
    let g = doc.groupoid("BS3").unwrap();
    let cx = &r.payload["counterexample"];
    let p = g.find_morphism(cx["p"].as_str().unwrap()).unwrap();
    let q = g.find_morphism(cx["q"].as_str().unwrap()).unwrap();
    assert_ne!(g.try_compose(p, q), g.try_compose(q, p));
}

#[test]
fn pi0_counts_agree_with_the_library() {
    let doc = parse(&fs::read_to_string(corpus("corpus.gd")).unwrap()).unwrap();
    for name in ["D1", "D2", "D3", "C2", "C3", "BZ2", "BZ3", "BS3", "A1", "C2xBZ2"] {
        let r = report(&["pi0", &main_corpus(), "--groupoid", name]);
        assert_eq!(r.payload["count"].as_u64(), Some(pi0(doc.groupoid(name).unwrap()).count() as u64));
    }
}

#[test]
fn descent_and_oracle_report_matching_counts() {
    let c = main_corpus();
    let d = report(&["descent", &c, "--functor", "F"]);
    assert_eq!(d.status, Status::Ok);
    assert_eq!(d.payload["descent_data"], d.payload["carrier_functors"]);
    assert_eq!(d.payload["descends"], true);
    let o = report(&["oracle", &c, "--functor", "F", "--groupoid", "BZ3"]);
    assert_eq!(o.status, Status::Ok);
    assert_eq!(o.payload["factorizations"]["objects"], 2);
    assert_eq!(o.payload["groupoid"]["representations"], 2);
    let s3 = report(&["oracle", &c, "--groupoid", "BS3"]);
    assert_eq!(s3.payload["groupoid"]["representations"], 0);
}
