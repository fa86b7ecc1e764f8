use std::io::Write;
use std::process::{Command, Output, Stdio};

use geodesy_cli::{AlgebraDocument, Report};
use geodesy_core::catalog;

fn geodesy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodesy")).args(args).env_remove("GEODESY_SEED").output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    geodesy(args).status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["info", "catalog:M12"]), 0);
    assert_eq!(code(&["check", "catalog:g35"]), 0);
    assert_eq!(code(&["check", "catalog:A_3", "--metric", "identity", "--basis", "standard"]), 2);
    assert_eq!(code(&["check", "catalog:R", "n=3"]), 0);
    assert_eq!(code(&["construct", "catalog:g33"]), 0);
    assert_eq!(code(&["construct", "catalog:A_3"]), 3);
    assert_eq!(code(&["construct", "catalog:M13", "a=1"]), 3);
    assert_eq!(code(&["construct", "catalog:M9"]), 4);
    assert_eq!(code(&["sample", "catalog:H3", "--trials", "5"]), 0);
    assert_eq!(code(&["verify-paper", "--filter", "witness/M8"]), 0);
}

#[test]
fn usage_and_parse_errors_exit_one() {
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["info"]), 1);
    assert_eq!(code(&["info", "catalog:nope"]), 1);
    assert_eq!(code(&["info", "catalog:g25", "p=0"]), 1);
    assert_eq!(code(&["construct", "catalog:H3", "--theorem", "nonsense"]), 1);
    assert_eq!(code(&["info", "/definitely/not/here.json"]), 1);
    assert_eq!(code(&["check", "catalog:H3", "--basis", "witness", "--metric", "/nope.json"]), 1);

    let broken = temp_json("{\n  \"name\": \"x\",\n  \"dim\": 2,\n  \"labels\": [\"a\", \"b\"]\n  \"brackets\": []\n}\n");
    let o = geodesy(&["info", broken.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"), "{}", String::from_utf8_lossy(&o.stderr));

    let extra = temp_json(r#"{"name": "x", "dim": 1, "labels": ["a"], "brackets": [], "colour": "red"}"#);
    assert_eq!(code(&["info", extra.path().to_str().unwrap()]), 1);
    let backwards = temp_json(r#"{"name": "x", "dim": 2, "labels": ["a", "b"], "brackets": [{"i": 2, "j": 1, "terms": []}]}"#);
    assert_eq!(code(&["info", backwards.path().to_str().unwrap()]), 1);
    let bad_scalar =
        temp_json(r#"{"name": "x", "dim": 2, "labels": ["a", "b"], "brackets": [{"i": 1, "j": 2, "terms": [{"k": 2, "v": "1.5"}]}]}"#);
    assert_eq!(code(&["info", bad_scalar.path().to_str().unwrap()]), 1);
}

#[test]
fn jacobi_violations_are_listed() {
    let doc = temp_json(
        r#"{"name": "bad", "dim": 3, "labels": ["a", "b", "c"], "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 3, "v": "1"}]},
            {"i": 1, "j": 3, "terms": [{"k": 1, "v": "1"}]}]}"#,
    );
    let o = geodesy(&["--json", "info", doc.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let r = Report::parse(&stdout(&o)).unwrap();
    assert!(!r.body["violations"].as_array().unwrap().is_empty());
}

#[test]
fn catalog_documents_round_trip() {
    for e in catalog::list() {
        for p in catalog::sample_params(e.name) {
            let g = catalog::instantiate(e.name, &p).unwrap();
            let w = catalog::witness(e.name, &p).unwrap();
            let doc = AlgebraDocument::from_algebra(
                e.name,
                &g,
                w.as_ref().map(|w| &w.metric),
                w.as_ref().map(|w| w.basis.as_slice()),
            );
            let text = doc.render();
            let back = AlgebraDocument::parse(&text).unwrap();
            assert_eq!(back, doc, "{}", e.name);
            assert_eq!(back.render(), text, "{}", e.name);
            assert_eq!(back.typed::<geodesy_core::Surd>().unwrap(), g, "{}", e.name);
        }
    }
}

#[test]
fn float_documents_round_trip() {
    let g = catalog::instantiate("sl2", &catalog::Params::new()).unwrap().to_f64();
    let metric = geodesy_core::InnerProduct::identity(3);
    let basis = vec![vec![0.1, 1.0 / 3.0, -2.5e-7], vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
    let doc = AlgebraDocument::from_algebra("sl2", &g, Some(&metric), Some(&basis));
    assert!(doc.is_float());
    let back = AlgebraDocument::parse(&doc.render()).unwrap();
    assert_eq!(back.typed_basis::<f64>().unwrap().unwrap(), basis);
    assert_eq!(back.render(), doc.render());
}

#[test]
fn stdin_documents_are_accepted() {
    let g = catalog::instantiate("g35", &catalog::Params::new()).unwrap();
    let w = catalog::witness("g35", &catalog::Params::new()).unwrap().unwrap();
    let doc = AlgebraDocument::from_algebra("g35", &g, Some(&w.metric), Some(&w.basis)).render();
    let mut child = Command::new(env!("CARGO_BIN_EXE_geodesy"))
        .args(["check", "-", "--orthonormal"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn constructed_documents_check_out() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["M8", "g33", "oscillator", "M4"] {
        let out = dir.path().join(format!("{name}.json"));
        let out = out.to_str().unwrap();
        assert_eq!(code(&["construct", &format!("catalog:{name}"), "--out", out]), 0, "{name}");
        let doc = AlgebraDocument::parse(&std::fs::read_to_string(out).unwrap()).unwrap();
        assert!(doc.is_float());
        assert!(doc.metric.is_some() && doc.basis.is_some());
        assert_eq!(code(&["check", out]), 0, "{name}");
    }
}

#[test]
fn metric_and_basis_files() {
    let metric = temp_json(r#"[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]"#);
    let basis = temp_json(r#"[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]"#);
    let args = |name: &str| {
        vec![
            "check".to_string(),
            format!("catalog:{name}"),
            "--metric".into(),
            metric.path().to_str().unwrap().into(),
            "--basis".into(),
            basis.path().to_str().unwrap().into(),
            "--orthonormal".into(),
        ]
    };
    let run = |name: &str| {
        let a = args(name);
        code(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    assert_eq!(run("so3"), 0);
    assert_eq!(run("sl2"), 2);
}

#[test]
fn seeded_commands_are_reproducible() {
    for args in [
        vec!["--json", "sample", "catalog:sl2", "--trials", "20", "--seed", "7"],
        vec!["--json", "construct", "catalog:M13", "a=0", "--seed", "7"],
        vec!["--json", "construct", "catalog:so3", "--theorem", "search", "--seed", "7"],
    ] {
        let a = stdout(&geodesy(&args));
        let b = stdout(&geodesy(&args));
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
        let r = Report::parse(&a).unwrap();
        assert_eq!(r.machine(), a);
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_geodesy"))
        .args(["--json", "sample", "catalog:sl2", "--trials", "10"])
        .env("GEODESY_SEED", "9")
        .output()
        .unwrap();
    let explicit = geodesy(&["--json", "sample", "catalog:sl2", "--trials", "10", "--seed", "9"]);
    assert_eq!(stdout(&with_env), stdout(&explicit));
    let r = Report::parse(&stdout(&with_env)).unwrap();
    assert_eq!(r.body["seed"], 9);
}

#[test]
fn sampling_reports_span_rank() {
    let rank = |args: &[&str]| Report::parse(&stdout(&geodesy(args))).unwrap().body["span_rank"].as_u64().unwrap();
    assert_eq!(rank(&["--json", "sample", "catalog:A_n", "n=4", "--trials", "50"]), 1);
    assert_eq!(rank(&["--json", "sample", "catalog:R", "n=4", "--trials", "20"]), 4);
    assert!(rank(&["--json", "sample", "catalog:M9", "--trials", "500"]) <= 3);
}

#[test]
fn info_reports_invariants() {
    let body = |args: &[&str]| Report::parse(&stdout(&geodesy(args))).unwrap().body;
    let m12 = body(&["--json", "info", "catalog:M12"]);
    assert_eq!(m12["unimodular"], false);
    assert_eq!(m12["unimodular_kernel"]["dim"], 3);
    assert_eq!(m12["unimodular_kernel"]["center_dim"], 1);
    let r3 = body(&["--json", "info", "catalog:R", "n=3"]);
    assert_eq!(r3["center"]["dim"], 3);
    let g33 = body(&["--json", "info", "catalog:g33"]);
    assert_eq!(g33["nilradical"]["dim"], 3);
    assert_eq!(g33["nilradical"]["abelian"], true);
    let sl2 = body(&["--json", "info", "catalog:sl2"]);
    assert!(sl2["nilradical"].is_null());
}

#[test]
fn verify_paper_filter() {
    let o = geodesy(&["--json", "verify-paper", "--filter", "g35"]);
    let r = Report::parse(&stdout(&o)).unwrap();
    let witness: Vec<_> = r.body["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("witness/"))
        .collect();
    assert_eq!(witness.len(), 1);
    let o = geodesy(&["--json", "verify-paper", "--filter", "M8"]);
    let r = Report::parse(&stdout(&o)).unwrap();
    assert!(r.body["checks"].as_array().unwrap().iter().any(|c| c["name"] == "witness/M8"));
    assert_eq!(code(&["verify-paper", "--filter", "no-such-check"]), 2);
}

#[test]
fn human_form_matches_machine_form() {
    let json = stdout(&geodesy(&["--json", "check", "catalog:g35"]));
    let human = stdout(&geodesy(&["check", "catalog:g35"]));
    assert_eq!(Report::parse(&json).unwrap().human(), human);
}
