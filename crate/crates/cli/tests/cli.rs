use std::process::Command;

use permvol::ScaledPoly;
use permvol_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permvol").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn labels_of_worked_path() {
    let (status, out, _) = call(&["labels", "--path", "NENNEE"]);
    assert_eq!(status, 0);
    assert_eq!(out, "[(3,1,0),(2,2,1),(1,1,1)]\n");
    let (_, out, _) = call(&["labels", "--path", "NENNEE", "--format", "json"]);
    assert_eq!(out.trim(), r#"[{"d":3,"i":1,"u":0},{"d":2,"i":2,"u":1},{"d":1,"i":1,"u":1}]"#);
}

#[test]
fn volume_latex_matches_display_terms() {
    let (status, out, _) = call(&["volume", "--n", "3", "--method", "dyck", "--format", "latex"]);
    assert_eq!(status, 0);
    let mut terms: Vec<&str> = out.trim().split(" + ").collect();
    terms.sort();
    let mut expected = vec![
        "\\tfrac{1}{3}x_1^3", "2x_1^2x_2", "4x_1x_2^2", "\\tfrac{4}{3}x_2^3", "3x_1^2x_3",
        "12x_1x_2x_3", "4x_2^2x_3", "3x_1x_3^2", "2x_2x_3^2", "\\tfrac{1}{3}x_3^3",
    ];
    expected.sort();
    assert_eq!(terms, expected);
}

#[test]
fn dyck_and_recursive_outputs_are_byte_identical() {
    for n in 0..=8 {
        for format in ["plain", "latex", "json"] {
            let n = n.to_string();
            let a = call(&["volume", "--n", &n, "--method", "dyck", "--format", format]);
            let b = call(&["volume", "--n", &n, "--method", "recursive", "--format", format]);
            assert_eq!(a.0, 0);
            assert_eq!(a.1, b.1, "n={n} {format}");
        }
    }
}

#[test]
fn json_output_parses_back() {
    let (_, out, _) = call(&["volume", "--n", "4", "--format", "json"]);
    let p = ScaledPoly::from_json(out.trim()).unwrap();
    assert_eq!(p, permvol::volume_recursive(4).value);
    assert_eq!(p.radicand(), 5);
}

#[test]
fn verify_reports_success() {
    let (status, out, _) =
        call(&["verify", "--n", "3", "--x", "1,1,1", "--samples", "1000000", "--seed", "42"]);
    assert_eq!(status, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["formula_exact"], "32");
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let (status, out, _) = call(&["verify", "--x", "5,7"]);
    assert_eq!(status, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    let shoelace = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "shoelace_area").unwrap();
    let (e, o) = (shoelace["expected"].as_f64().unwrap(), shoelace["observed"].as_f64().unwrap());
    assert!((e - o).abs() / e <= 1e-9);

    let (status, out, _) = call(&["verify", "--x", "4"]);
    assert_eq!(status, 0);
    assert!(out.contains("segment_length"));
}

#[test]
fn verify_is_deterministic_per_seed() {
    let args = ["verify", "--x", "1,2,1", "--samples", "50000", "--seed", "9"];
    let a = call(&args);
    let b = call(&args);
    assert_eq!(a.1, b.1);
    let c = call(&["verify", "--x", "1,2,1", "--samples", "50000", "--seed", "9", "--threads", "1"]);
    assert_eq!(a.1, c.1);
}

#[test]
fn other_subcommands() {
    let (_, out, _) = call(&["paths", "--n", "3"]);
    assert_eq!(out, "NNNEEE\nNNENEE\nNNEENE\nNENNEE\nNENENE\n");
    let (_, out, _) = call(&["paths", "--n", "2", "--format", "json"]);
    assert_eq!(out.trim(), r#"["NNEE","NENE"]"#);

    let (_, out, _) = call(&["gamma", "--d", "2", "--i", "2", "--u", "1"]);
    assert_eq!(out.trim(), "1/2*x2 + x3");
    let (_, out, _) = call(&["gamma", "--path", "NNEENE"]);
    assert_eq!(out.trim(), "x1^2*x3 + 2*x1*x2*x3 + x1*x3^2");

    let (_, out, _) = call(&["faces", "--n", "3", "--J", "1,3"]);
    assert_eq!(out.trim(), "2*x1*x3");
    let (_, out, _) = call(&["faces", "--n", "3", "--J", ""]);
    assert_eq!(out.trim(), "1");

    let (_, out, _) = call(&["eval", "--n", "3", "--x", "1,1,1"]);
    assert_eq!(out.trim(), "32 ≈ 32");
    let (_, out, _) = call(&["eval", "--x", "1/2,3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["radicand"], 3);
}

#[test]
fn error_paths_write_nothing_to_stdout() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["volume"], 2, "--n"),
        (&["volume", "--n", "-1"], 2, "--n"),
        (&["volume", "--n", "3", "--method", "magic"], 2, "--method"),
        (&["volume", "--n", "20", "--method", "dyck"], 1, "BoundExceeded"),
        (&["volume", "--n", "3", "--threads", "0"], 2, "--threads"),
        (&["eval", "--x", "0.5,1"], 2, "--x"),
        (&["eval", "--n", "3", "--x", "1,1"], 2, "--x"),
        (&["eval", "--x", "1,-1"], 1, "NotDominant"),
        (&["labels", "--path", "NXE"], 2, "--path"),
        (&["labels", "--path", "ENNE"], 1, "InvalidPath"),
        (&["faces", "--n", "3", "--J", "1,x"], 2, "--J"),
        (&["faces", "--n", "3", "--J", "4"], 1, "IndexOutOfRange"),
        (&["gamma", "--d", "2", "--i", "3"], 1, "InvalidIndices"),
        (&["gamma", "--d", "2"], 2, "--path"),
        (&["bogus"], 2, "bogus"),
    ];
    for (args, status, needle) in cases {
        let (got, out, err) = call(args);
        assert_eq!(got, *status, "{args:?}: {err}");
        assert!(out.is_empty(), "{args:?} wrote {out:?}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_permvol");
    let ok = Command::new(bin).args(["labels", "--path", "NE"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "[(1,1,0)]\n");
    let bad = Command::new(bin).args(["eval", "--x", "1,-1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    let usage = Command::new(bin).args(["volume"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(usage.stdout.is_empty());
}
