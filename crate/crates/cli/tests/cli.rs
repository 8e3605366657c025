use std::io::Write as _;
use std::path::PathBuf;
use std::process::Command;

use polydepth::depth::{BoundOutcome, DepthBoundReport};
use polydepth::finitegroup::catalog;
use polydepth_cli::{run, EXIT_INAPPLICABLE, EXIT_MALFORMED, EXIT_OK, EXIT_USAGE};

fn space(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../spaces");
    root.join(name).to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polydepth").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn bound_wedge_of_circle_and_sphere() {
    let (code, out, _) = call(&["bound", &space("s1_wedge_s2.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("rule=Cor-free-2dim bound=2"));
}

#[test]
fn bound_two_circles_and_sphere() {
    let (code, out, _) = call(&["bound", &space("s1_wedge_s1_wedge_s2.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("rule=Cor-free-2dim bound=3"));
}

#[test]
fn sl_of_cyclic_six() {
    let (code, out, _) = call(&["sl", "--catalog", "Z6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "sl=2 witness=Z6>Z3>1\n");
}

#[test]
fn sl_other_sources() {
    assert_eq!(call(&["sl", "--abelian", "Z^2 + Z/6"]).1, "sl=4\n");
    assert_eq!(call(&["sl", "--free", "3"]).1, "sl=3\n");
    assert_eq!(call(&["sl", "--hirsch", "5"]).1, "sl=5\n");
    let (code, out, _) = call(&["sl", "--hirsch", "5", "--cd-infinite"]);
    assert_eq!(code, EXIT_INAPPLICABLE);
    assert!(out.contains("cohomological dimension"));
}

#[test]
fn sl_from_table_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        "{}",
        catalog::by_name("S3").unwrap().group.to_table_text()
    )
    .unwrap();
    let path = f.path().to_string_lossy().into_owned();
    let (code, out, _) = call(&["sl", "--table", &path]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("sl=2 witness=S3>"), "{out}");

    let (code, out, _) = call(&["sl", "--table", &path, "--cap", "4"]);
    assert_eq!(code, EXIT_INAPPLICABLE);
    assert!(out.contains("exceeds the search cap"));
}

#[test]
fn malformed_inputs_exit_one() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{\"wedge\": [{{\"sphere\": 1}}").unwrap();
    let path = f.path().to_string_lossy().into_owned();
    assert_eq!(call(&["bound", &path]).0, EXIT_MALFORMED);
    assert_eq!(
        call(&["bound", "/nonexistent/space.json"]).0,
        EXIT_MALFORMED
    );
    assert_eq!(call(&["sl", "--catalog", "NoSuchGroup"]).0, EXIT_MALFORMED);

    let mut t = tempfile::NamedTempFile::new().unwrap();
    write!(t, "2\n0 1\n1 1\n").unwrap();
    let path = t.path().to_string_lossy().into_owned();
    let (code, _, err) = call(&["sl", "--table", &path]);
    assert_eq!(code, EXIT_MALFORMED);
    assert!(err.contains("invalid Cayley table"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(call(&[]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "nope"]).0, EXIT_USAGE);
    assert_eq!(call(&["sl"]).0, EXIT_USAGE);
    assert_eq!(
        call(&["sl", "--free", "1", "--catalog", "Z2"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        call(&["bound", &space("torus.json"), "--format", "xml"]).0,
        EXIT_USAGE
    );
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Usage"));
}

#[test]
fn inapplicable_bound_still_reports() {
    let (code, out, _) = call(&["bound", &space("amenable_cd_infinite.json")]);
    assert_eq!(code, EXIT_INAPPLICABLE);
    assert!(out.starts_with("no bound applicable\n"));

    let (code, out, _) = call(&[
        "bound",
        &space("amenable_cd_infinite.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_INAPPLICABLE);
    let parsed: BoundOutcome = serde_json::from_str(&out).unwrap();
    match parsed {
        BoundOutcome::NoBoundApplicable { failed_hypotheses } => {
            assert_eq!(failed_hypotheses.len(), 2)
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn forced_rule() {
    let (code, out, _) = call(&["bound", &space("torus.json"), "--rule", "Cor-abelian-2dim"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("rule=Cor-abelian-2dim bound=3"));

    let (code, out, _) = call(&["bound", &space("s1_wedge_s2.json"), "--rule", "Cor-abelian"]);
    assert_eq!(code, EXIT_INAPPLICABLE);
    assert!(out.contains("does not apply"));

    assert_eq!(
        call(&["bound", &space("torus.json"), "--rule", "Thm-9"]).0,
        EXIT_MALFORMED
    );
}

#[test]
fn json_report_round_trips() {
    for name in [
        "s1_wedge_s2.json",
        "s1_wedge_s1_wedge_s2.json",
        "s1_times_s3.json",
        "torus.json",
        "wedge_s2_s2_s3.json",
        "rp2.json",
    ] {
        let (code, out, _) = call(&["bound", &space(name), "--format", "json"]);
        assert_eq!(code, EXIT_OK, "{name}");
        let report: DepthBoundReport = serde_json::from_str(&out).unwrap();
        assert!(report.is_consistent(), "{name}");
        assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", out);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        for key in ["rule", "bound", "sl_pi1", "per_degree", "assumptions"] {
            assert!(value.get(key).is_some(), "{name}: missing {key}");
        }
    }
}

#[test]
fn homology_text() {
    let (code, out, _) = call(&["homology", &space("rp2.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "H0 = Z\nH1 = Z/2\nH2 = 0\n");
    let (_, out, _) = call(&["homology", &space("rp2.json"), "--universal-cover"]);
    assert_eq!(out, "H0 = Z\nH1 = 0\nH2 = Z\n");
    let (_, out, _) = call(&["homology", &space("s1_wedge_s2.json"), "--universal-cover"]);
    assert_eq!(out, "H0 = Z\nH1 = 0\nH2 = not finitely generated\n");
    let (_, out, _) = call(&["homology", &space("s1_times_s3.json"), "--format", "json"]);
    let profile: polydepth::HomologyProfile = serde_json::from_str(&out).unwrap();
    assert_eq!(profile.betti_numbers(), Some(vec![1, 1, 0, 1, 1]));
}

#[test]
fn verify_suites_pass() {
    for suite in ["prop32", "lemma34", "prop36-bridge", "euler", "snf"] {
        let (code, out, _) = call(&["verify", suite]);
        assert_eq!(code, EXIT_OK, "{suite}");
        assert!(!out.is_empty());
        for line in out.lines() {
            assert!(line.starts_with(&format!("PASS {suite} ")), "{line}");
        }
    }
    let (_, out, _) = call(&["verify", "prop32"]);
    assert_eq!(out.lines().count(), catalog::all().len());
    assert!(out.contains("PASS prop32 Q8 n1=1 n2=1 n3=1\n"));
}

#[test]
fn catalog_listing() {
    let (code, out, _) = call(&["catalog"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Z6 order=6 abelian sl=2\n"));
    assert!(out.contains("S3 order=6 nonabelian sl=2\n"));
    assert_eq!(out.lines().count(), catalog::all().len());
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["catalog"],
        vec!["verify", "lemma34"],
        vec!["sl", "--catalog", "D4"],
    ] {
        assert_eq!(call(&args), call(&args));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_polydepth");
    let out = Command::new(bin)
        .args(["bound", &space("s1_wedge_s2.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("rule=Cor-free-2dim bound=2\n"));

    let out = Command::new(bin)
        .args(["bound", &space("amenable_cd_infinite.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(64));
    assert!(!out.stderr.is_empty());
}
