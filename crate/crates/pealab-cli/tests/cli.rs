//! End-to-end command tests: exit codes, byte-identical reports, corpus
//! generation and the interval/hom commands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pealab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pealab-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const CHAIN3: &str = "elements: 0 1 2 3\nzero: 0\none: 3\n1 + 1 = 2\n1 + 2 = 3\n2 + 1 = 3\n";

#[test]
fn validate_exit_codes() {
    let dir = tempdir("codes");
    let ok = write(&dir, "chain3.pea", CHAIN3);
    let out = run(&["validate", ok.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // chain [0,2] with 1+1=2 removed: 1 loses its complement entirely
    let broken = write(
        &dir,
        "broken.pea",
        "elements: 0 1 2\nzero: 0\none: 2\n",
    );
    let out = run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["axioms"]["passed"], serde_json::json!(false));
    assert!(!report["axioms"]["violations"].as_array().unwrap().is_empty());

    let garbage = write(&dir, "garbage.pea", "this is not a table\n");
    let out = run(&["validate", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = tempdir("position");
    let bad = write(
        &dir,
        "bad.pea",
        "elements: 0 1 2\nzero: 0\none: 2\n1 + 1 = q\n",
    );
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
    assert!(err.contains("column 9"), "{err}");
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempdir("determinism");
    let chain = write(&dir, "chain3.pea", CHAIN3);
    let args = ["analyze", chain.to_str().unwrap(), "--riesz", "--states", "--pmv"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "reports must not vary across runs");
    // exact rationals, never decimals
    let text = String::from_utf8_lossy(&a.stdout);
    assert!(text.contains("\"1/3\""));
    assert!(!text.contains("0.333"));
}

#[test]
fn analyze_mo2_states() {
    let dir = tempdir("mo2");
    let mo2 = write(
        &dir,
        "mo2.pea",
        "elements: 0 a a' b b' 1\nzero: 0\none: 1\na + a' = 1\na' + a = 1\nb + b' = 1\nb' + b = 1\n",
    );
    let out = run(&["analyze", mo2.to_str().unwrap(), "--states", "--riesz"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["state_space"]["class"], serde_json::json!("non_simplex"));
    assert_eq!(report["state_space"]["dim"], serde_json::json!(2));
    assert_eq!(report["state_space"]["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(report["riesz"]["rip"]["holds"], serde_json::json!(true));
    assert_eq!(report["riesz"]["rdp0"]["holds"], serde_json::json!(false));
}

#[test]
fn decompose_midpoint_state() {
    let dir = tempdir("decompose");
    let out = run(&["corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bool2 = dir.join("bool2.pea");
    let state = dir.join("bool2-mid.state");
    let out = run(&[
        "analyze",
        bool2.to_str().unwrap(),
        "--decompose",
        state.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let atoms = report["decomposition"]["measure"]["atoms"].as_array().unwrap();
    assert_eq!(atoms.len(), 2);
    for atom in atoms {
        assert_eq!(atom["weight"], serde_json::json!("1/2"));
    }

    // a state violating the equations is rejected with exit 2
    let bad = write(&dir, "bad.state", "x = 1/3\ny = 1/3\n");
    let out = run(&[
        "analyze",
        bool2.to_str().unwrap(),
        "--decompose",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inconsistent"));
}

#[test]
fn corpus_validates_in_batch() {
    let dir = tempdir("corpus");
    let out = run(&["corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut pea_count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) == Some("pea") {
            pea_count += 1;
            let out = run(&["validate", path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{} fails", path.display());
        }
        if path.extension().and_then(|e| e.to_str()) == Some("pmv") {
            let out = run(&["validate", path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{} fails", path.display());
        }
    }
    assert!(pea_count >= 12, "corpus has {pea_count} .pea fixtures");
}

#[test]
fn gamma_finite_and_lazy() {
    let dir = tempdir("gamma");
    run(&["corpus", dir.to_str().unwrap()]);

    let out = run(&["gamma", dir.join("z1-u3.grp").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let pea = dir.join("z1-u3.pea");
    assert!(pea.exists());
    let out = run(&["validate", pea.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&pea).unwrap();
    assert!(text.starts_with("# interval algebra"), "provenance header present");

    let out = run(&[
        "--json",
        "gamma",
        dir.join("lex-semidirect.grp").to_str().unwrap(),
        "--radius",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["realization"], serde_json::json!("lazy"));
    assert!(dir.join("lex-semidirect.window").exists());

    // a unit that is not strong fails with exit 2
    let bad = write(
        &dir,
        "bad-unit.grp",
        "variant: free-abelian\nrank: 2\ncone: standard\nunit: 1 0\n",
    );
    let out = bin().args(["gamma", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a strong unit"));
}

#[test]
fn grp_analysis_reports_window_witness() {
    let dir = tempdir("grp-analysis");
    run(&["corpus", dir.to_str().unwrap()]);
    let out = run(&["analyze", dir.join("lex-semidirect.grp").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["window"]["symmetric"], serde_json::json!(true));
    assert_eq!(report["window"]["commutative"], serde_json::json!(false));
    assert!(report["window"]["noncommutative_witness"].is_object());

    // a finite interval analyzes like a table
    let out = run(&["analyze", dir.join("z2-std-u11.grp").to_str().unwrap(), "--states"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["axioms"]["passed"], serde_json::json!(true));
    assert_eq!(report["state_space"]["class"], serde_json::json!("simplex"));
    assert!(report["group"]["strong_unit_bounds"].is_array());
}

#[test]
fn pmv_analysis_round_trips() {
    let dir = tempdir("pmv");
    run(&["corpus", dir.to_str().unwrap()]);
    let out = run(&["analyze", dir.join("chain3.pmv").to_str().unwrap(), "--states"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pmv"]["round_trip_identity"], serde_json::json!(true));
    assert_eq!(report["state_space"]["vertices"].as_array().unwrap().len(), 1);

    let out = run(&["analyze", dir.join("chain3.pea").to_str().unwrap(), "--pmv", "--states"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pmv"]["rdp2"], serde_json::json!(true));
    assert_eq!(report["pmv"]["round_trip_identity"], serde_json::json!(true));
    assert_eq!(report["pmv"]["vertex_sets_match"], serde_json::json!(true));
}

#[test]
fn hom_commands() {
    let out = run(&["hom", "sup", "--gens", "1,0;0,1", "--at", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], serde_json::json!("2/1"));

    let out = run(&["hom", "inf", "--gens", "1,0;0,1", "--at", "1,1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], serde_json::json!("0/1"));

    let out = run(&["hom", "jordan", "--gens", "2,-1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["positive_part"], serde_json::json!(["2/1", "0/1"]));
    assert_eq!(v["negative_part"], serde_json::json!(["0/1", "1/1"]));

    // past the decomposition cap
    let out = run(&["hom", "sup", "--gens", "1,0;0,1", "--at", "20,20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn timing_flag_controls_report_stability() {
    let dir = tempdir("timing");
    let chain = write(&dir, "chain3.pea", CHAIN3);
    let out = run(&["analyze", chain.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["timing_ms"].is_null());
    let out = run(&["--timing", "analyze", chain.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["timing_ms"].is_number());
}
