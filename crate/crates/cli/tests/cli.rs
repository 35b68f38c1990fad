use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pentamap_core::tiling::base_edge_midpoint;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pentamap"));
    c.env_remove("PENTAMAP_CACHE");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("run pentamap")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// A temporary directory holding a coarse field cache at `field.bin`.
fn with_cache() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["--cache", "field.bin", "cache", "build", "--mesh", "0.02"]);
    assert!(o.status.success(), "{}", stderr(&o));
    dir
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn missing_cache_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["--cache", "none.bin", "render", "--at", "0,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("field cache not found"), "{}", stderr(&o));
}

#[test]
fn pentagon_at_origin_matches_golden_file() {
    let dir = with_cache();
    let o = run(dir.path(), &["--cache", "field.bin", "render", "--at", "0,0", "--out", "out"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = std::fs::read_to_string(dir.path().join("out/frame-0000.svg")).unwrap();
    assert_eq!(svg.matches("class=\"edge ").count(), 5);
    let path = golden("pentagon-origin.svg");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &svg).unwrap();
    }
    assert_eq!(svg, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn rendering_is_byte_stable() {
    let dir = with_cache();
    for out in ["a", "b"] {
        let o = run(
            dir.path(),
            &["--cache", "field.bin", "render", "--path", "edge-crossing", "--frames", "4", "--mode", "overlay", "--out", out],
        );
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for i in 0..4 {
        let name = format!("frame-{i:04}.svg");
        let a = std::fs::read(dir.path().join("a").join(&name)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(&name)).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn juzu_at_edge_midpoint_marks_two_beads() {
    let dir = with_cache();
    let m = base_edge_midpoint().z();
    let at = format!("{:.17},{:.17}", m.re, m.im);
    let o = run(dir.path(), &["--cache", "field.bin", "render", "--at", &at, "--mode", "juzu", "--out", "j"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = std::fs::read_to_string(dir.path().join("j/frame-0000.svg")).unwrap();
    assert_eq!(svg.matches("bead coincident").count(), 2);
}

#[test]
fn json_frames_and_tiling_export() {
    let dir = with_cache();
    let o = run(
        dir.path(),
        &["--cache", "field.bin", "render", "--path", "zero-momentum-turn", "--frames", "3", "--format", "json", "--out", "f"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let frame: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("f/frame-0002.json")).unwrap()).unwrap();
    for key in ["source", "psi", "vectors", "vertices", "type"] {
        assert!(frame.get(key).is_some(), "missing {key}");
    }
    assert_eq!(frame["vertices"].as_array().unwrap().len(), 5);

    // The tiling export needs no field cache.
    let o = run(dir.path(), &["--cache", "absent.bin", "render", "--mode", "tiling", "--format", "json", "--radius", "0.95", "--out", "t"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("t/tiling.json")).unwrap()).unwrap();
    assert!(t["faces"].as_array().unwrap().len() >= 24);
}

#[test]
fn path_files_are_resampled() {
    let dir = with_cache();
    std::fs::write(dir.path().join("p.json"), "[[0, 0], [0.4, 0.2], [0.5, -0.3]]").unwrap();
    let o = run(dir.path(), &["--cache", "field.bin", "render", "--path", "p.json", "--frames", "5", "--format", "json", "--out", "p"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_dir(dir.path().join("p")).unwrap().count(), 5);
    std::fs::write(dir.path().join("bad.json"), "[[3, 0]]").unwrap();
    let o = run(dir.path(), &["--cache", "field.bin", "render", "--path", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("path file"), "{}", stderr(&o));
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["modulus", "--mesh", "0"][..],
        &["modulus", "--mesh", "-1"],
        &["render", "--at", "1.2,0"],
        &["render", "--frames", "0"],
        &["render", "--mode", "movie"],
        &["render", "--path", "spiral"],
    ] {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn modulus_prints_a_refinement_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["modulus", "--mesh", "0.01", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let meshes = v["meshes"].as_array().unwrap();
    assert_eq!(meshes.len(), 2);
    let fine = meshes[1]["modulus"].as_f64().unwrap();
    assert!((fine - 0.8928).abs() < 1e-3);
    assert!(meshes[0]["modulus"].as_f64().unwrap() > fine);
}

#[test]
fn corrupted_cache_is_a_version_mismatch() {
    let dir = with_cache();
    let path = dir.path().join("field.bin");
    let mut bytes = std::fs::read(&path).unwrap();
    bytes[8] ^= 0x7f;
    std::fs::write(&path, bytes).unwrap();
    let o = run(dir.path(), &["--cache", "field.bin", "verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("version"), "{}", stderr(&o));
}

#[test]
fn cache_path_from_environment() {
    let dir = with_cache();
    let o = bin()
        .current_dir(dir.path())
        .env("PENTAMAP_CACHE", dir.path().join("field.bin"))
        .args(["cache", "info"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["meshSize"].as_f64(), Some(0.02));
}

#[test]
fn verify_passes_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["--cache", "field.bin", "verify", "--build", "--seed", "5", "--samples", "500", "--report", "report.json"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}\n{}", stderr(&o));
    assert!(out.contains("euler characteristic: -6, genus: 4"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("WARN")).count(), 10);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["seed"], 5);
}
