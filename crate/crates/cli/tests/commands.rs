use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn scene(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(name)
}

fn confdisk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_confdisk")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(command: &str, scene_name: &str, extra: &[&str]) -> Value {
    let path = scene(scene_name);
    let mut args = vec![command, "--scene", path.to_str().unwrap(), "--no-timing"];
    args.extend_from_slice(extra);
    let (code, out, err) = confdisk(&args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn envelope_keys() {
    let v = json("radius", "segment.json", &[]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["command", "scene_digest", "options", "results", "warnings", "timing"]);
    assert_eq!(v["command"], "radius");
    assert_eq!(v["scene_digest"].as_str().unwrap().len(), 64);
    assert!(v["timing"].is_null());
    assert_eq!(v["options"]["seed"], 0xC0FFEE);
}

#[test]
fn radius_of_joukowski_motion() {
    let v = json("radius", "joukowski.json", &["--t", "0.5,0.0"]);
    assert!((num(&v["results"]["radius"]) - 1.0).abs() < 1e-9);
    assert_eq!(v["results"]["center"], "inf");
}

#[test]
fn map_chain_and_boundary() {
    let v = json("map", "segment.json", &["--n", "32"]);
    let r = &v["results"];
    assert_eq!(r["boundary"].as_array().unwrap().len(), 32);
    assert!(r["chain"].as_array().unwrap().iter().any(|c| c["name"] == "joukowski"));
    let b0 = &r["boundary"][0]["point"];
    assert!((num(&b0[0]) - 2.0).abs() < 1e-9);
    let v = json("map", "square.json", &["--n", "64"]);
    assert_eq!(v["results"]["boundary_exact"], false);
    assert_eq!(v["results"]["model"], "disk");
}

#[test]
fn harmonic_measure_and_decomposition() {
    let v = json("hmeasure", "unit_disk.json", &["--n", "64"]);
    assert!((num(&v["results"]["total"]) - 1.0).abs() < 1e-12);
    let w = num(&v["results"]["atoms"][5]["weight"]);
    assert!((w - 1.0 / 64.0).abs() < 1e-12);
    let v = json("decompose", "radial_slit.json", &["--n", "256"]);
    let r = &v["results"];
    let (a, bm, bp) = (num(&r["alpha"]), num(&r["beta_minus"]), num(&r["beta_plus"]));
    assert!((a + bm + bp - 1.0).abs() < 1e-12);
    assert!((bm - bp).abs() < 1e-2 && bm > 0.05);
}

#[test]
fn energy_of_segment() {
    let v = json("energy", "segment.json", &["--n", "512"]);
    let r = &v["results"];
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["energy", "log_rad", "discrepancy", "iterations", "converged"]);
    assert!(num(&r["energy"]).abs() < 1e-2);
    assert_eq!(num(&r["log_rad"]), 0.0);
}

#[test]
fn equilibrium_of_segment() {
    let v = json("equilibrium", "segment.json", &["--n", "128"]);
    let r = &v["results"];
    assert_eq!(r["report"]["converged"], true);
    assert!(num(&r["ks_to_harmonic"]) < 0.05);
}

#[test]
fn walk_on_spheres_agrees() {
    let v = json("wos", "unit_disk_offcenter.json", &["--n", "256"]);
    assert!(num(&v["results"]["ks_to_conformal"]) < 0.02);
    assert_eq!(v["results"]["samples"], 100_000);
}

#[test]
fn zhukovskii_lift_of_segment() {
    let v = json("zhukovskii", "segment.json", &["--n", "64"]);
    let r = &v["results"];
    assert!(num(&r["radius_difference"]) < 1e-9);
    assert!(num(&r["lift_residual"]) < 1e-9);
    assert_eq!(r["pairs_ok"], true);
}

#[test]
fn fitness_of_ellipse_motion() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let s = scene("ellipse_motion.json");
    let (code, _, err) = confdisk(&[
        "fitness",
        "--scene",
        s.to_str().unwrap(),
        "--n",
        "128",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let r = &v["results"];
    assert_eq!(r["records"].as_array().unwrap().len(), 49);
    assert_eq!(r["consistent"], true);
    assert_eq!(r["all_fail"], true);
    assert!(num(&v["timing"]["elapsed_seconds"]) >= 0.0);
}

#[test]
fn harmonicity_and_motion_scan() {
    let v = json("harmonicity", "trivial_exterior.json", &["--n", "64"]);
    assert_eq!(v["results"]["verdict"], "pass");
    let v = json("harmonicity", "ellipse_motion.json", &["--n", "256"]);
    assert_eq!(v["results"]["verdict"], "fail");
    let v = json("motion-scan", "trivial_disk.json", &["--n", "128"]);
    assert_eq!(v["results"]["all_hold"], true);
    assert!(num(&v["results"]["mean_value_residual"]) < 1e-2);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 49);
}

#[test]
fn csv_layouts() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("hmeasure", "unit_disk.json", "param,point_re,point_im,weight,cumulative,tag"),
        ("fitness", "joukowski.json", "t_re,t_im,dev_iii,dev_iv,dev_v,dev_vi,verdicts,consistent"),
        ("energy", "segment.json", "energy,log_rad,discrepancy,iterations,converged"),
        ("radius", "segment.json", "t_re,t_im,radius"),
    ];
    for (cmd, name, header) in cases {
        let out = dir.path().join(format!("{cmd}.csv"));
        let s = scene(name);
        let (code, _, err) = confdisk(&[
            cmd,
            "--scene",
            s.to_str().unwrap(),
            "--n",
            "64",
            "--format",
            "csv",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        let text = std::fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().next().unwrap(), header);
        assert!(!text.contains('\r') && text.ends_with('\n'));
    }
    let text = std::fs::read_to_string(dir.path().join("hmeasure.csv")).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 6);
    let mantissa = row[1].split('e').next().unwrap().trim_start_matches('-');
    assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
}

#[test]
fn empty_grid_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, r#"{"motion": {"kind": "joukowski"}, "options": {"t_grid": []}}"#).unwrap();
    let (code, out, err) = confdisk(&["fitness", "--scene", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "t_re,t_im,dev_iii,dev_iv,dev_v,dev_vi,verdicts,consistent\n");
}

#[test]
fn exit_codes() {
    let s = scene("segment.json");
    let s = s.to_str().unwrap();
    assert_eq!(confdisk(&["radius"]).0, 1);
    assert_eq!(confdisk(&["unfold", "--scene", s]).0, 1);
    assert_eq!(confdisk(&["radius", "--scene", s, "--n", "x"]).0, 1);
    assert_eq!(confdisk(&["fitness", "--scene", s]).0, 3);
    assert_eq!(confdisk(&["equilibrium", "--scene", s, "--n", "64", "--tol", "1e-18"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"domain": {"kind": "unit_disk"}, "extra": 1}"#).unwrap();
    let (code, _, err) = confdisk(&["radius", "--scene", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("extra"));
    std::fs::write(&bad, r#"{"motion": {"kind": "affine_stretch"}, "options": {"t_grid": [[0.6, 0.9]]}}"#).unwrap();
    assert_eq!(confdisk(&["fitness", "--scene", bad.to_str().unwrap()]).0, 3);
}

#[test]
fn reruns_are_byte_identical() {
    let s = scene("radial_slit.json");
    let args = ["wos", "--scene", s.to_str().unwrap(), "--n", "128", "--threads", "2", "--no-timing"];
    let a = confdisk(&args).1;
    let b = confdisk(&args).1;
    assert_eq!(a, b);
    let mut one = args.to_vec();
    one[6] = "1";
    let c = confdisk(&one).1;
    assert_eq!(a.replace("\"threads\": 2", "\"threads\": 1"), c);
}

#[test]
fn scene_files_round_trip() {
    for entry in std::fs::read_dir(scene("")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let a = confdisk_cli::SceneSpec::parse(&text).unwrap();
        let b = confdisk_cli::SceneSpec::parse(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
