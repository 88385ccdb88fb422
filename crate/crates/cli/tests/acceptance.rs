//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use confdisk::builtin::{DomainSpec, SlitPair};
use confdisk::confmap::boundary_correspondence_with;
use confdisk::measure::{decompose, harmonic_measure_with, poisson_extend, static_fitness_check, FitnessTolerances};
use confdisk::motion::{harmonicity_scan, Motion, MotionFamily, Tolerances};
use confdisk::zhukovskii::{
    commuting_residual, ellipse_through_pm2, zhukovskii, zhukovskii_inverse_exterior, zhukovskii_lift,
    zhukovskii_preimage,
};
use confdisk::measure::ConformalTransfer;
use confdisk::{Exec, C64};
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn scene(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(name)
}

fn threads() -> String {
    std::thread::available_parallelism().map_or(1, |k| k.get()).to_string()
}

/// Runs the CLI and returns its stdout, or the file written with `--out`.
fn confdisk(args: &[&str], out: Option<&Path>) -> Result<String, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_confdisk"));
    cmd.args(args);
    if let Some(p) = out {
        cmd.arg("--out").arg(p);
    }
    let o = cmd.output().map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr).trim()));
    }
    match out {
        Some(p) => std::fs::read_to_string(p).map_err(|e| e.to_string()),
        None => Ok(String::from_utf8_lossy(&o.stdout).into_owned()),
    }
}

fn results(args: &[&str], out: Option<&Path>) -> Result<Value, String> {
    let text = confdisk(args, out)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    Ok(v["results"].clone())
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn within(budget: Duration, start: Instant) -> bool {
    start.elapsed() < budget
}

fn constant_exterior_radius() -> Result<Outcome, String> {
    let start = Instant::now();
    let s = scene("joukowski.json");
    let mut worst: f64 = 0.0;
    for t in ["0,0", "0.3,0", "0.3536,0.3536"] {
        let r = results(&["radius", "--scene", s.to_str().unwrap(), "--t", t, "--no-timing"], None)?;
        worst = worst.max((f(&r["radius"]) - 1.0).abs());
    }
    let fast = within(Duration::from_secs(1), start);
    Ok(outcome(worst < 1e-9 && fast, format!("max |rad - 1| = {worst:.2e}")))
}

fn ellipse_counterexample() -> Result<Outcome, String> {
    let start = Instant::now();
    let n = 512;
    let m = MotionFamily::AffineStretch;
    let mut radii = Vec::new();
    let mut bracketed = true;
    for t in [0.25, 0.5, 0.75] {
        let r = m.moved(C64::new(t, 0.0), n).map_err(|e| e.to_string())?.conformal_radius();
        bracketed &= (1.0 - t..=4.0 * (1.0 - t)).contains(&r);
        radii.push(r);
    }
    let decreasing = radii.windows(2).all(|w| w[1] < w[0]);
    let log_rad = |t: C64| -> confdisk::Result<f64> { Ok(m.moved(t, n)?.conformal_radius().ln()) };
    let tau = Tolerances::default().vi;
    let scan = harmonicity_scan(&log_rad, &[C64::new(0.0, 0.0)], &[0.5], 16, tau, Exec::default())
        .map_err(|e| e.to_string())?;
    let residual = scan.max_residual;
    let fast = within(Duration::from_secs(30), start);
    Ok(outcome(
        bracketed && decreasing && residual > 10.0 * tau && fast,
        format!(
            "rad = {:.4}, {:.4}, {:.4}; mean-value residual {residual:.4}",
            radii[0], radii[1], radii[2]
        ),
    ))
}

fn energy_radius_identity() -> Result<Outcome, String> {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["disk_exterior.json", "segment.json", "ellipse_exterior.json"] {
        let start = Instant::now();
        let s = scene(name);
        let d = |n: &str| -> Result<f64, String> {
            let r = results(&["energy", "--scene", s.to_str().unwrap(), "--n", n, "--no-timing"], None)?;
            Ok(f(&r["discrepancy"]))
        };
        let (d512, d1024) = (d("512")?, d("1024")?);
        pass &= d512 < 1e-2 && d1024 < d512 && within(Duration::from_secs(20), start);
        parts.push(format!("{} {d512:.2e} -> {d1024:.2e}", name.trim_end_matches(".json")));
    }
    Ok(outcome(pass, parts.join(", ")))
}

fn arcsine(x: f64) -> f64 {
    0.5 + (x / 2.0).clamp(-1.0, 1.0).asin() / PI
}

fn equilibrium_on_segment() -> Result<Outcome, String> {
    let start = Instant::now();
    let s = scene("segment.json");
    let r = results(&["equilibrium", "--scene", s.to_str().unwrap(), "--n", "256", "--no-timing"], None)?;
    let mut atoms: Vec<(f64, f64)> = r["atoms"]
        .as_array()
        .ok_or("no atoms")?
        .iter()
        .map(|a| (f(&a["point"][0]), f(&a["weight"])))
        .collect();
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mass: f64 = atoms.iter().filter(|a| (0.0..=1.0).contains(&a.0)).map(|a| a.1).sum();
    // Cells of width 4/n around each support point; compare at cell edges.
    let h = 4.0 / atoms.len() as f64;
    let mut cum = 0.0;
    let mut sup: f64 = 0.0;
    for (x, w) in &atoms {
        cum += w;
        sup = sup.max((cum - arcsine(x + 0.5 * h)).abs());
    }
    let fast = within(Duration::from_secs(30), start);
    Ok(outcome(
        (mass - 1.0 / 6.0).abs() < 0.01 && sup < 0.02 && fast,
        format!("mass[0,1] = {mass:.5}, arcsine sup {sup:.2e}"),
    ))
}

const WOS_SCENES: [&str; 3] = ["unit_disk.json", "unit_disk_offcenter.json", "radial_slit.json"];
const MOTION_SCENES: [&str; 5] = [
    "trivial_disk.json",
    "trivial_exterior.json",
    "joukowski.json",
    "ellipse_motion.json",
    "slit_grow.json",
];

fn wos_run(dir: &Path, name: &str, tag: &str) -> Result<Value, String> {
    let s = scene(name);
    let out = dir.join(format!("wos-{name}-{tag}"));
    let th = threads();
    let args = ["wos", "--scene", s.to_str().unwrap(), "--seed", "0xC0FFEE", "--threads", &th, "--no-timing"];
    results(&args, Some(&out))
}

fn fitness_run(dir: &Path, name: &str, tag: &str) -> Result<Value, String> {
    let s = scene(name);
    let out = dir.join(format!("fitness-{name}-{tag}"));
    let th = threads();
    results(&["fitness", "--scene", s.to_str().unwrap(), "--threads", &th, "--no-timing"], Some(&out))
}

fn walk_on_spheres_agreement(dir: &Path) -> Result<Outcome, String> {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in WOS_SCENES {
        let r = wos_run(dir, name, "a")?;
        let ks = f(&r["ks_to_conformal"]);
        pass &= ks < 0.02 && r["samples"] == 100_000;
        parts.push(format!("{} {ks:.4}", name.trim_end_matches(".json")));
    }
    pass &= within(Duration::from_secs(60), start);
    Ok(outcome(pass, format!("KS {}", parts.join(", "))))
}

fn slit_pair_example() -> Result<Outcome, String> {
    let start = Instant::now();
    let n = 1024;
    let exec = Exec::default();
    let pair = SlitPair::new(0.25, 0.05).map_err(|e| e.to_string())?;
    let omega = harmonic_measure_with(&pair.g, n, exec).map_err(|e| e.to_string())?;
    let c = boundary_correspondence_with(&pair.g, 64, exec).map_err(|e| e.to_string())?;
    let s = pair.g.boundary_sample(0.0).map_err(|e| e.to_string())?.point;
    let d = decompose(&omega, &c, s).map_err(|e| e.to_string())?;
    let (bm, bp) = (d.beta_minus.total(), d.beta_plus.total());
    let asym = (bm - bp).abs() / bm.max(bp);
    let check = static_fitness_check(&pair.g, &pair.gt, &pair, n, FitnessTolerances::default(), exec)
        .map_err(|e| e.to_string())?;
    let fast = within(Duration::from_secs(60), start);
    Ok(outcome(
        asym > 0.05 && check.total_distance < 0.02 && !check.fit && fast,
        format!(
            "beta- {bm:.4}, beta+ {bp:.4}, KS {:.4}, fit = {}",
            check.total_distance, check.fit
        ),
    ))
}

fn zhukovskii_invariants() -> Result<Outcome, String> {
    let e = |x: confdisk::Error| x.to_string();
    let (seg, gseg) = DomainSpec::SegmentExterior {
        a: C64::new(-2.0, 0.0),
        b: C64::new(2.0, 0.0),
    }
    .build(0)
    .map_err(e)?;
    let (u, g) = ellipse_through_pm2(1.0 / 3.0).map_err(e)?;
    let (ut, gt) = ellipse_through_pm2(0.6).map_err(e)?;
    let mut radius: f64 = 0.0;
    for (d, m) in [(&seg, &gseg), (&u, &g)] {
        let lift = zhukovskii_preimage(d, m).map_err(e)?;
        radius = radius.max((lift.lifted_map.conformal_radius() - m.conformal_radius()).abs());
    }
    let from = zhukovskii_preimage(&u, &g).map_err(e)?;
    let to = zhukovskii_preimage(&ut, &gt).map_err(e)?;
    let phi = ConformalTransfer::new(g.clone(), gt.clone());
    let psi = zhukovskii_lift(&phi, &from, &to).map_err(e)?;
    let commuting = commuting_residual(&psi, 256).map_err(e)?;

    let mut invariants: f64 = 0.0;
    for k in 0..64 {
        for r in [1.01, 1.3, 2.0, 3.7] {
            let zeta = C64::from_polar(r, TAU * (k as f64 + 0.37) / 64.0);
            let w = zhukovskii(zeta).map_err(e)?;
            let scale = w.norm().max(1.0);
            invariants = invariants
                .max((zhukovskii(zeta.inv()).map_err(e)? - w).norm() / scale)
                .max((zhukovskii(zeta.conj()).map_err(e)? - w.conj()).norm() / scale)
                .max((zhukovskii_inverse_exterior(w).map_err(e)? - zeta).norm() / r);
            let back = zhukovskii(zhukovskii_inverse_exterior(zeta * 2.0).map_err(e)?).map_err(e)?;
            invariants = invariants.max((back - zeta * 2.0).norm() / (2.0 * r));
        }
    }
    Ok(outcome(
        radius < 1e-9 && commuting < 1e-6 && invariants < 1e-12,
        format!("radius {radius:.2e}, commuting {commuting:.2e}, invariants {invariants:.2e}"),
    ))
}

fn harness_consistency(dir: &Path) -> Result<Outcome, String> {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in MOTION_SCENES {
        let t0 = Instant::now();
        let r = fitness_run(dir, name, "a")?;
        let records = r["records"].as_array().ok_or("no records")?;
        let consistent = records.iter().all(|x| x["consistent"] == true);
        let ok = if name == "ellipse_motion.json" {
            r["all_fail"] == true
        } else if name.starts_with("trivial") {
            r["all_pass"] == true
        } else {
            true
        };
        pass &= consistent && ok && records.len() == 49;
        parts.push(format!(
            "{} {}{} {:.0}s",
            name.trim_end_matches(".json"),
            if consistent { "consistent" } else { "INCONSISTENT" },
            match (r["all_pass"] == true, r["all_fail"] == true) {
                (true, _) => "/all-pass",
                (_, true) => "/all-fail",
                _ => "",
            },
            t0.elapsed().as_secs_f64()
        ));
    }
    pass &= within(Duration::from_secs(300), start);
    Ok(outcome(pass, parts.join(", ")))
}

fn poisson_extension() -> Result<Outcome, String> {
    let n = 1024;
    let mut worst: f64 = 0.0;
    for degree in 0..=8i32 {
        let coeffs: Vec<(i32, C64)> = (-degree..=degree)
            .map(|k| (k, C64::new((1.3 * k as f64 + 0.2).cos(), (0.7 * k as f64 - 0.4).sin())))
            .collect();
        let samples: Vec<C64> = (0..n)
            .map(|j| {
                let th = TAU * j as f64 / n as f64;
                coeffs.iter().map(|&(k, c)| c * C64::from_polar(1.0, k as f64 * th)).sum()
            })
            .collect();
        for r in [0.0, 0.3, 0.6, 0.9] {
            for j in 0..32 {
                let z = C64::from_polar(r, TAU * (j as f64 + 0.1) / 32.0);
                let exact: C64 = coeffs
                    .iter()
                    .map(|&(k, c)| if k >= 0 { c * z.powi(k) } else { c * z.conj().powi(-k) })
                    .sum();
                let got = poisson_extend(&samples, z).map_err(|e| e.to_string())?;
                worst = worst.max((got - exact).norm());
            }
        }
    }
    Ok(outcome(worst < 1e-6, format!("max error {worst:.2e}")))
}

fn determinism(dir: &Path) -> Result<Outcome, String> {
    let mut differing = Vec::new();
    for name in WOS_SCENES {
        wos_run(dir, name, "b")?;
    }
    for name in MOTION_SCENES {
        fitness_run(dir, name, "b")?;
    }
    let files: Vec<String> = WOS_SCENES
        .iter()
        .map(|n| format!("wos-{n}"))
        .chain(MOTION_SCENES.iter().map(|n| format!("fitness-{n}")))
        .collect();
    for stem in &files {
        let a = std::fs::read(dir.join(format!("{stem}-a"))).map_err(|e| e.to_string())?;
        let b = std::fs::read(dir.join(format!("{stem}-b"))).map_err(|e| e.to_string())?;
        if a != b {
            differing.push(stem.clone());
        }
    }
    Ok(outcome(
        differing.is_empty(),
        if differing.is_empty() {
            format!("{} result files identical", files.len())
        } else {
            format!("differ: {}", differing.join(", "))
        },
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let dir = dir.path();
    type Check<'a> = (&'a str, Box<dyn Fn() -> Result<Outcome, String> + 'a>);
    let checks: Vec<Check> = vec![
        ("constant exterior radius", Box::new(constant_exterior_radius)),
        ("ellipse counterexample", Box::new(ellipse_counterexample)),
        ("energy equals -log rad", Box::new(energy_radius_identity)),
        ("equilibrium on [-2, 2]", Box::new(equilibrium_on_segment)),
        ("walk-on-spheres agreement", Box::new(move || walk_on_spheres_agreement(dir))),
        ("arc slit vs radial slit", Box::new(slit_pair_example)),
        ("Zhukovskii lift", Box::new(zhukovskii_invariants)),
        ("motion harness", Box::new(move || harness_consistency(dir))),
        ("Poisson extension", Box::new(poisson_extension)),
        ("determinism", Box::new(move || determinism(dir))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in checks.iter().enumerate() {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} ({:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
