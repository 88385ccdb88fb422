use std::fmt::Write as _;

use confdisk::confmap::{boundary_correspondence_with, Model, RiemannMap};
use confdisk::geom::ExtPoint;
use confdisk::measure::{
    decompose, fmt17, harmonic_measure_with, measure_distance, walk_on_spheres, DiscreteMeasure, Identity, WosOptions,
};
use confdisk::motion::{
    default_t_grid, fitness_report, harmonicity_scan, FitnessOptions, Motion, Tolerances,
};
use confdisk::potential::{
    cell_energy, check_energy_radius, energy_pushforward_scan, equilibrium_measure, EnergyReport, EquilibriumOptions,
};
use confdisk::zhukovskii::{check_lifted_pairs, commuting_residual, lift_residual, zhukovskii_lift, zhukovskii_preimage};
use confdisk::C64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::scene::SceneSpec;
use crate::{CliError, Command, Outcome, Resolved};

const DEFAULT_SAMPLES: usize = 100_000;

pub(crate) fn dispatch(cmd: Command, scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    match cmd {
        Command::Radius => radius(scene, o),
        Command::Map => map(scene, o),
        Command::Hmeasure => hmeasure(scene, o),
        Command::Decompose => decomposition(scene, o),
        Command::Energy => energy(scene, o),
        Command::Equilibrium => equilibrium(scene, o),
        Command::Wos => wos(scene, o),
        Command::Zhukovskii => zhukovskii(scene, o),
        Command::Fitness => fitness(scene, o),
        Command::Harmonicity => harmonicity(scene, o),
        Command::MotionScan => motion_scan(scene, o),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn center_value(p: ExtPoint) -> Value {
    match p {
        ExtPoint::Infinity => json!("inf"),
        ExtPoint::Finite(z) => json!([z.re, z.im]),
    }
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::Disk => "disk",
        Model::Exterior => "exterior",
    }
}

fn atoms_value(mu: &DiscreteMeasure) -> Value {
    Value::Array(
        mu.atoms()
            .iter()
            .zip(mu.cumulative())
            .map(|(a, c)| {
                json!({
                    "param": a.param,
                    "point": [a.point.re, a.point.im],
                    "weight": a.weight,
                    "cumulative": c,
                    "tag": a.tag.as_str(),
                })
            })
            .collect(),
    )
}

fn measure_outcome(mu: &DiscreteMeasure, mut extra: serde_json::Map<String, Value>) -> Outcome {
    extra.insert("total".into(), json!(mu.total()));
    extra.insert("atoms".into(), atoms_value(mu));
    Outcome {
        results: Value::Object(extra),
        csv: mu.to_csv(),
        warnings: mu.warnings.clone(),
    }
}

fn radius(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let (_, g) = scene.riemann_map(o.t, o.n)?;
    let r = g.conformal_radius();
    Ok(Outcome {
        results: json!({
            "t": [o.t.re, o.t.im],
            "radius": r,
            "log_radius": r.ln(),
            "center": center_value(g.center()),
            "model": model_name(g.model()),
        }),
        csv: format!("t_re,t_im,radius\n{},{},{}\n", fmt17(o.t.re), fmt17(o.t.im), fmt17(r)),
        warnings: vec![],
    })
}

/// A float rendered with 17 significant digits as a JSON number.
fn exact(x: f64) -> Value {
    if x.is_finite() {
        serde_json::from_str(&fmt17(x)).expect("valid number")
    } else {
        Value::Null
    }
}

fn map(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let (_, g) = scene.riemann_map(o.t, o.n)?;
    let chain: Vec<Value> = g
        .chain()
        .descriptors()
        .iter()
        .map(|d| json!({"name": d.name, "inverse": d.inverse, "coeffs": d.coeffs.iter().map(|&c| exact(c)).collect::<Vec<_>>()}))
        .collect();
    let mut csv = String::from("angle,point_re,point_im,tag\n");
    let mut boundary = Vec::with_capacity(o.n);
    let mut warnings = Vec::new();
    for k in 0..o.n {
        let a = k as f64 / o.n as f64;
        let b = g.boundary_sample(a)?;
        if !b.converged {
            warnings.push(format!("radial limit at angle {a} did not converge"));
        }
        let _ = writeln!(csv, "{},{},{},{}", fmt17(a), fmt17(b.point.re), fmt17(b.point.im), b.tag.as_str());
        boundary.push(json!({"angle": a, "point": [b.point.re, b.point.im], "tag": b.tag.as_str()}));
    }
    Ok(Outcome {
        results: json!({
            "model": model_name(g.model()),
            "center": center_value(g.center()),
            "radius": g.conformal_radius(),
            "rotation": g.rotation(),
            "boundary_exact": g.boundary_exact(),
            "chain": chain,
            "boundary": boundary,
        }),
        csv,
        warnings,
    })
}

fn hmeasure(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let (_, g) = scene.riemann_map(o.t, o.n)?;
    let mu = harmonic_measure_with(&g, o.n, o.exec)?;
    Ok(measure_outcome(&mu, serde_json::Map::new()))
}

fn decomposition(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let (_, g) = scene.riemann_map(o.t, o.n)?;
    let mu = harmonic_measure_with(&g, o.n, o.exec)?;
    let c = boundary_correspondence_with(&g, o.n.max(8), o.exec)?;
    let s = g.boundary_sample(0.0)?.point;
    let d = decompose(&mu, &c, s)?;
    let mut extra = serde_json::Map::new();
    extra.insert("marked".into(), json!([s.re, s.im]));
    extra.insert("alpha".into(), json!(d.alpha.total()));
    extra.insert("beta_minus".into(), json!(d.beta_minus.total()));
    extra.insert("beta_plus".into(), json!(d.beta_plus.total()));
    Ok(measure_outcome(&mu, extra))
}

fn energy_csv(r: &EnergyReport) -> String {
    let opt = |x: Option<f64>| x.map(fmt17).unwrap_or_default();
    format!(
        "energy,log_rad,discrepancy,iterations,converged\n{},{},{},{},{}\n",
        fmt17(r.energy),
        opt(r.log_rad),
        opt(r.discrepancy),
        r.iterations,
        r.converged
    )
}

fn energy(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let (_, g) = scene.riemann_map(o.t, o.n)?;
    let mut warnings = Vec::new();
    let report = if g.center().is_infinite() {
        check_energy_radius(&g, o.n, o.exec)?
    } else {
        warnings.push("the energy identity applies to disks centered at ∞; radius not compared".into());
        let mu = harmonic_measure_with(&g, o.n, o.exec)?;
        EnergyReport {
            energy: cell_energy(&mu, o.exec)?,
            log_rad: None,
            discrepancy: None,
            iterations: 0,
            converged: true,
        }
    };
    Ok(Outcome {
        results: to_value(&report),
        csv: energy_csv(&report),
        warnings,
    })
}

fn equilibrium(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let (disk, g) = scene.riemann_map(o.t, o.n)?;
    let mut opts = EquilibriumOptions {
        exec: o.exec,
        ..EquilibriumOptions::default()
    };
    if let Some(tol) = o.tol {
        opts.tolerance = tol;
    }
    let (mu, report) = equilibrium_measure(disk, o.n, opts)?;
    let mut extra = serde_json::Map::new();
    extra.insert("report".into(), to_value(&report));
    if g.center().is_infinite() {
        let omega = harmonic_measure_with(&g, o.n, o.exec)?;
        extra.insert("ks_to_harmonic".into(), json!(measure_distance(&mu, &omega)?));
    }
    Ok(measure_outcome(&mu, extra))
}

fn wos(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let (disk, g) = scene.riemann_map(o.t, o.n)?;
    let samples = scene.options.samples.unwrap_or(DEFAULT_SAMPLES);
    let opts = WosOptions {
        exec: o.exec,
        ..WosOptions::default()
    };
    let mu = walk_on_spheres(&disk, samples, o.seed, opts)?;
    let omega = harmonic_measure_with(&g, o.n, o.exec)?;
    let mut extra = serde_json::Map::new();
    extra.insert("samples".into(), json!(samples));
    extra.insert("ks_to_conformal".into(), json!(measure_distance(&mu, &omega)?));
    Ok(measure_outcome(&mu, extra))
}

fn zhukovskii(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let (disk, g) = scene.riemann_map(o.t, o.n)?;
    let lift = zhukovskii_preimage(&disk, &g)?;
    let r_base = lift.base_map.conformal_radius();
    let r_lift = lift.lifted_map.conformal_radius();
    let residual = lift_residual(&lift)?;
    let id = Identity;
    let psi = zhukovskii_lift(&id, &lift, &lift)?;
    let commuting = commuting_residual(&psi, o.n.min(256))?;
    let (pairs, pairs_ok) = check_lifted_pairs(&lift, o.n.min(256))?;
    let csv = format!(
        "radius_base,radius_lifted,radius_difference,lift_residual,identity_commuting_residual,lifted_biaccessible_pairs,pairs_ok\n{},{},{},{},{},{},{}\n",
        fmt17(r_base),
        fmt17(r_lift),
        fmt17((r_lift - r_base).abs()),
        fmt17(residual),
        fmt17(commuting),
        pairs,
        pairs_ok
    );
    Ok(Outcome {
        results: json!({
            "radius_base": r_base,
            "radius_lifted": r_lift,
            "radius_difference": (r_lift - r_base).abs(),
            "lift_residual": residual,
            "identity_commuting_residual": commuting,
            "lifted_biaccessible_pairs": pairs,
            "pairs_ok": pairs_ok,
        }),
        csv,
        warnings: vec![],
    })
}

fn t_grid(scene: &SceneSpec) -> Vec<C64> {
    scene.options.t_grid.clone().unwrap_or_else(default_t_grid)
}

fn fitness(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let m = scene.motion()?;
    let opts = FitnessOptions {
        n: o.n,
        exec: o.exec,
        ..FitnessOptions::default()
    };
    let report = fitness_report(m, &t_grid(scene), opts)?;
    let warnings = report
        .records
        .iter()
        .flat_map(|r| r.notes.iter().map(move |n| format!("t = {}: {n}", r.t)))
        .collect();
    let mut results = to_value(&report);
    results["all_pass"] = json!(report.all_pass());
    results["all_fail"] = json!(report.all_fail());
    Ok(Outcome {
        results,
        csv: report.to_csv(),
        warnings,
    })
}

fn harmonicity(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let m = scene.motion()?;
    let radii = scene.options.radii.clone().unwrap_or_else(|| vec![0.25, 0.5, 0.75]);
    let tol = o.tol.unwrap_or(Tolerances::default().vi);
    let n = o.n;
    let log_rad = move |t: C64| -> confdisk::Result<f64> { Ok(m.moved(t, n)?.conformal_radius().ln()) };
    let report = harmonicity_scan(&log_rad, &[C64::new(0.0, 0.0)], &radii, 16, tol, o.exec)?;
    let mut csv = String::from("center_re,center_im,radius,residual\n");
    for e in &report.entries {
        let _ = writeln!(csv, "{},{},{},{}", fmt17(e.center.re), fmt17(e.center.im), fmt17(e.radius), fmt17(e.residual));
    }
    Ok(Outcome {
        results: to_value(&report),
        csv,
        warnings: vec![],
    })
}

fn motion_scan(scene: &SceneSpec, o: &Resolved) -> Result<Outcome, CliError> {
    let m = scene.motion()?;
    let grid = t_grid(scene);
    let tol = o.tol.unwrap_or(1e-6);
    let g0: RiemannMap = m.moved(C64::new(0.0, 0.0), o.n)?;
    let omega0 = harmonic_measure_with(&g0, o.n, o.exec)?;
    let scan = energy_pushforward_scan(m, &omega0, &grid, tol, o.exec)?;
    let radii = o
        .exec
        .map(&grid, |&t| -> confdisk::Result<f64> { Ok(m.moved(t, o.n)?.conformal_radius()) })
        .into_iter()
        .collect::<confdisk::Result<Vec<f64>>>()?;
    let mut csv = String::from("t_re,t_im,radius,h,e_omega,holds\n");
    let mut rows = Vec::with_capacity(grid.len());
    for (row, r) in scan.rows.iter().zip(&radii) {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt17(row.t.re),
            fmt17(row.t.im),
            fmt17(*r),
            fmt17(row.h),
            fmt17(row.e_omega),
            row.holds
        );
        rows.push(json!({"t": [row.t.re, row.t.im], "radius": r, "h": row.h, "e_omega": row.e_omega, "holds": row.holds}));
    }
    Ok(Outcome {
        results: json!({
            "motion": m.label(),
            "rows": rows,
            "mean_value_residual": scan.mean_value_residual,
            "tolerance": scan.tolerance,
            "all_hold": scan.all_hold,
        }),
        csv,
        warnings: vec![],
    })
}
