use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{check_parameter, Motion, MotionAt};
use crate::confmap::{Model, RiemannMap};
use crate::exec::Exec;
use crate::geom::{cis, Angle};
use crate::measure::{harmonic_measure_with, measure_distance, pushforward_with, BoundaryPoint, DiscreteMeasure};
use crate::{Error, Result, C64};

/// Golden mean conjugate `(√5 − 1)/2`.
pub const GOLDEN_THETA: f64 = 0.618_033_988_749_894_9;

/// Pass thresholds `τ` per condition. A deviation below `τ` passes, above
/// `10τ` fails, and anything between is indeterminate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub iii: f64,
    pub iv: f64,
    pub v: f64,
    pub vi: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            iii: 5e-3,
            iv: 1e-5,
            v: 1e-2,
            vi: 1e-2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    pub fn classify(dev: f64, tau: f64) -> Verdict {
        if dev < tau {
            Verdict::Pass
        } else if dev > 10.0 * tau {
            Verdict::Fail
        } else {
            Verdict::Indeterminate
        }
    }

    pub fn letter(self) -> char {
        match self {
            Verdict::Pass => 'P',
            Verdict::Fail => 'F',
            Verdict::Indeterminate => '?',
        }
    }
}

const CROWDING_SLACK: f64 = 1e-4;

/// Samples `(a, σ(a), converged)` of the induced circle map.
#[derive(Debug, Clone, Serialize)]
pub struct CircleMapSample {
    pub pairs: Vec<(f64, f64, bool)>,
    pub note: String,
}

impl CircleMapSample {
    /// `sup |σ(a) − a|` in turns over convergent samples.
    pub fn sup_deviation(&self) -> f64 {
        self.pairs
            .iter()
            .filter(|p| p.2)
            .map(|&(a, s, _)| Angle::new(a).distance(Angle::new(s)))
            .fold(0.0, f64::max)
    }
}

/// `σ = g_t⁻¹ ∘ φ_t ∘ g₀` on `n` angles at cell midpoints.
pub fn induced_circle_map(
    m: &dyn Motion,
    t: C64,
    g0: &RiemannMap,
    gt: &RiemannMap,
    n: usize,
) -> Result<CircleMapSample> {
    let mut pairs = Vec::with_capacity(n);
    let mut failures = 0;
    for k in 0..n {
        let a = (k as f64 + 0.5) / n as f64;
        let b = g0.boundary_sample(a)?;
        if !b.converged {
            pairs.push((a, f64::NAN, false));
            continue;
        }
        let q = m.apply(BoundaryPoint::new(b.point, b.tag.side()), t)?;
        match gt.angle_of(q.point, q.side) {
            Ok(s) => pairs.push((a, s.rem_euclid(1.0), true)),
            Err(_) => {
                failures += 1;
                pairs.push((a, f64::NAN, false));
            }
        }
    }
    if failures * 100 > n {
        return Err(Error::numeric(format!("{failures} of {n} boundary points could not be inverted")));
    }
    // An orientation-preserving circle map winds once. Backward steps below
    // `CROWDING_SLACK` are rounding in regions of tiny harmonic measure.
    let good: Vec<f64> = pairs.iter().filter(|p| p.2).map(|p| p.1).collect();
    let steps: Vec<f64> = (0..good.len())
        .map(|i| (good[(i + 1) % good.len()] - good[i] + 0.5).rem_euclid(1.0) - 0.5)
        .collect();
    let winding: f64 = steps.iter().sum();
    let backward = steps.iter().fold(0.0f64, |m, &d| m.max(-d));
    if good.len() > 1 && ((winding - 1.0).abs() > 1e-6 || backward > CROWDING_SLACK) {
        return Err(Error::numeric(format!(
            "induced circle map is not monotone (winds {winding:.6} times, backward step {backward:.3e})"
        )));
    }
    Ok(CircleMapSample {
        pairs,
        note: format!("g_t normalized by g_t(1) = φ_t(s₀) with s₀ = {}", m.marked()),
    })
}

/// `g ∘ R_θ ∘ g⁻¹` at `z`.
pub fn intrinsic_rotation(g: &RiemannMap, theta: f64, z: C64) -> Result<C64> {
    let zeta = g.inverse(z)?;
    g.eval(zeta * cis(theta))
}

/// `|∂f/∂t̄|` at `t0` from the four-point stencil.
pub fn holomorphy_residual(f: &dyn Fn(C64) -> Result<C64>, t0: C64, step: f64) -> Result<f64> {
    let i = C64::new(0.0, 1.0);
    let s = step;
    let d = f(t0 + s)? - f(t0 - s)? + i * f(t0 + i * s)? - i * f(t0 - i * s)?;
    Ok(0.25 * d.norm() / s)
}

/// Taylor coefficients `a_0..=a_{n_max}` of `g` at 0 by Cauchy integrals on `|z| = r`.
pub fn taylor_coefficients(g: &RiemannMap, n_max: usize, r: f64) -> Result<Vec<C64>> {
    if g.model() != Model::Disk {
        return Err(Error::precondition("Taylor coefficients need a disk-model map"));
    }
    let m = 64;
    let values = (0..m)
        .map(|j| g.eval(r * cis(j as f64 / m as f64)))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=n_max)
        .map(|k| {
            let s: C64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * cis(-((j * k) as f64) / m as f64))
                .sum();
            s / (m as f64 * r.powi(k as i32))
        })
        .collect())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct HarmonicityEntry {
    pub center: C64,
    pub radius: f64,
    pub residual: f64,
}

/// Mean-value residuals of a function of `t` on circles.
#[derive(Debug, Clone, Serialize)]
pub struct HarmonicityReport {
    pub entries: Vec<HarmonicityEntry>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

/// `|(1/n) Σ u(c + r e^{2πik/n}) − u(c)|` for every center and radius.
pub fn harmonicity_scan(
    u: &(dyn Fn(C64) -> Result<f64> + Sync),
    centers: &[C64],
    radii: &[f64],
    n_circle: usize,
    tolerance: f64,
    exec: Exec,
) -> Result<HarmonicityReport> {
    let mut jobs = Vec::new();
    for &c in centers {
        for &r in radii {
            if c.norm() + r >= 1.0 {
                return Err(Error::invalid(format!("circle at {c} of radius {r} leaves the unit disk")));
            }
            jobs.push((c, r));
        }
    }
    let entries = exec
        .map(&jobs, |&(c, r)| -> Result<HarmonicityEntry> {
            let mut sum = 0.0;
            for k in 0..n_circle {
                sum += u(c + r * cis(k as f64 / n_circle as f64))?;
            }
            Ok(HarmonicityEntry {
                center: c,
                radius: r,
                residual: (sum / n_circle as f64 - u(c)?).abs(),
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let max_residual = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    Ok(HarmonicityReport {
        entries,
        max_residual,
        tolerance,
        verdict: Verdict::classify(max_residual, tolerance),
    })
}

/// Three circles of radii 0.25, 0.5, 0.75 with 16 angles each, plus the origin.
pub fn default_t_grid() -> Vec<C64> {
    let mut grid = vec![C64::new(0.0, 0.0)];
    for r in [0.25, 0.5, 0.75] {
        grid.extend((0..16).map(|k| circle_point(r, k, 16)));
    }
    grid
}

fn circle_point(r: f64, k: usize, n: usize) -> C64 {
    r * cis(k as f64 / n as f64)
}

#[derive(Debug, Clone, Copy)]
pub struct FitnessOptions {
    /// Boundary resolution for maps, measures and circle maps.
    pub n: usize,
    pub theta: f64,
    /// Stencil step for the `∂̄` residual.
    pub step: f64,
    /// Points per circle for the mean-value residual of `log rad`.
    pub n_circle: usize,
    pub tol: Tolerances,
    pub exec: Exec,
}

impl Default for FitnessOptions {
    fn default() -> Self {
        FitnessOptions {
            n: 512,
            theta: GOLDEN_THETA,
            step: 1e-4,
            n_circle: 16,
            tol: Tolerances::default(),
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitnessRecord {
    pub t: C64,
    pub dev_iii: Option<f64>,
    pub dev_iv: Option<f64>,
    pub dev_v: Option<f64>,
    pub dev_vi: Option<f64>,
    pub verdicts: [Verdict; 4],
    pub consistent: bool,
    pub notes: Vec<String>,
}

impl FitnessRecord {
    pub fn verdict_string(&self) -> String {
        self.verdicts.iter().map(|v| v.letter()).collect()
    }
}

/// Conditions (iii)–(vi) evaluated on a set of parameters.
#[derive(Debug, Clone, Serialize)]
pub struct FitnessReport {
    pub motion: String,
    pub theta: f64,
    pub n: usize,
    pub tolerances: Tolerances,
    pub records: Vec<FitnessRecord>,
    pub consistent: bool,
}

impl FitnessReport {
    /// CSV rows `t_re,t_im,dev_iii,dev_iv,dev_v,dev_vi,verdicts,consistent`.
    /// Verdicts are four letters `P`, `F` or `?` in condition order; a
    /// deviation that could not be computed is left empty.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t_re,t_im,dev_iii,dev_iv,dev_v,dev_vi,verdicts,consistent\n");
        let f = |x: Option<f64>| x.map(crate::measure::fmt17).unwrap_or_default();
        for r in &self.records {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                crate::measure::fmt17(r.t.re),
                crate::measure::fmt17(r.t.im),
                f(r.dev_iii),
                f(r.dev_iv),
                f(r.dev_v),
                f(r.dev_vi),
                r.verdict_string(),
                r.consistent
            );
        }
        s
    }

    /// Whether every determinate verdict of every record is `Pass`.
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| !r.verdicts.contains(&Verdict::Fail))
    }

    /// Whether every determinate verdict of every record is `Fail`.
    pub fn all_fail(&self) -> bool {
        self.records.iter().all(|r| !r.verdicts.contains(&Verdict::Pass))
    }
}

fn key(t: C64) -> (u64, u64) {
    (t.re.to_bits(), t.im.to_bits())
}

fn same_radius(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

/// Evaluates conditions (iii)–(vi) at each `t`.
///
/// `dev_iii` is `sup |σ(a) − a|`; `dev_iv` the `∂̄` residual of
/// `t ↦ ρ_{θ,t}(z)` at three probe points; `dev_v` the KS distance between
/// `(φ_t)∗ω₀` and `ω_t`; `dev_vi` the mean-value residual of `log rad` on
/// the circle about 0 through `t` (all circles for `t = 0`). At `t = 0`
/// conditions (iii) and (v) hold for every motion and are reported as
/// indeterminate.
pub fn fitness_report(m: &dyn Motion, t_samples: &[C64], opts: FitnessOptions) -> Result<FitnessReport> {
    for &t in t_samples {
        check_parameter(t)?;
    }
    let exec = opts.exec;
    let zero = C64::new(0.0, 0.0);
    let g0 = m.moved(zero, opts.n)?;
    let omega0 = harmonic_measure_with(&g0, opts.n, Exec::Sequential)?;

    // log rad on the origin and on every circle through a sample.
    let mut radii: Vec<f64> = Vec::new();
    for t in t_samples {
        let r = t.norm();
        if r > 0.0 && !radii.iter().any(|&x| same_radius(x, r)) {
            radii.push(r);
        }
    }
    let mut circle_ts = vec![zero];
    for &r in &radii {
        circle_ts.extend((0..opts.n_circle).map(|k| circle_point(r, k, opts.n_circle)));
    }
    let log_rads: Vec<Result<f64>> = exec.map(&circle_ts, |&t| Ok(m.moved(t, opts.n)?.conformal_radius().ln()));
    let mut circle_residual: HashMap<usize, std::result::Result<f64, String>> = HashMap::new();
    let center = log_rads[0].clone();
    for i in 0..radii.len() {
        let vals = &log_rads[1 + i * opts.n_circle..1 + (i + 1) * opts.n_circle];
        let res = match (&center, vals.iter().cloned().collect::<Result<Vec<f64>>>()) {
            (Ok(c), Ok(v)) => Ok((v.iter().sum::<f64>() / v.len() as f64 - c).abs()),
            (Err(e), _) => Err(e.to_string()),
            (_, Err(e)) => Err(e.to_string()),
        };
        circle_residual.insert(i, res);
    }
    let mut seen = HashMap::new();
    for (i, t) in circle_ts.iter().enumerate() {
        seen.entry(key(*t)).or_insert(i);
    }

    let records = exec.map(t_samples, |&t| {
        let mut notes = Vec::new();
        let gt = m.moved(t, opts.n);
        let gt = match gt {
            Ok(g) => Some(g),
            Err(e) => {
                notes.push(format!("moved disk: {e}"));
                None
            }
        };
        let vacuous = t.norm() == 0.0;

        let dev_iii = gt.as_ref().and_then(|gt| {
            induced_circle_map(m, t, &g0, gt, opts.n)
                .map(|s| s.sup_deviation())
                .map_err(|e| notes.push(format!("(iii): {e}")))
                .ok()
        });
        let dev_iv = gt.as_ref().and_then(|gt| {
            rotation_residual(m, t, gt, opts)
                .map_err(|e| notes.push(format!("(iv): {e}")))
                .ok()
        });
        let dev_v = gt.as_ref().and_then(|gt| {
            measure_deviation(m, t, &omega0, gt, opts.n)
                .map_err(|e| notes.push(format!("(v): {e}")))
                .ok()
        });
        let dev_vi = if vacuous {
            let all: std::result::Result<Vec<f64>, String> =
                (0..radii.len()).map(|i| circle_residual[&i].clone()).collect();
            match all {
                Ok(v) if !v.is_empty() => Some(v.into_iter().fold(0.0, f64::max)),
                Ok(_) => None,
                Err(e) => {
                    notes.push(format!("(vi): {e}"));
                    None
                }
            }
        } else {
            let i = radii.iter().position(|&x| same_radius(x, t.norm())).expect("radius collected");
            match &circle_residual[&i] {
                Ok(v) => Some(*v),
                Err(e) => {
                    notes.push(format!("(vi): {e}"));
                    None
                }
            }
        };
        let verdict = |dev: Option<f64>, tau: f64| dev.map_or(Verdict::Indeterminate, |d| Verdict::classify(d, tau));
        let mut verdicts = [
            verdict(dev_iii, opts.tol.iii),
            verdict(dev_iv, opts.tol.iv),
            verdict(dev_v, opts.tol.v),
            verdict(dev_vi, opts.tol.vi),
        ];
        if vacuous {
            verdicts[0] = Verdict::Indeterminate;
            verdicts[2] = Verdict::Indeterminate;
            notes.push("(iii) and (v) hold trivially at t = 0".into());
        }
        let consistent = !(verdicts.contains(&Verdict::Pass) && verdicts.contains(&Verdict::Fail));
        FitnessRecord {
            t,
            dev_iii,
            dev_iv,
            dev_v,
            dev_vi,
            verdicts,
            consistent,
            notes,
        }
    });
    let consistent = records.iter().all(|r| r.consistent);
    Ok(FitnessReport {
        motion: m.label(),
        theta: opts.theta,
        n: opts.n,
        tolerances: opts.tol,
        records,
        consistent,
    })
}

fn rotation_residual(m: &dyn Motion, t: C64, gt: &RiemannMap, opts: FitnessOptions) -> Result<f64> {
    let i = C64::new(0.0, 1.0);
    let h = opts.step;
    let stencil = [t + h, t - h, t + i * h, t - i * h];
    let maps = stencil
        .iter()
        .map(|&s| m.moved(s, opts.n))
        .collect::<Result<Vec<_>>>()?;
    let r = match gt.model() {
        Model::Disk => 0.5,
        Model::Exterior => 2.0,
    };
    let mut sup: f64 = 0.0;
    for j in 0..3 {
        let z = gt.eval(r * cis(j as f64 / 3.0 + 0.1))?;
        let lookup = |s: C64| -> Result<C64> {
            let k = stencil
                .iter()
                .position(|&p| p == s)
                .expect("stencil point");
            intrinsic_rotation(&maps[k], opts.theta, z)
        };
        sup = sup.max(holomorphy_residual(&lookup, t, h)?);
    }
    Ok(sup)
}

fn measure_deviation(m: &dyn Motion, t: C64, omega0: &DiscreteMeasure, gt: &RiemannMap, n: usize) -> Result<f64> {
    let omega_t = harmonic_measure_with(gt, n, Exec::Sequential)?;
    let pushed = pushforward_with(omega0, &MotionAt { motion: m, t }, omega_t.domain_arc(), Exec::Sequential)?;
    measure_distance(&pushed, &omega_t)
}
