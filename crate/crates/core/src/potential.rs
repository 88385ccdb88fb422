//! Logarithmic energy, equilibrium measures and the energy–radius identity.

use std::sync::Arc;

use serde::Serialize;

use crate::confmap::{AccessTag, RiemannMap};
use crate::exec::Exec;
use crate::geom::PointedDisk;
use crate::geom::ExtPoint;
use crate::measure::{harmonic_measure_with, pushforward_with, BoundaryPoint, DiscreteMeasure};
use crate::motion::{Motion, MotionAt};
use crate::{Error, Result, C64};

/// Energy of a measure against the radius it should equal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyReport {
    pub energy: f64,
    pub log_rad: Option<f64>,
    pub discrepancy: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// `−Σ_{i≠j} wᵢ wⱼ log|zᵢ − zⱼ|` over the atoms of `mu`.
pub fn energy(mu: &DiscreteMeasure) -> Result<f64> {
    let pts: Vec<(C64, f64)> = mu.atoms().iter().map(|a| (a.point, a.weight)).collect();
    pair_energy(&pts, Exec::Sequential)
}

fn pair_energy(pts: &[(C64, f64)], exec: Exec) -> Result<f64> {
    if pts.len() < 2 {
        return Err(Error::invalid("energy needs at least two atoms"));
    }
    let rows = exec.map_range(pts.len(), |i| {
        let (zi, wi) = pts[i];
        let mut s = 0.0;
        for (j, &(zj, wj)) in pts.iter().enumerate() {
            if j == i || wi == 0.0 || wj == 0.0 {
                continue;
            }
            let d = (zi - zj).norm();
            if d == 0.0 {
                return Err(Error::numeric(format!("atoms {i} and {j} coincide at {zi}")));
            }
            s -= wi * wj * d.ln();
        }
        Ok(s)
    });
    rows.into_iter().sum()
}

/// Self-energy of mass `w` spread uniformly over a segment of length `l`.
fn cell_self_energy(w: f64, l: f64) -> f64 {
    w * w * (1.5 - l.ln())
}

/// Energy of `mu` read as a density: atoms closer than roundoff (the two
/// sides of a slit) are merged and each atom contributes the self-energy of
/// a uniform cell spanning half the gaps to its neighbors.
pub fn cell_energy(mu: &DiscreteMeasure, exec: Exec) -> Result<f64> {
    cell_energy_of(&merged_atoms(mu), !mu.domain().boundary.has_slits(), exec)
}

fn cell_energy_of(pts: &[(C64, f64)], closed: bool, exec: Exec) -> Result<f64> {
    if pts.len() < 2 {
        return Err(Error::invalid("energy needs at least two distinct atoms"));
    }
    let cells = cell_lengths(pts, closed);
    let off = pair_energy(pts, exec)?;
    Ok(off + pts.iter().zip(&cells).map(|(&(_, w), &l)| cell_self_energy(w, l)).sum::<f64>())
}

fn merged_atoms(mu: &DiscreteMeasure) -> Vec<(C64, f64)> {
    let tol = 1e-9 * (1.0 + mu.domain().boundary.diameter());
    let mut out: Vec<(C64, f64)> = Vec::with_capacity(mu.len());
    for a in mu.atoms() {
        if a.weight == 0.0 {
            continue;
        }
        match out.iter_mut().rev().take(4).find(|(z, _)| (*z - a.point).norm() <= tol) {
            Some(slot) => slot.1 += a.weight,
            None => out.push((a.point, a.weight)),
        }
    }
    out
}

/// Half the sum of the gaps to the neighbors along the list.
fn cell_lengths(pts: &[(C64, f64)], closed: bool) -> Vec<f64> {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let prev = if i > 0 {
                Some((pts[i].0 - pts[i - 1].0).norm())
            } else if closed {
                Some((pts[0].0 - pts[n - 1].0).norm())
            } else {
                None
            };
            let next = if i + 1 < n {
                Some((pts[i + 1].0 - pts[i].0).norm())
            } else if closed {
                Some((pts[0].0 - pts[n - 1].0).norm())
            } else {
                None
            };
            match (prev, next) {
                (Some(a), Some(b)) => 0.5 * (a + b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => 1.0,
            }
        })
        .collect()
}

/// Options for [`equilibrium_measure`].
#[derive(Debug, Clone, Copy)]
pub struct EquilibriumOptions {
    pub max_iterations: usize,
    /// Bound on the sup norm of the projected gradient.
    pub tolerance: f64,
    pub exec: Exec,
}

impl Default for EquilibriumOptions {
    fn default() -> Self {
        EquilibriumOptions {
            max_iterations: 200_000,
            tolerance: 1e-9,
            exec: Exec::default(),
        }
    }
}

/// Weights on `points` minimizing the discrete energy with cell
/// self-energies over the probability simplex.
///
/// Projected gradient descent from uniform weights with step `1/(2L)`,
/// `L` the largest absolute row sum of the kernel.
pub fn equilibrium_weights(
    points: &[C64],
    cells: &[f64],
    opts: EquilibriumOptions,
) -> Result<(Vec<f64>, EnergyReport)> {
    let n = points.len();
    if n < 8 {
        return Err(Error::invalid("equilibrium measure needs at least 8 support points"));
    }
    let rows = opts.exec.map_range(n, |i| {
        (0..n)
            .map(|j| {
                if i == j {
                    Ok(1.5 - cells[i].ln())
                } else {
                    let d = (points[i] - points[j]).norm();
                    if d == 0.0 {
                        Err(Error::invalid(format!("support points {i} and {j} coincide")))
                    } else {
                        Ok(-d.ln())
                    }
                }
            })
            .collect::<Result<Vec<f64>>>()
    });
    let kernel: Vec<Vec<f64>> = rows.into_iter().collect::<Result<_>>()?;
    let lip = kernel
        .iter()
        .map(|r| r.iter().map(|k| k.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let step = 0.5 / lip;
    let mat_vec = |w: &[f64]| -> Vec<f64> {
        kernel
            .iter()
            .map(|r| r.iter().zip(w).map(|(k, w)| k * w).sum())
            .collect()
    };
    let mut w = vec![1.0 / n as f64; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        let kw = mat_vec(&w);
        let trial: Vec<f64> = w.iter().zip(&kw).map(|(w, g)| w - step * 2.0 * g).collect();
        let next = project_simplex(&trial);
        let gap = next
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
            / step;
        w = next;
        iterations += 1;
        if gap < opts.tolerance {
            converged = true;
            break;
        }
    }
    let kw = mat_vec(&w);
    let e = w.iter().zip(&kw).map(|(a, b)| a * b).sum();
    let report = EnergyReport {
        energy: e,
        log_rad: None,
        discrepancy: None,
        iterations,
        converged,
    };
    if !converged {
        return Err(Error::Unconverged {
            message: format!("projected gradient stalled after {iterations} iterations"),
            last: w,
        });
    }
    Ok((w, report))
}

/// Euclidean projection onto the probability simplex.
pub fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    let mut shift = 0.0;
    for (k, &x) in u.iter().enumerate() {
        acc += x;
        let s = (acc - 1.0) / (k + 1) as f64;
        if x - s > 0.0 {
            shift = s;
        }
    }
    v.iter().map(|x| (x - shift).max(0.0)).collect()
}

/// Equilibrium measure of `∂U` on `n` support points at equal point-set
/// arclength.
pub fn equilibrium_measure(
    domain: Arc<PointedDisk>,
    n: usize,
    opts: EquilibriumOptions,
) -> Result<(DiscreteMeasure, EnergyReport)> {
    let b = &domain.boundary;
    let samples = b.sample_point_set(n);
    let points: Vec<C64> = samples.iter().map(|s| s.0).collect();
    let cells = vec![b.total_param() / n as f64; n];
    let (w, report) = equilibrium_weights(&points, &cells, opts)?;
    let mu = DiscreteMeasure::new(
        domain.clone(),
        points
            .iter()
            .zip(&w)
            .map(|(&p, &w)| (BoundaryPoint::new(p, None), w, AccessTag::Unknown)),
    )?;
    Ok((mu, report))
}

/// `E(ω)` for the harmonic measure from ∞ with `n` cells, against the
/// conformal radius. With the energy signed as above the identity reads
/// `E(ω) = −log rad(U, ∞)`; `discrepancy` is `|E(ω) + log rad|`.
pub fn check_energy_radius(g: &RiemannMap, n: usize, exec: Exec) -> Result<EnergyReport> {
    if !g.target().center.is_infinite() {
        return Err(Error::precondition("the energy identity needs the disk centered at ∞"));
    }
    let omega = harmonic_measure_with(g, n, exec)?;
    let e = cell_energy(&omega, exec)?;
    let lr = g.conformal_radius().ln();
    Ok(EnergyReport {
        energy: e,
        log_rad: Some(lr),
        discrepancy: Some((e + lr).abs()),
        iterations: 0,
        converged: true,
    })
}

/// One parameter of [`energy_pushforward_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyScanRow {
    pub t: C64,
    /// `E((φ_t)∗ω₀)`.
    pub h: f64,
    /// `E(ω_t)`.
    pub e_omega: f64,
    /// `h ≥ E(ω_t) − tolerance`.
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnergyScan {
    pub rows: Vec<EnergyScanRow>,
    /// Largest `|mean of h over a circle − h(0)|` over the circles about 0
    /// formed by grid points of equal modulus; `None` without `t = 0`.
    pub mean_value_residual: Option<f64>,
    pub tolerance: f64,
    pub all_hold: bool,
}

/// Compares the energy of the transported measure `(φ_t)∗ω₀` with that of
/// `ω_t` along a motion.
///
/// Energies are cell energies at the resolution of `omega0`. A disk with a
/// finite center `c` is first sent to one centered at ∞ by
/// `z ↦ 1/(z − c)`, where harmonic measure is the equilibrium measure.
pub fn energy_pushforward_scan(
    m: &dyn Motion,
    omega0: &DiscreteMeasure,
    t_grid: &[C64],
    tolerance: f64,
    exec: Exec,
) -> Result<EnergyScan> {
    let n = omega0.len();
    let rows = exec.map(t_grid, |&t| -> Result<EnergyScanRow> {
        let g = m.moved(t, n)?;
        let omega = harmonic_measure_with(&g, n, Exec::Sequential)?;
        let pushed = if t.norm() == 0.0 {
            omega0.clone()
        } else {
            pushforward_with(omega0, &MotionAt { motion: m, t }, omega.domain_arc(), Exec::Sequential)?
        };
        let center = g.center();
        let closed = !omega.domain().boundary.has_slits();
        let transported = |mu: &DiscreteMeasure| -> Result<f64> {
            let mut pts = merged_atoms(mu);
            if let ExtPoint::Finite(c) = center {
                for p in pts.iter_mut() {
                    p.0 = 1.0 / (p.0 - c);
                }
            }
            cell_energy_of(&pts, closed, Exec::Sequential)
        };
        let h = transported(&pushed)?;
        let e_omega = transported(&omega)?;
        Ok(EnergyScanRow {
            t,
            h,
            e_omega,
            holds: h >= e_omega - tolerance,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mean_value_residual = rows.iter().find(|r| r.t.norm() == 0.0).map(|r0| {
        let same = |a: f64, b: f64| (a - b).abs() <= 1e-12;
        let mut moduli: Vec<f64> = rows.iter().map(|r| r.t.norm()).filter(|&x| x > 0.0).collect();
        moduli.sort_by(f64::total_cmp);
        moduli.dedup_by(|a, b| same(*a, *b));
        moduli
            .iter()
            .map(|&rho| {
                let on: Vec<f64> = rows.iter().filter(|r| same(r.t.norm(), rho)).map(|r| r.h).collect();
                (on.iter().sum::<f64>() / on.len() as f64 - r0.h).abs()
            })
            .fold(0.0, f64::max)
    });
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(EnergyScan {
        rows,
        mean_value_residual,
        tolerance,
        all_hold,
    })
}
