use serde::Serialize;

use super::boundary_map::{BoundaryMap, BoundaryPoint};
use super::discrete::{measure_distance, pushforward_with, DiscreteMeasure};
use super::harmonic::{decompose, harmonic_measure_with};
use crate::confmap::{boundary_correspondence_with, RiemannMap};
use crate::exec::Exec;
use crate::geom::Angle;
use crate::Result;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitnessTolerances {
    /// KS tolerance for measure identities.
    pub measure: f64,
    /// Sup tolerance (turns) for the induced circle map.
    pub circle: f64,
}

impl Default for FitnessTolerances {
    fn default() -> Self {
        FitnessTolerances {
            measure: 1e-2,
            circle: 5e-3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitnessCheck {
    pub fit: bool,
    pub total_ok: bool,
    pub alpha_ok: bool,
    pub beta_minus_ok: bool,
    pub beta_plus_ok: bool,
    pub total_distance: f64,
    pub alpha_distance: f64,
    pub beta_minus_distance: f64,
    pub beta_plus_distance: f64,
    /// `sup |φ°(a) − a|` over convergent samples, in turns.
    pub deviation: f64,
    /// The measure verdict agrees with the circle-map verdict.
    pub consistent: bool,
}

/// Tests `φ∗α = α̃` and `φ∗β± = β̃±` for marked-point normalized maps
/// `g`, `g̃`, and independently measures how far `φ° = g̃⁻¹ ∘ φ ∘ g` is from
/// the identity.
pub fn static_fitness_check(
    g: &RiemannMap,
    gt: &RiemannMap,
    phi: &dyn BoundaryMap,
    n: usize,
    tol: FitnessTolerances,
    exec: Exec,
) -> Result<FitnessCheck> {
    let s = g.boundary_sample(0.0)?.point;
    let st = gt.boundary_sample(0.0)?.point;
    let omega = harmonic_measure_with(g, n, exec)?;
    let omega_t = harmonic_measure_with(gt, n, exec)?;
    let c = boundary_correspondence_with(g, 64, exec)?;
    let ct = boundary_correspondence_with(gt, 64, exec)?;
    let d = decompose(&omega, &c, s)?;
    let dt = decompose(&omega_t, &ct, st)?;
    let target = gt.target_arc();
    let push = |m: &DiscreteMeasure| pushforward_with(m, phi, target.clone(), exec);
    let total_distance = measure_distance(&push(&omega)?, &omega_t)?;
    let alpha_distance = measure_distance(&push(&d.alpha)?, &dt.alpha)?;
    let beta_minus_distance = measure_distance(&push(&d.beta_minus)?, &dt.beta_minus)?;
    let beta_plus_distance = measure_distance(&push(&d.beta_plus)?, &dt.beta_plus)?;

    let devs = exec.map_range(n, |k| -> Result<Option<f64>> {
        let a = (k as f64 + 0.5) / n as f64;
        let b = g.boundary_sample(a)?;
        if !b.converged {
            return Ok(None);
        }
        let q = phi.apply(BoundaryPoint::new(b.point, b.tag.side()))?;
        let at = gt.angle_of(q.point, q.side)?;
        Ok(Some(Angle::new(at).distance(Angle::new(a))))
    });
    let mut deviation: f64 = 0.0;
    for d in devs {
        if let Some(x) = d? {
            deviation = deviation.max(x);
        }
    }
    let total_ok = total_distance < tol.measure;
    let alpha_ok = alpha_distance < tol.measure;
    let beta_minus_ok = beta_minus_distance < tol.measure;
    let beta_plus_ok = beta_plus_distance < tol.measure;
    let fit = alpha_ok && beta_minus_ok && beta_plus_ok;
    Ok(FitnessCheck {
        fit,
        total_ok,
        alpha_ok,
        beta_minus_ok,
        beta_plus_ok,
        total_distance,
        alpha_distance,
        beta_minus_distance,
        beta_plus_distance,
        deviation,
        consistent: fit == (deviation < tol.circle),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::SlitPair;

    #[test]
    fn slit_pair_respects_measure_but_is_not_fit() {
        let pair = SlitPair::new(0.25, 0.05).unwrap();
        let r = static_fitness_check(&pair.g, &pair.gt, &pair, 1024, FitnessTolerances::default(), Exec::default()).unwrap();
        assert!(r.total_ok);
        assert!(!r.fit);
        assert!(r.consistent);
    }
}
