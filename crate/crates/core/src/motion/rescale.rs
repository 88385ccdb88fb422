use std::sync::Arc;

use super::{check_parameter, harmonicity_scan, Motion};
use crate::confmap::{Normalization, Primitive, Region, RiemannMap, Step};
use crate::exec::Exec;
use crate::geom::{cis, Mobius};
use crate::measure::BoundaryPoint;
use crate::{Error, Result, C64};

/// A motion composed with the dilations `z ↦ e^{−f(t)} z`, `f` holomorphic
/// with `Re f = log rad(U_t, ∞)`.
pub struct Rescaled {
    inner: Arc<dyn Motion>,
    /// Taylor coefficients of `f` in powers of `t/radius`.
    coeffs: Vec<C64>,
    radius: f64,
}

impl Rescaled {
    /// `f(t)`.
    pub fn log_scale(&self, t: C64) -> C64 {
        let x = t / self.radius;
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    fn dilation(&self, t: C64) -> C64 {
        (-self.log_scale(t)).exp()
    }
}

impl Motion for Rescaled {
    fn apply(&self, p: BoundaryPoint, t: C64) -> Result<BoundaryPoint> {
        check_parameter(t)?;
        let zero = C64::new(0.0, 0.0);
        let base = BoundaryPoint::new(p.point / self.dilation(zero), p.side);
        let q = self.inner.apply(base, t)?;
        Ok(BoundaryPoint::new(q.point * self.dilation(t), q.side))
    }

    fn moved(&self, t: C64, n: usize) -> Result<RiemannMap> {
        let g = self.inner.moved(t, n)?;
        let lambda = self.dilation(t);
        let disk = g.target().mobius_image(&Mobius::affine(lambda, C64::new(0.0, 0.0)), g.target().kind)?;
        let s = disk
            .marked
            .ok_or_else(|| Error::precondition("moved disk has no marked point"))?;
        let chain = g.chain().then(
            Step::forward(Primitive::Affine {
                scale: lambda,
                shift: C64::new(0.0, 0.0),
            }),
            Region::Plane,
        );
        RiemannMap::from_chain(chain, g.model(), Arc::new(disk), g.boundary_exact())?
            .renormalized(Normalization::Marked(s))
    }

    fn marked(&self) -> C64 {
        self.inner.marked() * self.dilation(C64::new(0.0, 0.0))
    }

    fn label(&self) -> String {
        format!("rescaled {}", self.inner.label())
    }
}

const COMPLETION_SAMPLES: usize = 64;

/// Rescales a motion centered at ∞ with harmonic `log rad` to constant
/// conformal radius.
///
/// Harmonicity is checked on the circles about 0 of the given radii; `f` is
/// the holomorphic completion of `log rad` sampled on the outermost one.
pub fn rescale_to_constant_radius(
    m: Arc<dyn Motion>,
    radii: &[f64],
    n_circle: usize,
    n: usize,
    tolerance: f64,
) -> Result<Rescaled> {
    let outer = radii.iter().copied().fold(0.0, f64::max);
    if !(outer > 0.0 && outer < 1.0) {
        return Err(Error::invalid("rescaling needs circle radii in (0, 1)"));
    }
    let zero = C64::new(0.0, 0.0);
    if !m.moved(zero, n)?.center().is_infinite() {
        return Err(Error::precondition("rescaling needs the disks centered at ∞"));
    }
    let log_rad = |t: C64| -> Result<f64> { Ok(m.moved(t, n)?.conformal_radius().ln()) };
    let scan = harmonicity_scan(&log_rad, &[zero], radii, n_circle, tolerance, Exec::default())?;
    if !(scan.max_residual < tolerance) {
        return Err(Error::precondition(format!(
            "log rad is not harmonic (mean-value residual {:.3e})",
            scan.max_residual
        )));
    }
    let samples = (0..COMPLETION_SAMPLES)
        .map(|j| log_rad(outer * cis(j as f64 / COMPLETION_SAMPLES as f64)))
        .collect::<Result<Vec<f64>>>()?;
    let coeffs: Vec<C64> = (0..COMPLETION_SAMPLES / 2)
        .map(|k| {
            let s: C64 = samples
                .iter()
                .enumerate()
                .map(|(j, u)| *u * cis(-((j * k) as f64) / COMPLETION_SAMPLES as f64))
                .sum();
            let s = s / COMPLETION_SAMPLES as f64;
            if k == 0 {
                C64::new(s.re, 0.0)
            } else {
                2.0 * s
            }
        })
        .collect();
    let out = Rescaled {
        inner: m,
        coeffs,
        radius: outer,
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut check = vec![zero];
    for &r in radii {
        check.extend((0..n_circle).map(|j| r * cis((j as f64 + 0.5) / n_circle as f64)));
    }
    for t in check {
        let r = out.moved(t, n)?.conformal_radius();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    if hi - lo > 2.0 * tolerance {
        return Err(Error::numeric(format!(
            "rescaled radius still varies by {:.3e}",
            hi - lo
        )));
    }
    Ok(out)
}
