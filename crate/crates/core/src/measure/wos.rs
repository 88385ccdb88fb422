use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::boundary_map::BoundaryPoint;
use super::discrete::DiscreteMeasure;
use crate::confmap::AccessTag;
use crate::exec::Exec;
use crate::geom::{ExtPoint, PointedDisk};
use crate::{Error, Result, C64};

/// Walk-on-spheres settings. Lengths are relative to the boundary diameter.
#[derive(Debug, Clone, Copy)]
pub struct WosOptions {
    pub absorption: f64,
    pub r_cap: f64,
    pub step_budget: usize,
    pub batch: usize,
    pub exec: Exec,
}

impl Default for WosOptions {
    fn default() -> Self {
        WosOptions {
            absorption: 1e-6,
            r_cap: 10.0,
            step_budget: 1_000_000,
            batch: 1024,
            exec: Exec::default(),
        }
    }
}

/// Enclosing circle used to start walkers from ∞ and to bring back walkers
/// that wander off in unbounded domains.
struct Enclosure {
    center: C64,
    radius: f64,
}

impl Enclosure {
    /// Exact first hit of the circle from an outside point `z`: in the
    /// coordinate `w = R/(z − z₀)` this is the Poisson law on 𝕋 from `w`,
    /// sampled by moving a uniform point with the Möbius map sending 0 to `w`.
    fn return_from(&self, z: C64, u: f64) -> C64 {
        let w = self.radius / (z - self.center);
        let zeta = C64::from_polar(1.0, TAU * u);
        let hit = (zeta + w) / (C64::new(1.0, 0.0) + w.conj() * zeta);
        self.center + self.radius / hit
    }
}

/// Empirical Brownian hitting distribution on `∂U` from the center of `d`.
///
/// Walkers are split into fixed batches; batch `k` draws from the ChaCha8
/// stream `k` of `seed`, so the result does not depend on the thread count.
pub fn walk_on_spheres(d: &std::sync::Arc<PointedDisk>, n_samples: usize, seed: u64, opts: WosOptions) -> Result<DiscreteMeasure> {
    if n_samples == 0 {
        return Err(Error::invalid("walk-on-spheres needs at least one sample"));
    }
    let boundary = &d.boundary;
    let diam = boundary.diameter();
    let eps = opts.absorption * diam;
    let r_cap = opts.r_cap * diam;
    let enclosure = if boundary.bounds_domain() {
        None
    } else {
        let center = boundary.anchor();
        let (lo, hi) = boundary.bounding_box();
        let reach = [lo, hi, C64::new(lo.re, hi.im), C64::new(hi.re, lo.im)]
            .iter()
            .map(|c| (c - center).norm())
            .fold(0.0, f64::max);
        Some(Enclosure {
            center,
            radius: 1.25 * reach.max(diam),
        })
    };
    let start = match d.center {
        ExtPoint::Finite(c) => {
            if !d.contains(c) || boundary.distance(c) <= eps {
                return Err(Error::precondition("center is not strictly inside the domain"));
            }
            Some(c)
        }
        ExtPoint::Infinity => {
            if enclosure.is_none() {
                return Err(Error::precondition("center ∞ needs an unbounded domain"));
            }
            None
        }
    };
    let batches = n_samples.div_ceil(opts.batch);
    let walk_batch = |b: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let count = opts.batch.min(n_samples - b * opts.batch);
        let mut hits = Vec::with_capacity(count);
        let mut lost = 0usize;
        for _ in 0..count {
            let mut z = match (start, &enclosure) {
                (Some(c), _) => c,
                (None, Some(e)) => e.center + C64::from_polar(e.radius, TAU * rng.random::<f64>()),
                (None, None) => unreachable!(),
            };
            let mut absorbed = None;
            for _ in 0..opts.step_budget {
                if let Some(e) = &enclosure {
                    if (z - e.center).norm() > e.radius {
                        z = e.return_from(z, rng.random::<f64>());
                    }
                }
                let r = boundary.distance(z);
                if r <= eps {
                    absorbed = Some(z);
                    break;
                }
                z += C64::from_polar(r.min(r_cap), TAU * rng.random::<f64>());
            }
            match absorbed {
                Some(z) => hits.push(z),
                None => lost += 1,
            }
        }
        (hits, lost)
    };
    let results = opts.exec.map_range(batches, walk_batch);
    let lost: usize = results.iter().map(|r| r.1).sum();
    let kept = n_samples - lost;
    if kept == 0 {
        return Err(Error::numeric("no walker was absorbed within the step budget"));
    }
    let w = 1.0 / kept as f64;
    let atoms = results.into_iter().flat_map(|(hits, _)| hits).map(|z| {
        let n = boundary.nearest_sided(z);
        let side = boundary.pieces()[n.piece].slit.map(|t| t.side);
        (BoundaryPoint::new(n.point, side), w, AccessTag::Unknown)
    });
    let mut mu = DiscreteMeasure::new(d.clone(), atoms.collect::<Vec<_>>())?;
    if lost * 1000 > n_samples {
        mu.warnings.push(format!("{lost} of {n_samples} walkers exhausted the step budget"));
    }
    Ok(mu)
}
