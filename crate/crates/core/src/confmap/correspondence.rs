use serde::Serialize;

use super::riemann::RiemannMap;
use crate::exec::Exec;
use crate::geom::{Angle, Side};
use crate::{Error, Result, C64};

/// How the ray at a given angle reaches the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AccessTag {
    Uni,
    BiMinus,
    BiPlus,
    Unknown,
}

impl AccessTag {
    pub fn bi(side: Side) -> Self {
        match side {
            Side::Minus => AccessTag::BiMinus,
            Side::Plus => AccessTag::BiPlus,
        }
    }

    pub fn side(self) -> Option<Side> {
        match self {
            AccessTag::BiMinus => Some(Side::Minus),
            AccessTag::BiPlus => Some(Side::Plus),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AccessTag::Uni => "uni",
            AccessTag::BiMinus => "bi-minus",
            AccessTag::BiPlus => "bi-plus",
            AccessTag::Unknown => "unknown",
        }
    }
}

/// Radial limit of a Riemann map at one angle.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySample {
    /// Closest boundary point to the limit.
    pub point: C64,
    /// The limit as computed.
    pub raw: C64,
    pub converged: bool,
    /// Boundary piece facing the ray, and the location on it.
    pub piece: usize,
    pub s: f64,
    pub tag: AccessTag,
}

#[derive(Debug, Clone, Copy)]
pub struct CorrSample {
    pub angle: Angle,
    pub point: C64,
    pub converged: bool,
    pub tag: AccessTag,
    pub piece: usize,
    pub s: f64,
}

/// Radial limits at equispaced angles.
#[derive(Debug, Clone)]
pub struct BoundaryCorrespondence {
    pub samples: Vec<CorrSample>,
    pub map: RiemannMap,
}

impl BoundaryCorrespondence {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn converged_fraction(&self) -> f64 {
        let c = self.samples.iter().filter(|s| s.converged).count();
        c as f64 / self.samples.len().max(1) as f64
    }

    fn traversal(&self, piece: usize, s: f64) -> f64 {
        self.map.target().boundary.traversal_param(piece, s)
    }
}

/// Boundary correspondence at the `n` angles `k/n`.
pub fn boundary_correspondence(g: &RiemannMap, n: usize) -> Result<BoundaryCorrespondence> {
    boundary_correspondence_with(g, n, Exec::default())
}

pub fn boundary_correspondence_with(
    g: &RiemannMap,
    n: usize,
    exec: Exec,
) -> Result<BoundaryCorrespondence> {
    if n < 8 {
        return Err(Error::invalid("boundary correspondence needs at least 8 samples"));
    }
    let samples = exec
        .map_range(n, |k| {
            let a = k as f64 / n as f64;
            g.boundary_sample(a).map(|b| CorrSample {
                angle: Angle::new(a),
                point: b.point,
                converged: b.converged,
                tag: b.tag,
                piece: b.piece,
                s: b.s,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCorrespondence {
        samples,
        map: g.clone(),
    })
}

/// All angles whose radial limit is `p`, with their access tags.
///
/// Each candidate location of `p` along the boundary traversal (two for a
/// point on the two-sided part of a slit) is bracketed between consecutive
/// samples and refined by bisection on the angle.
pub fn invert_boundary(c: &BoundaryCorrespondence, p: C64) -> Result<Vec<(Angle, AccessTag)>> {
    let disk = c.map.target();
    let boundary = &disk.boundary;
    let tol = disk.match_tolerance();
    let near = boundary.nearest(p);
    if near.distance > tol {
        return Err(Error::NotFound(format!("{p} is not on the boundary")));
    }
    let mut candidates = vec![(near.piece, near.s)];
    if let Some(tag) = boundary.pieces()[near.piece].slit {
        if boundary.is_two_sided(near.piece, near.point, tol) {
            candidates.push((tag.twin, 1.0 - near.s));
        }
    }
    let total = boundary.traversal_length();
    let good: Vec<&CorrSample> = c.samples.iter().filter(|s| s.converged).collect();
    if good.len() < 2 {
        return Err(Error::NotFound("correspondence has no convergent samples".into()));
    }
    let mut out: Vec<(Angle, AccessTag)> = Vec::new();
    for (piece, s) in candidates {
        let target = c.traversal(piece, s);
        let rel = |tau: f64, base: f64| (tau - base).rem_euclid(total);
        let mut found = None;
        for k in 0..good.len() {
            let (lo, hi) = (good[k], good[(k + 1) % good.len()]);
            let t_lo = c.traversal(lo.piece, lo.s);
            let t_hi = c.traversal(hi.piece, hi.s);
            let span = rel(t_hi, t_lo);
            let want = rel(target, t_lo);
            if want <= span {
                found = Some((lo, hi, t_lo, want));
                break;
            }
        }
        let Some((lo, hi, t_lo, want)) = found else {
            return Err(Error::NotFound(format!("{p} is not bracketed by the samples")));
        };
        let a_lo = lo.angle.turns();
        let gap = hi.angle.turns() - a_lo;
        let gap = if gap <= 0.0 { gap + 1.0 } else { gap };
        let (mut x0, mut x1) = (0.0, gap);
        for _ in 0..50 {
            let mid = 0.5 * (x0 + x1);
            let b = c.map.boundary_sample(a_lo + mid)?;
            let pos = rel(c.traversal(b.piece, b.s), t_lo);
            // Positions just below t_lo wrap to ~total; treat them as behind.
            let pos = if pos > total - 1e-9 * total { 0.0 } else { pos };
            if pos < want {
                x0 = mid;
            } else {
                x1 = mid;
            }
        }
        let angle = Angle::new(a_lo + 0.5 * (x0 + x1));
        let tag = match boundary.pieces()[piece].slit {
            Some(t) if boundary.is_two_sided(piece, near.point, tol) => AccessTag::bi(t.side),
            _ => AccessTag::Uni,
        };
        if !out.iter().any(|(a, _)| a.distance(angle) < 1e-9) {
            out.push((angle, tag));
        }
    }
    Ok(out)
}
