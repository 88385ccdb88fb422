use std::sync::Arc;

use super::chain::{ConformalMap, Region, Step};
use super::primitive::Primitive;
use super::riemann::{Model, RiemannMap};
use crate::geom::{BoundaryCurve, DiskKind, ExtPoint, Mobius, Piece, PieceGeom, PointedDisk};
use crate::{Error, Result, C64};

/// Geodesic zipper map from the unit disk onto the domain bounded by the
/// closed polygon through `points` that contains `center`.
pub fn build_zipper_map(points: &[C64], center: C64) -> Result<RiemannMap> {
    if points.len() < 8 {
        return Err(Error::invalid("the zipper needs at least 8 boundary points"));
    }
    let n = points.len();
    let mut area = 0.0;
    for k in 0..n {
        area += 0.5 * (points[k].conj() * points[(k + 1) % n]).im;
    }
    let pieces = (0..n)
        .map(|k| {
            Piece::plain(PieceGeom::Segment {
                from: points[k],
                to: points[(k + 1) % n],
            })
        })
        .collect();
    let boundary = BoundaryCurve::new(pieces, area > 0.0)?;
    let disk = PointedDisk::new(DiskKind::Polygon, boundary, center.into(), None)?;
    let chain = zip_chain(points, center)?;
    RiemannMap::from_chain(chain, Model::Disk, Arc::new(disk), false)
}

/// Zipper map onto a Jordan domain from `n` boundary points at equal arclength.
///
/// Domains centered at infinity are first moved by `z ↦ 1/(z − z0)` with `z0`
/// the bounding-box centroid of the boundary, which must then lie in the
/// complement.
pub fn zipper_for_disk(disk: &PointedDisk, n: usize) -> Result<RiemannMap> {
    if disk.boundary.has_slits() {
        return Err(Error::Construction(
            "the zipper does not handle slit boundaries; use a closed-form chain".into(),
        ));
    }
    if n < 8 {
        return Err(Error::invalid("the zipper needs at least 8 boundary points"));
    }
    let points = disk.boundary.sample_traversal(n);
    let target = Arc::new(disk.clone());
    match disk.center {
        ExtPoint::Finite(c) => {
            if !disk.boundary.bounds_domain() {
                return Err(Error::Construction(
                    "unbounded domain with a finite center is not supported by the zipper".into(),
                ));
            }
            RiemannMap::from_chain(zip_chain(&points, c)?, Model::Disk, target, false)
        }
        ExtPoint::Infinity => {
            let z0 = disk.boundary.anchor();
            if disk.contains(z0) || disk.distance(z0) == 0.0 {
                return Err(Error::Construction(
                    "bounding-box centroid is not in the complement of the domain".into(),
                ));
            }
            let m = Mobius::inversion_about(z0);
            let moved: Vec<C64> = points.iter().map(|&z| m.eval(z)).collect();
            let core = zip_chain(&moved, C64::new(0.0, 0.0))?;
            let flip = Mobius::inversion_about(C64::new(0.0, 0.0));
            let chain = ConformalMap::identity(Region::Exterior)
                .then(Step::forward(Primitive::Mobius(flip)), Region::Disk)
                .then_map(&core)?
                .then(Step::backward(Primitive::Mobius(m)), Region::Plane);
            RiemannMap::from_chain(chain, Model::Exterior, target, false)
        }
    }
}

/// Chain from the unit disk onto the zipped domain, sending 0 to `center`.
fn zip_chain(points: &[C64], center: C64) -> Result<ConformalMap> {
    let n = points.len();
    for k in 0..n {
        if (points[k] - points[(k + 1) % n]).norm() == 0.0 {
            return Err(Error::Construction(format!("repeated boundary node at index {k}")));
        }
    }
    let init = Primitive::ZipInit {
        z0: points[0],
        z1: points[1],
    };
    let fin = |p: ExtPoint| p.finite().unwrap_or(C64::new(f64::INFINITY, 0.0));
    let mut zs: Vec<C64> = points[2..]
        .iter()
        .map(|&z| init.forward(z.into()).map(fin))
        .collect::<Result<_>>()?;
    let mut c_img = init.forward(center.into())?;
    let mut x0 = ExtPoint::Infinity;
    let mut stages = Vec::with_capacity(n - 2);
    for k in 0..zs.len() {
        let c = zs[k];
        let scale = c.norm();
        if !(c.im > 1e-14 * scale) || !c.is_finite() {
            return Err(Error::Construction(format!(
                "boundary node {} leaves the half-plane during zipping (self-intersection or wrong order)",
                k + 2
            )));
        }
        let stage = Primitive::ZipStage {
            a: c.re / c.norm_sqr(),
            b: c.norm_sqr() / c.im,
        };
        for z in zs[k + 1..].iter_mut() {
            *z = fin(stage.forward((*z).into())?);
            if z.im < 0.0 {
                *z = C64::new(z.re, 0.0);
            }
        }
        c_img = stage.forward(c_img)?;
        x0 = stage.forward(x0)?;
        stages.push(stage);
    }
    let x0 = match x0 {
        ExtPoint::Finite(z) => Some(z.re),
        ExtPoint::Infinity => None,
    };
    let c_img = c_img
        .finite()
        .ok_or_else(|| Error::Construction("center is mapped to infinity".into()))?;
    let u = match x0 {
        Some(x) => c_img / (1.0 - c_img / x),
        None => c_img,
    };
    let sigma = if (u * u).im > 0.0 { 1.0 } else { -1.0 };
    let w0 = sigma * u * u;
    if !(w0.im > 0.0) {
        return Err(Error::numeric("zipper sends the center to the real axis"));
    }
    // ζ ↦ (w0 − w̄0 ζ)/(1 − ζ): the unit disk onto the upper half-plane, 0 ↦ w0.
    let to_half_plane = Mobius::new(-w0.conj(), w0, C64::new(-1.0, 0.0), C64::new(1.0, 0.0))?;
    let mut chain = ConformalMap::identity(Region::Disk)
        .then(Step::forward(Primitive::Mobius(to_half_plane)), Region::UpperHalfPlane)
        .then(
            Step::backward(Primitive::ZipFinal { x0, sigma }),
            Region::UpperHalfPlane,
        );
    for stage in stages.into_iter().rev() {
        chain = chain.then(Step::backward(stage), Region::UpperHalfPlane);
    }
    Ok(chain.then(Step::backward(init), Region::Plane))
}
