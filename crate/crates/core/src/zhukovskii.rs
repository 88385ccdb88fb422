//! The Zhukovskii double cover `Z(ζ) = ζ + 1/ζ` and lifts of disks through it.

use std::f64::consts::TAU;
use std::sync::Arc;

use serde::Serialize;

use crate::confmap::{
    AccessTag, ConformalMap, FamilyMap, Model, Normalization, Primitive, Region, RiemannMap, Step,
};
use crate::geom::{
    Angle, BoundaryCurve, DiskKind, ExtPoint, FourierPiece, Piece, PieceGeom, PointedDisk, Side,
    SlitTag,
};
use crate::measure::{BoundaryMap, BoundaryPoint};
use crate::{Error, Result, C64};

/// `Z(ζ) = ζ + 1/ζ`.
pub fn zhukovskii(zeta: C64) -> Result<C64> {
    if zeta.norm() == 0.0 {
        return Err(Error::Domain {
            index: 0,
            message: "Zhukovskii map at 0".into(),
        });
    }
    Ok(zeta + zeta.inv())
}

/// The root of `ζ² − wζ + 1 = 0` with `|ζ| ≥ 1`.
///
/// Off the slit the two roots are `(w ± s)/2` with `s² = w² − 4`; the larger
/// one is the one where `s` points along `w`. On the open slit `(−2, 2)` both
/// roots lie on the unit circle and the point is rejected.
pub fn zhukovskii_inverse_exterior(w: C64) -> Result<C64> {
    if !w.is_finite() {
        return Err(Error::invalid("non-finite argument"));
    }
    if w.im == 0.0 && w.re.abs() <= 2.0 {
        if w.re.abs() == 2.0 {
            return Ok(C64::new(w.re / 2.0, 0.0));
        }
        return Err(Error::Branch(format!(
            "{} lies on the slit (-2, 2); the side must be specified",
            w.re
        )));
    }
    let mut s = (w * w - 4.0).sqrt();
    if (w * s.conj()).re < 0.0 {
        s = -s;
    }
    Ok((w + s) / 2.0)
}

/// Lift of a boundary location of `U` to `∂V`. On the cut `(−2, 2)` the
/// root is the one on the side of the domain.
fn lift_location(boundary: &BoundaryCurve, piece: usize, s: f64, cut_tol: f64) -> Result<C64> {
    let w = boundary.pieces()[piece].geom.point(s);
    if on_cut(w, cut_tol) {
        let theta = (w.re / 2.0).clamp(-1.0, 1.0).acos();
        let n = boundary.inward_normal(piece, s);
        return Ok(C64::from_polar(1.0, if n.im >= 0.0 { theta } else { -theta }));
    }
    zhukovskii_inverse_exterior(w)
}

fn on_cut(w: C64, tol: f64) -> bool {
    w.im.abs() <= tol && w.re.abs() < 2.0 - tol
}

/// A disk `U` centered at ∞ with `±2 ∈ ∂U`, its Zhukovskii preimage `V`
/// and the Riemann maps `g` of `U` and `h = Z⁻¹ ∘ g` of `V`, with
/// `g(1) = 2` and `h(1) = 1`.
#[derive(Debug, Clone)]
pub struct LiftData {
    pub base: Arc<PointedDisk>,
    pub base_map: RiemannMap,
    pub preimage: Arc<PointedDisk>,
    pub lifted_map: RiemannMap,
    /// Boundary piece of `U` each boundary piece of `V` comes from.
    pub origin: Vec<usize>,
}

impl LiftData {
    /// Slit side of `Z(q)` in `U` for a point `q` of `∂V`.
    pub fn base_side(&self, q: BoundaryPoint) -> Option<Side> {
        let v = &self.preimage.boundary;
        let n = v.nearest_on_side(q.point, q.side);
        let u = &self.base.boundary;
        u.pieces()[self.origin[n.piece]].slit.map(|t| t.side)
    }
}

const LIFT_BASE_SAMPLES: usize = 1024;
const LIFT_CHORD_DIVISOR: f64 = 4096.0;

/// Builds the Zhukovskii preimage of `U` and its Riemann map.
///
/// The boundary of `V` is the polyline through lifts of densely sampled
/// points of `∂U`, refined until consecutive lifted points are close; slit
/// pieces off the cut stay slits in `V`.
pub fn zhukovskii_preimage(u: &PointedDisk, g: &RiemannMap) -> Result<LiftData> {
    let two = C64::new(2.0, 0.0);
    let tol = u.match_tolerance();
    if !u.center.is_infinite() {
        return Err(Error::precondition("the disk must be centered at ∞"));
    }
    for c in [two, -two] {
        if u.distance(c) > tol {
            return Err(Error::precondition(format!("{c} is not on the boundary")));
        }
    }
    let g1 = g.boundary_sample(0.0)?;
    if (g1.point - two).norm() > tol {
        return Err(Error::precondition(format!("g(1) = {} instead of 2", g1.point)));
    }
    for k in 1..400 {
        let x = C64::new(-2.0 + 4.0 * k as f64 / 400.0, 0.0);
        if u.contains(x) && u.distance(x) > tol {
            return Err(Error::numeric(format!(
                "the disk meets the cut (-2, 2) at {x}; no single-valued lift"
            )));
        }
    }
    let ub = if (u.boundary.start_point() - two).norm() <= tol {
        u.boundary.clone()
    } else {
        u.boundary.starting_at(two, 1e-9 * (1.0 + u.boundary.diameter()))?
    };
    let cut_tol = 1e-12 * (1.0 + ub.diameter());

    // Parameter grids per piece; plus sides mirror their twin's grid.
    let n_pieces = ub.pieces().len();
    let total = ub.traversal_length();
    let first: Vec<Vec<C64>> = (0..n_pieces)
        .map(|i| {
            let m = ((LIFT_BASE_SAMPLES as f64 * ub.pieces()[i].geom.length() / total).ceil() as usize).max(8);
            (0..=m)
                .map(|k| lift_location(&ub, i, k as f64 / m as f64, cut_tol))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let lifted_length: f64 = first
        .iter()
        .map(|pts| pts.windows(2).map(|w| (w[1] - w[0]).norm()).sum::<f64>())
        .sum();
    let max_chord = lifted_length / LIFT_CHORD_DIVISOR;
    let mut grids: Vec<Option<Vec<f64>>> = vec![None; n_pieces];
    for i in 0..n_pieces {
        if let Some(SlitTag { side: Side::Plus, twin }) = ub.pieces()[i].slit {
            if grids[twin].is_some() || twin > i {
                continue;
            }
        }
        let m = first[i].len() - 1;
        let mut grid = vec![0.0];
        for k in 0..m {
            refine(&ub, i, k as f64 / m as f64, (k + 1) as f64 / m as f64, max_chord, cut_tol, 0, &mut grid)?;
        }
        grids[i] = Some(grid);
    }
    for i in 0..n_pieces {
        if grids[i].is_none() {
            let twin = ub.pieces()[i].slit.expect("plus piece").twin;
            let g = grids[twin].as_ref().expect("minus grid");
            grids[i] = Some(g.iter().rev().map(|s| 1.0 - s).collect());
        }
    }

    let mut base_index = vec![0usize; n_pieces];
    let mut count = 0;
    for i in 0..n_pieces {
        base_index[i] = count;
        count += grids[i].as_ref().expect("grid").len() - 1;
    }
    let mut pieces = Vec::with_capacity(count);
    let mut origin = Vec::with_capacity(count);
    for i in 0..n_pieces {
        let grid = grids[i].as_ref().expect("grid");
        let m = grid.len() - 1;
        let pts = grid
            .iter()
            .map(|&s| lift_location(&ub, i, s, cut_tol))
            .collect::<Result<Vec<_>>>()?;
        let geom_pts: Vec<C64> = grid.iter().map(|&s| ub.pieces()[i].geom.point(s)).collect();
        for k in 0..m {
            let keeps_slit = !on_cut(geom_pts[k], cut_tol) && !on_cut(geom_pts[k + 1], cut_tol);
            let slit = match ub.pieces()[i].slit {
                Some(tag) if keeps_slit => Some(SlitTag {
                    side: tag.side,
                    twin: base_index[tag.twin] + (m - 1 - k),
                }),
                _ => None,
            };
            pieces.push(Piece {
                geom: PieceGeom::Segment {
                    from: pts[k],
                    to: pts[k + 1],
                },
                slit,
            });
            origin.push(i);
        }
    }
    let vb = BoundaryCurve::new(pieces, ub.domain_on_left())?;
    let v = Arc::new(PointedDisk::new(
        DiskKind::Sampled,
        vb,
        ExtPoint::Infinity,
        Some(C64::new(1.0, 0.0)),
    )?);
    let chain = g.chain().then(
        Step::forward(Primitive::JoukowskiExteriorInverse),
        Region::Exterior,
    );
    let h = RiemannMap::from_chain(chain, Model::Exterior, v.clone(), g.boundary_exact())?
        .renormalized(Normalization::Marked(C64::new(1.0, 0.0)))?;
    let base = Arc::new(PointedDisk {
        boundary: ub,
        ..u.clone()
    });
    let lift = LiftData {
        base,
        base_map: g.clone(),
        preimage: v,
        lifted_map: h,
        origin,
    };
    let residual = lift_residual(&lift)?;
    if residual > 1e-9 * (1.0 + lift.base.boundary.diameter()) {
        return Err(Error::numeric(format!("Z ∘ h differs from g by {residual:.3e}")));
    }
    Ok(lift)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    b: &BoundaryCurve,
    piece: usize,
    s0: f64,
    s1: f64,
    max_chord: f64,
    cut_tol: f64,
    depth: usize,
    grid: &mut Vec<f64>,
) -> Result<()> {
    let p0 = lift_location(b, piece, s0, cut_tol)?;
    let p1 = lift_location(b, piece, s1, cut_tol)?;
    if (p1 - p0).norm() > max_chord && depth < 30 {
        let mid = 0.5 * (s0 + s1);
        refine(b, piece, s0, mid, max_chord, cut_tol, depth + 1, grid)?;
        refine(b, piece, mid, s1, max_chord, cut_tol, depth + 1, grid)?;
    } else {
        grid.push(s1);
    }
    Ok(())
}

/// `sup |Z(h(ζ)) − g(ζ)|` over a grid in the model exterior.
pub fn lift_residual(lift: &LiftData) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for r in [1.05, 1.5, 3.0] {
        for k in 0..64 {
            let zeta = C64::from_polar(r, TAU * (k as f64 + 0.25) / 64.0);
            let lhs = zhukovskii(lift.lifted_map.eval(zeta)?)?;
            sup = sup.max((lhs - lift.base_map.eval(zeta)?).norm());
        }
    }
    Ok(sup)
}

/// The Zhukovskii lift `ψ = h̃ ∘ φ° ∘ h⁻¹` of a boundary map `φ: ∂U → ∂Ũ`.
pub struct ZhukovskiiLift<'a> {
    pub phi: &'a dyn BoundaryMap,
    pub from: &'a LiftData,
    pub to: &'a LiftData,
}

/// Lifts `φ`, which must fix `±2`.
pub fn zhukovskii_lift<'a>(
    phi: &'a dyn BoundaryMap,
    from: &'a LiftData,
    to: &'a LiftData,
) -> Result<ZhukovskiiLift<'a>> {
    let tol = to.base.match_tolerance();
    for c in [2.0, -2.0] {
        let c = C64::new(c, 0.0);
        let image = phi.apply(c.into())?.point;
        if (image - c).norm() > tol {
            return Err(Error::precondition(format!("φ({c}) = {image}, not {c}")));
        }
    }
    Ok(ZhukovskiiLift { phi, from, to })
}

impl BoundaryMap for ZhukovskiiLift<'_> {
    /// Returns the unsnapped boundary value of `h̃`.
    fn apply(&self, q: BoundaryPoint) -> Result<BoundaryPoint> {
        let w = BoundaryPoint::new(zhukovskii(q.point)?, self.from.base_side(q));
        let w = self.phi.apply(w)?;
        let a = self.to.base_map.angle_of(w.point, w.side)?;
        let b = self.to.lifted_map.boundary_sample(a)?;
        Ok(BoundaryPoint::new(b.raw, b.tag.side()))
    }
}

/// `sup |Z(ψ(q)) − φ(Z(q))|` over `n` boundary points `q = h(e^{2πik/n})`.
pub fn commuting_residual(psi: &ZhukovskiiLift<'_>, n: usize) -> Result<f64> {
    let h = &psi.from.lifted_map;
    let mut sup: f64 = 0.0;
    for k in 0..n {
        let b = h.boundary_sample((k as f64 + 0.5) / n as f64)?;
        if !b.converged {
            continue;
        }
        let q = BoundaryPoint::new(b.raw, b.tag.side());
        let lhs = zhukovskii(psi.apply(q)?.point)?;
        let rhs = psi
            .phi
            .apply(BoundaryPoint::new(zhukovskii(q.point)?, psi.from.base_side(q)))?
            .point;
        sup = sup.max((lhs - rhs).norm());
    }
    Ok(sup)
}

/// How a biaccessible point of `U` lifts to `∂V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftedAccess {
    SplitsToTwoUniaccessible,
    LiftsToOneBiaccessible,
}

const RAY_SAMPLES: usize = 512;

/// Polyline of the ray `γ_g(a)` from far out to its landing point.
fn ray_polyline(g: &RiemannMap, a: f64, landing: C64, max_step: f64) -> Result<Vec<C64>> {
    let model = g.model();
    let half = RAY_SAMPLES / 2;
    let mut rs: Vec<f64> = (0..half)
        .map(|k| 1e-3 * (500.0f64).powf(k as f64 / (half - 1) as f64))
        .collect();
    rs.extend((1..=half).map(|k| 1.0 - 0.5 * (-(40.0 * k as f64 / half as f64)).exp2()));
    let eval = |r: f64| g.eval(model.radial_point(a, r));
    let mut pts = vec![eval(rs[0])?];
    let mut prev_r = rs[0];
    for &r in &rs[1..] {
        let z = eval(r)?;
        insert_refined(&eval, prev_r, r, *pts.last().expect("nonempty"), z, max_step, 0, &mut pts)?;
        prev_r = r;
    }
    pts.push(landing);
    Ok(pts)
}

#[allow(clippy::too_many_arguments)]
fn insert_refined(
    eval: &dyn Fn(f64) -> Result<C64>,
    r0: f64,
    r1: f64,
    z0: C64,
    z1: C64,
    max_step: f64,
    depth: usize,
    pts: &mut Vec<C64>,
) -> Result<()> {
    if (z1 - z0).norm() > max_step && depth < 12 {
        let rm = 0.5 * (r0 + r1);
        let zm = eval(rm)?;
        insert_refined(eval, r0, rm, z0, zm, max_step, depth + 1, pts)?;
        insert_refined(eval, rm, r1, zm, z1, max_step, depth + 1, pts)?;
    } else {
        pts.push(z1);
    }
    Ok(())
}

fn segments_cross(a0: C64, a1: C64, b0: C64, b1: C64) -> bool {
    let cross = |o: C64, p: C64, q: C64| ((p - o).conj() * (q - o)).im;
    let d1 = cross(b0, b1, a0);
    let d2 = cross(b0, b1, a1);
    let d3 = cross(a0, a1, b0);
    let d4 = cross(a0, a1, b1);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0)
}

/// Decides whether the ray pair `γ_g(a⁻), γ_g(a⁺)` separates `±2`.
pub fn classify_lifted_access(pair: (f64, f64), g: &RiemannMap) -> Result<LiftedAccess> {
    classify_about(pair, g, (C64::new(-2.0, 0.0), C64::new(2.0, 0.0)))
}

/// Same test for an arbitrary pair of points `(c⁻, c⁺)`: counts crossings
/// of a path from `c⁻` to `c⁺`, detoured around the landing point, with the
/// two sampled rays. An odd count means the pair separates them.
pub fn classify_about(pair: (f64, f64), g: &RiemannMap, critical: (C64, C64)) -> Result<LiftedAccess> {
    if g.model() != Model::Exterior {
        return Err(Error::precondition("classification needs a map centered at ∞"));
    }
    if Angle::new(pair.0).distance(Angle::new(pair.1)) < 1e-12 {
        return Err(Error::precondition("a single angle is uniaccessible; nothing to classify"));
    }
    let disk = g.target();
    let tol = disk.match_tolerance();
    let bm = g.boundary_sample(pair.0)?;
    let bp = g.boundary_sample(pair.1)?;
    if !bm.converged || !bp.converged {
        return Err(Error::numeric("a ray of the pair does not land"));
    }
    if (bm.point - bp.point).norm() > 10.0 * tol {
        return Err(Error::precondition(format!(
            "rays land at different points {} and {}",
            bm.point, bp.point
        )));
    }
    let p = bm.point;
    let (c0, c1) = critical;
    if (p - c0).norm() <= tol || (p - c1).norm() <= tol {
        return Err(Error::precondition("the landing point is one of the critical values"));
    }
    let scale = disk.boundary.diameter().max(1.0);
    let max_step = scale / 200.0;
    let rays = [
        ray_polyline(g, pair.0, p, max_step)?,
        ray_polyline(g, pair.1, p, max_step)?,
    ];
    // Path from c0 to c1, with a rectangular detour around p if it passes close.
    let u = (c1 - c0) / (c1 - c0).norm();
    let normal = u * C64::new(0.0, 1.0);
    let along = ((p - c0).conj() * u).re;
    let off = ((p - c0).conj() * normal).re;
    let delta = 1e-3 * scale;
    let mut path = vec![c0];
    if off.abs() < delta && along > 0.0 && along < (c1 - c0).norm() {
        let foot = c0 + u * along;
        let away = if off > 0.0 { -normal } else { normal };
        path.extend([
            foot - u * delta,
            foot - u * delta + away * (2.0 * delta),
            foot + u * delta + away * (2.0 * delta),
            foot + u * delta,
        ]);
    }
    path.push(c1);
    let mut crossings = 0usize;
    for ray in &rays {
        for r in ray.windows(2) {
            for q in path.windows(2) {
                if segments_cross(r[0], r[1], q[0], q[1]) {
                    crossings += 1;
                }
            }
        }
    }
    Ok(if crossings % 2 == 1 {
        LiftedAccess::SplitsToTwoUniaccessible
    } else {
        LiftedAccess::LiftsToOneBiaccessible
    })
}

/// Biaccessible angle pairs `(a⁻, a⁺)` found among `n` equispaced angles.
pub fn biaccessible_pairs(g: &RiemannMap, n: usize) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for k in 0..n {
        let a = (k as f64 + 0.5) / n as f64;
        let b = g.boundary_sample(a)?;
        if b.tag == AccessTag::BiMinus {
            let partner = g.angle_of(b.point, Some(Side::Plus))?.rem_euclid(1.0);
            out.push((a, partner));
        }
    }
    Ok(out)
}

/// Checks that no biaccessible pair on `V` separates `−1` from `1`.
/// Returns the number of pairs tested.
pub fn check_lifted_pairs(lift: &LiftData, n: usize) -> Result<(usize, bool)> {
    let pairs = biaccessible_pairs(&lift.lifted_map, n)?;
    let one = C64::new(1.0, 0.0);
    let mut ok = true;
    for pair in &pairs {
        if classify_about(*pair, &lift.lifted_map, (-one, one))? != LiftedAccess::LiftsToOneBiaccessible {
            ok = false;
        }
    }
    Ok((pairs.len(), ok))
}

/// Exterior of the ellipse `c(ζ + t/ζ)`, `c = 2/(1 + t)`, which passes
/// through `±2`, with its Riemann map normalized by `g(1) = 2`.
pub fn ellipse_through_pm2(t: f64) -> Result<(PointedDisk, RiemannMap)> {
    if !(t.abs() < 1.0) {
        return Err(Error::invalid("ellipse parameter must satisfy |t| < 1"));
    }
    let c = 2.0 / (1.0 + t);
    let boundary = BoundaryCurve::new(
        vec![Piece::plain(PieceGeom::Fourier(FourierPiece::new(
            vec![(1, C64::new(c, 0.0)), (-1, C64::new(c * t, 0.0))],
            0.0,
            1.0,
            None,
        )))],
        false,
    )?;
    let disk = PointedDisk::new(
        DiskKind::JoukowskiExterior,
        boundary,
        ExtPoint::Infinity,
        Some(C64::new(2.0, 0.0)),
    )?;
    let chain = ConformalMap::identity(Region::Exterior)
        .then(
            Step::forward(Primitive::Family(FamilyMap::Stretch { t: C64::new(t, 0.0) })),
            Region::Plane,
        )
        .then(
            Step::forward(Primitive::Affine {
                scale: C64::new(c, 0.0),
                shift: C64::new(0.0, 0.0),
            }),
            Region::Plane,
        );
    let g = RiemannMap::from_chain(chain, Model::Exterior, Arc::new(disk.clone()), true)?
        .renormalized(Normalization::Marked(C64::new(2.0, 0.0)))?;
    Ok((disk, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::DomainSpec;
    use crate::measure::ConformalTransfer;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn examples() {
        assert_eq!(zhukovskii(c(1.0, 0.0)).unwrap(), c(2.0, 0.0));
        assert!(zhukovskii(c(0.0, 1.0)).unwrap().norm() < 1e-15);
        assert_eq!(zhukovskii(c(2.0, 0.0)).unwrap(), c(2.5, 0.0));
        assert!(zhukovskii(c(0.0, 0.0)).is_err());
        assert_eq!(zhukovskii_inverse_exterior(c(2.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((zhukovskii_inverse_exterior(c(2.5, 0.0)).unwrap() - 2.0).norm() < 1e-15);
        let big = zhukovskii_inverse_exterior(c(0.0, 10.0)).unwrap();
        let expected = c(0.0, (10.0 + 104f64.sqrt()) / 2.0);
        assert!((big - expected).norm() < 1e-12);
        assert!(matches!(zhukovskii_inverse_exterior(c(0.5, 0.0)), Err(Error::Branch(_))));
    }

    #[test]
    fn segment_complement_lifts_to_the_disk_exterior() {
        let spec = DomainSpec::SegmentExterior { a: c(-2.0, 0.0), b: c(2.0, 0.0) };
        let (u, g) = spec.build(0).unwrap();
        let lift = zhukovskii_preimage(&u, &g).unwrap();
        for k in 0..16 {
            let z = C64::from_polar(1.3, 0.4 * k as f64);
            assert!((lift.lifted_map.eval(z).unwrap() - z).norm() < 1e-12);
        }
        assert!(lift.preimage.boundary.distance(c(0.0, 1.0)) < 1e-6);
        assert!(!lift.preimage.boundary.has_slits());
    }

    #[test]
    fn radius_is_preserved() {
        let (u, g) = ellipse_through_pm2(1.0 / 3.0).unwrap();
        let lift = zhukovskii_preimage(&u, &g).unwrap();
        assert!((g.conformal_radius() - 1.5).abs() < 1e-12);
        assert!((lift.lifted_map.conformal_radius() - g.conformal_radius()).abs() < 1e-9);
    }

    #[test]
    fn missing_critical_value_is_rejected() {
        let (u, g) = DomainSpec::JoukowskiExterior { t: c(0.3, 0.0) }.build(0).unwrap();
        assert!(matches!(zhukovskii_preimage(&u, &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn lift_of_ellipse_motion_commutes() {
        let (u, g) = ellipse_through_pm2(1.0 / 3.0).unwrap();
        let (ut, gt) = ellipse_through_pm2(0.6).unwrap();
        let from = zhukovskii_preimage(&u, &g).unwrap();
        let to = zhukovskii_preimage(&ut, &gt).unwrap();
        let phi = ConformalTransfer::new(g, gt);
        let psi = zhukovskii_lift(&phi, &from, &to).unwrap();
        let r = commuting_residual(&psi, 256).unwrap();
        assert!(r < 1e-6, "{r}");
        let one = psi.apply(c(1.0, 0.0).into()).unwrap().point;
        assert!((one - 1.0).norm() < 1e-5);
    }

    #[test]
    fn identity_lifts_to_identity() {
        let (u, g) = ellipse_through_pm2(0.5).unwrap();
        let lift = zhukovskii_preimage(&u, &g).unwrap();
        let psi = zhukovskii_lift(&crate::measure::Identity, &lift, &lift).unwrap();
        for k in 0..32 {
            let q = lift.lifted_map.boundary_sample((k as f64 + 0.3) / 32.0).unwrap().raw;
            assert!((psi.apply(q.into()).unwrap().point - q).norm() < 1e-6);
        }
    }

    #[test]
    fn segment_pairs_split() {
        let spec = DomainSpec::SegmentExterior { a: c(-2.0, 0.0), b: c(2.0, 0.0) };
        let (_, g) = spec.build(0).unwrap();
        let pairs = biaccessible_pairs(&g, 64).unwrap();
        assert!(!pairs.is_empty());
        for p in pairs {
            assert_eq!(classify_lifted_access(p, &g).unwrap(), LiftedAccess::SplitsToTwoUniaccessible);
        }
        assert!(classify_lifted_access((0.1, 0.1), &g).is_err());
    }
}
