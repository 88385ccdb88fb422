//! The builtin domain families and their Riemann maps.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::confmap::{
    zipper_for_disk, ConformalMap, FamilyMap, Model, Normalization, Primitive, Region, RiemannMap,
    Step,
};
use crate::geom::{
    arg_turns, BoundaryCurve, DiskKind, ExtPoint, FourierPiece, Mobius, Piece, PieceGeom,
    PointedDisk, Side, SlitTag,
};
use crate::measure::{BoundaryMap, BoundaryPoint};
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Parameters of a builtin domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    UnitDisk,
    DiskExterior,
    /// Complement of the segment `[a, b]`; defaults to `[−2, 2]`.
    SegmentExterior {
        #[serde(default = "minus_two")]
        a: C64,
        #[serde(default = "two")]
        b: C64,
    },
    /// Exterior of the ellipse `{ζ + t/ζ : |ζ| = 1}`.
    JoukowskiExterior { t: C64 },
    /// Interior of the ellipse `{z + t z̄ : |z| = 1}`.
    EllipseInterior { t: C64 },
    /// Exterior disk minus the radial segment `[1, p_tilde]`.
    RadialSlitExterior { p_tilde: f64 },
    /// Exterior disk minus the shorter arc from 1 to `(1 + epsilon) e^{2πi delta}`
    /// on the circle through both points centered on the negative real axis.
    ArcSlitExterior { delta: f64, epsilon: f64 },
    Polygon { points: Vec<C64> },
}

fn minus_two() -> C64 {
    C64::new(-2.0, 0.0)
}

fn two() -> C64 {
    C64::new(2.0, 0.0)
}

fn unit_circle(domain_on_left: bool) -> Result<BoundaryCurve> {
    BoundaryCurve::new(
        vec![Piece::plain(PieceGeom::Arc {
            center: ZERO,
            radius: 1.0,
            start: 0.0,
            sweep: 1.0,
        })],
        domain_on_left,
    )
}

fn ellipse_curve(t: C64, domain_on_left: bool) -> Result<BoundaryCurve> {
    if !(t.norm() < 1.0) {
        return Err(Error::invalid("ellipse parameter must satisfy |t| < 1"));
    }
    BoundaryCurve::new(
        vec![Piece::plain(PieceGeom::Fourier(FourierPiece::new(
            vec![(1, ONE), (-1, t)],
            0.0,
            1.0,
            None,
        )))],
        domain_on_left,
    )
}

fn two_sided(minus: PieceGeom, middle: Vec<PieceGeom>, plus: PieceGeom) -> Vec<Piece> {
    let last = middle.len() + 1;
    let mut pieces = vec![Piece {
        geom: minus,
        slit: Some(SlitTag {
            side: Side::Minus,
            twin: last,
        }),
    }];
    pieces.extend(middle.into_iter().map(Piece::plain));
    pieces.push(Piece {
        geom: plus,
        slit: Some(SlitTag {
            side: Side::Plus,
            twin: 0,
        }),
    });
    pieces
}

/// Geometry of the arc-slit domain.
#[derive(Debug, Clone, Copy)]
pub struct ArcSlit {
    pub tip: C64,
    /// Center (on the negative real axis) and radius of the circle carrying the arc.
    pub circle_center: f64,
    pub circle_radius: f64,
    /// Angle of the tip seen from the circle center, in turns.
    pub tip_turns: f64,
}

impl ArcSlit {
    pub fn new(delta: f64, epsilon: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.5) || !(epsilon > 0.0) {
            return Err(Error::invalid("arc slit needs 0 < delta < 1/2 and epsilon > 0"));
        }
        let tip = C64::from_polar(1.0 + epsilon, 2.0 * PI * delta);
        let d = tip - ONE;
        if !(d.re < 0.0) {
            return Err(Error::invalid(
                "arc slit tip must have real part below 1 for the circle center to be negative",
            ));
        }
        let radius = -d.norm_sqr() / (2.0 * d.re);
        let center = 1.0 - radius;
        if !(center < 0.0) {
            return Err(Error::invalid("arc slit circle center is not on the negative axis"));
        }
        let tip_turns = arg_turns(tip - center);
        let tip_turns = if tip_turns > 0.5 { tip_turns - 1.0 } else { tip_turns };
        Ok(ArcSlit {
            tip,
            circle_center: center,
            circle_radius: radius,
            tip_turns,
        })
    }

    fn arc(&self, start: f64, sweep: f64) -> PieceGeom {
        PieceGeom::Arc {
            center: C64::new(self.circle_center, 0.0),
            radius: self.circle_radius,
            start,
            sweep,
        }
    }

    /// Boundary starting at the tip: inner side to 1, the unit circle, outer side back.
    pub fn boundary(&self) -> Result<BoundaryCurve> {
        let pieces = two_sided(
            self.arc(self.tip_turns, -self.tip_turns),
            vec![PieceGeom::Arc {
                center: ZERO,
                radius: 1.0,
                start: 0.0,
                sweep: 1.0,
            }],
            self.arc(0.0, self.tip_turns),
        );
        BoundaryCurve::new(pieces, false)
    }

    /// Chain `Δ → H → H∖ray → {Re w > −1/2}∖ray → Δ∖ℓ` with `g(1)` the tip.
    pub fn chain(&self) -> Result<ConformalMap> {
        let x1 = -1.0 / (2.0 * self.circle_radius);
        let h = x1 + 0.5;
        let wp = ONE / (self.tip - ONE);
        let tip_x = -wp.im;
        let channel = Primitive::Family(FamilyMap::Channel { h, tip: tip_x });
        let xi0 = channel
            .backward(C64::new(0.0, 0.5).into())?
            .finite()
            .ok_or_else(|| Error::numeric("channel preimage of the center"))?;
        // ζ = e^{iα}(ξ − ξ̄0)/(ξ − ξ0) sends ξ0 ↦ ∞ and 1 ↦ 1.
        let rot = (ONE - xi0) / (ONE - xi0.conj());
        let to_half_plane = Mobius::new(xi0, -rot * xi0.conj(), ONE, -rot)?;
        let to_w = Primitive::Affine {
            scale: C64::new(0.0, -1.0),
            shift: C64::new(-0.5, 0.0),
        };
        let back = Mobius::new(ONE, ONE, ONE, ZERO)?;
        Ok(ConformalMap::identity(Region::Exterior)
            .then(Step::forward(Primitive::Mobius(to_half_plane)), Region::UpperHalfPlane)
            .then(Step::forward(channel), Region::UpperHalfPlane)
            .then(Step::forward(to_w), Region::Plane)
            .then(Step::forward(Primitive::Mobius(back)), Region::Plane))
    }

    /// Harmonic measure of the arc seen from infinity.
    pub fn slit_mass(&self) -> Result<f64> {
        let chain = self.chain()?;
        let Primitive::Mobius(m) = chain.steps()[0].prim else {
            unreachable!()
        };
        let xi0 = m.a;
        Ok(1.0 - xi0.arg() / PI)
    }
}

/// Parameters of the chain `Δ∖[1, p̃]`: `Z⁻¹(c + (L/2) Z(ζ))`.
fn radial_slit_params(p_tilde: f64) -> (f64, f64) {
    let q = p_tilde + 1.0 / p_tilde;
    ((q - 2.0) / 2.0, (q + 2.0) / 2.0)
}

/// Harmonic measure of `[1, p̃]` in `Δ∖[1, p̃]` seen from infinity.
pub fn radial_slit_mass(p_tilde: f64) -> f64 {
    let (c, l) = radial_slit_params(p_tilde);
    ((2.0 - c) / l).clamp(-1.0, 1.0).acos() / PI
}

/// The `p̃ > 1` whose radial slit carries harmonic mass `mass`.
pub fn radial_slit_for_mass(mass: f64) -> Result<f64> {
    if !(mass > 0.0 && mass < 1.0) {
        return Err(Error::invalid("slit mass must lie in (0, 1)"));
    }
    let (mut lo, mut hi) = (1.0, 2.0);
    while radial_slit_mass(hi) < mass {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::numeric("slit length search diverged"));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if radial_slit_mass(mid) < mass {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The arc-slit domain `Δ∖ℓ` and the radial-slit domain `Δ∖ℓ̃` whose slit
/// carries the same harmonic mass, with the boundary homeomorphism that
/// respects harmonic measure.
#[derive(Debug, Clone)]
pub struct SlitPair {
    pub arc: ArcSlit,
    pub p_tilde: f64,
    pub g: RiemannMap,
    pub gt: RiemannMap,
    /// `g⁻¹(ℓ) = [lo, hi]` with `lo < 0 < hi` (turns).
    pub arc_angles: (f64, f64),
    pub radial_angles: (f64, f64),
}

impl SlitPair {
    pub fn new(delta: f64, epsilon: f64) -> Result<Self> {
        let arc = ArcSlit::new(delta, epsilon)?;
        let (_, g) = DomainSpec::ArcSlitExterior { delta, epsilon }.build(0)?;
        let p_tilde = radial_slit_for_mass(arc.slit_mass()?)?;
        let (_, gt) = DomainSpec::RadialSlitExterior { p_tilde }.build(0)?;
        let arc_angles = slit_preimage(&g)?;
        let radial_angles = slit_preimage(&gt)?;
        Ok(SlitPair {
            arc,
            p_tilde,
            g,
            gt,
            arc_angles,
            radial_angles,
        })
    }

    /// Rotation carrying `𝕋 ∖ g⁻¹(ℓ)` onto `𝕋 ∖ g̃⁻¹(ℓ̃)`.
    pub fn circle_shift(&self) -> f64 {
        self.radial_angles.1 - self.arc_angles.1
    }

    /// Harmonic mass of the part of the slit between its root 1 and `x`.
    fn root_mass(g: &RiemannMap, angles: (f64, f64), x: BoundaryPoint) -> Result<f64> {
        let a_minus = g.angle_of(x.point, Some(Side::Minus))?.rem_euclid(1.0);
        let a_plus = g.angle_of(x.point, Some(Side::Plus))?.rem_euclid(1.0);
        let a_minus = if a_minus > 0.5 { 0.0 } else { a_minus };
        let a_plus = if a_plus < 0.5 { 1.0 } else { a_plus };
        let total = angles.1 - angles.0;
        Ok((total - (a_minus + 1.0 - a_plus)).clamp(0.0, total))
    }
}

/// The arc of angles landing on the slit, found by bisection on the piece
/// reached by the radial limit.
fn slit_preimage(g: &RiemannMap) -> Result<(f64, f64)> {
    let on_slit = |a: f64| -> Result<bool> {
        let b = g.boundary_sample(a)?;
        Ok(g.target().boundary.pieces()[b.piece].slit.is_some())
    };
    let edge = |inside: f64, outside: f64| -> Result<f64> {
        let (mut i, mut o) = (inside, outside);
        for _ in 0..60 {
            let m = 0.5 * (i + o);
            if on_slit(m)? {
                i = m;
            } else {
                o = m;
            }
        }
        Ok(0.5 * (i + o))
    };
    let hi = edge(0.0, 0.5)?;
    let lo = edge(0.0, -0.5)?;
    Ok((lo, hi))
}

impl BoundaryMap for SlitPair {
    /// On the unit circle `g̃ ∘ R ∘ g⁻¹`; on the slit `μ̃⁻¹ ∘ μ`, where `μ`
    /// is the harmonic mass of the subarc from the root. Slit sides are kept.
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        let boundary = &self.g.target().boundary;
        let n = boundary.nearest_on_side(p.point, p.side);
        if boundary.pieces()[n.piece].slit.is_none() {
            let a = self.g.angle_of(n.point, None)?;
            let b = self.gt.boundary_sample(a + self.circle_shift())?;
            return Ok(BoundaryPoint::new(b.point, None));
        }
        let m = Self::root_mass(&self.g, self.arc_angles, BoundaryPoint::new(n.point, p.side))?;
        let (mut lo, mut hi) = (1.0, self.p_tilde);
        for _ in 0..60 {
            let x = 0.5 * (lo + hi);
            let mx = Self::root_mass(&self.gt, self.radial_angles, C64::new(x, 0.0).into())?;
            if mx < m {
                lo = x;
            } else {
                hi = x;
            }
        }
        Ok(BoundaryPoint::new(C64::new(0.5 * (lo + hi), 0.0), p.side))
    }
}

impl DomainSpec {
    pub fn kind(&self) -> DiskKind {
        match self {
            DomainSpec::UnitDisk => DiskKind::UnitDisk,
            DomainSpec::DiskExterior => DiskKind::DiskExterior,
            DomainSpec::SegmentExterior { .. } => DiskKind::SegmentExterior,
            DomainSpec::JoukowskiExterior { .. } => DiskKind::JoukowskiExterior,
            DomainSpec::EllipseInterior { .. } => DiskKind::EllipseInterior,
            DomainSpec::RadialSlitExterior { .. } => DiskKind::RadialSlitExterior,
            DomainSpec::ArcSlitExterior { .. } => DiskKind::ArcSlitExterior,
            DomainSpec::Polygon { .. } => DiskKind::Polygon,
        }
    }

    pub fn default_center(&self) -> ExtPoint {
        match self {
            DomainSpec::UnitDisk | DomainSpec::EllipseInterior { .. } => ExtPoint::Finite(ZERO),
            DomainSpec::Polygon { points } => {
                let s: C64 = points.iter().sum();
                ExtPoint::Finite(s / points.len().max(1) as f64)
            }
            _ => ExtPoint::Infinity,
        }
    }

    /// Natural marked point: the free end of a slit, or the image of 1 for
    /// the segment.
    pub fn default_marked(&self) -> Result<Option<C64>> {
        Ok(match self {
            DomainSpec::SegmentExterior { b, .. } => Some(*b),
            DomainSpec::RadialSlitExterior { p_tilde } => Some(C64::new(*p_tilde, 0.0)),
            DomainSpec::ArcSlitExterior { delta, epsilon } => Some(ArcSlit::new(*delta, *epsilon)?.tip),
            _ => None,
        })
    }

    /// Boundary in its natural traversal order.
    pub fn boundary(&self, center: ExtPoint) -> Result<BoundaryCurve> {
        match self {
            DomainSpec::UnitDisk => unit_circle(true),
            DomainSpec::DiskExterior => unit_circle(false),
            DomainSpec::SegmentExterior { a, b } => {
                if (b - a).norm() == 0.0 {
                    return Err(Error::invalid("degenerate segment"));
                }
                BoundaryCurve::new(
                    two_sided(
                        PieceGeom::Segment { from: *b, to: *a },
                        vec![],
                        PieceGeom::Segment { from: *a, to: *b },
                    ),
                    false,
                )
            }
            DomainSpec::JoukowskiExterior { t } => ellipse_curve(*t, false),
            DomainSpec::EllipseInterior { t } => ellipse_curve(*t, true),
            DomainSpec::RadialSlitExterior { p_tilde } => {
                if !(*p_tilde > 1.0) {
                    return Err(Error::invalid("radial slit needs p_tilde > 1"));
                }
                let tip = C64::new(*p_tilde, 0.0);
                BoundaryCurve::new(
                    two_sided(
                        PieceGeom::Segment { from: tip, to: ONE },
                        vec![PieceGeom::Arc {
                            center: ZERO,
                            radius: 1.0,
                            start: 0.0,
                            sweep: 1.0,
                        }],
                        PieceGeom::Segment { from: ONE, to: tip },
                    ),
                    false,
                )
            }
            DomainSpec::ArcSlitExterior { delta, epsilon } => ArcSlit::new(*delta, *epsilon)?.boundary(),
            DomainSpec::Polygon { points } => {
                let n = points.len();
                if n < 3 {
                    return Err(Error::invalid("polygon needs at least 3 vertices"));
                }
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
                // A bounded polygonal domain lies to the left of a counterclockwise chain.
                let on_left = (area > 0.0) == center.finite().is_some();
                BoundaryCurve::new(pieces, on_left)
            }
        }
    }

    /// Pointed disk with the given (or default) center and marked point.
    pub fn disk(&self, center: Option<ExtPoint>, marked: Option<C64>) -> Result<PointedDisk> {
        let center = center.unwrap_or_else(|| self.default_center());
        let marked = match marked {
            Some(s) => Some(s),
            None => self.default_marked()?,
        };
        let mut boundary = self.boundary(center)?;
        if let Some(s) = marked {
            let tol = 1e-9 * (1.0 + boundary.diameter());
            if boundary.nearest(s).distance <= 1e-6 * boundary.diameter() {
                boundary = boundary.starting_at(s, tol)?;
            }
        }
        PointedDisk::new(self.kind(), boundary, center, marked)
    }

    /// Closed-form chain onto the disk when one is known for its center.
    fn closed_chain(&self, disk: &PointedDisk) -> Result<Option<(ConformalMap, Model)>> {
        let ext = disk.center.is_infinite();
        Ok(match (self, disk.center) {
            (DomainSpec::UnitDisk, ExtPoint::Finite(c)) => {
                let m = Mobius::new(ONE, c, c.conj(), ONE)?;
                Some((
                    ConformalMap::identity(Region::Disk).then(Step::forward(Primitive::Mobius(m)), Region::Disk),
                    Model::Disk,
                ))
            }
            (DomainSpec::DiskExterior, _) if ext => {
                Some((ConformalMap::identity(Region::Exterior), Model::Exterior))
            }
            (DomainSpec::SegmentExterior { a, b }, _) if ext => Some((
                ConformalMap::identity(Region::Exterior)
                    .then(Step::forward(Primitive::Joukowski), Region::Plane)
                    .then(
                        Step::forward(Primitive::Affine {
                            scale: (b - a) / 4.0,
                            shift: (a + b) / 2.0,
                        }),
                        Region::Plane,
                    ),
                Model::Exterior,
            )),
            (DomainSpec::JoukowskiExterior { t }, _) if ext => Some((
                ConformalMap::identity(Region::Exterior).then(
                    Step::forward(Primitive::Family(FamilyMap::Stretch { t: *t })),
                    Region::Plane,
                ),
                Model::Exterior,
            )),
            (DomainSpec::RadialSlitExterior { p_tilde }, _) if ext => {
                let (c, l) = radial_slit_params(*p_tilde);
                Some((
                    ConformalMap::identity(Region::Exterior)
                        .then(Step::forward(Primitive::Joukowski), Region::Plane)
                        .then(
                            Step::forward(Primitive::Affine {
                                scale: C64::new(l / 2.0, 0.0),
                                shift: C64::new(c, 0.0),
                            }),
                            Region::Plane,
                        )
                        .then(Step::forward(Primitive::JoukowskiExteriorInverse), Region::Exterior),
                    Model::Exterior,
                ))
            }
            (DomainSpec::ArcSlitExterior { delta, epsilon }, _) if ext => {
                Some((ArcSlit::new(*delta, *epsilon)?.chain()?, Model::Exterior))
            }
            _ => None,
        })
    }

    /// Riemann map onto `disk`: closed form where available, otherwise the
    /// zipper with `n` boundary points. Normalized by the marked point when
    /// the disk has one.
    pub fn riemann_map(&self, disk: &PointedDisk, n: usize) -> Result<RiemannMap> {
        let g = match self.closed_chain(disk)? {
            Some((chain, model)) => {
                RiemannMap::from_chain(chain, model, Arc::new(disk.clone()), true)?
            }
            None => zipper_for_disk(disk, n)?,
        };
        match disk.marked {
            Some(s) => g.renormalized(Normalization::Marked(s)),
            None => Ok(g),
        }
    }

    /// Disk and Riemann map with default center and marked point.
    pub fn build(&self, n: usize) -> Result<(PointedDisk, RiemannMap)> {
        let disk = self.disk(None, None)?;
        let g = self.riemann_map(&disk, n)?;
        Ok((disk, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joukowski_exterior_has_unit_radius() {
        let (_, g) = DomainSpec::JoukowskiExterior { t: C64::new(0.3, 0.2) }.build(0).unwrap();
        assert!((g.conformal_radius() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn segment_radius_is_a_quarter_length() {
        let (_, g) = DomainSpec::SegmentExterior { a: minus_two(), b: two() }.build(0).unwrap();
        assert!((g.conformal_radius() - 1.0).abs() < 1e-12);
        let b = g.boundary_sample(0.0).unwrap();
        assert!((b.point - 2.0).norm() < 1e-9);
    }

    #[test]
    fn arc_slit_sends_one_to_the_tip() {
        let spec = DomainSpec::ArcSlitExterior { delta: 0.25, epsilon: 0.05 };
        let (disk, g) = spec.build(0).unwrap();
        let tip = disk.marked.unwrap();
        assert!((g.eval(C64::new(1.0 + 1e-10, 0.0)).unwrap() - tip).norm() < 1e-4);
        assert!(g.rotation().abs() < 1e-6 || (g.rotation() - 1.0).abs() < 1e-6);
        let z = C64::new(0.3, -1.7);
        let w = g.eval(g.inverse(z).unwrap()).unwrap();
        assert!((w - z).norm() < 1e-9);
    }

    #[test]
    fn arc_slit_mass_matches_boundary_sampling() {
        let slit = ArcSlit::new(0.25, 0.05).unwrap();
        let spec = DomainSpec::ArcSlitExterior { delta: 0.25, epsilon: 0.05 };
        let (disk, g) = spec.build(0).unwrap();
        let n = 20000;
        let mut on_slit = 0;
        for k in 0..n {
            let b = g.boundary_sample((k as f64 + 0.5) / n as f64).unwrap();
            if disk.boundary.pieces()[b.piece].slit.is_some() {
                on_slit += 1;
            }
        }
        let sampled = on_slit as f64 / n as f64;
        assert!((sampled - slit.slit_mass().unwrap()).abs() < 2e-3, "{sampled}");
    }

    #[test]
    fn radial_slit_mass_inverts() {
        let p = radial_slit_for_mass(0.2).unwrap();
        assert!((radial_slit_mass(p) - 0.2).abs() < 1e-12);
        let (disk, g) = DomainSpec::RadialSlitExterior { p_tilde: p }.build(0).unwrap();
        let n = 4000;
        let on_slit = (0..n)
            .filter(|k| {
                let b = g.boundary_sample((*k as f64 + 0.5) / n as f64).unwrap();
                disk.boundary.pieces()[b.piece].slit.is_some()
            })
            .count();
        assert!((on_slit as f64 / n as f64 - 0.2).abs() < 2e-3);
    }

    #[test]
    fn polygon_orientation_is_inferred() {
        let pts = vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)];
        let mut rev = pts.clone();
        rev.reverse();
        for p in [pts, rev] {
            let disk = DomainSpec::Polygon { points: p }.disk(None, None).unwrap();
            assert!(disk.contains(C64::new(0.1, 0.1)));
            assert!(!disk.contains(C64::new(2.0, 0.0)));
        }
    }

    #[test]
    fn slit_pair_matches_slit_masses() {
        let pair = SlitPair::new(0.25, 0.05).unwrap();
        let m = pair.arc_angles.1 - pair.arc_angles.0;
        let mt = pair.radial_angles.1 - pair.radial_angles.0;
        assert!((m - mt).abs() < 1e-9, "{m} {mt}");
        assert!((m - pair.arc.slit_mass().unwrap()).abs() < 1e-9);
        assert!((pair.radial_angles.0 + pair.radial_angles.1).abs() < 1e-9);
        let tip = pair.apply(BoundaryPoint::new(pair.arc.tip, None)).unwrap();
        assert!((tip.point - pair.p_tilde).norm() < 1e-6);
        let root = pair.apply(BoundaryPoint::new(ONE, Some(Side::Minus))).unwrap();
        // Mass vanishes quadratically at the root, so positions are resolved to about √1e-9.
        assert!((root.point - ONE).norm() < 1e-3);
    }
}
