//! Holomorphic motions of disk boundaries and the fitness harness.

mod harness;
mod rescale;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::builtin::DomainSpec;
use crate::confmap::{ConformalMap, FamilyMap, Model, Normalization, Primitive, Region, RiemannMap, Step};
use crate::geom::{BoundaryCurve, DiskKind, ExtPoint, FourierPiece, Piece, PieceGeom, PointedDisk};
use crate::measure::{BoundaryMap, BoundaryPoint};
use crate::{Error, Result, C64};

pub use harness::{
    default_t_grid, fitness_report, harmonicity_scan, holomorphy_residual, induced_circle_map,
    intrinsic_rotation, taylor_coefficients, CircleMapSample, FitnessOptions, FitnessRecord,
    FitnessReport, HarmonicityEntry, HarmonicityReport, Tolerances, Verdict, GOLDEN_THETA,
};
pub use rescale::{rescale_to_constant_radius, Rescaled};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// A holomorphic motion `φ_t: ∂U₀ → ∂U_t` over the unit disk, with the
/// moved pointed disks.
pub trait Motion: Send + Sync {
    /// `φ_t(p)`; slit sides are carried along.
    fn apply(&self, p: BoundaryPoint, t: C64) -> Result<BoundaryPoint>;

    /// Riemann map of `(U_t, c_t)` normalized by `g_t(1) = φ_t(s₀)`.
    fn moved(&self, t: C64, n: usize) -> Result<RiemannMap>;

    /// Marked point `s₀` of `U₀`.
    fn marked(&self) -> C64;

    /// Short name for reports.
    fn label(&self) -> String;
}

pub(crate) fn check_parameter(t: C64) -> Result<()> {
    if !(t.norm() < 1.0) {
        return Err(Error::Domain {
            index: 0,
            message: format!("motion parameter {t} is outside the unit disk"),
        });
    }
    Ok(())
}

/// `φ_t` as a boundary map.
pub struct MotionAt<'a> {
    pub motion: &'a dyn Motion,
    pub t: C64,
}

impl BoundaryMap for MotionAt<'_> {
    fn apply(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        self.motion.apply(p, self.t)
    }
}

/// Polynomial in `t` by its coefficients, constant term first.
pub type Poly = Vec<C64>;

pub fn poly_eval(p: &[C64], t: C64) -> C64 {
    p.iter().rev().fold(ZERO, |acc, c| acc * t + c)
}

/// `Σ_{k≥1} |p_k|`: bounds `|p(t) − p(0)|` on the unit disk.
fn tail_norm(p: &[C64]) -> f64 {
    p.iter().skip(1).map(|c| c.norm()).sum()
}

/// Model of a trivial chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainModel {
    /// `ζ ↦ scale·(ζ + shape·ζ²) + shift` on the unit disk.
    Disk,
    /// `ζ ↦ scale·(ζ + shape/ζ) + shift` on the exterior disk.
    Exterior,
}

fn default_scale() -> Poly {
    vec![ONE]
}

fn default_endpoint() -> Poly {
    vec![C64::new(2.0, 0.0), ONE]
}

/// Builtin motions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MotionFamily {
    /// `z ↦ z + t z̄` on the unit circle, pointed at 0.
    AffineStretch,
    /// `z ↦ z + t/z` on the unit circle, pointed at ∞.
    #[serde(alias = "joukowski_exterior")]
    Joukowski,
    /// `Φ_t = g_t ∘ g₀⁻¹` for a chain whose coefficients are polynomials in `t`.
    TrivialChain {
        model: ChainModel,
        #[serde(default)]
        shape: Poly,
        #[serde(default = "default_scale")]
        scale: Poly,
        #[serde(default)]
        shift: Poly,
    },
    /// Complement of the segment `[−2, p(t)]`, moved by the affine map fixing `−2`.
    SlitGrow {
        #[serde(default = "default_endpoint")]
        endpoint: Poly,
    },
}

impl MotionFamily {
    /// Disk-model trivial chain with a moving center.
    pub fn trivial_disk() -> Self {
        MotionFamily::TrivialChain {
            model: ChainModel::Disk,
            shape: vec![C64::new(0.2, 0.0), C64::new(0.2, 0.0)],
            scale: vec![ONE, C64::new(0.3, 0.0)],
            shift: vec![ZERO, C64::new(0.1, 0.0)],
        }
    }

    /// Exterior trivial chain.
    pub fn trivial_exterior() -> Self {
        MotionFamily::TrivialChain {
            model: ChainModel::Exterior,
            shape: vec![C64::new(0.3, 0.0), C64::new(0.3, 0.0)],
            scale: vec![ONE, ZERO, C64::new(0.25, 0.0)],
            shift: vec![ZERO, C64::new(0.2, 0.0)],
        }
    }

    pub fn slit_grow() -> Self {
        MotionFamily::SlitGrow {
            endpoint: default_endpoint(),
        }
    }

    /// Rejects parameters for which some `U_t` degenerates.
    pub fn validate(&self) -> Result<()> {
        match self {
            MotionFamily::TrivialChain {
                model,
                shape,
                scale,
                ..
            } => {
                let bound = match model {
                    ChainModel::Disk => 0.5,
                    ChainModel::Exterior => 1.0,
                };
                let shape_max = shape.first().map_or(0.0, |c| c.norm()) + tail_norm(shape);
                if !(shape_max < bound) {
                    return Err(Error::invalid(format!(
                        "shape coefficient must stay below {bound} in modulus on the unit disk"
                    )));
                }
                let s0 = scale.first().map_or(0.0, |c| c.norm());
                if !(s0 > tail_norm(scale)) {
                    return Err(Error::invalid("scale polynomial may vanish on the unit disk"));
                }
                Ok(())
            }
            MotionFamily::SlitGrow { endpoint } => {
                let base = endpoint.first().copied().unwrap_or(ZERO) + 2.0;
                if !(base.norm() > tail_norm(endpoint)) {
                    return Err(Error::invalid("slit endpoint may reach -2 on the unit disk"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Center `c_t` of `U_t`.
    pub fn center(&self, t: C64) -> ExtPoint {
        match self {
            MotionFamily::AffineStretch => ExtPoint::Finite(ZERO),
            MotionFamily::TrivialChain {
                model: ChainModel::Disk,
                shift,
                ..
            } => ExtPoint::Finite(poly_eval(shift, t)),
            _ => ExtPoint::Infinity,
        }
    }

    fn chain_at(&self, t: C64) -> Option<(ConformalMap, Model)> {
        let MotionFamily::TrivialChain {
            model,
            shape,
            scale,
            shift,
        } = self
        else {
            return None;
        };
        let a = poly_eval(shape, t);
        let (start, family, model) = match model {
            ChainModel::Disk => (Region::Disk, FamilyMap::Quadratic { a }, Model::Disk),
            ChainModel::Exterior => (Region::Exterior, FamilyMap::Stretch { t: a }, Model::Exterior),
        };
        let chain = ConformalMap::identity(start)
            .then(Step::forward(Primitive::Family(family)), Region::Plane)
            .then(
                Step::forward(Primitive::Affine {
                    scale: poly_eval(scale, t),
                    shift: poly_eval(shift, t),
                }),
                Region::Plane,
            );
        Some((chain, model))
    }

    fn trivial_disk_at(&self, t: C64) -> Result<RiemannMap> {
        let MotionFamily::TrivialChain {
            model,
            shape,
            scale,
            shift,
        } = self
        else {
            unreachable!("only called for trivial chains")
        };
        let (a, s, b) = (poly_eval(shape, t), poly_eval(scale, t), poly_eval(shift, t));
        let (coeffs, on_left, center) = match model {
            ChainModel::Disk => (vec![(0, b), (1, s), (2, s * a)], true, ExtPoint::Finite(b)),
            ChainModel::Exterior => (vec![(0, b), (1, s), (-1, s * a)], false, ExtPoint::Infinity),
        };
        let boundary = BoundaryCurve::new(
            vec![Piece::plain(PieceGeom::Fourier(FourierPiece::new(coeffs, 0.0, 1.0, None)))],
            on_left,
        )?;
        // `ζ = 1` maps to the same point in both models.
        let marked = s * (ONE + a) + b;
        let disk = PointedDisk::new(DiskKind::Sampled, boundary, center, Some(marked))?;
        let (chain, model) = self.chain_at(t).expect("trivial chain");
        RiemannMap::from_chain(chain, model, Arc::new(disk), true)?
            .renormalized(Normalization::Marked(marked))
    }

    fn slit_factor(endpoint: &[C64], t: C64) -> C64 {
        (poly_eval(endpoint, t) + 2.0) / (poly_eval(endpoint, ZERO) + 2.0)
    }
}

impl Motion for MotionFamily {
    fn apply(&self, p: BoundaryPoint, t: C64) -> Result<BoundaryPoint> {
        check_parameter(t)?;
        let z = p.point;
        let w = match self {
            MotionFamily::AffineStretch => z + t * z.conj(),
            MotionFamily::Joukowski => {
                if z.norm() == 0.0 {
                    return Err(Error::invalid("0 is not on the unit circle"));
                }
                z + t / z
            }
            MotionFamily::SlitGrow { endpoint } => {
                let two = C64::new(2.0, 0.0);
                -two + (z + two) * Self::slit_factor(endpoint, t)
            }
            MotionFamily::TrivialChain { .. } => {
                let (g0, _) = self.chain_at(ZERO).expect("trivial chain");
                let (gt, _) = self.chain_at(t).expect("trivial chain");
                let zeta = g0
                    .inverse_ext(z.into())?
                    .finite()
                    .ok_or_else(|| Error::numeric("boundary point has no finite preimage"))?;
                gt.eval(zeta / zeta.norm())?
            }
        };
        Ok(BoundaryPoint::new(w, p.side))
    }

    fn moved(&self, t: C64, n: usize) -> Result<RiemannMap> {
        check_parameter(t)?;
        self.validate()?;
        let s_t = self.apply(self.marked().into(), t)?.point;
        match self {
            MotionFamily::AffineStretch => {
                let spec = DomainSpec::EllipseInterior { t };
                let disk = spec.disk(Some(ExtPoint::Finite(ZERO)), Some(s_t))?;
                spec.riemann_map(&disk, n)
            }
            MotionFamily::Joukowski => {
                let spec = DomainSpec::JoukowskiExterior { t };
                let disk = spec.disk(None, Some(s_t))?;
                spec.riemann_map(&disk, n)
            }
            MotionFamily::SlitGrow { .. } => {
                let spec = DomainSpec::SegmentExterior {
                    a: C64::new(-2.0, 0.0),
                    b: s_t,
                };
                let disk = spec.disk(None, Some(s_t))?;
                spec.riemann_map(&disk, n)
            }
            MotionFamily::TrivialChain { .. } => self.trivial_disk_at(t),
        }
    }

    fn marked(&self) -> C64 {
        match self {
            MotionFamily::AffineStretch | MotionFamily::Joukowski => ONE,
            MotionFamily::SlitGrow { endpoint } => poly_eval(endpoint, ZERO),
            MotionFamily::TrivialChain { .. } => {
                let (g0, _) = self.chain_at(ZERO).expect("trivial chain");
                g0.eval(ONE).unwrap_or(ONE)
            }
        }
    }

    fn label(&self) -> String {
        match self {
            MotionFamily::AffineStretch => "affine_stretch".into(),
            MotionFamily::Joukowski => "joukowski".into(),
            MotionFamily::TrivialChain { model, .. } => match model {
                ChainModel::Disk => "trivial_chain(disk)".into(),
                ChainModel::Exterior => "trivial_chain(exterior)".into(),
            },
            MotionFamily::SlitGrow { .. } => "slit_grow".into(),
        }
    }
}

/// `φ_t(z)` for a base point `z`.
pub fn eval_motion(m: &dyn Motion, z: C64, t: C64) -> Result<C64> {
    Ok(m.apply(z.into(), t)?.point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::cis;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn all() -> Vec<MotionFamily> {
        vec![
            MotionFamily::AffineStretch,
            MotionFamily::Joukowski,
            MotionFamily::trivial_disk(),
            MotionFamily::trivial_exterior(),
            MotionFamily::slit_grow(),
        ]
    }

    #[test]
    fn examples() {
        assert_eq!(eval_motion(&MotionFamily::AffineStretch, ONE, c(0.3, 0.0)).unwrap(), c(1.3, 0.0));
        let j = eval_motion(&MotionFamily::Joukowski, c(0.0, 1.0), c(0.5, 0.0)).unwrap();
        assert!((j - c(0.0, 0.5)).norm() < 1e-15);
        assert!(eval_motion(&MotionFamily::Joukowski, ONE, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn base_identity_and_injectivity() {
        for m in all() {
            let g0 = m.moved(ZERO, 256).unwrap();
            let pts: Vec<C64> = g0.target().boundary.sample_point_set(256).iter().map(|p| p.0).collect();
            for &p in &pts {
                assert!((eval_motion(&m, p, ZERO).unwrap() - p).norm() < 1e-12, "{}", m.label());
            }
            let t = c(0.4, -0.3);
            let moved: Vec<C64> = pts.iter().map(|&p| eval_motion(&m, p, t).unwrap()).collect();
            for i in 0..moved.len() {
                for j in 0..i {
                    assert!((moved[i] - moved[j]).norm() > 1e-9);
                }
            }
        }
    }

    #[test]
    fn marked_point_is_tracked() {
        for m in all() {
            let t = c(0.2, 0.5);
            let g = m.moved(t, 256).unwrap();
            let s_t = eval_motion(&m, m.marked(), t).unwrap();
            assert!((g.boundary_sample(0.0).unwrap().point - s_t).norm() < 1e-6, "{}", m.label());
            assert!(g.target().boundary.distance(s_t) < 1e-9);
        }
    }

    #[test]
    fn moved_boundary_is_the_image() {
        for m in all() {
            let t = c(-0.35, 0.25);
            let g0 = m.moved(ZERO, 256).unwrap();
            let g = m.moved(t, 256).unwrap();
            for (p, _) in g0.target().boundary.sample_point_set(64) {
                let q = eval_motion(&m, p, t).unwrap();
                assert!(g.target().boundary.distance(q) < 1e-9, "{}", m.label());
            }
        }
    }

    #[test]
    fn parameter_outside_disk_is_rejected() {
        assert!(matches!(
            MotionFamily::Joukowski.apply(ONE.into(), cis(0.1)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        let bad = MotionFamily::TrivialChain {
            model: ChainModel::Disk,
            shape: vec![c(0.3, 0.0), c(0.3, 0.0)],
            scale: vec![ONE],
            shift: vec![],
        };
        assert!(bad.validate().is_err());
        let bad = MotionFamily::SlitGrow {
            endpoint: vec![c(2.0, 0.0), c(4.0, 0.0)],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn scene_round_trip() {
        for m in all() {
            let s = serde_json::to_string(&m).unwrap();
            let back: MotionFamily = serde_json::from_str(&s).unwrap();
            assert_eq!(back, m);
        }
        let m: MotionFamily = serde_json::from_str(r#"{"kind":"joukowski_exterior"}"#).unwrap();
        assert_eq!(m, MotionFamily::Joukowski);
        assert!(serde_json::from_str::<MotionFamily>(r#"{"kind":"slit_grow","tip":[]}"#).is_err());
    }
}
