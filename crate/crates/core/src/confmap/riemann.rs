use std::sync::Arc;

use serde::Serialize;

use super::chain::{ConformalMap, Region, Step};
use super::correspondence::{AccessTag, BoundarySample};
use super::primitive::Primitive;
use crate::geom::{arg_turns, cis, ExtPoint, Mobius, PointedDisk, Side};
use crate::{Error, Result, C64};

/// The model domain of a Riemann map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Unit disk with base point 0.
    Disk,
    /// Exterior of the closed unit disk with base point ∞.
    Exterior,
}

impl Model {
    pub fn base(self) -> ExtPoint {
        match self {
            Model::Disk => ExtPoint::Finite(C64::new(0.0, 0.0)),
            Model::Exterior => ExtPoint::Infinity,
        }
    }

    pub fn region(self) -> Region {
        match self {
            Model::Disk => Region::Disk,
            Model::Exterior => Region::Exterior,
        }
    }

    /// Point on the radius at angle `a` (turns) with radial parameter `r ∈ (0, 1]`,
    /// where `r → 1` approaches the unit circle from inside the model.
    pub fn radial_point(self, a: f64, r: f64) -> C64 {
        match self {
            Model::Disk => cis(a) * r,
            Model::Exterior => cis(a) / r,
        }
    }

    pub fn contains(self, z: C64) -> bool {
        match self {
            Model::Disk => z.norm() < 1.0,
            Model::Exterior => z.norm() > 1.0,
        }
    }
}

/// Which of the rotations of the model is used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `g′(0) > 0`, or `lim g(ζ)/ζ > 0` at infinity.
    DerivativePositive,
    /// `g(1) = s`.
    Marked(C64),
}

/// Normalized conformal isomorphism from the model domain onto a pointed disk.
///
/// `g(ζ) = F(e^{2πiβ} ζ)` where `F` is the stored chain and `β` the stored
/// rotation.
#[derive(Debug, Clone)]
pub struct RiemannMap {
    map: Arc<ConformalMap>,
    model: Model,
    rotation: f64,
    normalization: Normalization,
    radius: f64,
    base_jet: C64,
    target: Arc<PointedDisk>,
    boundary_exact: bool,
}

const EXACT_BOUNDARY_OFFSET: f64 = 1e-12;
const SIDE_PROBE_OFFSET: f64 = 1e-6;
const RADIAL_MAX_K: i32 = 40;
const RADIAL_AGREE: f64 = 1e-7;

impl RiemannMap {
    /// Wraps a chain from the model onto `target`, normalized with positive
    /// derivative at the base point.
    ///
    /// `boundary_exact` declares that the chain extends continuously to the
    /// closed model, so boundary values may be read off directly.
    pub fn from_chain(
        map: ConformalMap,
        model: Model,
        target: Arc<PointedDisk>,
        boundary_exact: bool,
    ) -> Result<Self> {
        let (image, jet) = map.jet(model.base())?;
        let ok = match (image, target.center) {
            (ExtPoint::Infinity, ExtPoint::Infinity) => true,
            (ExtPoint::Finite(a), ExtPoint::Finite(b)) => {
                (a - b).norm() <= 1e-9 * (1.0 + b.norm() + target.boundary.diameter())
            }
            _ => false,
        };
        if !ok {
            return Err(Error::Construction(
                "chain does not send the base point to the center".into(),
            ));
        }
        if !(jet.norm() > 0.0) || !jet.is_finite() {
            return Err(Error::numeric("degenerate derivative at the base point"));
        }
        let radius = match model {
            Model::Disk => jet.norm(),
            Model::Exterior => 1.0 / jet.norm(),
        };
        let rotation = match model {
            Model::Disk => -arg_turns(jet),
            Model::Exterior => arg_turns(jet),
        };
        Ok(RiemannMap {
            map: Arc::new(map),
            model,
            rotation: rotation.rem_euclid(1.0),
            normalization: Normalization::DerivativePositive,
            radius,
            base_jet: jet,
            target,
            boundary_exact,
        })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn target(&self) -> &PointedDisk {
        &self.target
    }

    pub fn target_arc(&self) -> Arc<PointedDisk> {
        self.target.clone()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Pre-rotation in turns.
    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn boundary_exact(&self) -> bool {
        self.boundary_exact
    }

    /// The unrotated chain.
    pub fn raw_chain(&self) -> &ConformalMap {
        &self.map
    }

    /// The full chain including the model rotation.
    pub fn chain(&self) -> ConformalMap {
        let region = self.model.region();
        ConformalMap::identity(region)
            .then(Step::forward(Primitive::Mobius(Mobius::rotation(self.rotation))), region)
            .then_map(&self.map)
            .expect("rotation preserves the model")
    }

    /// `|g′(0)|`, or `lim |g(ζ)/ζ|` at infinity.
    pub fn conformal_radius(&self) -> f64 {
        self.radius
    }

    /// `g′` at the base point: `g′(0)` for the disk model and `lim g(ζ)/ζ` for the exterior model.
    pub fn base_derivative(&self) -> C64 {
        match self.model {
            Model::Disk => self.base_jet * cis(self.rotation),
            Model::Exterior => cis(self.rotation) / self.base_jet,
        }
    }

    pub fn center(&self) -> ExtPoint {
        self.target.center
    }

    /// Same map precomposed with the rotation `ζ ↦ e^{2πiθ} ζ`.
    pub fn pre_rotated(&self, turns: f64) -> RiemannMap {
        let mut g = self.clone();
        g.rotation = (g.rotation + turns).rem_euclid(1.0);
        g.normalization = match g.normalization {
            Normalization::Marked(_) => Normalization::Marked(
                g.boundary_sample(0.0).map(|b| b.point).unwrap_or(C64::new(f64::NAN, f64::NAN)),
            ),
            n => n,
        };
        g
    }

    pub fn renormalized(&self, normalization: Normalization) -> Result<RiemannMap> {
        let mut g = self.clone();
        match normalization {
            Normalization::DerivativePositive => {
                g.rotation = match self.model {
                    Model::Disk => -arg_turns(self.base_jet),
                    Model::Exterior => arg_turns(self.base_jet),
                }
                .rem_euclid(1.0);
            }
            Normalization::Marked(s) => {
                g.rotation = self.raw_angle_of(s)?;
            }
        }
        g.normalization = normalization;
        Ok(g)
    }

    /// Angle `a` with `F(e^{2πia}) = s` for the unrotated chain.
    fn raw_angle_of(&self, s: C64) -> Result<f64> {
        let nearest = self.target.boundary.nearest(s);
        if nearest.distance > self.target.match_tolerance() {
            return Err(Error::NotFound(format!("marked point {s} is not on the boundary")));
        }
        let pre = self
            .map
            .inverse_ext(s.into())
            .map_err(|e| Error::NotFound(format!("marked point {s} has no preimage: {e}")))?;
        match pre {
            ExtPoint::Finite(z) if z.norm() > 0.0 && (z.norm() - 1.0).abs() < 1e-3 => {
                Ok(arg_turns(z))
            }
            _ => Err(Error::NotFound(format!(
                "preimage of marked point {s} is not on the unit circle"
            ))),
        }
    }

    pub fn eval_ext(&self, p: ExtPoint) -> Result<ExtPoint> {
        let q = match p {
            ExtPoint::Finite(z) => ExtPoint::Finite(z * cis(self.rotation)),
            inf => inf,
        };
        self.map.eval_ext(q)
    }

    pub fn eval(&self, zeta: C64) -> Result<C64> {
        self.map.eval(zeta * cis(self.rotation))
    }

    pub fn derivative(&self, zeta: C64) -> Result<C64> {
        let r = cis(self.rotation);
        Ok(self.map.derivative(zeta * r)? * r)
    }

    /// Model point mapped to `z`.
    pub fn inverse_ext(&self, p: ExtPoint) -> Result<ExtPoint> {
        Ok(match self.map.inverse_ext(p)? {
            ExtPoint::Finite(z) => ExtPoint::Finite(z * cis(-self.rotation)),
            inf => inf,
        })
    }

    pub fn inverse(&self, z: C64) -> Result<C64> {
        self.inverse_ext(z.into())?
            .finite()
            .ok_or_else(|| Error::numeric("preimage is the point at infinity"))
    }

    /// Angle (turns) of the radius landing at the boundary point `p`, on the
    /// given slit side when `p` lies on a two-sided slit.
    ///
    /// Points that the chain cannot invert exactly are pulled into the
    /// domain along the inward normal before inverting.
    pub fn angle_of(&self, p: C64, side: Option<Side>) -> Result<f64> {
        let boundary = &self.target.boundary;
        let tol = self.target.match_tolerance();
        let n = boundary.nearest_on_side(p, side);
        if n.distance > tol {
            return Err(Error::NotFound(format!("{p} is not on the boundary")));
        }
        if !self.boundary_exact {
            return self.angle_refined(n.piece, n.s);
        }
        let two_sided = boundary.is_two_sided(n.piece, n.point, tol);
        if !two_sided {
            if let Ok(ExtPoint::Finite(z)) = self.inverse_ext(p.into()) {
                if (z.norm() - 1.0).abs() < 1e-6 {
                    return Ok(arg_turns(z));
                }
            }
        }
        let scale = boundary.diameter().max(1.0);
        let geom = &boundary.pieces()[n.piece].geom;
        let len = geom.length().max(f64::MIN_POSITIVE);
        let mut last = Error::numeric(format!("no preimage found near {p}"));
        for eta in [1e-10, 1e-8, 1e-6] {
            // Stay clear of corners where the piece meets its neighbours.
            let margin = (10.0 * eta * scale / len).min(0.5);
            let s = n.s.clamp(margin, 1.0 - margin);
            let q = geom.point(s) + boundary.inward_normal(n.piece, s) * (eta * scale);
            match self.inverse_ext(q.into()) {
                Ok(ExtPoint::Finite(z)) if z.norm() > 0.0 => return Ok(arg_turns(z)),
                Ok(_) => {}
                Err(e) => last = e,
            }
        }
        self.angle_by_traversal(n.piece, n.s).map_err(|_| last)
    }

    /// For maps onto an approximating domain: invert a point well inside,
    /// then correct the angle by Newton steps on the traversal position of
    /// the radial limit.
    fn angle_refined(&self, piece: usize, s: f64) -> Result<f64> {
        let boundary = &self.target.boundary;
        let scale = boundary.diameter().max(1.0);
        let total = boundary.traversal_length();
        let want = boundary.traversal_param(piece, s);
        let geom = &boundary.pieces()[piece].geom;
        let mut start = None;
        for eta in [1e-3, 1e-2] {
            let q = geom.point(s) + boundary.inward_normal(piece, s) * (eta * scale);
            if let Ok(ExtPoint::Finite(z)) = self.inverse_ext(q.into()) {
                if z.norm() > 0.0 {
                    start = Some(arg_turns(z));
                    break;
                }
            }
        }
        let mut a = start.ok_or_else(|| Error::numeric("no preimage found near the boundary point"))?;
        let offset = |a: f64| -> Result<f64> {
            let b = self.boundary_sample(a)?;
            let x = boundary.traversal_param(b.piece, b.s);
            Ok((x - want + 0.5 * total).rem_euclid(total) - 0.5 * total)
        };
        let h = 1e-5;
        let mut f = offset(a)?;
        let d = (offset(a + h)? - f) / h;
        if d > 0.0 {
            for _ in 0..4 {
                if f.abs() < 1e-10 * total {
                    break;
                }
                let next = a - f / d;
                let g = offset(next)?;
                if g.abs() >= f.abs() {
                    break;
                }
                a = next;
                f = g;
            }
        }
        Ok(a.rem_euclid(1.0))
    }

    /// Angle whose radial limit sits at the given traversal position, by
    /// bisection. Needs the traversal to start at `g(1)`.
    fn angle_by_traversal(&self, piece: usize, s: f64) -> Result<f64> {
        let boundary = &self.target.boundary;
        let start = self.boundary_sample(0.0)?;
        if (start.point - boundary.start_point()).norm() > self.target.match_tolerance() {
            return Err(Error::numeric("boundary traversal does not start at g(1)"));
        }
        let total = boundary.traversal_length();
        let want = boundary.traversal_param(piece, s);
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let b = self.boundary_sample(mid)?;
            let mut x = boundary.traversal_param(b.piece, b.s);
            if x > total * (1.0 - 1e-12) {
                x = 0.0;
            }
            if x < want {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Radial limit at angle `a` (turns), snapped to the boundary.
    pub fn boundary_sample(&self, a: f64) -> Result<BoundarySample> {
        let (raw, probe, converged) = if self.boundary_exact {
            let raw = self.eval(self.model.radial_point(a, 1.0 - EXACT_BOUNDARY_OFFSET))?;
            let probe = self.eval(self.model.radial_point(a, 1.0 - SIDE_PROBE_OFFSET))?;
            (raw, probe, true)
        } else {
            self.radial_limit(a)?
        };
        Ok(self.snap(raw, probe, converged))
    }

    /// Boundary value of the chain when it extends continuously to the
    /// circle, else Richardson-extrapolated values along `r_k = 1 − 2^{−k}`,
    /// converged once three successive extrapolants agree.
    fn radial_limit(&self, a: f64) -> Result<(C64, C64, bool)> {
        let diam = self.target.boundary.diameter().max(1.0);
        let probe = self.eval(self.model.radial_point(a, 1.0 - (-20f64).exp2()));
        if let (Ok(direct), Ok(probe)) = (self.eval(self.model.radial_point(a, 1.0)), probe) {
            if direct.is_finite() && (direct - probe).norm() < 1e-2 * diam {
                return Ok((direct, probe, true));
            }
        }
        let tol = RADIAL_AGREE * diam;
        let mut prev: Option<C64> = None;
        let mut ext: Vec<C64> = Vec::new();
        let mut probe = C64::new(f64::NAN, f64::NAN);
        for k in 1..=RADIAL_MAX_K {
            let r = 1.0 - (-k as f64).exp2();
            let v = self.eval(self.model.radial_point(a, r))?;
            if k <= 20 {
                probe = v;
            }
            if let Some(p) = prev {
                ext.push(2.0 * v - p);
                let m = ext.len();
                if m >= 3
                    && (ext[m - 1] - ext[m - 2]).norm() < tol
                    && (ext[m - 2] - ext[m - 3]).norm() < tol
                {
                    return Ok((ext[m - 1], probe, true));
                }
            }
            prev = Some(v);
        }
        Ok((*ext.last().expect("at least one extrapolant"), probe, false))
    }

    fn snap(&self, raw: C64, probe: C64, converged: bool) -> BoundarySample {
        let boundary = &self.target.boundary;
        let mut n = boundary.nearest(raw);
        if let Some(tag) = boundary.pieces()[n.piece].slit {
            let facing = boundary.nearest_sided(probe);
            if facing.piece == tag.twin {
                n.piece = tag.twin;
                n.s = 1.0 - n.s;
            }
        }
        let tol = self.target.match_tolerance();
        let tag = if !converged {
            AccessTag::Unknown
        } else {
            match boundary.pieces()[n.piece].slit {
                Some(t) if boundary.is_two_sided(n.piece, n.point, tol) => AccessTag::bi(t.side),
                _ => AccessTag::Uni,
            }
        };
        BoundarySample {
            point: n.point,
            raw,
            converged,
            piece: n.piece,
            s: n.s,
            tag,
        }
    }
}

/// Applies the chain to a point.
pub fn eval_map(f: &ConformalMap, z: C64) -> Result<C64> {
    f.eval(z)
}

pub fn conformal_radius(g: &RiemannMap) -> f64 {
    g.conformal_radius()
}

/// Normalizes a conformal isomorphism from `model` onto `target`.
pub fn normalize(
    f: ConformalMap,
    model: Model,
    target: Arc<PointedDisk>,
    normalization: Normalization,
    boundary_exact: bool,
) -> Result<RiemannMap> {
    RiemannMap::from_chain(f, model, target, boundary_exact)?.renormalized(normalization)
}
