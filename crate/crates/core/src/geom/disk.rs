use serde::{Deserialize, Serialize};

use super::{BoundaryCurve, ExtPoint, Mobius, Side, SlitTag};
use crate::{Error, Result, C64};

/// Which family a pointed disk was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiskKind {
    UnitDisk,
    DiskExterior,
    SegmentExterior,
    JoukowskiExterior,
    EllipseInterior,
    RadialSlitExterior,
    ArcSlitExterior,
    Polygon,
    Sampled,
}

/// A domain together with an interior center and an optional marked
/// uniaccessible boundary point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointedDisk {
    pub kind: DiskKind,
    pub boundary: BoundaryCurve,
    pub center: ExtPoint,
    pub marked: Option<C64>,
}

impl PointedDisk {
    pub fn new(
        kind: DiskKind,
        boundary: BoundaryCurve,
        center: ExtPoint,
        marked: Option<C64>,
    ) -> Result<Self> {
        let disk = PointedDisk {
            kind,
            boundary,
            center,
            marked,
        };
        if !disk.contains_ext(center) {
            return Err(Error::invalid("center does not lie inside the domain"));
        }
        if let Some(s) = marked {
            let n = disk.boundary.nearest(s);
            if n.distance > disk.match_tolerance() {
                return Err(Error::invalid("marked point is not on the boundary"));
            }
            if disk.boundary.pieces()[n.piece].slit.is_some() && n.s > 1e-9 && n.s < 1.0 - 1e-9 {
                return Err(Error::invalid("marked point lies on a two-sided slit"));
            }
        }
        Ok(disk)
    }

    pub fn is_exterior(&self) -> bool {
        self.center.is_infinite()
    }

    /// Matching tolerance for boundary points: 1e-6 of the diameter.
    pub fn match_tolerance(&self) -> f64 {
        1e-6 * self.boundary.diameter().max(1e-300)
    }

    pub fn contains(&self, z: C64) -> bool {
        self.boundary.contains(z, 0.0)
    }

    pub fn contains_ext(&self, p: ExtPoint) -> bool {
        match p {
            ExtPoint::Finite(z) => self.contains(z),
            ExtPoint::Infinity => !self.boundary.bounds_domain(),
        }
    }

    pub fn distance(&self, z: C64) -> f64 {
        self.boundary.distance(z)
    }

    /// Side tag when `z` is closest to a slit.
    pub fn slit_side(&self, z: C64) -> Option<Side> {
        self.boundary.side_at(z).map(|(s, _)| s)
    }

    pub fn slit_pieces(&self) -> impl Iterator<Item = (usize, SlitTag)> + '_ {
        self.boundary
            .pieces()
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.slit.map(|t| (i, t)))
    }

    /// Image under a Möbius map, with the center carried along.
    pub fn mobius_image(&self, m: &Mobius, kind: DiskKind) -> Result<PointedDisk> {
        let boundary = self.boundary.mobius_image(m)?;
        let center = m.eval_ext(self.center);
        PointedDisk::new(kind, boundary, center, self.marked.map(|s| m.eval(s)))
    }
}

/// Euclidean distance from a finite point to the boundary point set.
pub fn boundary_distance(d: &PointedDisk, z: C64) -> f64 {
    d.distance(z)
}
