use crate::{Error, Result};
use serde::{Deserialize, Serialize};

use super::{cis, Tolerances};
use crate::C64;

/// A point `exp(2πi·turns)` of the unit circle.
///
/// Stored in turns so that normalized Lebesgue measure of an arc is its
/// literal length. Equality compares modulo 1 with the default angle
/// tolerance.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(turns: f64) -> Self {
        let mut r = turns - turns.floor();
        if r >= 1.0 {
            r = 0.0;
        }
        Angle(r)
    }

    pub fn of_point(z: C64) -> Self {
        Angle::new(z.arg() / std::f64::consts::TAU)
    }

    pub fn turns(self) -> f64 {
        self.0
    }

    pub fn to_point(self) -> C64 {
        cis(self.0)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_to(self, other: Angle) -> f64 {
        Angle::new(other.0 - self.0).0
    }

    /// Shortest circular distance, in `[0, 1/2]`.
    pub fn distance(self, other: Angle) -> f64 {
        let d = self.ccw_to(other);
        d.min(1.0 - d)
    }

    pub fn approx_eq(self, other: Angle, tol: f64) -> bool {
        self.distance(other) < tol
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(*other, Tolerances::default().angle)
    }
}

impl From<f64> for Angle {
    fn from(turns: f64) -> Self {
        Angle::new(turns)
    }
}

/// Oriented arc of the unit circle, counterclockwise from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcInterval {
    pub start: Angle,
    pub end: Angle,
    pub closed: bool,
    pub full: bool,
}

impl ArcInterval {
    pub fn closed(start: impl Into<Angle>, end: impl Into<Angle>) -> Self {
        ArcInterval {
            start: start.into(),
            end: end.into(),
            closed: true,
            full: false,
        }
    }

    pub fn open(start: impl Into<Angle>, end: impl Into<Angle>) -> Self {
        ArcInterval {
            closed: false,
            ..ArcInterval::closed(start, end)
        }
    }

    pub fn full_circle() -> Self {
        ArcInterval {
            start: Angle::new(0.0),
            end: Angle::new(0.0),
            closed: true,
            full: true,
        }
    }

    /// The complementary arc, with the closed flag flipped.
    pub fn complement(&self) -> Self {
        ArcInterval {
            start: self.end,
            end: self.start,
            closed: !self.closed,
            full: false,
        }
    }
}

/// Normalized Lebesgue measure of `arc`.
pub fn arc_length(arc: &ArcInterval) -> f64 {
    if arc.full {
        1.0
    } else {
        arc.start.ccw_to(arc.end)
    }
}

/// Whether `a` lies on `arc`, honouring the closed flag at the endpoints.
pub fn arc_contains(arc: &ArcInterval, a: Angle) -> bool {
    if arc.full {
        return true;
    }
    let tol = Tolerances::default().angle;
    let len = arc_length(arc);
    let d = arc.start.ccw_to(a);
    let at_start = d < tol || d > 1.0 - tol;
    let at_end = (d - len).abs() < tol;
    if at_start || at_end {
        return arc.closed;
    }
    d < len
}

/// True iff travelling counterclockwise from `a` one meets `b` before `c`.
pub fn cyclic_order(a: Angle, b: Angle, c: Angle) -> Result<bool> {
    let tol = Tolerances::default().angle;
    if a.approx_eq(b, tol) || a.approx_eq(c, tol) || b.approx_eq(c, tol) {
        return Err(Error::invalid("cyclic_order needs three distinct angles"));
    }
    Ok(a.ccw_to(b) < a.ccw_to(c))
}
