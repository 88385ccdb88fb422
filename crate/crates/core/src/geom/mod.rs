//! Circle and boundary-curve primitives shared by the other modules.

mod angle;
mod curve;
mod disk;
mod mobius;

pub use angle::{arc_contains, arc_length, cyclic_order, Angle, ArcInterval};
pub use curve::{BoundaryCurve, FourierPiece, Nearest, Piece, PieceGeom, Side, SlitTag};
pub use disk::{boundary_distance, DiskKind, PointedDisk};
pub use mobius::Mobius;

use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Angle and geometric tolerances. Angles are measured in turns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub angle: f64,
    pub geometric: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            angle: 1e-9,
            geometric: 1e-9,
        }
    }
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtPoint {
    Finite(C64),
    Infinity,
}

impl ExtPoint {
    pub fn finite(self) -> Option<C64> {
        match self {
            ExtPoint::Finite(z) => Some(z),
            ExtPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtPoint::Infinity)
    }
}

impl From<C64> for ExtPoint {
    fn from(z: C64) -> Self {
        ExtPoint::Finite(z)
    }
}

/// `exp(2πi·turns)`.
#[inline]
pub fn cis(turns: f64) -> C64 {
    C64::from_polar(1.0, TAU * turns)
}

/// Argument of `z` in turns, reduced into `[0, 1)`.
#[inline]
pub fn arg_turns(z: C64) -> f64 {
    Angle::new(z.arg() / TAU).turns()
}
