//! Riemann maps: closed-form chains, the geodesic zipper, boundary
//! correspondence and conformal radius.

mod chain;
mod correspondence;
mod primitive;
mod riemann;
mod zipper;

pub use chain::{ConformalMap, Region, Step};
pub use correspondence::{
    boundary_correspondence, boundary_correspondence_with, invert_boundary, AccessTag, BoundaryCorrespondence, BoundarySample,
    CorrSample,
};
pub use primitive::{FamilyMap, Primitive, PrimitiveDescriptor};
pub use riemann::{conformal_radius, eval_map, normalize, Model, Normalization, RiemannMap};
pub use zipper::{build_zipper_map, zipper_for_disk};
