//! Numerical toolkit for pointed disks in the Riemann sphere.
//!
//! The crate builds Riemann maps (closed-form chains for the standard
//! families, a geodesic zipper for sampled boundaries), pushes Lebesgue
//! measure on the circle forward to harmonic measure, splits it into its
//! uniaccessible and one-sided biaccessible parts, minimizes logarithmic
//! energy, and evaluates holomorphic motions of disk boundaries against the
//! equivalent characterizations of holomorphically varying Riemann maps.
//!
//! Data-parallel loops (walk-on-spheres batches, energy rows, harness grids)
//! run on rayon when the `parallel` feature is enabled and fall back to
//! sequential iteration otherwise; see [`exec::Exec`].

pub mod builtin;
pub mod confmap;
pub mod error;
pub mod exec;
pub mod geom;
pub mod measure;
pub mod motion;
pub mod potential;
pub mod zhukovskii;

pub use error::{Error, Result};
pub use exec::{Ctx, Exec};
pub use num_complex::Complex64 as C64;
