//! Harmonic measure, its access decomposition, the walk-on-spheres oracle,
//! Poisson extension and the static fitness test.

mod boundary_map;
mod discrete;
mod fitness;
mod harmonic;
mod poisson;
mod wos;

pub use boundary_map::{compose, BoundaryMap, BoundaryPoint, Composed, ConformalTransfer, FnMap, Identity, PointMap};
pub use discrete::fmt17;
pub use discrete::{measure_distance, pushforward, pushforward_with, Atom, DiscreteMeasure};
pub use fitness::{static_fitness_check, FitnessCheck, FitnessTolerances};
pub use harmonic::{decompose, harmonic_measure, harmonic_measure_with, MeasureDecomposition};
pub use poisson::{poisson_extend, poisson_extend_real};
pub use wos::{walk_on_spheres, WosOptions};
