//! Weighted Bohr-type inequalities for bounded analytic functions on the unit disk.
//!
//! The crate is organised bottom-up:
//!
//! * [`weights`] describes weight sequences `φ_n(r)` and their tail sums.
//! * [`series`] holds truncated power series and the coefficient generators for
//!   the extremal families (Möbius maps, finite Blaschke products).
//! * [`functionals`] evaluates majorant-type functionals with rigorous tail bounds.
//! * [`radii`] solves the radius equations as minimal positive roots.
//! * [`verify`] generates seeded test functions and checks each inequality on a grid.
//! * [`cli`] is the command-line front end used by the `bohr` binary.

pub mod cli;
mod error;
pub mod functionals;
pub mod radii;
pub mod series;
mod sum;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use functionals::{FunctionalValue, QuadraticWeight, WeightTable};
pub use radii::{RadiusProblem, RadiusSolution};
pub use series::{PowerSeries, SeriesTags};
pub use verify::{CheckConfig, VerificationReport};
pub use weights::{TailSum, WeightSequence};
