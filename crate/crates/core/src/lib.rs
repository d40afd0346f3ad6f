//! Combinatorial tropicalization over log-regular varieties with constant
//! coefficients.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactlin`]: exact integer and rational linear algebra,
//! * [`cones`]: pointed rational cones and fans in `N_R`,
//! * [`katofan`]: toric monoids, their spectra, Kato fans and cone complexes,
//! * [`trop`]: tropical hypersurfaces and prevarieties of torus subvarieties,
//! * [`compactify`]: the stratum intersection test, the properness criterion and the
//!   construction of tropical compactifications,
//! * [`topology`]: links of cone complexes and their reduced cohomology,
//! * [`io`]: the versioned JSON formats.

pub mod compactify;
pub mod cones;
pub mod error;
pub mod exactlin;
pub mod io;
pub mod katofan;
pub mod topology;
pub mod trop;

pub use error::{Error, Result};
