//! Design and simulation toolkit for capacitively transduced
//! radial-contour-mode MEMS disk resonators.
//!
//! * [`special_math`]: Bessel `J0`/`J1`/`J2` and bracketed root finding.
//! * [`resonator`]: material/geometry types and the analytical mode solution.
//! * [`lumped`]: effective mass/stiffness/damping, equivalent circuit, SPICE export.
//! * [`response`]: harmonic displacement and electrical transmission spectra.
//! * [`fem`]: 1-D radial finite-element modal solver used as a cross-check.
//! * [`cli`]: configuration and command implementations behind the binary.

pub mod cli;
pub mod error;
pub mod fem;
pub mod fmt;
pub mod lumped;
pub mod resonator;
pub mod response;
pub mod special_math;

pub use error::{Error, Result};
pub use lumped::{EquivalentCircuit, LumpedMechanical, TransducerConfig};
pub use resonator::{DiskGeometry, Material, ModeSolution};
pub use response::{FrequencyGrid, Spectrum};
