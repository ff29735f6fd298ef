//! Exact Reeb orbit spectra on the tight 3-sphere.
//!
//! The crate computes Conley-Zehnder indices, degrees and actions of iterated
//! Reeb orbits, decides whether a finite orbit spectrum is compatible with a
//! vanishing contact homology differential, and provides the Diophantine tools
//! behind those decisions: jump sequences of irrational numbers, translations
//! of tori and irrational rotations.
//!
//! All decisions are made in exact arithmetic. Real quadratic numbers use
//! [`QuadExt`]; vectors mixing several square roots use [`LinComb`], whose
//! floors are certified by nested dyadic enclosures.
//!
//! ```
//! use reeb_spectrum::prelude::*;
//!
//! let alpha: QuadExt = "sqrt(2)-1".parse().unwrap();
//! let o = SimpleOrbit::new("g", QuadExt::one(), OrbitKind::elliptic(1, alpha).unwrap()).unwrap();
//! assert_eq!(cz_index(&o, 3), 9);
//! ```

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod exactreal;
pub mod jumps;
pub mod orbit;
pub mod report;
pub mod spectrum;
pub mod torus;

pub use error::{Error, Result};
pub use exactreal::{Basis, LinComb, QuadExt};

/// The types and functions most programs need.
pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::exactreal::*;
    pub use crate::jumps::*;
    pub use crate::orbit::*;
    pub use crate::spectrum::*;
    pub use crate::torus::*;
}
