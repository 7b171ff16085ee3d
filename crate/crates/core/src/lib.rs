//! Ternary cyclic codes built from traces of quadratic functions over
//! GF(3^m): exact weight distributions, shortened and punctured codes, the
//! quadratic-form weight oracle, and the Steiner systems and 2-designs
//! supported by their codewords.

pub mod code;
pub mod cyclic;
pub mod designs;
pub mod error;
pub mod exact;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod quadforms;
pub mod spectra;

pub use code::TernaryCode;
pub use cyclic::{build_code, CyclicCode, ExponentSet};
pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement};
pub use linalg::{TernaryMatrix, TernaryVector};
pub use spectra::{PositionSet, WeightDistribution};
