pub mod blowup;
pub mod curve;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod local_noether;
pub mod semigroup;
pub mod valueset;

pub use error::{Error, Result};
pub use semigroup::{enumerate, NumericalSemigroup};
pub use valueset::{canonical_ideal, dualizing_values, ValueSet};
