//! Elastic fields of inclusions, elastic moment tensors, and
//! Hashin-Shtrikman trace bounds.
//!
//! The crate computes interior strains for ellipsoidal inclusions from the
//! shape potentials of the domain, assembles elastic moment tensors both
//! from constant-strain solutions and from a concave variational principle
//! over polarization fields, and evaluates the lower trace bounds together
//! with their equality gaps. Ellipsoids attain the bounds; non-ellipsoidal
//! shapes are detected through a uniformity residual and a
//! quadratic-potential criterion, and their bound gaps stay strictly
//! positive.

pub mod error;
pub mod linalg;
pub mod tensor;

pub use error::{Error, Result};
