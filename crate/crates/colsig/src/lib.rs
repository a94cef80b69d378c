//! Multivariable signatures of colored links presented as colored braid
//! closures.
//!
//! The main entry point is [`linksig::braid_signature`], which evaluates the
//! signature at a torus point by walking from a layered braid to the input
//! one crossing at a time, paying a Hopf term and a Meyer cocycle term per
//! crossing change. Seifert matrices and C-complex forms give independent
//! checks.

pub mod algebra;
pub mod braid;
pub mod cover;
pub mod ctx;
pub mod error;
pub mod gassner;
pub mod linalg;
pub mod linksig;
pub mod maslov;
pub mod verify;

pub use ctx::Ctx;
pub use error::{Error, Result};
