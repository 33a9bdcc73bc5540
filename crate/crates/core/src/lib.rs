//! Tent-map itineraries, Parry polynomials and membership certificates for
//! Thurston's Master Teapot.

pub mod algebraic;
pub mod atlas;
pub mod cli;
pub mod error;
pub mod exec;
pub mod kneading;
pub mod membership;
pub mod parry;
pub mod roots;
pub mod suitability;
pub mod symbolic;

pub use error::{Error, Result};
