//! Exact homological algebra over standard-graded Artinian quotient rings.

pub mod analysis;
pub mod error;
pub mod exactmath;
pub mod groebner;
pub mod homology;
pub mod linalg;
pub mod ringkit;
pub mod series;

pub use error::{Error, Result};
