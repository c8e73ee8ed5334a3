//! Structured 3SUM toolkit: BSG covers, FFT sumsets over pseudo-additive
//! hash families, and the subquadratic solvers built on them.

pub mod bsg;
pub mod error;
pub mod fft;
pub mod fit;
pub mod minplus;
pub mod model;
pub mod online;
pub mod solvers;
pub mod work;

pub use error::{Error, Result};
pub use model::{Point, PointSet};
pub use work::WorkCounter;
