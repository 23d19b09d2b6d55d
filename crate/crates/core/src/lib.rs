//! Divisor theory, displacement tableaux and tropical map certificates on
//! chains of cycles with prescribed gonality.
//!
//! All arithmetic is exact over [`rational::Q`].

pub mod chain;
pub mod cli;
pub mod genus5;
pub mod error;
pub mod numerics;
pub mod tableaux;
pub mod rational;
pub mod scrollar;
pub mod tropmap;

pub use error::{Error, Result};
