pub mod cli;
pub mod error;
pub mod field;
pub mod model;
pub mod numerics;
pub mod reduction;
pub mod residuals;
pub mod solutions;
pub mod symmetry;

pub use error::{Error, Result};
