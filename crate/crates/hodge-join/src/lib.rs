//! Exact computations with Hodge cycles on smooth hypersurfaces.

pub mod cli;
pub mod cycles;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod grading;
pub mod jacobian;
pub mod linalg;
pub mod poly;
pub mod problem;
pub mod qform;
pub mod report;
pub mod text;

pub use error::{Error, Result};
