pub mod divisor_model;
pub mod families;
pub mod error;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod rootdata;

pub use error::{Error, Result};
