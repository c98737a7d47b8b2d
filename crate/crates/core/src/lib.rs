pub mod error;
pub mod exactmath;
pub mod algebra;
pub mod quadform;
pub mod motives;
pub mod k0ring;
pub mod hochschild;
pub mod doc;
pub mod cli;

pub use error::{Error, Result};
