pub mod atlas;
pub mod complex;
pub mod critical;
pub mod error;
pub mod exec;
pub mod real;
pub mod specfun;

pub use error::{Error, Result};
