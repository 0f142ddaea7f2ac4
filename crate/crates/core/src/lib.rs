pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod algebra;
pub mod hochschild;
pub mod site;
pub mod gs;
pub mod obstruction;
pub mod diffop;
pub mod generate;
pub mod selftest;
