pub mod algebra;
pub mod cli;
pub mod error;
pub mod lambinom;
pub mod ops;
pub mod qsymbols;
pub mod taylor;
pub mod verify;

pub use error::{Error, Result};
