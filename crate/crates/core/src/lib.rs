pub mod cli;
pub mod error;
pub mod filtered;
pub mod graded;
pub mod homotopy;
pub mod linalg;
pub mod oracle;
pub mod spectrum;

pub use error::{Error, Result};
