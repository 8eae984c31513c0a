pub mod acceptance;
pub mod algebra;
pub mod cli;
pub mod combinatorics;
pub mod covering;
pub mod error;
pub mod field;
pub mod groups;
pub mod linalg;
pub mod rewriting;
pub mod subspaces;

pub use error::{Error, Result};
