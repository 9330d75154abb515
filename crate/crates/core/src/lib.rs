pub mod brick;
pub mod cluster;
pub mod coxeter;
pub mod error;
pub mod linalg;
pub mod polyhedra;
pub mod rational;
pub mod subword;
pub mod tropical;

pub use error::{Error, Result};
