//! Topological zeta functions and monodromy of splice diagrams and plumbing
//! graphs of curves on integral homology sphere links, together with the
//! decomposition into stars and a solver that realizes monodromy eigenvalues
//! as poles.

pub mod algebra;
pub mod allowed;
pub mod checks;
pub mod diagram;
pub mod divisor;
pub mod error;
pub mod format;
pub mod gen;
pub mod monodromy;
pub mod parallel;
pub mod plumbing;
pub mod realize;
pub mod splice;
pub mod zeta;

pub use error::{Error, Result};
