pub mod error;
pub mod gl;
pub mod koszul;
pub mod linalg;
pub mod partition;
pub mod periplectic;
pub mod phi;
pub mod report;
pub mod schur;
pub mod suites;
pub mod superpoly;
pub mod tca_a;

pub use error::{Error, Result};
pub use partition::Partition;
