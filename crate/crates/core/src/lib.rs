pub mod clifford;
pub mod error;
pub mod linalg;
pub mod quadrature;
pub mod sampling;
pub mod special;
pub mod spherical;
pub mod spin;
pub mod transforms;
pub mod vahlen;
