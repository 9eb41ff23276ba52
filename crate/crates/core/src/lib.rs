//! Exact computations in finite-dimensional quotients of quiver path
//! algebras: parametric coefficients, overlap completion, normal forms,
//! bases, and the verification suite for deformed mesh algebras of type F4.

pub mod exactcoeff;
pub mod pathcore;
pub mod syntax;
pub mod linalg;
pub mod rewrite;
pub mod f4suite;
pub mod report;
