//! Representation of simple d-dimensional polytopes by d polynomial
//! inequalities: facet-form preprocessing, elementary symmetric
//! machinery, the smoothed vertex interpolant, and sampling verifiers.

pub mod cli;
pub mod error;
pub mod interpolant;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod representation;
pub mod shapes;
pub mod surface;
pub mod symmetric;
