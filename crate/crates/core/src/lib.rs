//! Reconstruction of a two-letter non-commutative polynomial p(X, Y) from the
//! k² entries of p evaluated at two k×k matrices of distinct commuting
//! variables, given only as an unordered family of commutative polynomials.

pub mod polyalg;
pub mod recover;
pub mod oracle;
pub mod io;
pub mod bench;
