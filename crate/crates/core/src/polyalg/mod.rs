//! Exact sparse polynomials, words in two letters, symbolic matrix
//! expansion and the coefficient sums used throughout recovery.

pub mod arrangement;
pub mod commpoly;
pub mod expand;
pub mod family;
pub mod monomial;
pub mod ncpoly;
pub mod ncword;
pub mod rat;

pub use arrangement::{Arrangement, ArrangementError, Grid};
pub use commpoly::{parse_poly, CommPoly};
pub use expand::expand;
pub use family::{homogeneous_sort, strip_constants, t_operator, PolyFamily, PolyMatrix};
pub use monomial::{Monomial, VarId};
pub use ncpoly::{parse_nc, NcPoly};
pub use ncword::{Letter, NcWord};
pub use rat::Rat;
