//! Ground truth for testing: class predicates, seeded generators and an
//! exhaustive arrangement search.

pub mod brute;
pub mod classes;
pub mod random;

pub use brute::{brute_force_recover, BruteConfig, BruteError};
pub use classes::NcClass;
pub use random::{random_arrangement, random_family, random_nc_poly, GenConfig, GenError, Sample};
