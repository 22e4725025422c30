//! Permutations and colored Motzkin paths through cycle diagrams, with exact
//! continued-fraction enumeration of permutation statistics.

pub mod bell;
pub mod census;
pub mod error;
pub mod fraction;
pub mod invert;
pub mod oracle;
pub mod path;
pub mod perm;
pub mod poly;
pub mod series;

pub use error::{Error, Result};
pub use fraction::{jfraction, kfraction, scheme_for, WeightScheme};
pub use path::{enumerate_paths, theta, theta_inv, ColoredMotzkinPath, ColoredStep, Letter};
pub use perm::{Permutation, StatVector, SubsetId};
pub use poly::{Marks, MultiPoly, Var};
pub use series::{Ring, Series};
