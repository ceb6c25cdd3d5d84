//! # ditcalc
//!
//! Partitions of finite sets, the closure space of ordered pairs, and the three entropy
//! measures of a partition that are tied together exactly:
//!
//! | measure | of a partition | of a block |
//! |---------|----------------|------------|
//! | logical entropy `h` | `|dit(π)| / |U|²` | `1 − p_B` |
//! | Shannon entropy `H` | `Σ p_B log(1/p_B)` | `log(1/p_B)` |
//! | block-count entropy `H_m` | `Π (1/p_B)^{p_B}` | `1/p_B` |
//!
//! A *dit* (distinction) of a partition is an ordered pair of elements in different
//! blocks. Logical quantities are exact [`Rational`]s; Shannon and block-count ones are
//! `f64`.
//!
//! ```
//! use ditcalc::{entropy, Base, Partition, Rational, Universe};
//!
//! let u = Universe::new(4).unwrap();
//! let discrete = Partition::discrete(&u);
//! assert_eq!(entropy::logical_entropy(&discrete), Rational::new(3, 4));
//! assert_eq!(entropy::shannon_entropy(&discrete, Base::TWO), 2.0);
//! ```
//!
//! Modules:
//! - [`partition`]: universes, canonical partitions, refinement, join and meet, enumeration
//! - [`pairs`]: pair sets on `U × U`, closure and interior, dit/indit sets, `Mut(π, σ)`
//! - [`entropy`]: partition entropies, mutual information, independence
//! - [`distributions`]: entropies and divergences of arbitrary finite distributions
//! - [`demo`]: the binary-digit and coin-weighing distinction counts
//! - [`verify`]: exhaustive and randomized oracle checks of all of the above
//! - [`io`]: partition text and JSON formats

pub mod demo;
pub mod distributions;
pub mod entropy;
mod error;
pub mod io;
pub mod pairs;
pub mod partition;
mod rational;
pub mod union_find;
pub mod verify;

pub use distributions::{Base, DistanceMatrix, Family, ProbDist};
pub use entropy::{BlockLogical, EntropyReport};
pub use error::{Error, Result};
pub use pairs::PairSet;
pub use partition::{Partition, Universe};
pub use rational::Rational;
pub use verify::VerificationReport;
