//! Thresholding greedy algorithm over coordinate-monotone sequence spaces.
//!
//! The crate evaluates the quantities that govern N-term approximation
//! with respect to a basis: best N-term errors, right and left democracy
//! functions, their ratio `mu`, the Lebesgue factor `v(N) = sum mu(k)/k`,
//! and empirical greedy-efficiency ratios. The [`verify`] module checks the
//! classical inequalities for quasi-greedy bases with explicit constants.
//!
//! Everything here is pure computation and builds under `no_std` with
//! `alloc`. Enable the `parallel` feature for rayon-backed subset
//! enumeration.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod approx;
pub mod democracy;
mod error;
pub mod greedy;
pub(crate) mod math;
pub mod spaces;
pub mod subsets;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use spaces::{Aggregation, ComponentMap, Exponent, SpaceKind, SpaceSpec, Tail, Weights};
pub use vector::{IndexSet, SparseVector};

/// Relative tolerance used by every checker comparison.
pub const REL_TOL: f64 = 1e-9;
