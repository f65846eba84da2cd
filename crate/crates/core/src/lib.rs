//! Random orientable surfaces glued from `n / k` filled `k`-gons.
//!
//! The vertex count of such a surface is the number of cycles of `αβ`, where
//! `α` is a uniform fixed-point-free involution of `{1..n}` (the edge pairing)
//! and `β` is a fixed permutation with `n / k` cycles of length `k` (the
//! boundary order of each polygon). This crate provides:
//!
//! * [`perm`]: permutations, the matching sampler and cycle censuses;
//! * [`surface`]: parameter validation and Euler characteristic / genus;
//! * [`exact`]: exact rational generating functions, moments and tail bounds;
//! * [`enumerate`]: exhaustive ground truth for small `n`;
//! * [`mc`]: Monte Carlo sampling and the instrumented glueing process;
//! * [`cli`]: the `surface-census` command line and its output formats.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod mc;
pub mod partition;
pub mod perm;
pub mod rng;
pub mod stats;
pub mod surface;

pub use error::{Error, Result};
pub use perm::{CycleType, Permutation};
pub use surface::{SurfaceInvariants, SurfaceParams};

/// Exact integers used by every combinatorial formula.
pub type ExactInteger = num_bigint::BigInt;
/// Reduced exact fractions with positive denominator.
pub type ExactRational = num_rational::BigRational;
