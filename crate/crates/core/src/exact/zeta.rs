use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ExactRational;

/// `ζ_n(m) = Σ_{1≤j≤n} 1/j^m`; `ζ_n(1)` is the harmonic number `H_n`.
pub fn zeta_n(n: usize, m: usize) -> ExactRational {
    // common denominator lcm(1..n)^m, reduced once at the end
    let lcm = (1..=n).fold(BigInt::one(), |acc, j| acc.lcm(&BigInt::from(j)));
    let denom = num_traits::pow(lcm, m);
    let numer = (1..=n).fold(BigInt::zero(), |acc, j| {
        acc + &denom / num_traits::pow(BigInt::from(j), m)
    });
    ExactRational::new(numer, denom)
}

/// Partial zeta sums `ζ_n(1..=max_m)` for a fixed `n`, built once.
#[derive(Clone, Debug)]
pub struct ZetaCache {
    n: usize,
    values: Vec<ExactRational>,
}

impl ZetaCache {
    pub fn new(n: usize, max_m: usize) -> Self {
        ZetaCache {
            n,
            values: (1..=max_m).map(|m| zeta_n(n, m)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_m(&self) -> usize {
        self.values.len()
    }

    /// `ζ_n(m)` for `1 ≤ m ≤ max_m`.
    pub fn get(&self, m: usize) -> &ExactRational {
        &self.values[m - 1]
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }
}
