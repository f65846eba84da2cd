//! Cycle-count generating functions and the Chernoff-style tail bounds they
//! give.
//!
//! * `g_sigma(n)`: law of the cycle count of a uniform element of `S_n`,
//!   `x(x+1)…(x+n-1)/n!`.
//! * `g_tau(n)`: the same for a uniform element of `A_n`, i.e. the
//!   coefficients of `g_sigma` with `n - t` even, doubled.
//! * `f_bound(n)`: `3x²(1+4x)(3+4x)…(n-5+4x)/(n-1)!!`, the law of a sum of
//!   independent indicators that dominates the number of interesting steps
//!   of the glueing process; `G_{αβ}(x) ≤ F(x²)` for `x ≥ 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::{product_of_linear, Polynomial};
use crate::exact::{double_factorial, factorial, pow, ratio, to_f64};
use crate::ExactRational;

/// `x(x+1)…(x+n-1) / n!`.
pub fn g_sigma(n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::invalid("g_sigma needs n >= 1"));
    }
    let coeffs = product_of_linear((0..n).map(|j| (BigInt::from(j), BigInt::one())));
    Ok(Polynomial::from_integer_coeffs(&coeffs, &factorial(n)))
}

/// Cycle-count law on the alternating group `A_n`, `n ≥ 3`.
pub fn g_tau(n: usize) -> Result<Polynomial> {
    if n < 3 {
        return Err(Error::invalid(format!("g_tau needs n >= 3 (got n = {n})")));
    }
    let sigma = g_sigma(n)?;
    let two = ExactRational::from_integer(2.into());
    let coeffs = sigma
        .coeffs()
        .iter()
        .enumerate()
        .map(|(t, c)| {
            if (n - t).is_multiple_of(2) {
                c * &two
            } else {
                ExactRational::zero()
            }
        })
        .collect();
    Ok(Polynomial::from_coeffs(coeffs))
}

fn check_f_params(n: usize) -> Result<()> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "the dominating polynomial F needs even n >= 6 (got n = {n})"
        )));
    }
    Ok(())
}

/// `F(x) = 3x²(1+4x)(3+4x)…(n-5+4x) / (n-1)!!`, expanded.
pub fn f_bound(n: usize) -> Result<Polynomial> {
    check_f_params(n)?;
    let mut factors = vec![
        (BigInt::zero(), BigInt::from(3)),
        (BigInt::zero(), BigInt::one()),
    ];
    factors.extend(
        (1..=n - 5)
            .step_by(2)
            .map(|m| (BigInt::from(m), BigInt::from(4))),
    );
    let coeffs = product_of_linear(factors);
    Ok(Polynomial::from_integer_coeffs(
        &coeffs,
        &double_factorial(n - 1),
    ))
}

/// `F(x)` evaluated through its product form, without expanding.
pub fn f_bound_at(n: usize, x: &ExactRational) -> Result<ExactRational> {
    check_f_params(n)?;
    let (p, q) = (x.numer(), x.denom());
    // each factor (m + 4p/q) contributes (mq + 4p) / q
    let mut numer = BigInt::from(3) * p * p;
    let mut denom = q * q;
    for m in (1..=n - 5).step_by(2) {
        numer *= BigInt::from(m) * q + BigInt::from(4) * p;
        denom *= q;
    }
    denom *= double_factorial(n - 1);
    Ok(ExactRational::new(numer, denom))
}

/// Upper bound on `Pr[C_{αβ} ≥ t]` from `x = (3/2)^{1/2}` in `F(x²)/x^t`.
///
/// The bound `B = F(3/2)·(2/3)^{t/2}` is rational only for even `t`. It is
/// held exactly through `B²`, and bracketed by the rationals
/// `F(3/2)·(2/3)^{⌈t/2⌉} ≤ B ≤ F(3/2)·(2/3)^{⌊t/2⌋}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBound {
    pub n: usize,
    pub t: usize,
    pub f_three_halves: ExactRational,
    pub squared: ExactRational,
    pub lower: ExactRational,
    pub upper: ExactRational,
}

impl TailBound {
    pub fn is_rational(&self) -> bool {
        self.t.is_multiple_of(2)
    }

    /// The reported rational: exact for even `t`, the upper bracket for odd `t`.
    pub fn value(&self) -> &ExactRational {
        &self.upper
    }

    /// Whether a probability `p ≥ 0` satisfies `p ≤ B`, decided exactly.
    pub fn dominates(&self, p: &ExactRational) -> bool {
        if *p <= self.lower {
            return true;
        }
        if *p > self.upper {
            return false;
        }
        p * p <= self.squared
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.squared).sqrt()
    }
}

pub fn tail_bound_ab(n: usize, t: usize) -> Result<TailBound> {
    let f = f_bound_at(n, &ratio(3, 2))?;
    let two_thirds = ratio(2, 3);
    let squared = &f * &f * pow(&two_thirds, t);
    let lower = &f * pow(&two_thirds, t.div_ceil(2));
    let upper = &f * pow(&two_thirds, t / 2);
    Ok(TailBound {
        n,
        t,
        f_three_halves: f,
        squared,
        lower,
        upper,
    })
}

/// `G(x) / x^t`, the Chernoff bound on `Pr[C ≥ t]` from a generating function.
pub fn chernoff_bound(gf: &Polynomial, x: &ExactRational, t: usize) -> ExactRational {
    gf.eval(x) / pow(x, t)
}

/// Exact `Pr[C ≥ t]` for `t = 0..=degree` read off a generating function.
pub fn tail_probabilities(gf: &Polynomial) -> Vec<ExactRational> {
    let mut tails = vec![ExactRational::zero(); gf.coeffs().len() + 1];
    for t in (0..gf.coeffs().len()).rev() {
        tails[t] = &tails[t + 1] + &gf.coeffs()[t];
    }
    tails
}
