//! Factorial, raw and central moments of cycle counts.
//!
//! For a uniform `σ ∈ S_n` the factorial moments come from the cycle
//! indicator at negated partial zeta sums:
//! `E[C_σ^(l)] = (-1)^l Z_l(-ζ_n(1), …, -ζ_n(l))`. For a uniform `τ ∈ A_n`
//! they are read off the exact generating function.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::cycle_index::cycle_indicator;
use crate::exact::gf::{g_sigma, g_tau};
use crate::exact::stirling::{stirling_first_row, stirling_second_row};
use crate::exact::zeta::ZetaCache;
use crate::exact::{pow, to_f64};
use crate::ExactRational;

/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// Moments of orders `1..=order`; index `m - 1` holds order `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSet {
    pub order: usize,
    pub factorial: Vec<ExactRational>,
    pub raw: Vec<ExactRational>,
    pub central: Vec<ExactRational>,
}

impl MomentSet {
    pub fn mean(&self) -> &ExactRational {
        &self.raw[0]
    }

    pub fn variance(&self) -> Option<&ExactRational> {
        self.central.get(1)
    }
}

/// `E[C^(m)]` for `m = 1..=l`, uniform `σ ∈ S_n`, via the cycle indicator.
pub fn factorial_moments_sigma(n: usize, l: usize) -> Result<Vec<ExactRational>> {
    if n == 0 {
        return Err(Error::invalid("factorial moments need n >= 1"));
    }
    let zeta = ZetaCache::new(n, l);
    let neg: Vec<ExactRational> = zeta.values().iter().map(|z| -z.clone()).collect();
    (1..=l)
        .map(|m| {
            let z = cycle_indicator(m, &neg)?;
            Ok(if m % 2 == 0 { z } else { -z })
        })
        .collect()
}

/// `E[C^(m)]` for `m = 1..=l`, uniform `τ ∈ A_n`, from the exact
/// generating function (its `m`-th derivative at 1).
pub fn factorial_moments_tau(n: usize, l: usize) -> Result<Vec<ExactRational>> {
    let g = g_tau(n)?;
    Ok((1..=l).map(|m| g.falling_moment(m)).collect())
}

/// Same quantity as [`factorial_moments_sigma`] but summed over the
/// coefficients of `g_sigma(n)`.
pub fn factorial_moments_sigma_from_gf(n: usize, l: usize) -> Result<Vec<ExactRational>> {
    let g = g_sigma(n)?;
    Ok((1..=l).map(|m| g.falling_moment(m)).collect())
}

/// Raw and central moments from factorial moments.
///
/// `E[C^l] = Σ_m S2(l, m)·E[C^(m)]` and
/// `E[(C - μ)^l] = Σ_m C(l, m)·E[C^m]·(-μ)^{l-m}`.
pub fn moment_set_from_factorial(factorial: &[ExactRational], l: usize) -> Result<MomentSet> {
    if l == 0 || factorial.len() < l {
        return Err(Error::invalid(format!(
            "need factorial moments of orders 1..={l}, got {}",
            factorial.len()
        )));
    }
    let factorial = factorial[..l].to_vec();
    let raw = raw_from_factorial(&factorial);
    let central = central_from_raw(&raw);
    Ok(MomentSet {
        order: l,
        factorial,
        raw,
        central,
    })
}

pub fn raw_from_factorial(factorial: &[ExactRational]) -> Vec<ExactRational> {
    (1..=factorial.len())
        .map(|l| {
            let s2 = stirling_second_row(l);
            (1..=l).fold(ExactRational::zero(), |acc, m| {
                acc + ExactRational::from_integer(s2[m].clone()) * &factorial[m - 1]
            })
        })
        .collect()
}

/// Inverse of [`raw_from_factorial`] via signed Stirling numbers of the
/// first kind.
pub fn factorial_from_raw(raw: &[ExactRational]) -> Vec<ExactRational> {
    (1..=raw.len())
        .map(|l| {
            let c = stirling_first_row(l);
            (1..=l).fold(ExactRational::zero(), |acc, m| {
                let term = ExactRational::from_integer(c[m].clone()) * &raw[m - 1];
                if (l - m) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

pub fn central_from_raw(raw: &[ExactRational]) -> Vec<ExactRational> {
    let mu = raw[0].clone();
    let neg_mu = -mu;
    (1..=raw.len())
        .map(|l| {
            (0..=l).fold(ExactRational::zero(), |acc, m| {
                let moment = if m == 0 {
                    ExactRational::one()
                } else {
                    raw[m - 1].clone()
                };
                acc + ExactRational::from_integer(binomial(l, m)) * moment * pow(&neg_mu, l - m)
            })
        })
        .collect()
}

/// Inverse of [`central_from_raw`]; `central[0]` must be zero.
pub fn raw_from_central(central: &[ExactRational], mean: &ExactRational) -> Vec<ExactRational> {
    (1..=central.len())
        .map(|l| {
            (0..=l).fold(ExactRational::zero(), |acc, m| {
                let moment = match m {
                    0 => ExactRational::one(),
                    1 => ExactRational::zero(),
                    _ => central[m - 1].clone(),
                };
                acc + ExactRational::from_integer(binomial(l, m)) * moment * pow(mean, l - m)
            })
        })
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// One asymptotic moment value `a(n)` with its error scale
/// `(log n)^order / n^{1/12}` (the implied constant is unknown).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticMoment {
    pub order: usize,
    pub label: &'static str,
    pub value: f64,
    pub error_scale: f64,
}

/// Closed-form large-`n` values of the mean and the 2nd..4th central moments
/// of the vertex count, with `L = log n`:
///
/// * mean `L + γ`
/// * variance `L + γ - π²/6`
/// * third central `L + γ - π²/2 + 2ζ(3)`
/// * fourth central `3L² + (1 + 6γ - π²)L + 3γ² + γ - γπ² - 7π²/6 + 12ζ(3) + π⁴/60`
pub fn asymptotic_moments(n: usize, order: usize) -> Result<Vec<AsymptoticMoment>> {
    if n < 2 || order == 0 || order > 4 {
        return Err(Error::invalid(format!(
            "asymptotic moments need n >= 2 and order in 1..=4 (got n = {n}, order = {order})"
        )));
    }
    Ok(asymptotic_values_at_log((n as f64).ln(), order)
        .into_iter()
        .map(|mut a| {
            a.error_scale = (n as f64).ln().powi(a.order as i32) / (n as f64).powf(1.0 / 12.0);
            a
        })
        .collect())
}

/// The same closed forms evaluated at an arbitrary `L = log n`.
pub fn asymptotic_values_at_log(log_n: f64, order: usize) -> Vec<AsymptoticMoment> {
    use std::f64::consts::PI;
    let g = EULER_GAMMA;
    let pi2 = PI * PI;
    let values = [
        ("mean", log_n + g),
        ("central2", log_n + g - pi2 / 6.0),
        ("central3", log_n + g - pi2 / 2.0 + 2.0 * ZETA_3),
        (
            "central4",
            3.0 * log_n * log_n
                + (1.0 + 6.0 * g - pi2) * log_n
                + (3.0 * g * g + g - g * pi2 - 7.0 * pi2 / 6.0 + 12.0 * ZETA_3 + pi2 * pi2 / 60.0),
        ),
    ];
    values
        .iter()
        .take(order)
        .enumerate()
        .map(|(i, &(label, value))| AsymptoticMoment {
            order: i + 1,
            label,
            value,
            error_scale: f64::NAN,
        })
        .collect()
}

/// Finite-`n` analogue of [`asymptotic_moments`]: the same central-moment
/// expressions with `log n + γ` replaced by `ζ_n(1)` and `ζ(m)` by `ζ_n(m)`.
/// These are the exact moments of `C_σ`.
pub fn zeta_moment_expressions(n: usize) -> [ExactRational; 4] {
    let zeta = ZetaCache::new(n, 4);
    let (z1, z2, z3, z4) = (zeta.get(1), zeta.get(2), zeta.get(3), zeta.get(4));
    let c = |v: i64| ExactRational::from_integer(v.into());
    [
        z1.clone(),
        z1 - z2,
        z1 - c(3) * z2 + c(2) * z3,
        c(3) * z1 * z1 + z1 - c(6) * z1 * z2 + c(3) * z2 * z2 - c(7) * z2 + c(12) * z3 - c(6) * z4,
    ]
}

pub fn moments_to_f64(values: &[ExactRational]) -> Vec<f64> {
    values.iter().map(to_f64).collect()
}
