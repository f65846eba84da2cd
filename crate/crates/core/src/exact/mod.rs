//! Exact rational combinatorics behind the cycle-count laws.
//!
//! Everything here works over [`ExactRational`](crate::ExactRational); floats
//! only appear in [`moments::asymptotic_moments`] and in the `to_f64`
//! rendering helper.

pub mod cycle_index;
pub mod gf;
pub mod moments;
pub mod poly;
pub mod stirling;
pub mod zeta;

pub use cycle_index::cycle_indicator;
pub use gf::{f_bound, f_bound_at, g_sigma, g_tau, tail_bound_ab, TailBound};
pub use moments::{
    asymptotic_moments, factorial_moments_sigma, factorial_moments_tau, moment_set_from_factorial,
    AsymptoticMoment, MomentSet,
};
pub use poly::Polynomial;
pub use stirling::{stirling_first_unsigned, stirling_second};
pub use zeta::{zeta_n, ZetaCache};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{ExactInteger, ExactRational};

/// `p/q` with an explicit denominator, including `1/1` and `0/1`.
pub fn rational_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `p/q` (or plain integer) form written by [`rational_string`].
pub fn parse_rational(s: &str) -> Option<ExactRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<BigInt>().ok()?,
            q.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q.is_zero() {
        return None;
    }
    Some(ExactRational::new(p, q))
}

/// Nearest-ish `f64` (within one ulp) of an exact rational of any size.
pub fn to_f64(r: &ExactRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let shift = 62i64 - (num.bits() as i64 - den.bits() as i64);
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let mag = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-shift as i32);
    if r.numer().sign() == Sign::Minus {
        -mag
    } else {
        mag
    }
}

pub fn int(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> ExactRational {
    ExactRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn factorial(n: usize) -> ExactInteger {
    (1..=n).map(BigInt::from).product()
}

/// `m!! = m(m-2)(m-4)…`, ending at 1 or 2; `0!! = 1`.
pub fn double_factorial(m: usize) -> ExactInteger {
    (1..=m).rev().step_by(2).map(BigInt::from).product()
}

/// Falling power `t(t-1)…(t-l+1)`.
pub fn falling(t: usize, l: usize) -> ExactInteger {
    if l > t {
        return BigInt::zero();
    }
    (t + 1 - l..=t).map(BigInt::from).product()
}

/// `base^exp` for a rational base.
pub fn pow(base: &ExactRational, exp: usize) -> ExactRational {
    num_traits::pow(base.clone(), exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rendering() {
        assert_eq!(rational_string(&ratio(6, 4)), "3/2");
        assert_eq!(rational_string(&int(1)), "1/1");
        assert_eq!(rational_string(&ratio(-2, 6)), "-1/3");
        assert_eq!(parse_rational("35/12"), Some(ratio(35, 12)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&ratio(1, 3)), 1.0 / 3.0);
        assert_eq!(to_f64(&ratio(-25, 12)), -25.0 / 12.0);
        let huge = ExactRational::new(factorial(200), factorial(198));
        assert_eq!(to_f64(&huge), 39800.0);
        let tiny = ExactRational::new(BigInt::one(), factorial(100));
        let rel = (to_f64(&tiny) - 1.0 / 9.332621544394415e157).abs() * 9.332621544394415e157;
        assert!(rel < 1e-14);
    }

    #[test]
    fn factorials() {
        assert_eq!(double_factorial(11), BigInt::from(10395));
        assert_eq!(double_factorial(13), BigInt::from(135135));
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(2, 3), BigInt::zero());
        assert_eq!(falling(3, 0), BigInt::one());
    }
}
