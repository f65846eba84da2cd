use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{exact, ExactInteger, ExactRational};

/// A univariate polynomial with exact rational coefficients; `coeffs[t]`
/// multiplies `x^t`. The top coefficient is nonzero unless the polynomial is
/// zero, in which case `coeffs` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<ExactRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![ExactRational::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Integer coefficients divided by a common denominator.
    pub fn from_integer_coeffs(coeffs: &[ExactInteger], denom: &ExactInteger) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|c| ExactRational::new(c.clone(), denom.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, t: usize) -> ExactRational {
        self.coeffs
            .get(t)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation in integers over the common denominator of the
    /// coefficients, with a single reduction at the end.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        let Some(d) = self.degree() else {
            return ExactRational::zero();
        };
        let denom = self
            .coeffs
            .iter()
            .fold(ExactInteger::one(), |l, c| l.lcm(c.denom()));
        let (p, q) = (x.numer(), x.denom());
        // Σ a_t p^t q^(d-t), accumulated from the top coefficient down
        let mut acc = ExactInteger::zero();
        let mut q_pow = ExactInteger::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c.numer() * (&denom / c.denom()) * &q_pow;
            q_pow *= q;
        }
        ExactRational::new(acc, denom * q.pow(d as u32))
    }

    pub fn sum_coeffs(&self) -> ExactRational {
        self.coeffs.iter().fold(ExactRational::zero(), |a, c| a + c)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(t, c)| if t % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    pub fn scale(&self, s: &ExactRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(t, c)| c * exact::int(t as i64))
                .collect(),
        )
    }

    /// `Σ_t t(t-1)…(t-l+1)·coeff[t]`, the `l`-th derivative at `x = 1`.
    pub fn falling_moment(&self, l: usize) -> ExactRational {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(t, c)| *t >= l && !c.is_zero())
            .fold(ExactRational::zero(), |acc, (t, c)| {
                acc + c * ExactRational::from_integer(exact::falling(t, l))
            })
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|t| self.coeff(t) + rhs.coeff(t)).collect())
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|t| self.coeff(t) - rhs.coeff(t)).collect())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match t {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{t}")?,
            }
        }
        Ok(())
    }
}

/// Integer coefficients of `Π_j (offset_j + slope_j·x)`, multiplied in order.
pub(crate) fn product_of_linear(
    factors: impl IntoIterator<Item = (ExactInteger, ExactInteger)>,
) -> Vec<ExactInteger> {
    let mut coeffs = vec![ExactInteger::one()];
    for (offset, slope) in factors {
        let mut next = vec![ExactInteger::zero(); coeffs.len() + 1];
        for (t, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !offset.is_zero() {
                next[t] += c * &offset;
            }
            next[t + 1] += c * &slope;
        }
        coeffs = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, pow, ratio};
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[1, 2]);
        let q = poly(&[-1, 0, 3]);
        assert_eq!(&p * &q, poly(&[-1, -2, 3, 6]));
        assert_eq!(&p + &q, poly(&[0, 2, 3]));
        assert_eq!(&p - &p, Polynomial::zero());
        assert_eq!(q.eval(&ratio(1, 2)), ratio(-1, 4));
        assert_eq!(p.reflect(), poly(&[1, -2]));
        assert_eq!(q.derivative(), poly(&[0, 6]));
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(poly(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn falling_moment_matches_derivatives() {
        let p = poly(&[3, -1, 4, 1, -5, 9]);
        let mut d = p.clone();
        for l in 0..6 {
            assert_eq!(p.falling_moment(l), d.eval(&int(1)));
            d = d.derivative();
        }
    }

    #[test]
    fn linear_products() {
        let c = product_of_linear((0..3).map(|j| (j.into(), 1.into())));
        let expect: Vec<ExactInteger> = vec![0.into(), 2.into(), 3.into(), 1.into()];
        assert_eq!(c, expect);
    }

    proptest! {
        #[test]
        fn eval_matches_term_sum(
            terms in proptest::collection::vec((-40i64..40, 1i64..12), 0..12),
            xp in -9i64..9,
            xq in 1i64..9,
        ) {
            let p = Polynomial::from_coeffs(terms.iter().map(|&(a, b)| ratio(a, b)).collect());
            let x = ratio(xp, xq);
            let direct = p
                .coeffs()
                .iter()
                .enumerate()
                .fold(int(0), |acc, (t, c)| acc + c * pow(&x, t));
            prop_assert_eq!(p.eval(&x), direct);
        }
    }
}
