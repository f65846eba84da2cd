//! Small statistical helpers shared by the verifier and the test suites.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Outcome of a chi-square goodness-of-fit test.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Pearson chi-square of observed counts against expected probabilities.
///
/// Adjacent cells (in the given order) are pooled until each pooled cell
/// expects at least `min_expected` observations; a short final remainder is
/// folded into the last pooled cell.
pub fn chi_square_test(observed: &[u64], expected_probs: &[f64], min_expected: f64) -> ChiSquare {
    assert_eq!(observed.len(), expected_probs.len());
    let total: u64 = observed.iter().sum();
    let total = total as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(expected_probs) {
        obs += o as f64;
        exp += p * total;
        if exp >= min_expected {
            cells.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if exp > 0.0 || obs > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += exp;
            }
            None => cells.push((obs, exp)),
        }
    }
    let statistic: f64 = cells
        .iter()
        .map(|&(o, e)| {
            if e > 0.0 {
                (o - e) * (o - e) / e
            } else if o > 0.0 {
                f64::INFINITY
            } else {
                0.0
            }
        })
        .sum();
    let dof = cells.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else if statistic.is_finite() {
        let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
        1.0 - dist.cdf(statistic)
    } else {
        0.0
    };
    ChiSquare {
        statistic,
        degrees_of_freedom: dof,
        p_value,
    }
}
