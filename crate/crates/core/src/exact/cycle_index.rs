use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, pow};
use crate::partition::{multiplicities, partitions};
use crate::ExactRational;

/// The cycle indicator of `S_l`, scaled by `l!`:
///
/// `Z_l(g_1..g_l) = Σ l!·Π g_j^{n_j} / (n_j!·j^{n_j})` over `n_1 + 2n_2 + … + l·n_l = l`,
///
/// so that `Z_l(1, …, 1) = l!`. Evaluated by walking the partitions of `l`.
pub fn cycle_indicator(l: usize, g: &[ExactRational]) -> Result<ExactRational> {
    if g.len() < l {
        return Err(Error::invalid(format!(
            "cycle indicator Z_{l} needs {l} arguments, got {}",
            g.len()
        )));
    }
    let l_fact = factorial(l);
    let mut total = ExactRational::zero();
    for parts in partitions(l) {
        let mult = multiplicities(&parts, l);
        let mut denom = BigInt::one();
        let mut term = ExactRational::one();
        for (j, &m) in mult.iter().enumerate().skip(1) {
            if m == 0 {
                continue;
            }
            denom *= factorial(m) * num_traits::pow(BigInt::from(j), m);
            term *= pow(&g[j - 1], m);
        }
        total += term * ExactRational::new(l_fact.clone(), denom);
    }
    Ok(total)
}
