use num_traits::{One, Zero};

use crate::ExactInteger;

/// Stirling numbers of the second kind `S2(l, m)`: set partitions of an
/// `l`-set into `m` blocks. Zero outside `0 ≤ m ≤ l`.
pub fn stirling_second(l: usize, m: usize) -> ExactInteger {
    if m > l {
        return ExactInteger::zero();
    }
    stirling_second_row(l).swap_remove(m)
}

/// Row `S2(l, 0..=l)` via `S2(l, m) = m·S2(l-1, m) + S2(l-1, m-1)`.
pub fn stirling_second_row(l: usize) -> Vec<ExactInteger> {
    let mut row = vec![ExactInteger::one()];
    for i in 1..=l {
        let mut next = vec![ExactInteger::zero(); i + 1];
        for m in 1..=i {
            let stay = if m < i {
                &row[m] * m
            } else {
                ExactInteger::zero()
            };
            next[m] = stay + &row[m - 1];
        }
        row = next;
    }
    row
}

/// Unsigned Stirling numbers of the first kind `c(n, t)`: permutations of
/// `n` elements with `t` cycles. Zero outside `0 ≤ t ≤ n`.
pub fn stirling_first_unsigned(n: usize, t: usize) -> ExactInteger {
    if t > n {
        return ExactInteger::zero();
    }
    stirling_first_row(n).swap_remove(t)
}

/// Row `c(n, 0..=n)` via `c(n, t) = c(n-1, t-1) + (n-1)·c(n-1, t)`.
pub fn stirling_first_row(n: usize) -> Vec<ExactInteger> {
    let mut row = vec![ExactInteger::one()];
    for i in 1..=n {
        let mut next = vec![ExactInteger::zero(); i + 1];
        for t in 1..=i {
            let stay = if t < i {
                &row[t] * (i - 1)
            } else {
                ExactInteger::zero()
            };
            next[t] = stay + &row[t - 1];
        }
        row = next;
    }
    row
}
