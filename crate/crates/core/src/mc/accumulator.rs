//! Single-pass central moments up to fourth order.
//!
//! Update and merge rules follow Pébay (2008), "Formulas for robust,
//! one-pass parallel computation of covariances and arbitrary-order
//! statistical moments".

/// Running count, mean and central sums `M_k = Σ (x - mean)^k` for `k = 2..4`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MomentAccumulator {
    count: u64,
    mean: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

impl MomentAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        let n1 = self.count as f64;
        self.count += 1;
        let n = self.count as f64;
        let delta = x - self.mean;
        let delta_n = delta / n;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * n1;
        self.m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * self.m2
            - 4.0 * delta_n * self.m3;
        self.m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term1;
        self.mean += delta_n;
    }

    /// Combines two accumulators as if all values had been pushed into one.
    /// The result depends on argument order only through rounding.
    pub fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let delta = other.mean - self.mean;
        let d2 = delta * delta;
        let d3 = d2 * delta;
        let d4 = d2 * d2;
        let mean = self.mean + delta * nb / n;
        let m2 = self.m2 + other.m2 + d2 * na * nb / n;
        let m3 = self.m3
            + other.m3
            + d3 * na * nb * (na - nb) / (n * n)
            + 3.0 * delta * (na * other.m2 - nb * self.m2) / n;
        let m4 = self.m4
            + other.m4
            + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
            + 6.0 * d2 * (na * na * other.m2 + nb * nb * self.m2) / (n * n)
            + 4.0 * delta * (na * other.m3 - nb * self.m3) / n;
        MomentAccumulator {
            count: self.count + other.count,
            mean,
            m2,
            m3,
            m4,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Population central moment `M_k / count` for `k ∈ {2, 3, 4}`.
    pub fn central(&self, k: usize) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        let m = match k {
            2 => self.m2,
            3 => self.m3,
            4 => self.m4,
            _ => panic!("central moments are tracked for orders 2..=4, not {k}"),
        };
        m / self.count as f64
    }

    pub fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        self.m2 / (self.count - 1) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_pass(xs: &[f64]) -> [f64; 4] {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let c = |k: i32| xs.iter().map(|x| (x - mean).powi(k)).sum::<f64>() / n;
        [mean, c(2), c(3), c(4)]
    }

    fn close(a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= 1e-9 * scale.max(1.0)
    }

    #[test]
    fn single_value() {
        let mut acc = MomentAccumulator::new();
        acc.push(7.0);
        assert_eq!(acc.mean(), 7.0);
        assert_eq!(acc.central(2), 0.0);
        assert_eq!(acc.sample_variance(), 0.0);
    }

    #[test]
    fn large_offset_is_stable() {
        let mut acc = MomentAccumulator::new();
        for i in 0..999 {
            acc.push(1e9 + (i % 3) as f64);
        }
        assert!((acc.central(2) - 2.0 / 3.0).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn matches_two_pass(xs in proptest::collection::vec(-50i32..50, 1..200), split in 0usize..200) {
            let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
            let [mean, c2, c3, c4] = two_pass(&xs);
            let mut whole = MomentAccumulator::new();
            xs.iter().for_each(|&x| whole.push(x));
            prop_assert!(close(whole.mean(), mean, mean.abs()));
            prop_assert!(close(whole.central(2), c2, c2));
            prop_assert!(close(whole.central(3), c3, c2.powf(1.5)));
            prop_assert!(close(whole.central(4), c4, c4));

            let split = split.min(xs.len());
            let (mut a, mut b) = (MomentAccumulator::new(), MomentAccumulator::new());
            xs[..split].iter().for_each(|&x| a.push(x));
            xs[split..].iter().for_each(|&x| b.push(x));
            let merged = a.merge(&b);
            prop_assert_eq!(merged.count(), whole.count());
            prop_assert!(close(merged.central(2), c2, c2));
            prop_assert!(close(merged.central(3), c3, c2.powf(1.5)));
            prop_assert!(close(merged.central(4), c4, c4));
        }
    }
}
