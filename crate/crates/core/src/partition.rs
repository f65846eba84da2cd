//! Integer partitions in descending-parts order.

/// All partitions of `n`, each as a non-increasing list of parts, in reverse
/// lexicographic order (`[n]` first, `[1; n]` last). `partitions(0)` holds the
/// single empty partition.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend(n, n, &mut current, &mut out);
    out
}

fn extend(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        extend(remaining - part, part, current, out);
        current.pop();
    }
}

/// Multiplicities `m_1..m_n` of a partition of `n`, index 0 unused.
pub fn multiplicities(parts: &[usize], n: usize) -> Vec<usize> {
    let mut m = vec![0; n + 1];
    for &p in parts {
        m[p] += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=12).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert_eq!(partitions(40).len(), 37338);
    }

    #[test]
    fn order_and_shape() {
        assert_eq!(
            partitions(4),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        for p in partitions(9) {
            assert_eq!(p.iter().sum::<usize>(), 9);
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
