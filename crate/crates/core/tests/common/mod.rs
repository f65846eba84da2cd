//! Brute-force oracles shared by the integration suites. Everything here is
//! written from scratch on plain `Vec<usize>` (0-based images) and does not
//! call into the library's permutation or enumeration code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

pub fn cycle_lengths(img: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; img.len()];
    let mut lens = Vec::new();
    for s in 0..img.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = img[x];
            len += 1;
        }
        if len > 0 {
            lens.push(len);
        }
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

pub fn cycle_count(img: &[usize]) -> usize {
    cycle_lengths(img).len()
}

pub fn is_even_by_inversions(img: &[usize]) -> bool {
    let inv = (0..img.len())
        .tuple_combinations()
        .filter(|&(i, j)| img[i] > img[j])
        .count();
    inv % 2 == 0
}

/// `(1..k)(k+1..2k)…`, 0-based.
pub fn beta(n: usize, k: usize) -> Vec<usize> {
    (0..n)
        .map(|i| if (i + 1) % k == 0 { i + 1 - k } else { i + 1 })
        .collect()
}

/// Every perfect matching of `0..n` as an involution image.
pub fn all_matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(img: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = img.iter().position(|&x| x == usize::MAX) else {
            out.push(img.clone());
            return;
        };
        for j in i + 1..img.len() {
            if img[j] == usize::MAX {
                img[i] = j;
                img[j] = i;
                go(img, out);
                img[i] = usize::MAX;
                img[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], &mut out);
    out
}

/// `x ↦ β(α(x))`.
pub fn alpha_then_beta(alpha: &[usize], beta: &[usize]) -> Vec<usize> {
    alpha.iter().map(|&a| beta[a]).collect()
}

/// Exact law of the cycle-type of `αβ` over all matchings.
pub fn ab_class_law(n: usize, beta: &[usize]) -> BTreeMap<Vec<usize>, BigRational> {
    let ms = all_matchings(n);
    let total = ms.len() as i64;
    let mut counts: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for a in &ms {
        *counts
            .entry(cycle_lengths(&alpha_then_beta(a, beta)))
            .or_default() += 1;
    }
    counts.into_iter().map(|(c, m)| (c, q(m, total))).collect()
}

/// `probs[t] = Pr[C_{αβ} = t]`, `t = 0..=n`.
pub fn ab_cycle_law(n: usize, k: usize) -> Vec<BigRational> {
    let mut probs = vec![q(0, 1); n + 1];
    for (class, p) in ab_class_law(n, &beta(n, k)) {
        probs[class.len()] += p;
    }
    probs
}

/// Cycle-count law over all of `S_n` (`even_only = false`) or `A_n`.
pub fn group_cycle_law(n: usize, even_only: bool) -> Vec<BigRational> {
    let mut counts = vec![0i64; n + 1];
    let mut total = 0;
    for p in (0..n).permutations(n) {
        if even_only && !is_even_by_inversions(&p) {
            continue;
        }
        counts[cycle_count(&p)] += 1;
        total += 1;
    }
    counts.into_iter().map(|c| q(c, total)).collect()
}

pub fn falling(t: usize, l: usize) -> i64 {
    (0..l).map(|i| t as i64 - i as i64).product()
}

pub fn factorial_moments(law: &[BigRational], l: usize) -> Vec<BigRational> {
    (1..=l)
        .map(|m| {
            law.iter()
                .enumerate()
                .fold(q(0, 1), |acc, (t, p)| acc + p * q(falling(t, m), 1))
        })
        .collect()
}

pub fn tails(law: &[BigRational]) -> Vec<BigRational> {
    (0..=law.len())
        .map(|t| law[t.min(law.len())..].iter().sum())
        .collect()
}

pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn fact(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Uniform law on `A_n` by cycle type: `n!/z_λ` over `n!/2` for even `λ`.
pub fn alternating_class_law(n: usize) -> BTreeMap<Vec<usize>, BigRational> {
    let half: BigInt = fact(n) / 2;
    partitions(n)
        .into_iter()
        .filter(|p| (n - p.len()).is_multiple_of(2))
        .map(|p| {
            let mut z = BigInt::from(1);
            for (part, group) in &p.iter().chunk_by(|&&x| x) {
                let m = group.count();
                z *= BigInt::from(part).pow(m as u32) * fact(m);
            }
            let size = fact(n) / z;
            (p, BigRational::new(size, half.clone()))
        })
        .collect()
}
