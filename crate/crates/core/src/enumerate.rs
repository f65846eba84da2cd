//! Exhaustive ground truth for small `n`.
//!
//! Every one of the `(n-1)!!` matchings is visited once, so the law of the
//! cycle count (and of the full cycle type) of `αβ` is obtained as exact
//! rationals. The alternating-group side comes from class sizes, which lets
//! the total-variation distance be computed exactly on conjugacy classes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::gf::{g_tau, tail_probabilities};
use crate::exact::moments::MomentSet;
use crate::exact::{double_factorial, factorial, falling, parse_rational, pow, rational_string};
use crate::partition::partitions;
use crate::perm::{cycle_census, make_beta, CycleType, Permutation};
use crate::surface::validate_params;
use crate::ExactRational;

/// Size limits for exhaustive work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` whose matchings may be enumerated.
    pub matching_n: usize,
    /// Largest `n` whose integer partitions may be enumerated.
    pub partition_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            matching_n: 14,
            partition_n: 40,
        }
    }
}

fn check_matching_n(n: usize, caps: &Caps) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "n = {n} must be positive and even to admit a perfect matching"
        )));
    }
    if n > caps.matching_n {
        return Err(Error::CapExceeded {
            what: format!("enumerating all matchings of n = {n}"),
            required: double_factorial(n - 1).to_string(),
            cap: caps.matching_n,
        });
    }
    Ok(())
}

/// Iterator over all fixed-point-free involutions of `{1..n}`.
///
/// Order: the lowest unpaired label is paired with each remaining label in
/// increasing order, recursively. `choices[m]` is the index of the partner
/// among the unpaired labels above the lowest at level `m`.
#[derive(Clone, Debug)]
pub struct MatchingIter {
    n: usize,
    choices: Vec<usize>,
    frozen: usize,
    done: bool,
}

impl MatchingIter {
    fn new(n: usize) -> Self {
        MatchingIter {
            n,
            choices: vec![0; n / 2],
            frozen: 0,
            done: false,
        }
    }

    /// Only the matchings in which label 1 is paired with label `partner`.
    fn shard(n: usize, partner: usize) -> Self {
        let mut it = Self::new(n);
        it.choices[0] = partner - 2;
        it.frozen = 1;
        it
    }

    fn build(&self) -> Permutation {
        let mut remaining: Vec<u32> = (0..self.n as u32).collect();
        let mut image = vec![0u32; self.n];
        for &c in &self.choices {
            let low = remaining.remove(0);
            let partner = remaining.remove(c);
            image[low as usize] = partner;
            image[partner as usize] = low;
        }
        Permutation::from_zero_based_unchecked(image)
    }

    fn advance(&mut self) {
        for m in (self.frozen..self.choices.len()).rev() {
            let options = self.n - 2 * m - 1;
            if self.choices[m] + 1 < options {
                self.choices[m] += 1;
                self.choices[m + 1..].iter_mut().for_each(|c| *c = 0);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for MatchingIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let p = self.build();
        self.advance();
        Some(p)
    }
}

pub fn enumerate_matchings(n: usize, caps: &Caps) -> Result<MatchingIter> {
    check_matching_n(n, caps)?;
    Ok(MatchingIter::new(n))
}

/// Exact law of a cycle count; `probs[t]` is `Pr[C = t]` for `t = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDistribution {
    pub n: usize,
    pub k: Option<usize>,
    probs: Vec<ExactRational>,
}

impl CycleDistribution {
    pub fn new(n: usize, k: Option<usize>, probs: Vec<ExactRational>) -> Result<Self> {
        if probs.len() != n + 1 {
            return Err(Error::invalid(format!(
                "a cycle distribution on n = {n} needs {} entries, got {}",
                n + 1,
                probs.len()
            )));
        }
        if probs.iter().any(Signed::is_negative) {
            return Err(Error::invalid("probabilities must be non-negative"));
        }
        let total = probs.iter().fold(ExactRational::zero(), |a, p| a + p);
        if total != ExactRational::from_integer(1.into()) {
            return Err(Error::invalid(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(CycleDistribution { n, k, probs })
    }

    pub fn prob(&self, t: usize) -> ExactRational {
        self.probs
            .get(t)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn probs(&self) -> &[ExactRational] {
        &self.probs
    }

    /// `Pr[C ≥ t]` for `t = 0..=n+1`.
    pub fn tails(&self) -> Vec<ExactRational> {
        let mut tails = vec![ExactRational::zero(); self.n + 2];
        for t in (0..=self.n).rev() {
            tails[t] = &tails[t + 1] + &self.probs[t];
        }
        tails
    }

    pub fn tail(&self, t: usize) -> ExactRational {
        self.probs
            .iter()
            .skip(t)
            .fold(ExactRational::zero(), |a, p| a + p)
    }

    pub fn mean(&self) -> ExactRational {
        self.probs
            .iter()
            .enumerate()
            .fold(ExactRational::zero(), |a, (t, p)| {
                a + p * ExactRational::from_integer(t.into())
            })
    }

    /// Values of `t` with positive probability.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.n).filter(|&t| !self.probs[t].is_zero()).collect()
    }

    pub fn to_json(&self) -> Value {
        let probs: Map<String, Value> = (1..=self.n)
            .map(|t| {
                (
                    t.to_string(),
                    Value::String(rational_string(&self.probs[t])),
                )
            })
            .collect();
        json!({ "n": self.n, "k": self.k, "probs": probs })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || Error::invalid("malformed cycle distribution JSON");
        let n = value["n"].as_u64().ok_or_else(bad)? as usize;
        let k = value["k"].as_u64().map(|k| k as usize);
        let mut probs = vec![ExactRational::zero(); n + 1];
        for (t, p) in value["probs"].as_object().ok_or_else(bad)? {
            let t: usize = t.parse().map_err(|_| bad())?;
            if t == 0 || t > n {
                return Err(bad());
            }
            probs[t] = parse_rational(p.as_str().ok_or_else(bad)?).ok_or_else(bad)?;
        }
        Self::new(n, k, probs)
    }
}

/// Exact law of the full cycle type; only classes of positive probability
/// are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDistribution {
    pub n: usize,
    pub probs: BTreeMap<CycleType, ExactRational>,
}

impl ClassDistribution {
    pub fn prob(&self, class: &CycleType) -> ExactRational {
        self.probs
            .get(class)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn total(&self) -> ExactRational {
        self.probs
            .values()
            .fold(ExactRational::zero(), |a, p| a + p)
    }

    /// `Some(true)` if every class is even, `Some(false)` if every class is
    /// odd, `None` for mixed or empty support.
    pub fn sign_class(&self) -> Option<bool> {
        let mut parities = self.probs.keys().map(CycleType::is_even);
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(first)
    }

    /// Marginal law of the cycle count.
    pub fn cycle_marginal(&self, k: Option<usize>) -> Result<CycleDistribution> {
        let mut probs = vec![ExactRational::zero(); self.n + 1];
        for (class, p) in &self.probs {
            probs[class.count()] += p;
        }
        CycleDistribution::new(self.n, k, probs)
    }

    pub fn to_json(&self, k: Option<usize>) -> Value {
        let classes: Vec<Value> = self
            .probs
            .iter()
            .map(|(c, p)| json!({ "cycle_type": c.parts(), "prob": rational_string(p) }))
            .collect();
        json!({ "n": self.n, "k": k, "classes": classes })
    }
}

fn class_counts(iter: MatchingIter, beta: &Permutation) -> BTreeMap<CycleType, u64> {
    let mut counts = BTreeMap::new();
    for alpha in iter {
        let ab = alpha.then(beta).expect("sizes agree");
        *counts.entry(cycle_census(&ab)).or_insert(0u64) += 1;
    }
    counts
}

/// Exact laws of the cycle count and cycle type of `α·beta` over all
/// matchings `α`, sharded by the partner of label 1.
pub fn exact_ab_distribution_for_beta(
    beta: &Permutation,
    k: Option<usize>,
    caps: &Caps,
) -> Result<(CycleDistribution, ClassDistribution)> {
    let n = beta.n();
    check_matching_n(n, caps)?;
    let shards: Vec<BTreeMap<CycleType, u64>> = (2..=n)
        .into_par_iter()
        .map(|partner| class_counts(MatchingIter::shard(n, partner), beta))
        .collect();
    let mut counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    for shard in shards {
        for (class, c) in shard {
            *counts.entry(class).or_insert(0) += c;
        }
    }
    let total = double_factorial(n - 1);
    let seen: u64 = counts.values().sum();
    if BigInt::from(seen) != total {
        return Err(Error::InternalInconsistency(format!(
            "visited {seen} matchings, expected {total}"
        )));
    }
    let classes = ClassDistribution {
        n,
        probs: counts
            .into_iter()
            .map(|(c, m)| (c, ExactRational::new(m.into(), total.clone())))
            .collect(),
    };
    let cycles = classes.cycle_marginal(k)?;
    Ok((cycles, classes))
}

/// [`exact_ab_distribution_for_beta`] with the canonical `β` for `(n, k)`.
pub fn exact_ab_distribution(
    n: usize,
    k: usize,
    caps: &Caps,
) -> Result<(CycleDistribution, ClassDistribution)> {
    validate_params(n, k)?;
    check_matching_n(n, caps)?;
    exact_ab_distribution_for_beta(&make_beta(n, k)?, Some(k), caps)
}

/// Cycle-count law on `A_n` from the exact generating function (no cap).
pub fn exact_tau_cycle_distribution(n: usize) -> Result<CycleDistribution> {
    let g = g_tau(n)?;
    let probs = (0..=n).map(|t| g.coeff(t)).collect();
    CycleDistribution::new(n, None, probs)
}

/// Laws of the cycle count and cycle type of a uniform element of `A_n`.
/// A class `λ` gets `|λ| / (n!/2)`, with `|λ| = n! / Π j^{m_j} m_j!`.
pub fn exact_tau_distribution(
    n: usize,
    caps: &Caps,
) -> Result<(CycleDistribution, ClassDistribution)> {
    let cycles = exact_tau_cycle_distribution(n)?;
    if n > caps.partition_n {
        return Err(Error::CapExceeded {
            what: format!("enumerating the cycle types of n = {n}"),
            required: partitions_count_hint(n),
            cap: caps.partition_n,
        });
    }
    let half_order: BigInt = factorial(n) / 2;
    let probs = partitions(n)
        .into_iter()
        .map(|p| CycleType::from_parts(p).expect("partition parts are positive"))
        .filter(CycleType::is_even)
        .map(|c| {
            let p = ExactRational::new(c.class_size(), half_order.clone());
            (c, p)
        })
        .collect();
    Ok((cycles, ClassDistribution { n, probs }))
}

fn partitions_count_hint(n: usize) -> String {
    // p(n) by the pentagonal recurrence; only used in the error message
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = 1.into();
    for i in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign_pos = k % 2 == 1;
            let mut term = p[i - g1].clone();
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                term += &p[i - g2];
            }
            if sign_pos {
                p[i] += term;
            } else {
                p[i] -= term;
            }
            k += 1;
        }
    }
    p[n].to_string()
}

/// Exact total-variation distance between the law of `αβ` and the uniform
/// law on `A_n`.
///
/// Both laws are constant on conjugacy classes, so the distance is half the
/// `L¹` distance between the class laws. Requires `2·lcm(2, k) | n`, where
/// `αβ` is even; otherwise it lives on the odd coset and the comparison is
/// meaningless.
pub fn tv_distance(n: usize, k: usize, caps: &Caps) -> Result<ExactRational> {
    let params = validate_params(n, k)?;
    if !params.gamburd_regime {
        return Err(Error::RegimeMismatch(format!(
            "n = {n} is not a multiple of 2·lcm(2, {k}); αβ is an odd permutation and \
             cannot be compared with the uniform law on A_{n}"
        )));
    }
    check_matching_n(n, caps)?;
    let (_, ab) = exact_ab_distribution(n, k, caps)?;
    if ab.sign_class() != Some(true) {
        return Err(Error::InternalInconsistency(
            "αβ produced odd classes inside the even regime".into(),
        ));
    }
    let (_, tau) = exact_tau_distribution(n, caps)?;
    Ok(class_tv(&ab, &tau))
}

/// Half the `L¹` distance between two class laws.
pub fn class_tv(a: &ClassDistribution, b: &ClassDistribution) -> ExactRational {
    let mut sum = ExactRational::zero();
    for (class, p) in &a.probs {
        sum += (p - b.prob(class)).abs();
    }
    for (class, p) in &b.probs {
        if !a.probs.contains_key(class) {
            sum += p.clone();
        }
    }
    sum / ExactRational::from_integer(2.into())
}

/// Factorial, raw and central moments of orders `1..=l`, each summed
/// directly over the distribution.
pub fn brute_moments(dist: &CycleDistribution, l: usize) -> MomentSet {
    let mean = dist.mean();
    let mut factorial = vec![ExactRational::zero(); l];
    let mut raw = vec![ExactRational::zero(); l];
    let mut central = vec![ExactRational::zero(); l];
    for (t, p) in dist.probs().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let tr = ExactRational::from_integer(t.into());
        let dev = &tr - &mean;
        for m in 1..=l {
            factorial[m - 1] += p * ExactRational::from_integer(falling(t, m));
            raw[m - 1] += p * pow(&tr, m);
            central[m - 1] += p * pow(&dev, m);
        }
    }
    MomentSet {
        order: l,
        factorial,
        raw,
        central,
    }
}

/// Exact `Pr[C ≥ t]` for a cycle count with generating function `g_tau(n)`.
pub fn tau_tails(n: usize) -> Result<Vec<ExactRational>> {
    Ok(tail_probabilities(&g_tau(n)?))
}
