//! The invariant suite behind `surface-census verify`.

use num_traits::{One, Zero};

use crate::enumerate::{
    brute_moments, exact_ab_distribution, exact_ab_distribution_for_beta, tau_tails, tv_distance,
    Caps, CycleDistribution,
};
use crate::error::{Error, Result};
use crate::exact::gf::{g_sigma, g_tau, tail_bound_ab, tail_probabilities};
use crate::exact::moments::{factorial_moments_sigma, factorial_moments_tau};
use crate::exact::{int, pow, to_f64};
use crate::mc::{exhaustive_step_audit, instrumented_glue, run_mc, RunConfig};
use crate::perm::{make_beta, sample_permutation, Permutation};
use crate::rng;
use crate::stats::chi_square_test;
use crate::ExactRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Sizes {
    max_perm_n: usize,
    max_gf_n: usize,
    glue_runs: u64,
    mc_samples: u64,
}

const QUICK: Sizes = Sizes {
    max_perm_n: 6,
    max_gf_n: 60,
    glue_runs: 200,
    mc_samples: 20_000,
};

const FULL: Sizes = Sizes {
    max_perm_n: 8,
    max_gf_n: 200,
    glue_runs: 10_000,
    mc_samples: 200_000,
};

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InternalInconsistency(msg()))
    }
}

/// Cycle-count laws over all of `S_n` and over `A_n`, by listing every
/// permutation in lexicographic order.
pub fn brute_force_cycle_laws(n: usize) -> Result<(CycleDistribution, CycleDistribution)> {
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut all = vec![0u64; n + 1];
    let mut even = vec![0u64; n + 1];
    loop {
        let p = Permutation::from_one_based(&perm)?;
        let c = p.cycle_count();
        all[c] += 1;
        if p.sign() == 1 {
            even[c] += 1;
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n)
            .rev()
            .find(|&j| perm[j] > perm[i - 1])
            .expect("exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    let law = |counts: Vec<u64>| {
        let total: u64 = counts.iter().sum();
        let probs = counts
            .into_iter()
            .map(|c| ExactRational::new(c.into(), total.into()))
            .collect();
        CycleDistribution::new(n, None, probs)
    };
    Ok((law(all)?, law(even)?))
}

fn moments_against_brute(sizes: &Sizes) -> Result<()> {
    for n in 1..=sizes.max_perm_n {
        let (all, even) = brute_force_cycle_laws(n)?;
        let sigma = factorial_moments_sigma(n, 4)?;
        ensure(sigma == brute_moments(&all, 4).factorial, || {
            format!("S_{n} factorial moments disagree with brute force")
        })?;
        if n >= 3 {
            let tau = factorial_moments_tau(n, 4)?;
            ensure(tau == brute_moments(&even, 4).factorial, || {
                format!("A_{n} factorial moments disagree with brute force")
            })?;
        }
    }
    Ok(())
}

fn gf_at_two(sizes: &Sizes) -> Result<()> {
    let two = int(2);
    for n in 3..=sizes.max_gf_n {
        let expect = int(n as i64 + 1);
        ensure(g_sigma(n)?.eval(&two) == expect, || {
            format!("g_sigma({n})(2) != {expect}")
        })?;
        ensure(g_tau(n)?.eval(&two) == expect, || {
            format!("g_tau({n})(2) != {expect}")
        })?;
    }
    Ok(())
}

fn tail_dominance() -> Result<()> {
    let caps = Caps::default();
    for (n, k) in [(6, 3), (12, 3), (8, 4), (12, 6)] {
        let (dist, _) = exact_ab_distribution(n, k, &caps)?;
        for (t, p) in dist.tails().iter().enumerate() {
            let b = tail_bound_ab(n, t)?;
            ensure(b.dominates(p), || {
                format!("Pr[C >= {t}] = {p} exceeds the bound at n = {n}, k = {k}")
            })?;
        }
    }
    for n in 3..=40 {
        let sigma = tail_probabilities(&g_sigma(n)?);
        let tau = tau_tails(n)?;
        for t in 0..=n {
            let bound = int(n as i64 + 1) / pow(&int(2), t);
            ensure(sigma[t] <= bound && tau[t] <= bound, || {
                format!("cycle tail at n = {n}, t = {t} exceeds (n+1)/2^t")
            })?;
        }
    }
    Ok(())
}

fn glue_invariants(sizes: &Sizes) -> Result<()> {
    let mut r = rng::seeded(0x5eed);
    for (n, k) in [(60, 3), (60, 4), (600, 3), (600, 4)] {
        for _ in 0..sizes.glue_runs {
            instrumented_glue(n, k, &mut r)?;
        }
    }
    Ok(())
}

fn step_audit() -> Result<()> {
    let audit = exhaustive_step_audit(&make_beta(6, 3)?, 3)?;
    ensure(audit.leaves == 15, || {
        format!("audit reached {} leaves, not 15", audit.leaves)
    })?;
    ensure(
        audit.closure_formula_mismatches == 0 && audit.cycle_count_mismatches == 0,
        || format!("audit mismatches: {audit:?}"),
    )?;
    ensure(audit.max_interesting_choices <= 4, || {
        format!(
            "{} interesting choices in one step",
            audit.max_interesting_choices
        )
    })
}

fn conjugacy() -> Result<()> {
    let caps = Caps::default();
    let mut r = rng::seeded(11);
    for (n, k) in [(6, 3), (12, 3)] {
        let beta = make_beta(n, k)?;
        let (base, classes) = exact_ab_distribution_for_beta(&beta, Some(k), &caps)?;
        for _ in 0..3 {
            let pi = sample_permutation(n, &mut r);
            let (d, c) = exact_ab_distribution_for_beta(&beta.conjugate_by(&pi)?, Some(k), &caps)?;
            ensure(d == base && c == classes, || {
                format!("conjugating beta by {pi} changed the law at n = {n}, k = {k}")
            })?;
        }
    }
    Ok(())
}

fn tv_regime() -> Result<()> {
    let caps = Caps::default();
    let tv = tv_distance(12, 3, &caps)?;
    ensure(
        tv >= ExactRational::zero() && tv <= ExactRational::one(),
        || format!("TV distance {tv} outside [0, 1]"),
    )?;
    match tv_distance(6, 3, &caps) {
        Err(Error::RegimeMismatch(_)) => Ok(()),
        other => Err(Error::InternalInconsistency(format!(
            "tv(6, 3) should be a regime mismatch, got {other:?}"
        ))),
    }
}

fn sampler_matches_enumeration(sizes: &Sizes) -> Result<()> {
    let (dist, _) = exact_ab_distribution(12, 3, &Caps::default())?;
    let out = run_mc(&RunConfig::new(12, 3, sizes.mc_samples, 2024))?;
    let probs: Vec<f64> = dist.probs().iter().map(to_f64).collect();
    let chi = chi_square_test(&out.histogram, &probs, 5.0);
    ensure(chi.p_value > 1e-3, || {
        format!("sampler chi-square p = {}", chi.p_value)
    })
}

type CheckFn<'a> = Box<dyn Fn() -> Result<()> + 'a>;

/// Runs every check; `quick` trims sizes so the suite finishes in seconds.
pub fn run_checks(quick: bool) -> Vec<Check> {
    let sizes = if quick { &QUICK } else { &FULL };
    let checks: [(&'static str, CheckFn); 8] = [
        (
            "moments_vs_brute_force",
            Box::new(|| moments_against_brute(sizes)),
        ),
        ("generating_functions_at_two", Box::new(|| gf_at_two(sizes))),
        ("tail_dominance", Box::new(tail_dominance)),
        ("glue_trace_invariants", Box::new(|| glue_invariants(sizes))),
        ("glue_step_audit", Box::new(step_audit)),
        ("conjugacy_invariance", Box::new(conjugacy)),
        ("tv_regime", Box::new(tv_regime)),
        (
            "sampler_vs_enumeration",
            Box::new(|| sampler_matches_enumeration(sizes)),
        ),
    ];
    checks
        .into_iter()
        .map(|(name, f)| Check {
            name,
            failure: f().err().map(|e| e.to_string()),
        })
        .collect()
}
