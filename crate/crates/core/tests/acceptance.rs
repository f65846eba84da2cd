//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use surface_census::enumerate::{exact_ab_distribution_for_beta, tv_distance, Caps};
use surface_census::exact::gf::{g_sigma, g_tau, tail_bound_ab};
use surface_census::exact::moments::{factorial_moments_sigma, factorial_moments_tau, EULER_GAMMA};
use surface_census::exact::to_f64;
use surface_census::mc::{instrumented_glue, run_mc, CycleSampler, RunConfig};
use surface_census::perm::{compose, make_beta, sample_permutation};
use surface_census::stats::chi_square_test;
use surface_census::Error;

/// Regression baseline for the exact TV distance at `(12, 3)`.
const TV_12_3: (i64, i64) = (89_869_709, 239_500_800);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, bool);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let el = start.elapsed();
    check(el <= budget, || format!("took {el:.1?}, budget {budget:?}"))
}

fn exact_sigma_moments() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let law = group_cycle_law(n, false);
        let brute = factorial_moments(&law, 4);
        let lib = factorial_moments_sigma(n, 4).map_err(|e| e.to_string())?;
        check(lib == brute, || format!("n = {n}: {lib:?} != {brute:?}"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("n <= 8, l <= 4 exact in {:.1?}", start.elapsed()))
}

fn exact_tau_moments() -> Outcome {
    let start = Instant::now();
    for n in 3..=8 {
        let law = group_cycle_law(n, true);
        let brute = factorial_moments(&law, 4);
        let lib = factorial_moments_tau(n, 4).map_err(|e| e.to_string())?;
        check(lib == brute, || format!("n = {n}: {lib:?} != {brute:?}"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "3 <= n <= 8, l <= 4 exact in {:.1?}",
        start.elapsed()
    ))
}

fn gf_identities() -> Outcome {
    let start = Instant::now();
    let two = BigRational::from_integer(2.into());
    for n in 3..=200usize {
        let expect = BigRational::from_integer(n.into()) + BigRational::one();
        let s = g_sigma(n).map_err(|e| e.to_string())?.eval(&two);
        let t = g_tau(n).map_err(|e| e.to_string())?.eval(&two);
        check(s == expect && t == expect, || {
            format!("n = {n}: g_sigma(2) = {s}, g_tau(2) = {t}")
        })?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("n = 3..=200 in {:.1?}", start.elapsed()))
}

fn tail_dominance() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (n, k) in [(6, 3), (12, 3), (8, 4), (12, 6)] {
        let exact = tails(&ab_cycle_law(n, k));
        // F(3/2) = 9(n+1)/20 in closed form; B(t)^2 = F(3/2)^2 (2/3)^t
        let f = q(9 * (n as i64 + 1), 20);
        for (t, p) in exact.iter().enumerate() {
            let b2 = &f * &f * num_traits::pow(q(2, 3), t);
            check(p * p <= b2, || {
                format!("(n, k, t) = ({n}, {k}, {t}): {p} above bound")
            })?;
            let lib = tail_bound_ab(n, t).map_err(|e| e.to_string())?;
            check(lib.squared == b2, || {
                format!("library bound differs at ({n}, {t})")
            })?;
            check(lib.dominates(p), || {
                format!("library comparison disagrees at ({n}, {k}, {t})")
            })?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{checked} exact comparisons in {:.1?}",
        start.elapsed()
    ))
}

fn glue_traces() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let runs = 10_000;
    let mut total = 0;
    for n in [60, 600] {
        for k in [3, 4] {
            let beta = make_beta(n, k).map_err(|e| e.to_string())?;
            for _ in 0..runs {
                let trace = instrumented_glue(n, k, &mut rng).map_err(|e| e.to_string())?;
                trace.check_invariants().map_err(|e| e.to_string())?;
                let direct = compose(&trace.matching, &beta).map_err(|e| e.to_string())?;
                let direct = cycle_count(
                    &direct
                        .image_one_based()
                        .iter()
                        .map(|x| x - 1)
                        .collect::<Vec<_>>(),
                );
                check(trace.final_cycles as usize == direct, || {
                    format!(
                        "n = {n}, k = {k}: trace says {}, direct {direct}",
                        trace.final_cycles
                    )
                })?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} runs, 0 violations"))
}

fn chi_square_match() -> Outcome {
    let law = ab_cycle_law(12, 3);
    let probs: Vec<f64> = law.iter().map(to_f64).collect();
    let mut sampler = CycleSampler::new(12, 3).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut observed = vec![0u64; 13];
    for _ in 0..200_000 {
        observed[sampler.sample(&mut rng)] += 1;
    }
    let chi = chi_square_test(&observed, &probs, 5.0);
    check(chi.p_value > 1e-3, || {
        format!("p = {:.3e} (stat {:.2})", chi.p_value, chi.statistic)
    })?;
    Ok(format!(
        "chi2 = {:.2} on {} dof, p = {:.3}",
        chi.statistic, chi.degrees_of_freedom, chi.p_value
    ))
}

/// Mean and variance against `log n + γ` and `log n + γ - π²/6`. A miss is
/// printed next to the exact values at `n ∈ {6, 12}`; the criterion does not
/// gate the exit status.
fn large_n_moments() -> Outcome {
    let start = Instant::now();
    let threads = std::thread::available_parallelism().map_or(1, usize::from);
    let out = run_mc(&RunConfig::new(6000, 3, 200_000, 7).with_threads(threads))
        .map_err(|e| e.to_string())?;
    let log_n = 6000f64.ln();
    let mean_target = log_n + EULER_GAMMA;
    let var_target = mean_target - std::f64::consts::PI.powi(2) / 6.0;
    let var = out.moments.central2 * 200_000.0 / 199_999.0;
    let dm = out.moments.mean - mean_target;
    let dv = var - var_target;
    let summary = format!(
        "mean {:.4} (target {mean_target:.4}, diff {dm:+.4}), variance {var:.4} (target {var_target:.4}, diff {dv:+.4}), {:.1?}",
        out.moments.mean,
        start.elapsed()
    );
    if dm.abs() <= 0.05 && dv.abs() <= 0.10 && start.elapsed() <= Duration::from_secs(120) {
        return Ok(summary);
    }
    println!("criterion 7 missed: {summary}");
    for n in [6, 12] {
        let law = ab_cycle_law(n, 3);
        let m = factorial_moments(&law, 2);
        let mean = to_f64(&m[0]);
        let var = to_f64(&(&m[1] + &m[0] - &m[0] * &m[0]));
        let lt = (n as f64).ln() + EULER_GAMMA;
        println!(
            "  exact n = {n}: mean {mean:.4} vs {lt:.4}, variance {var:.4} vs {:.4}",
            lt - 1.644934
        );
    }
    Err(format!("{summary} (not gating)"))
}

fn conjugacy() -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (n, k) in [(6, 3), (12, 3)] {
        let beta = make_beta(n, k).map_err(|e| e.to_string())?;
        let (base, base_classes) =
            exact_ab_distribution_for_beta(&beta, Some(k), &caps).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let pi = sample_permutation(n, &mut rng);
            let conj = beta.conjugate_by(&pi).map_err(|e| e.to_string())?;
            let (d, c) =
                exact_ab_distribution_for_beta(&conj, Some(k), &caps).map_err(|e| e.to_string())?;
            check(d == base && c == base_classes, || {
                format!("({n}, {k}) changed under {pi}")
            })?;
            // independent oracle on the conjugated beta as well
            let img: Vec<usize> = conj.image_one_based().iter().map(|x| x - 1).collect();
            let oracle = ab_class_law(n, &img);
            let lib: BTreeMap<Vec<usize>, BigRational> = c
                .probs
                .iter()
                .map(|(t, p)| (t.parts().to_vec(), p.clone()))
                .collect();
            check(oracle == lib, || {
                format!("({n}, {k}) class law disagrees with oracle")
            })?;
        }
    }
    Ok("(6,3) and (12,3) unchanged under 3 conjugations each".into())
}

fn tv_regime() -> Outcome {
    let caps = Caps::default();
    let tv = tv_distance(12, 3, &caps).map_err(|e| e.to_string())?;
    check(
        tv >= BigRational::zero() && tv <= BigRational::one(),
        || format!("tv = {tv}"),
    )?;
    let ab = ab_class_law(12, &beta(12, 3));
    let unif = alternating_class_law(12);
    let mut l1 = BigRational::zero();
    for (c, p) in &unif {
        let a = ab.get(c).cloned().unwrap_or_default();
        l1 += if a > *p { &a - p } else { p - &a };
    }
    check(ab.keys().all(|c| unif.contains_key(c)), || {
        "αβ hit an odd class".into()
    })?;
    let oracle = l1 / q(2, 1);
    check(tv == oracle, || format!("library {tv} != oracle {oracle}"))?;
    check(tv == q(TV_12_3.0, TV_12_3.1), || {
        format!("tv {tv} differs from baseline")
    })?;
    match tv_distance(6, 3, &caps) {
        Err(Error::RegimeMismatch(_)) => {}
        other => return Err(format!("tv(6, 3) = {other:?}, expected regime mismatch")),
    }
    Ok(format!(
        "tv(12,3) = {tv} ≈ {:.6}; tv(6,3) rejected",
        to_f64(&tv)
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_surface-census");
    let mut outputs = Vec::new();
    for (i, threads) in [1, 1, 2, 4, 4].into_iter().enumerate() {
        for format in ["json", "csv"] {
            let path = dir.path().join(format!("run{i}.{format}"));
            let status = Command::new(bin)
                .args([
                    "sample",
                    "--n",
                    "600",
                    "--k",
                    "4",
                    "--samples",
                    "20000",
                    "--seed",
                    "99",
                ])
                .args([
                    "--threads",
                    &threads.to_string(),
                    "--format",
                    format,
                    "--out",
                ])
                .arg(&path)
                .status()
                .map_err(|e| e.to_string())?;
            check(status.success(), || format!("exit {status}"))?;
            outputs.push((
                format,
                threads,
                std::fs::read(&path).map_err(|e| e.to_string())?,
            ));
        }
    }
    for format in ["json", "csv"] {
        let runs: Vec<_> = outputs.iter().filter(|o| o.0 == format).collect();
        check(runs.iter().all(|o| o.2 == runs[0].2), || {
            format!("{format} output differs between runs")
        })?;
    }
    Ok("json and csv byte-identical across 5 runs with 1, 2 and 4 threads".into())
}

fn main() {
    // (name, check, gates the exit status)
    let criteria: [Criterion; 10] = [
        (
            "exact sigma moments vs brute force",
            exact_sigma_moments,
            true,
        ),
        ("exact tau moments vs brute force", exact_tau_moments, true),
        ("generating functions at x = 2", gf_identities, true),
        ("tail-bound dominance", tail_dominance, true),
        ("glue-trace invariants", glue_traces, true),
        ("chi-square distributional match", chi_square_match, true),
        ("large-n mean and variance", large_n_moments, false),
        ("conjugacy invariance", conjugacy, true),
        ("TV regime", tv_regime, true),
        ("determinism", determinism, true),
    ];
    let (mut failed, mut gating_failed) = (0, 0);
    for (i, (name, f, gating)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                gating_failed += usize::from(*gating);
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if gating_failed > 0 {
        std::process::exit(1);
    }
}
