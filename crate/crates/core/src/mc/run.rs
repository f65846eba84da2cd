//! Parallel, reproducible sampling of `C_{αβ}`.
//!
//! Samples are cut into batches of [`BATCH_SIZE`]. Batch `b` draws from
//! stream `b` of the configured seed and owns its accumulator and histogram;
//! batches are merged in index order. The report is therefore a function of
//! `(n, k, samples, seed)` alone, for any thread count.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{brute_moments, exact_ab_distribution, Caps};
use crate::error::{Error, Result};
use crate::exact::gf::tail_bound_ab;
use crate::exact::moments::{asymptotic_moments, AsymptoticMoment, MomentSet};
use crate::mc::MomentAccumulator;
use crate::perm::{make_beta, MatchingSampler};
use crate::rng;
use crate::surface::{invariants_from_cycles, validate_params, SurfaceParams};

pub const BATCH_SIZE: u64 = 4096;

/// Draws `C_{αβ}` repeatedly, reusing its buffers.
#[derive(Clone, Debug)]
pub struct CycleSampler {
    beta: Vec<u32>,
    matching: MatchingSampler,
    alpha: Vec<u32>,
    seen: Vec<bool>,
}

impl CycleSampler {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        validate_params(n, k)?;
        Ok(CycleSampler {
            beta: make_beta(n, k)?.zero_based().to_vec(),
            matching: MatchingSampler::new(n)?,
            alpha: vec![0; n],
            seen: vec![false; n],
        })
    }

    /// One draw of the number of cycles of `αβ`, traced in place as
    /// `x ↦ β(α(x))`.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        self.matching.sample_into(rng, &mut self.alpha);
        self.seen.iter_mut().for_each(|s| *s = false);
        let mut cycles = 0;
        for start in 0..self.alpha.len() {
            if self.seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !self.seen[x] {
                self.seen[x] = true;
                x = self.beta[self.alpha[x] as usize] as usize;
            }
        }
        cycles
    }
}

pub fn sample_cycles<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<usize> {
    Ok(CycleSampler::new(n, k)?.sample(rng))
}

/// `⌈log n⌉ + 5j` for `j = 0..=5`.
pub fn default_tail_thresholds(n: usize) -> Vec<usize> {
    let base = (n as f64).ln().ceil().max(0.0) as usize;
    (0..=5).map(|j| base + 5 * j).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub k: usize,
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    pub tail_thresholds: Vec<usize>,
}

impl RunConfig {
    pub fn new(n: usize, k: usize, samples: u64, seed: u64) -> Self {
        RunConfig {
            n,
            k,
            samples,
            seed,
            threads: 1,
            tail_thresholds: default_tail_thresholds(n),
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn validate(&self) -> Result<SurfaceParams> {
        let params = validate_params(self.n, self.k)?;
        if self.samples == 0 {
            return Err(Error::invalid("samples must be >= 1"));
        }
        if self.threads == 0 {
            return Err(Error::invalid("threads must be >= 1"));
        }
        Ok(params)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub samples: u64,
    pub mean: f64,
    pub central2: f64,
    pub central3: f64,
    pub central4: f64,
    pub standard_error_mean: f64,
    #[serde(skip)]
    pub exact_reference: Option<MomentSet>,
    pub asymptotic_reference: Vec<AsymptoticMoment>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailReport {
    pub thresholds: Vec<usize>,
    /// Fraction of samples with `C ≥ t`, per threshold.
    pub empirical: Vec<f64>,
    /// `F(3/2)·(2/3)^{t/2}` per threshold; `None` where the bound is undefined
    /// (`n < 6`).
    pub bound: Vec<Option<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceSummary {
    pub mean_vertices: f64,
    pub mean_euler_characteristic: f64,
    /// genus → number of samples, over samples with `χ ≤ 2`.
    pub genus_histogram: BTreeMap<u64, u64>,
    /// Samples with `χ > 2`. These glueings are disconnected, so a single
    /// genus does not describe them.
    pub disconnected_samples: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McOutcome {
    pub config: RunConfig,
    pub moments: MomentReport,
    pub tails: TailReport,
    pub surface: SurfaceSummary,
    /// `histogram[t]` counts samples with `t` cycles.
    #[serde(skip)]
    pub histogram: Vec<u64>,
}

struct Batch {
    acc: MomentAccumulator,
    histogram: Vec<u64>,
}

fn run_batch(config: &RunConfig, index: u64) -> Batch {
    let mut sampler = CycleSampler::new(config.n, config.k).expect("validated");
    let mut rng = rng::stream(config.seed, index);
    let size = BATCH_SIZE.min(config.samples - index * BATCH_SIZE);
    let mut acc = MomentAccumulator::new();
    let mut histogram = vec![0u64; config.n + 1];
    for _ in 0..size {
        let c = sampler.sample(&mut rng);
        acc.push(c as f64);
        histogram[c] += 1;
    }
    Batch { acc, histogram }
}

/// Runs the configured number of samples and summarizes them.
pub fn run_mc(config: &RunConfig) -> Result<McOutcome> {
    let params = config.validate()?;
    let mut thresholds = config.tail_thresholds.clone();
    thresholds.sort_unstable();
    thresholds.dedup();

    let batches = config.samples.div_ceil(BATCH_SIZE);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {} threads: {e}", config.threads)))?;
    let results: Vec<Batch> = pool.install(|| {
        (0..batches)
            .into_par_iter()
            .map(|b| run_batch(config, b))
            .collect()
    });

    let mut acc = MomentAccumulator::new();
    let mut histogram = vec![0u64; config.n + 1];
    for batch in &results {
        acc = acc.merge(&batch.acc);
        for (h, c) in histogram.iter_mut().zip(&batch.histogram) {
            *h += c;
        }
    }

    let total = config.samples as f64;
    let exact_reference = if config.n <= Caps::default().matching_n {
        let (dist, _) = exact_ab_distribution(config.n, config.k, &Caps::default())?;
        Some(brute_moments(&dist, 4))
    } else {
        None
    };
    let moments = MomentReport {
        samples: config.samples,
        mean: acc.mean(),
        central2: acc.central(2),
        central3: acc.central(3),
        central4: acc.central(4),
        standard_error_mean: (acc.central(2) / total).sqrt(),
        exact_reference,
        asymptotic_reference: asymptotic_moments(config.n.max(2), 4)?,
    };

    let mut suffix = vec![0u64; config.n + 2];
    for t in (0..=config.n).rev() {
        suffix[t] = suffix[t + 1] + histogram[t];
    }
    let empirical = thresholds
        .iter()
        .map(|&t| suffix[t.min(config.n + 1)] as f64 / total)
        .collect();
    let bound = thresholds
        .iter()
        .map(|&t| tail_bound_ab(config.n, t).ok().map(|b| b.approx()))
        .collect();
    let tails = TailReport {
        thresholds,
        empirical,
        bound,
    };

    let mut genus_histogram = BTreeMap::new();
    let mut disconnected_samples = 0;
    let mut chi_sum = 0.0;
    let mut v_sum = 0.0;
    for (v, &count) in histogram.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let chi = params.euler_characteristic(v);
        if chi > 2 {
            disconnected_samples += count;
        } else {
            let inv = invariants_from_cycles(&params, v)?;
            *genus_histogram.entry(inv.genus).or_insert(0) += count;
        }
        chi_sum += chi as f64 * count as f64;
        v_sum += v as f64 * count as f64;
    }
    let surface = SurfaceSummary {
        mean_vertices: v_sum / total,
        mean_euler_characteristic: chi_sum / total,
        genus_histogram,
        disconnected_samples,
    };

    Ok(McOutcome {
        config: config.clone(),
        moments,
        tails,
        surface,
        histogram,
    })
}
