//! The glueing process, step by step, with closure and quasi-cycle counts.
//!
//! The graph of `αβ` is built in `n/2` steps. At each step a head `i` is
//! chosen (by a [`HeadRule`]), a second head `j` uniformly among the others,
//! and the pairs `(i, β(j))` and `(j, β(i))` are added. Between steps the
//! graph is a disjoint union of cycles and paths; each path runs from its
//! tail (in-degree 0) to its head (out-degree 0). Heads are exactly the
//! still-unpaired labels, and `v` is a tail exactly when `β⁻¹(v)` is unpaired.
//!
//! Only path endpoints are ever queried, so two endpoint-indexed arrays
//! (`tail_of[head]`, `head_of[tail]`) are enough; a merge rewrites the two
//! endpoints of the new path.
//!
//! A path with tail `T` and head `H` is a quasi-cycle when `T = β(H)`. A
//! step is interesting when it closes a cycle through one added pair (a
//! simple closure) or creates a quasi-cycle. A double closure joins two
//! quasi-cycles into one cycle through both added pairs.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{count_cycles, make_beta, Permutation};
use crate::surface::validate_params;

/// How the first head of each step is picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HeadRule {
    /// The smallest unpaired label. With this rule the process consumes the
    /// random stream exactly like [`crate::perm::MatchingSampler`].
    LowestLabel,
    /// A uniform unpaired label (debug mode for rule independence).
    Uniform,
}

/// What one step did.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepOutcome {
    pub simple_closures: u32,
    pub double_closure: bool,
    pub quasi_cycles_created: u32,
}

impl StepOutcome {
    pub fn is_interesting(&self) -> bool {
        self.simple_closures > 0 || self.quasi_cycles_created > 0
    }

    pub fn cycles_closed(&self) -> u32 {
        self.simple_closures + u32::from(self.double_closure)
    }
}

/// Per-run record of the process.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueTrace {
    pub n: usize,
    pub k: usize,
    pub simple_closures: u64,
    pub quasi_cycle_creations: u64,
    pub double_closures: u64,
    pub interesting_steps: u64,
    pub final_cycles: u64,
    /// The matching `α` the run built, for recomputing `C_{αβ}` directly.
    #[serde(skip)]
    pub matching: Permutation,
}

impl GlueTrace {
    /// The four counting invariants of the process.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::InternalInconsistency(format!(
                "glue trace violates {what}: {self:?}"
            )))
        };
        if self.interesting_steps > self.simple_closures + self.quasi_cycle_creations {
            return fail("interesting <= simple + quasi");
        }
        if 2 * self.double_closures > self.quasi_cycle_creations {
            return fail("double <= quasi / 2");
        }
        if self.final_cycles != self.simple_closures + self.double_closures {
            return fail("final = simple + double");
        }
        if self.final_cycles > 2 * self.interesting_steps {
            return fail("final <= 2 * interesting");
        }
        Ok(())
    }
}

struct Plan {
    outcome: StepOutcome,
    // (tail, head) of each path created by the step
    new_paths: [Option<(u32, u32)>; 2],
}

/// Mutable state of one run. Labels are 1-based in the public methods.
#[derive(Clone, Debug)]
pub struct GlueState {
    k: usize,
    beta: Vec<u32>,
    beta_inv: Vec<u32>,
    tail_of: Vec<u32>,
    head_of: Vec<u32>,
    pool: Vec<u32>,
    pos: Vec<u32>,
    alpha: Vec<u32>,
    cursor: usize,
    totals: StepTotals,
}

#[derive(Clone, Copy, Debug, Default)]
struct StepTotals {
    simple: u64,
    double: u64,
    quasi: u64,
    interesting: u64,
}

const UNPAIRED: u32 = u32::MAX;

impl GlueState {
    /// Start of a run against `beta`; every label is a trivial path.
    pub fn new(beta: &Permutation, k: usize) -> Result<Self> {
        let n = beta.n();
        if !n.is_multiple_of(2) {
            return Err(Error::invalid(format!("n = {n} must be even")));
        }
        let beta_img = beta.zero_based().to_vec();
        let beta_inv = beta.inverse().zero_based().to_vec();
        Ok(GlueState {
            k,
            beta: beta_img,
            beta_inv,
            tail_of: (0..n as u32).collect(),
            head_of: (0..n as u32).collect(),
            pool: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            alpha: vec![UNPAIRED; n],
            cursor: 0,
            totals: StepTotals::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn step(&self) -> usize {
        (self.n() - self.pool.len()) / 2
    }

    pub fn is_complete(&self) -> bool {
        self.pool.is_empty()
    }

    /// Current heads (unpaired labels), sorted.
    pub fn heads(&self) -> Vec<usize> {
        let mut h: Vec<usize> = self.pool.iter().map(|&v| v as usize + 1).collect();
        h.sort_unstable();
        h
    }

    pub fn lowest_head(&mut self) -> Option<usize> {
        while self.cursor < self.n() && self.alpha[self.cursor] != UNPAIRED {
            self.cursor += 1;
        }
        (self.cursor < self.n()).then_some(self.cursor + 1)
    }

    /// Tail of the path whose head is `head`.
    pub fn tail_of(&self, head: usize) -> usize {
        self.tail_of[head - 1] as usize + 1
    }

    /// Head of the path whose tail is `tail`.
    pub fn head_of(&self, tail: usize) -> usize {
        self.head_of[tail - 1] as usize + 1
    }

    /// Partners `j` that close a cycle through a single added pair:
    /// `β⁻¹(T(i))` and `H(β(i))`, excluding `i` itself.
    pub fn closing_partners(&self, i: usize) -> Vec<usize> {
        let i0 = i - 1;
        let a = self.beta_inv[self.tail_of[i0] as usize];
        let b = self.head_of[self.beta[i0] as usize];
        let mut out: Vec<usize> = [a, b]
            .into_iter()
            .filter(|&v| v as usize != i0)
            .map(|v| v as usize + 1)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn check_heads(&self, i: usize, j: usize) -> Result<()> {
        let ok = |v: usize| v >= 1 && v <= self.n() && self.alpha[v - 1] == UNPAIRED;
        if i == j || !ok(i) || !ok(j) {
            return Err(Error::invalid(format!(
                "({i}, {j}) is not a pair of distinct unpaired labels"
            )));
        }
        Ok(())
    }

    fn plan(&self, i0: u32, j0: u32) -> Plan {
        let beta = &self.beta;
        // A: path headed by i, B: path headed by j,
        // C: path tailed by β(j), D: path tailed by β(i)
        let a_tail = self.tail_of[i0 as usize];
        let b_tail = self.tail_of[j0 as usize];
        let c_tail = beta[j0 as usize];
        let d_tail = beta[i0 as usize];
        let c_head = self.head_of[c_tail as usize];
        let d_head = self.head_of[d_tail as usize];
        let c_is_a = c_tail == a_tail;
        let c_is_b = c_tail == b_tail;
        let d_is_a = d_tail == a_tail;
        let d_is_b = d_tail == b_tail;

        let mut outcome = StepOutcome::default();
        let mut new_paths = [None, None];
        match (c_is_a, c_is_b, d_is_a, d_is_b) {
            (true, _, _, true) => outcome.simple_closures = 2,
            (true, _, _, false) => {
                outcome.simple_closures = 1;
                new_paths[0] = Some((b_tail, d_head));
            }
            (false, _, _, true) => {
                outcome.simple_closures = 1;
                new_paths[0] = Some((a_tail, c_head));
            }
            (false, true, true, false) => outcome.double_closure = true,
            (false, true, false, false) => new_paths[0] = Some((a_tail, d_head)),
            (false, false, true, false) => new_paths[0] = Some((b_tail, c_head)),
            (false, false, false, false) => {
                new_paths[0] = Some((a_tail, c_head));
                new_paths[1] = Some((b_tail, d_head));
            }
        }
        outcome.quasi_cycles_created = new_paths
            .iter()
            .flatten()
            .filter(|&&(tail, head)| tail == beta[head as usize])
            .count() as u32;
        Plan { outcome, new_paths }
    }

    /// Outcome of pairing heads `i` and `j` (1-based), without applying it.
    pub fn preview(&self, i: usize, j: usize) -> Result<StepOutcome> {
        self.check_heads(i, j)?;
        Ok(self.plan(i as u32 - 1, j as u32 - 1).outcome)
    }

    /// Pairs heads `i` and `j` (1-based).
    pub fn apply(&mut self, i: usize, j: usize) -> Result<StepOutcome> {
        self.check_heads(i, j)?;
        Ok(self.apply_unchecked(i as u32 - 1, j as u32 - 1))
    }

    fn apply_unchecked(&mut self, i0: u32, j0: u32) -> StepOutcome {
        let plan = self.plan(i0, j0);
        for &(tail, head) in plan.new_paths.iter().flatten() {
            self.tail_of[head as usize] = tail;
            self.head_of[tail as usize] = head;
        }
        if self.pos[i0 as usize] != UNPAIRED {
            self.remove_head(i0);
        }
        if self.pos[j0 as usize] != UNPAIRED {
            self.remove_head(j0);
        }
        self.alpha[i0 as usize] = j0;
        self.alpha[j0 as usize] = i0;
        let o = plan.outcome;
        self.totals.simple += u64::from(o.simple_closures);
        self.totals.double += u64::from(o.double_closure);
        self.totals.quasi += u64::from(o.quasi_cycles_created);
        self.totals.interesting += u64::from(o.is_interesting());
        o
    }

    fn remove_head(&mut self, label: u32) {
        let idx = self.pos[label as usize] as usize;
        let last = *self.pool.last().expect("pool is non-empty");
        self.pool.swap_remove(idx);
        if last != label {
            self.pos[last as usize] = idx as u32;
        }
        self.pos[label as usize] = UNPAIRED;
    }

    /// Runs one step with `rule` for `i` and a uniform `j`.
    pub fn random_step<R: Rng + ?Sized>(&mut self, rule: HeadRule, rng: &mut R) -> StepOutcome {
        let i0 = match rule {
            HeadRule::LowestLabel => {
                let i = self.lowest_head().expect("process not complete") - 1;
                i as u32
            }
            HeadRule::Uniform => {
                let r = rng.random_range(0..self.pool.len() as u32) as usize;
                self.pool[r]
            }
        };
        self.remove_head(i0);
        let r = rng.random_range(0..self.pool.len() as u32) as usize;
        let j0 = self.pool[r];
        self.remove_head(j0);
        self.apply_unchecked(i0, j0)
    }

    /// The matching built so far; only meaningful once complete.
    pub fn matching(&self) -> Result<Permutation> {
        if !self.is_complete() {
            return Err(Error::invalid("the glueing process has not finished"));
        }
        Ok(Permutation::from_zero_based_unchecked(self.alpha.clone()))
    }

    /// Finalizes a complete run, cross-checking the cycle count against a
    /// direct census of `αβ`.
    pub fn finish(self) -> Result<GlueTrace> {
        let matching = self.matching()?;
        let ab: Vec<u32> = self.alpha.iter().map(|&a| self.beta[a as usize]).collect();
        let direct = count_cycles(&ab, &mut vec![false; ab.len()]) as u64;
        let t = self.totals;
        let trace = GlueTrace {
            n: self.n(),
            k: self.k,
            simple_closures: t.simple,
            quasi_cycle_creations: t.quasi,
            double_closures: t.double,
            interesting_steps: t.interesting,
            final_cycles: t.simple + t.double,
            matching,
        };
        if trace.final_cycles != direct {
            return Err(Error::InternalInconsistency(format!(
                "process closed {} cycles but αβ has {direct}",
                trace.final_cycles
            )));
        }
        trace.check_invariants()?;
        Ok(trace)
    }
}

/// One full run against an arbitrary `β` of even size.
pub fn instrumented_glue_with<R: Rng + ?Sized>(
    beta: &Permutation,
    k: usize,
    rule: HeadRule,
    rng: &mut R,
) -> Result<GlueTrace> {
    let mut state = GlueState::new(beta, k)?;
    while !state.is_complete() {
        state.random_step(rule, rng);
    }
    state.finish()
}

/// One full run at `(n, k)` with the canonical `β` and the lowest-label rule.
pub fn instrumented_glue<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<GlueTrace> {
    validate_params(n, k)?;
    instrumented_glue_with(&make_beta(n, k)?, k, HeadRule::LowestLabel, rng)
}

/// `Σ_m min(1, 4/(n-2m-1))`: the mean of the independent-indicator model
/// that dominates the number of interesting steps.
pub fn interesting_step_bound(n: usize) -> f64 {
    (0..n / 2)
        .map(|m| (4.0 / (n - 2 * m - 1) as f64).min(1.0))
        .sum()
}

/// Result of walking every branch of the process with the lowest-label rule.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StepAudit {
    /// Number of (state, head) pairs examined.
    pub states: u64,
    /// Completed matchings reached (should be `(n-1)!!`).
    pub leaves: u64,
    /// Largest number of partners `j` making a single step interesting.
    pub max_interesting_choices: usize,
    /// Largest number of partners `j` creating at least one quasi-cycle.
    pub max_quasi_choices: usize,
    /// States where the simulated closing partners differ from
    /// `{β⁻¹(T(i)), H(β(i))} \ {i}`.
    pub closure_formula_mismatches: u64,
    /// Leaves whose closed-cycle total differs from the census of `αβ`.
    pub cycle_count_mismatches: u64,
}

/// Exhaustive audit of every branch (small `n` only).
pub fn exhaustive_step_audit(beta: &Permutation, k: usize) -> Result<StepAudit> {
    if beta.n() > 14 {
        return Err(Error::CapExceeded {
            what: format!("auditing every glueing branch of n = {}", beta.n()),
            required: crate::exact::double_factorial(beta.n() - 1).to_string(),
            cap: 14,
        });
    }
    let mut audit = StepAudit::default();
    audit_from(GlueState::new(beta, k)?, &mut audit)?;
    Ok(audit)
}

fn audit_from(mut state: GlueState, audit: &mut StepAudit) -> Result<()> {
    let Some(i) = state.lowest_head() else {
        audit.leaves += 1;
        if state.finish().is_err() {
            audit.cycle_count_mismatches += 1;
        }
        return Ok(());
    };
    audit.states += 1;
    let partners: Vec<usize> = state.heads().into_iter().filter(|&j| j != i).collect();
    let mut closing = Vec::new();
    let (mut interesting, mut quasi) = (0, 0);
    for &j in &partners {
        let o = state.preview(i, j)?;
        if o.simple_closures > 0 {
            closing.push(j);
        }
        interesting += usize::from(o.is_interesting());
        quasi += usize::from(o.quasi_cycles_created > 0);
    }
    if closing != state.closing_partners(i) {
        audit.closure_formula_mismatches += 1;
    }
    audit.max_interesting_choices = audit.max_interesting_choices.max(interesting);
    audit.max_quasi_choices = audit.max_quasi_choices.max(quasi);
    for j in partners {
        let mut next = state.clone();
        next.apply(i, j)?;
        audit_from(next, audit)?;
    }
    Ok(())
}

/// Aggregate of many independent runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GlueSummary {
    pub n: usize,
    pub k: usize,
    pub runs: u64,
    pub invariant_violations: u64,
    pub mean_interesting_steps: f64,
    pub se_interesting_steps: f64,
    pub interesting_step_bound: f64,
    pub mean_quasi_cycle_creations: f64,
    pub mean_final_cycles: f64,
}

/// Runs the process `runs` times from one seeded stream and checks every
/// trace; a failed check is counted, not propagated.
pub fn glue_summary<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    runs: u64,
    rule: HeadRule,
    rng: &mut R,
) -> Result<GlueSummary> {
    validate_params(n, k)?;
    let beta = make_beta(n, k)?;
    let mut violations = 0;
    let mut interesting = super::MomentAccumulator::new();
    let mut quasi = 0.0;
    let mut cycles = 0.0;
    for _ in 0..runs {
        match instrumented_glue_with(&beta, k, rule, rng) {
            Ok(trace) => {
                interesting.push(trace.interesting_steps as f64);
                quasi += trace.quasi_cycle_creations as f64;
                cycles += trace.final_cycles as f64;
            }
            Err(_) => violations += 1,
        }
    }
    let ok = interesting.count().max(1) as f64;
    Ok(GlueSummary {
        n,
        k,
        runs,
        invariant_violations: violations,
        mean_interesting_steps: interesting.mean(),
        se_interesting_steps: (interesting.sample_variance() / ok).sqrt(),
        interesting_step_bound: interesting_step_bound(n),
        mean_quasi_cycle_creations: quasi / ok,
        mean_final_cycles: cycles / ok,
    })
}
