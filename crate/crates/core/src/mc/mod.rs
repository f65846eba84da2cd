//! Monte Carlo engine: cycle-count sampling at large `n`, streaming moments,
//! tail frequencies and the instrumented glueing process.

pub mod accumulator;
pub mod glue;
pub mod run;

pub use accumulator::MomentAccumulator;
pub use glue::{
    exhaustive_step_audit, glue_summary, instrumented_glue, instrumented_glue_with,
    interesting_step_bound, GlueState, GlueSummary, GlueTrace, HeadRule, StepAudit, StepOutcome,
};
pub use run::{
    default_tail_thresholds, run_mc, sample_cycles, CycleSampler, McOutcome, MomentReport,
    RunConfig, SurfaceSummary, TailReport,
};
