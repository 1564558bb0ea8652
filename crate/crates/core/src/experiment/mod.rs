//! Cross-validated hyperparameter sweeps: Latin hypercube sampling over the
//! parameter ranges, training and scoring on every fold and supervision
//! level, and aggregation into best-per-fold summaries.

mod lhs;
mod report;
mod sweep;

pub use lhs::{latin_hypercube, lhs_sample, table_ranges, LhsDesign, ParamRange, Scale};
pub use report::{curve_csv, emit_curve, emit_curve_svg, emit_results, fmt_sig6, results_csv};
pub use sweep::{
    best_per_fold, mean_std, replay_run, run_sweep, supervision_curve, CurvePoint, FoldBest,
    Replay, RunResult, SweepConfig, SUPERVISION_LEVELS,
};
