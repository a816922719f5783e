//! Singleton/geminate classification: Gaussian MLC, PEP thresholds and
//! heuristic threshold sweeps over grouped measurement rows.

mod analysis;
mod gaussian;
mod threshold;

pub use analysis::{
    cue_values, cues_for, default_plan, run_group_analysis, run_plan, select, write_curve, write_reports,
    ClassifierReport, Cue, GenderSel, Grouping, Selection, REPORT_HEADER,
};
pub use gaussian::{
    classify_mlc_1d, classify_mlc_2d, fit_gaussian_1d, fit_gaussian_2d, pep_threshold, Gaussian1D, Gaussian2D, Label,
};
pub use threshold::{
    error_curve, heuristic_threshold, oriented_pep, resubstitution_error, resubstitution_error_2d, threshold_counts,
    Counts, Method, Outcome,
};
