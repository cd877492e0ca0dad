//! Edge-count reconstruction from a partial deck.
//!
//! The pipeline estimates `m` from the average card size, recovers some
//! degree counts exactly, extends them with certified intervals, and then
//! either reads `m` off the full spectrum or aligns the certified counts with
//! the estimated histogram to find the estimator's excess.

pub mod estimate;
pub mod extend;
pub mod known;
pub mod middle;
pub mod pipeline;
pub mod shift;

pub use estimate::{estimate_size, estimated_histogram, EstimatedDegreeHistogram, SizeEstimate};
pub use extend::{extend_known, step_left, Step};
pub use known::{
    dt_star, DegreeStatus, DtStarTable, KnownDegrees, KnownSummary, ParamOverrides, RecoveryParams, StarSide,
};
pub use middle::{in_s_set, nearest_pair, recover_exact_middle};
pub use pipeline::{
    reconstruct_profiles, reconstruct_size, reconstruct_size_with, Diagnostics, Outcome, ReconstructionReport, Route,
};
pub use shift::{certified_span, detect_shift, find_window, ShiftError, ShiftResult};
