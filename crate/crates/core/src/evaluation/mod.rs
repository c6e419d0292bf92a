//! Scoring match reports against ground truth.

mod accuracy;
mod render;
mod scaling;
mod truth;

pub use accuracy::{accuracy_at_k, column_outcomes, ColumnOutcome, EvalResult};
pub use render::{load_results, render_results, ResultFormat};
pub use scaling::{nested_sample, scaling_experiment, ScalingSetup};
pub use truth::{load_ground_truth, ColumnKey, GroundTruth, TruthEntry};
