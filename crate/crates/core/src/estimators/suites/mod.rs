mod checks;
mod exact;
mod intersection;
mod mtp;
mod range;
mod returns;
mod volume;

pub use checks::{size_bias_check, size_bias_report, uniformity_check, ChiSquareTest, Histograms};
pub use exact::{reroot_pushforward_tv, reversibility_exact, reversibility_report, MAX_EXACT_EDGES};
pub use intersection::intersection_profile;
pub use mtp::{degree_biased_root_degree, mtp_check, TransportFunction};
pub use range::{range_linearity, RangeParams};
pub use returns::{boundary_decay, per_vertex_returns, recurrence_profile};
pub use volume::{tightness_curve, volume_scaling};
