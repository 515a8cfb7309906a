//! Parameter regions, basin geometry and orbit classification.

pub mod basin;
pub mod classify;
pub mod cycles;
pub mod lyapunov;
pub mod pairs;
pub mod region;

pub use basin::{
    a_double_prime, fundamental_line_check, immediate_basin, in_immediate_basin, preimage_triangles,
    Parallelogram, Side, Triangle,
};
pub use classify::{classify_trajectory, ClassLabel, Classification, ClassifierConfig, Diagnostics, LabelKind};
pub use cycles::{cycle_scan, CycleCandidate};
pub use lyapunov::{lyapunov_max, LyapunovEstimate};
pub use pairs::{attractor_pair_check, PairKind, PairReport};
pub use region::{classify_region, f_subregion, FSubregion, ParamRegion};
