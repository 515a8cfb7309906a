//! Simulation under fundamental shocks and regime-switching statistics.

pub mod regime;
pub mod rng;
pub mod sim;

pub use regime::{regime_labels, regime_stats, Regime, RegimeStats};
pub use rng::{normal_stream, NormalStream, SplitMix64};
pub use sim::{simulate_price_level, simulate_stochastic, MaConvention, ShockConfig, ShockRecord, ShockScale, StochasticRun};
