//! Shocked paths wander between the basin of the fixed segment and the
//! basin of the weird quasiperiodic attractor. Larger `c` enlarges the
//! latter and the path spends more time there.
//!
//! ```text
//! cargo run --release --example regime_switching -- [seed]
//! ```

use pwl_market::analysis::ClassifierConfig;
use pwl_market::grids::{compute_basin_grid, GridSpec2D};
use pwl_market::stochastic::{regime_labels, regime_stats, simulate_stochastic, Regime, ShockConfig};
use pwl_market::ModelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map_or(Ok(12), |s| s.parse())?;
    let cfg = ClassifierConfig { t_max: 20_000, ..Default::default() };
    for c in [0.45, 0.75, 1.10] {
        let p = ModelParams::new(0.8, c, 0.05)?;
        let basin = compute_basin_grid(&p, &GridSpec2D::square(0.25, 100)?, &cfg)?;
        let run = simulate_stochastic(&p, &ShockConfig { seed, ..Default::default() })?;
        let stats = regime_stats(&regime_labels(&run, &basin), 0);
        println!(
            "c = {c:.2}: fixed-point basin {:.3}, WQA basin {:.3}, switches {}, longest WQA spell {}",
            stats.occupancy_of(Regime::FixedPointBasin),
            stats.occupancy_of(Regime::WqaBasin),
            stats.switches,
            stats.max_sojourn[Regime::WqaBasin.index()],
        );
    }
    Ok(())
}
