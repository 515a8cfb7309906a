//! Largest Lyapunov exponent along the weird quasiperiodic attractor and on
//! the fixed segment. Both are zero up to sampling error: the attractor is
//! not chaotic.

use pwl_market::analysis::lyapunov_max;
use pwl_market::{ModelParams, State};

fn main() -> pwl_market::Result<()> {
    let p = ModelParams::new(0.8, 2.5, 0.05)?;
    for (what, s0) in [("attractor", State::new(0.13, 0.0)), ("fixed segment", State::new(0.02, 0.02))] {
        for n in [10_000, 100_000, 1_000_000] {
            let est = lyapunov_max(s0, &p, n, 2000)?;
            println!("{what:<14} n = {n:>8}: {:+.3e}  visits {:?}", est.exponent, est.branch_visits);
        }
    }
    Ok(())
}
