//! Which region of the (b, c) plane a parameter pair falls in, and how F
//! approaches its fixed point there.

use pwl_market::analysis::region::{stability_conditions, DEFAULT_BOUNDARY_TOL};
use pwl_market::analysis::{classify_region, f_subregion};
use pwl_market::ModelParams;

fn main() -> pwl_market::Result<()> {
    let pairs = [(0.80, 1.35), (0.20, 2.30), (0.20, 0.30), (0.80, 0.25), (0.80, 3.61), (1.05, 1.35), (0.5, 1.0)];
    println!("{:>5} {:>5}  region  F  conditions [1+tr+det, 1-tr+det, 1-det]", "b", "c");
    for (b, c) in pairs {
        let p = ModelParams::new(b, c, 0.05)?;
        let cond = stability_conditions(&p);
        println!(
            "{b:>5} {c:>5}  {:<6}  {:<8} [{:+.3}, {:+.3}, {:+.3}]",
            classify_region(&p, DEFAULT_BOUNDARY_TOL).to_string(),
            f_subregion(&p).to_string(),
            cond[0], cond[1], cond[2]
        );
    }
    Ok(())
}
