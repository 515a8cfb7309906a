//! Outcome from one initial condition across the (b, c) plane, with the
//! label counts per region.
//!
//! ```text
//! cargo run --release --example bifurcation_diagram -- [n]
//! ```

use pwl_market::analysis::region::ParamRegion;
use pwl_market::analysis::{ClassifierConfig, LabelKind};
use pwl_market::grids::{bifurcation_stats, compute_bifurcation_grid, BifurcationSpec};
use pwl_market::io::image::{render_bifurcation, Palette};
use pwl_market::State;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(80), |s| s.parse())?;
    let spec = BifurcationSpec {
        b_min: 0.0, b_max: 1.1, c_min: 0.0, c_max: 4.4, nb: n, nc: n, h: 0.05,
        initial: State::new(0.06, 0.06),
    };
    let cfg = ClassifierConfig { t_max: 20_000, ..Default::default() };
    let grid = compute_bifurcation_grid(&spec, &cfg)?;
    let stats = bifurcation_stats(&grid);

    print!("{:<14}", "");
    for k in LabelKind::ALL {
        print!("{:>17}", k.name());
    }
    println!();
    for r in [ParamRegion::R1, ParamRegion::R2, ParamRegion::R3, ParamRegion::R4, ParamRegion::BoundaryCase] {
        print!("{:<14}", r.to_string());
        for k in LabelKind::ALL {
            print!("{:>17}", stats.region_count(r, k));
        }
        println!();
    }
    render_bifurcation(&grid, &Palette::default()).write_ppm(std::path::Path::new("bifurcation.ppm"))?;
    Ok(())
}
