//! Basin of attraction on a grid of initial conditions, written as CSV and PPM.
//!
//! ```text
//! cargo run --release --example basin_grid -- [c] [n]
//! ```

use std::path::Path;

use pwl_market::analysis::{ClassifierConfig, LabelKind};
use pwl_market::grids::{basin_stats, compute_basin_grid, immediate_basin_violations, GridSpec2D};
use pwl_market::io::csv::{write_basin, write_points};
use pwl_market::io::image::{render_basin, Palette};
use pwl_market::ModelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let c: f64 = args.next().map_or(Ok(2.5), |s| s.parse())?;
    let n: usize = args.next().map_or(Ok(120), |s| s.parse())?;

    let p = ModelParams::new(0.8, c, 0.05)?;
    let grid = compute_basin_grid(&p, &GridSpec2D::square(0.25, n)?, &ClassifierConfig::default())?;
    let stats = basin_stats(&grid);
    for k in LabelKind::ALL {
        println!("{:<17} {:>7.3}%", k.name(), 100.0 * stats.fraction(k));
    }
    println!("immediate-basin cells not at a fixed point: {}", immediate_basin_violations(&grid).len());

    let out = Path::new("basin_out");
    std::fs::create_dir_all(out)?;
    write_basin(&out.join("basin.csv"), &grid)?;
    write_points(&out.join("attractor.csv"), &grid.overlay)?;
    render_basin(&grid, &Palette::default()).write_ppm(&out.join("basin.ppm"))?;
    println!("wrote {}", out.display());
    Ok(())
}
