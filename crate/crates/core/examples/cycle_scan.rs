//! Symbolic search for cycles up to period 10. Only the all-M words have a
//! unit eigenvalue, and their periodic points are the fixed segment.

use pwl_market::analysis::cycles::genuine_cycles;
use pwl_market::analysis::cycle_scan;
use pwl_market::ModelParams;

fn main() -> pwl_market::Result<()> {
    let p = ModelParams::new(0.8, 2.5, 0.05)?;
    let scan = cycle_scan(&p, 10, 1e-8);
    println!("{} necklaces scanned", scan.len());
    for c in scan.iter().filter(|c| c.unit_eigenvalue) {
        println!("{:<10} unit eigenvalue, admissible {}, fixed segment {}", c.sequence, c.admissible, c.fixed_segment);
    }
    let closest = scan
        .iter()
        .filter(|c| c.has_outer())
        .min_by(|a, b| {
            let d = |c: &&pwl_market::analysis::CycleCandidate| (c.eigen.sum() - c.eigen.product() - 1.0).abs();
            d(a).total_cmp(&d(b))
        });
    if let Some(c) = closest {
        println!("nearest miss with an outer branch: {} eigenvalues {:?}", c.sequence, c.eigen);
    }
    println!("genuine cycles: {}", genuine_cycles(&scan).count());
    Ok(())
}
