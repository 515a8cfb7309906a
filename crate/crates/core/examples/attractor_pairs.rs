//! Two mirror-image attractors at c = 2.10 merge into one symmetric
//! attractor by c = 2.15 (b = 0.4).
//!
//! ```text
//! cargo run --release --example attractor_pairs
//! ```

use pwl_market::analysis::pairs::default_probes;
use pwl_market::analysis::{attractor_pair_check, ClassifierConfig};
use pwl_market::ModelParams;

fn main() -> pwl_market::Result<()> {
    let cfg = ClassifierConfig { t_max: 30_000, ..Default::default() };
    for c in [2.10, 2.15] {
        let p = ModelParams::new(0.4, c, 0.05)?;
        let r = attractor_pair_check(&p, &cfg, &default_probes(&p));
        println!(
            "c = {c}: {:?}, {} cluster(s) from {} probes, H = {:?}, tolerance {:?}",
            r.kind, r.clusters, r.wqa_probes, r.hausdorff, r.tolerance
        );
    }
    Ok(())
}
