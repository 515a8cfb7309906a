//! Labelling a shocked path by the deterministic basin it currently sits in.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::basin::in_immediate_basin;
use crate::analysis::classify::ClassLabel;
use crate::grids::BasinGrid;
use crate::map::State;
use crate::stochastic::sim::StochasticRun;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    FixedPointBasin,
    WqaBasin,
    DivergentBasin,
    Outside,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::FixedPointBasin, Regime::WqaBasin, Regime::DivergentBasin, Regime::Outside];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::FixedPointBasin => "fixed-point-basin",
            Regime::WqaBasin => "wqa-basin",
            Regime::DivergentBasin => "divergent-basin",
            Regime::Outside => "outside",
        }
    }

    fn of_label(label: ClassLabel) -> Regime {
        match label {
            ClassLabel::FundamentalFp(_) | ClassLabel::NonfundamentalFp(_) => Regime::FixedPointBasin,
            ClassLabel::Wqa => Regime::WqaBasin,
            ClassLabel::Divergent => Regime::DivergentBasin,
            ClassLabel::Undecided | ClassLabel::PeriodicAnomaly(_) => Regime::Outside,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Regime of one state: immediate-basin membership first, then the grid cell
/// containing the state.
pub fn regime_of(s: State, basin: &BasinGrid) -> Regime {
    if in_immediate_basin(s, &basin.params) {
        return Regime::FixedPointBasin;
    }
    match basin.spec.locate(s) {
        Some((i, j)) => Regime::of_label(basin.cell(i, j)),
        None => Regime::Outside,
    }
}

/// One label per record of `run`.
pub fn regime_labels(run: &StochasticRun, basin: &BasinGrid) -> Vec<Regime> {
    run.states().map(|s| regime_of(s, basin)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeStats {
    /// Number of labels counted (after the transient).
    pub steps: usize,
    /// Indexed by [`Regime::index`].
    pub occupancy: [f64; 4],
    pub switches: usize,
    pub mean_sojourn: [f64; 4],
    pub max_sojourn: [usize; 4],
}

impl RegimeStats {
    pub fn occupancy_of(&self, r: Regime) -> f64 {
        self.occupancy[r.index()]
    }
}

/// Occupancy, switch count and sojourn lengths of `labels[transient..]`.
/// Sojourns cut by either end of the window are included.
pub fn regime_stats(labels: &[Regime], transient: usize) -> RegimeStats {
    let window = labels.get(transient..).unwrap_or(&[]);
    let mut counts = [0usize; 4];
    let mut spells = [0usize; 4];
    let mut max_sojourn = [0usize; 4];
    let mut switches = 0;
    let mut run_len = 0;
    for (k, &r) in window.iter().enumerate() {
        counts[r.index()] += 1;
        if k > 0 && window[k - 1] != r {
            switches += 1;
            let prev = window[k - 1].index();
            spells[prev] += 1;
            max_sojourn[prev] = max_sojourn[prev].max(run_len);
            run_len = 0;
        }
        run_len += 1;
    }
    if let Some(&last) = window.last() {
        spells[last.index()] += 1;
        max_sojourn[last.index()] = max_sojourn[last.index()].max(run_len);
    }
    let n = window.len();
    RegimeStats {
        steps: n,
        occupancy: counts.map(|c| if n == 0 { 0.0 } else { c as f64 / n as f64 }),
        switches,
        mean_sojourn: std::array::from_fn(|i| if spells[i] == 0 { 0.0 } else { counts[i] as f64 / spells[i] as f64 }),
        max_sojourn,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Regime::*;

    #[test]
    fn single_regime() {
        let s = regime_stats(&[WqaBasin; 50], 0);
        assert_eq!(s.switches, 0);
        assert_eq!(s.occupancy_of(WqaBasin), 1.0);
        assert_eq!(s.max_sojourn[WqaBasin.index()], 50);
        assert_eq!(s.mean_sojourn[WqaBasin.index()], 50.0);
    }

    #[test]
    fn switches_and_sojourns() {
        let l = [Outside, FixedPointBasin, FixedPointBasin, WqaBasin, WqaBasin, WqaBasin, FixedPointBasin];
        let s = regime_stats(&l, 1);
        assert_eq!(s.steps, 6);
        assert_eq!(s.switches, 2);
        assert_eq!(s.occupancy_of(Outside), 0.0);
        assert_eq!(s.max_sojourn[WqaBasin.index()], 3);
        assert_eq!(s.mean_sojourn[FixedPointBasin.index()], 1.5);
        assert!((s.occupancy.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(regime_stats(&l, 10).steps, 0);
    }
}
