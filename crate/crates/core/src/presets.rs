//! Figure presets and the jobs that write their outputs.
//!
//! Each job writes CSV first and renders its raster from the same data.

use std::path::Path;

use serde_json::{json, Value};

use crate::analysis::basin::{immediate_basin, preimage_triangles};
use crate::analysis::classify::{ClassifierConfig, LabelKind};
use crate::analysis::cycles::cycle_scan;
use crate::analysis::pairs::{attractor_pair_check, default_probes};
use crate::analysis::region::{classify_region, f_subregion, DEFAULT_BOUNDARY_TOL};
use crate::error::Error;
use crate::grids::{
    basin_stats, bifurcation_stats, compute_basin_grid, compute_bifurcation_grid, BifurcationSpec, GridSpec2D,
    GridStats,
};
use crate::io::csv as tables;
use crate::io::image::{render_basin, render_bifurcation, render_orbit, Palette};
use crate::io::IoError;
use crate::map::{iterate, MapKind, State};
use crate::params::ModelParams;
use crate::stochastic::{regime_labels, regime_stats, simulate_stochastic, Regime, ShockConfig, ShockScale};

pub const PRESET_NAMES: [&str; 14] = [
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "figA1", "figA2",
    "figB1",
];

/// Recorded in `resolved.json` for `fig5`.
pub const FIG5_NOTE: &str =
    "fig5 uses c = 2.50 for both orbits; c = 1.35 is the other value in circulation for this set";

#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error(transparent)]
    Io(#[from] IoError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Trajectory { kind: MapKind, params: ModelParams, initial: State, steps: usize },
    Basin { params: ModelParams, grid: GridSpec2D },
    Bifurcation { spec: BifurcationSpec },
    Cycles { params: ModelParams, k_max: usize, tol: f64 },
    Stochastic { params: ModelParams, shock: ShockConfig, grid: GridSpec2D, transient: usize },
    /// Basin grid plus the mirror-attractor report.
    Pairs { params: ModelParams, grid: GridSpec2D },
    /// Vertices of the immediate basin and its two preimage triangles.
    Geometry { params: ModelParams },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: String,
    pub job: Job,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub note: Option<&'static str>,
    pub panels: Vec<Panel>,
}

/// Settings shared by all jobs of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct JobOptions {
    pub classifier: ClassifierConfig,
    pub palette: Palette,
}

impl Default for JobOptions {
    fn default() -> Self {
        Self { classifier: ClassifierConfig::default(), palette: Palette::default() }
    }
}

/// What a job reports besides its files.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSummary {
    pub value: Value,
    /// Undecided share of a grid, 0 for other jobs.
    pub undecided_fraction: f64,
}

fn mp(b: f64, c: f64, h: f64) -> ModelParams {
    ModelParams::new(b, c, h).expect("preset parameters are valid")
}

fn window(h: f64, half_in_h: f64, n: usize) -> GridSpec2D {
    GridSpec2D::square(half_in_h * h, n).expect("preset window is valid")
}

fn panel(name: impl Into<String>, job: Job) -> Panel {
    Panel { name: name.into(), job }
}

fn traj(kind: MapKind, b: f64, c: f64, x0: f64, y0: f64, steps: usize) -> Job {
    Job::Trajectory { kind, params: mp(b, c, 0.05), initial: State::new(x0, y0), steps }
}

fn basin(b: f64, c: f64, h: f64) -> Job {
    Job::Basin { params: mp(b, c, h), grid: window(h, 5.0, 250) }
}

fn tag(v: f64) -> String {
    format!("{v:.2}").replace('.', "_")
}

/// Panels for `name`, or `None` for an unknown preset.
pub fn preset(name: &str) -> Option<Preset> {
    let bifurcation = |x0: f64, y0: f64| Job::Bifurcation {
        spec: BifurcationSpec {
            b_min: 0.0,
            b_max: 1.1,
            c_min: 0.0,
            c_max: 4.4,
            nb: 250,
            nc: 250,
            h: 0.05,
            initial: State::new(x0, y0),
        },
    };
    let fig8_c = [0.25, 1.00, 1.70, 2.05, 2.50, 3.61];
    let fig10_b = [0.30, 0.40, 0.50, 0.60, 0.80, 1.05];
    let (note, panels) = match name {
        "fig2" => (None, vec![
            panel("top", traj(MapKind::F, 0.80, 1.35, 0.15, 0.00, 60)),
            panel("middle", traj(MapKind::F, 0.20, 2.30, 0.08, -0.09, 60)),
            panel("bottom", traj(MapKind::F, 0.20, 0.30, 0.15, 0.19, 60)),
        ]),
        "fig3" => (None, vec![
            panel("top", traj(MapKind::C, 0.80, 1.35, -0.13, -0.17, 200)),
            panel("bottom", traj(MapKind::C, 0.80, 1.35, -0.10, -0.17, 200)),
        ]),
        "fig4" => (None, vec![panel("basin", basin(0.80, 2.50, 0.05))]),
        "fig5" => (Some(FIG5_NOTE), vec![
            panel("top", traj(MapKind::M, 0.80, 2.50, -0.12, -0.16, 300)),
            panel("bottom", traj(MapKind::M, 0.80, 2.50, 0.13, 0.00, 300)),
        ]),
        "fig6" => (None, vec![panel("left", bifurcation(0.06, 0.06)), panel("right", bifurcation(0.04, 0.00))]),
        "fig7" => (None, vec![
            panel("top", basin(0.80, 1.00, 0.10)),
            panel("middle", basin(0.80, 1.00, 0.05)),
            panel("bottom", basin(0.60, 1.00, 0.05)),
        ]),
        "fig8" => (None, fig8_c.iter().map(|&c| panel(format!("c{}", tag(c)), basin(0.80, c, 0.05))).collect()),
        "fig9" => (None, fig8_c.iter().map(|&c| panel(format!("c{}", tag(c)), traj(MapKind::M, 0.80, c, 0.13, 0.0, 500))).collect()),
        "fig10" => (None, fig10_b.iter().map(|&b| panel(format!("b{}", tag(b)), basin(b, 1.35, 0.05))).collect()),
        "fig11" => (None, fig10_b.iter().map(|&b| panel(format!("b{}", tag(b)), traj(MapKind::M, b, 1.35, 0.13, 0.0, 500))).collect()),
        "fig12" => (None, [0.45, 0.75, 1.10].iter().map(|&c| panel(format!("c{}", tag(c)), fig12_job(c))).collect()),
        "figA1" => (None, vec![
            panel("basin", Job::Basin { params: mp(0.40, 2.85, 0.05), grid: window(0.05, 20.0, 250) }),
            panel("geometry", Job::Geometry { params: mp(0.40, 2.85, 0.05) }),
        ]),
        "figA2" => (None, [0.6, 1.2, 1.6].iter().map(|&c| panel(format!("c{}", tag(c)), basin(0.40, c, 0.05))).collect()),
        "figB1" => (None, [2.10, 2.15].iter().map(|&c| panel(format!("c{}", tag(c)), Job::Pairs { params: mp(0.40, c, 0.05), grid: window(0.05, 5.0, 250) })).collect()),
        _ => return None,
    };
    let name = PRESET_NAMES.iter().copied().find(|n| *n == name)?;
    Some(Preset { name, note, panels })
}

/// One stochastic panel of the regime-switching figure.
pub fn fig12_job(c: f64) -> Job {
    Job::Stochastic {
        params: mp(0.80, c, 0.05),
        shock: ShockConfig { scale: ShockScale::Deviation(0.005), ..ShockConfig::default() },
        grid: window(0.05, 5.0, 250),
        transient: 0,
    }
}

fn stats_json(s: &GridStats) -> Value {
    let counts: serde_json::Map<String, Value> =
        LabelKind::ALL.iter().map(|k| (k.name().to_string(), json!(s.count(*k)))).collect();
    let fractions: serde_json::Map<String, Value> =
        LabelKind::ALL.iter().map(|k| (k.name().to_string(), json!(s.fraction(*k)))).collect();
    json!({ "total": s.total, "counts": counts, "fractions": fractions })
}

/// Orbit window: bounding box of the finite states, padded, at least `±2h`.
fn orbit_window(states: &[State], h: f64) -> GridSpec2D {
    let (mut lo, mut hi) = (-2.0 * h, 2.0 * h);
    for s in states.iter().filter(|s| s.is_finite()) {
        lo = lo.min(s.x.min(s.y));
        hi = hi.max(s.x.max(s.y));
    }
    let pad = 0.05 * (hi - lo);
    GridSpec2D::new(lo - pad, hi + pad, lo - pad, hi + pad, 250, 250).expect("padded window is valid")
}

impl Job {
    /// Writes this job's files as `<dir>/<stem>.*`.
    pub fn run(&self, opts: &JobOptions, dir: &Path, stem: &str) -> Result<JobSummary, JobError> {
        let file = |suffix: &str| dir.join(format!("{stem}{suffix}"));
        let pal = &opts.palette;
        let mut undecided_fraction = 0.0;
        let value = match self {
            Job::Trajectory { kind, params, initial, steps } => {
                let t = iterate(*kind, *initial, *steps, params);
                tables::write_trajectory(&file(".csv"), &t)?;
                let colour = if *kind == MapKind::M { pal.wqa_overlay } else { pal.fixed_point_overlay };
                render_orbit(&orbit_window(&t.states, params.h), params.h, &t.states, colour, pal).write_ppm(&file(".ppm"))?;
                let last = t.last();
                json!({ "kind": format!("{kind:?}"), "b": params.b, "c": params.c, "h": params.h,
                        "x0": initial.x, "y0": initial.y, "steps": t.len() - 1,
                        "final_x": last.x, "final_y": last.y, "diverged": t.diverged })
            }
            Job::Basin { params, grid } => {
                let g = compute_basin_grid(params, grid, &opts.classifier)?;
                tables::write_basin(&file(".csv"), &g)?;
                tables::write_points(&file("_attractor.csv"), &g.overlay)?;
                render_basin(&g, pal).write_ppm(&file(".ppm"))?;
                let s = basin_stats(&g);
                undecided_fraction = s.fraction(LabelKind::Undecided);
                json!({ "b": params.b, "c": params.c, "h": params.h,
                        "region": classify_region(params, DEFAULT_BOUNDARY_TOL).to_string(), "stats": stats_json(&s) })
            }
            Job::Bifurcation { spec } => {
                let g = compute_bifurcation_grid(spec, &opts.classifier)?;
                tables::write_bifurcation(&file(".csv"), &g)?;
                render_bifurcation(&g, pal).write_ppm(&file(".ppm"))?;
                let s = bifurcation_stats(&g);
                undecided_fraction = s.fraction(LabelKind::Undecided);
                json!({ "x0": spec.initial.x, "y0": spec.initial.y, "h": spec.h, "stats": stats_json(&s) })
            }
            Job::Cycles { params, k_max, tol } => {
                let found = cycle_scan(params, *k_max, *tol);
                tables::write_cycles(&file(".csv"), &found)?;
                let genuine = found.iter().filter(|c| c.admissible && c.has_outer()).count();
                json!({ "b": params.b, "c": params.c, "h": params.h, "k_max": k_max, "candidates": found.len(),
                        "unit_eigenvalue": found.iter().filter(|c| c.unit_eigenvalue).count(),
                        "admissible_with_outer_branch": genuine })
            }
            Job::Stochastic { params, shock, grid, transient } => {
                let g = compute_basin_grid(params, grid, &opts.classifier)?;
                tables::write_basin(&file("_basin.csv"), &g)?;
                tables::write_points(&file("_basin_attractor.csv"), &g.overlay)?;
                render_basin(&g, pal).write_ppm(&file("_basin.ppm"))?;
                let run = simulate_stochastic(params, shock)?;
                let labels = regime_labels(&run, &g);
                tables::write_stochastic(&file(".csv"), &run, Some(&labels))?;
                let path: Vec<State> = run.states().collect();
                render_orbit(grid, params.h, &path, pal.wqa_overlay, pal).write_ppm(&file("_path.ppm"))?;
                let st = regime_stats(&labels, *transient);
                let occupancy: serde_json::Map<String, Value> =
                    Regime::ALL.iter().map(|r| (r.name().to_string(), json!(st.occupancy_of(*r)))).collect();
                let mean: serde_json::Map<String, Value> =
                    Regime::ALL.iter().map(|r| (r.name().to_string(), json!(st.mean_sojourn[r.index()]))).collect();
                let max: serde_json::Map<String, Value> =
                    Regime::ALL.iter().map(|r| (r.name().to_string(), json!(st.max_sojourn[r.index()]))).collect();
                json!({ "b": params.b, "c": params.c, "h": params.h, "seed": shock.seed, "steps": st.steps,
                        "sigma_d": run.sigma_d, "sigma_delta": run.sigma_delta, "diverged": run.diverged,
                        "switches": st.switches, "occupancy": occupancy, "mean_sojourn": mean, "max_sojourn": max })
            }
            Job::Pairs { params, grid } => {
                let g = compute_basin_grid(params, grid, &opts.classifier)?;
                tables::write_basin(&file(".csv"), &g)?;
                tables::write_points(&file("_attractor.csv"), &g.overlay)?;
                render_basin(&g, pal).write_ppm(&file(".ppm"))?;
                let s = basin_stats(&g);
                undecided_fraction = s.fraction(LabelKind::Undecided);
                let report = attractor_pair_check(params, &opts.classifier, &default_probes(params));
                json!({ "b": params.b, "c": params.c, "h": params.h, "stats": stats_json(&s),
                        "pairs": serde_json::to_value(&report).unwrap_or(Value::Null) })
            }
            Job::Geometry { params } => {
                let basin = immediate_basin(params)?;
                let (left, right) = preimage_triangles(params)?;
                let mut shapes: Vec<(&str, Vec<State>)> = vec![("immediate_basin", basin.vertices.to_vec())];
                shapes.push(("left_triangle", left.vertices.to_vec()));
                shapes.push(("right_triangle", right.vertices.to_vec()));
                write_shapes(&file(".csv"), &shapes)?;
                json!({ "b": params.b, "c": params.c, "h": params.h,
                        "subregion": f_subregion(params).to_string(), "basin_area": basin.area() })
            }
        };
        Ok(JobSummary { value, undecided_fraction })
    }
}

/// `shape,vertex,x,y`.
fn write_shapes(path: &Path, shapes: &[(&str, Vec<State>)]) -> Result<(), IoError> {
    let csv_err = |e| IoError::Csv { path: path.display().to_string(), source: e };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["shape", "vertex", "x", "y"]).map_err(csv_err)?;
    for (name, vs) in shapes {
        for (k, v) in vs.iter().enumerate() {
            w.write_record([name.to_string(), k.to_string(), format!("{}", v.x), format!("{}", v.y)]).map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| IoError::at(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_resolves() {
        for name in PRESET_NAMES {
            let p = preset(name).unwrap_or_else(|| panic!("{name}"));
            assert!(!p.panels.is_empty());
        }
        assert!(preset("fig13").is_none());
        assert_eq!(preset("fig5").unwrap().note, Some(FIG5_NOTE));
    }

    #[test]
    fn fig3_final_states() {
        let dir = tempfile::tempdir().unwrap();
        let p = preset("fig3").unwrap();
        let expected = [0.03, 0.18];
        for (panel, u) in p.panels.iter().zip(expected) {
            let s = panel.job.run(&JobOptions::default(), dir.path(), &panel.name).unwrap();
            assert!((s.value["final_x"].as_f64().unwrap() - u).abs() < 1e-9);
            assert!((s.value["final_y"].as_f64().unwrap() - u).abs() < 1e-9);
        }
    }
}
