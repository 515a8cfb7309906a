//! Basin-of-attraction grids over initial conditions and two-parameter
//! bifurcation grids over `(b, c)`.
//!
//! Every cell is classified independently; rows are distributed over the
//! current rayon pool and collected in index order, so the result does not
//! depend on the number of workers. Overlay sampling happens afterwards on
//! a single thread from a fixed seed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::basin::in_immediate_basin;
use crate::analysis::classify::{classify_trajectory, ClassLabel, ClassifierConfig, LabelKind};
use crate::analysis::region::{classify_region, ParamRegion, DEFAULT_BOUNDARY_TOL};
use crate::error::{Error, Result};
use crate::map::State;
use crate::params::ModelParams;
use crate::stochastic::rng::SplitMix64;

/// Maximum number of attractor points kept for the overlay of a grid.
pub const OVERLAY_CAP: usize = 2000;
/// Attractor points contributed by each bounded cell before reservoir sampling.
pub const OVERLAY_PER_CELL: usize = 16;
const OVERLAY_SEED: u64 = 0x5EED_0F_A77AC7;

/// Rectangular window split into `nx * ny` cells, sampled at cell centres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec2D {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

fn centre(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    lo + (i as f64 + 0.5) * (hi - lo) / n as f64
}

impl GridSpec2D {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = Self { x_min, x_max, y_min, y_max, nx, ny };
        g.validate()?;
        Ok(g)
    }

    /// `[-half, half]²` at `n x n`.
    pub fn square(half: f64, n: usize) -> Result<Self> {
        Self::new(-half, half, -half, half, n, n)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(Error::InvalidConfig("grid bounds must be finite with min < max".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidConfig("grid needs at least 2 cells per axis".into()));
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        centre(self.x_min, self.x_max, self.nx, i)
    }

    pub fn y(&self, j: usize) -> f64 {
        centre(self.y_min, self.y_max, self.ny, j)
    }

    pub fn point(&self, i: usize, j: usize) -> State {
        State::new(self.x(i), self.y(j))
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cell containing `s`, if inside the window.
    pub fn locate(&self, s: State) -> Option<(usize, usize)> {
        if !(s.x >= self.x_min && s.x <= self.x_max && s.y >= self.y_min && s.y <= self.y_max) {
            return None;
        }
        let fi = (s.x - self.x_min) / (self.x_max - self.x_min) * self.nx as f64;
        let fj = (s.y - self.y_min) / (self.y_max - self.y_min) * self.ny as f64;
        Some(((fi as usize).min(self.nx - 1), (fj as usize).min(self.ny - 1)))
    }

    /// Same cell layout with every bound multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self { x_min: self.x_min * k, x_max: self.x_max * k, y_min: self.y_min * k, y_max: self.y_max * k, ..*self }
    }
}

/// Classified initial conditions for one parameter set. Cells are row-major
/// with `j` (the `y` index) as the row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasinGrid {
    pub spec: GridSpec2D,
    pub params: ModelParams,
    pub cells: Vec<ClassLabel>,
    /// Mean of the attractor tail for bounded non-recurrent cells.
    pub centroids: Vec<Option<State>>,
    /// Sampled attractor points, at most [`OVERLAY_CAP`].
    pub overlay: Vec<State>,
}

impl BasinGrid {
    pub fn cell(&self, i: usize, j: usize) -> ClassLabel {
        self.cells[j * self.spec.nx + i]
    }

    /// Flags the cells attracted to the mirror image `-A` when two
    /// attractors coexist. The reference `A` is the attractor reached from
    /// the first such cell in index order; cells are split by whether their
    /// attractor centroid lies nearer `A`'s centroid or its reflection.
    /// Nothing is flagged when the reference centroid is within `0.05 h` of
    /// the origin.
    pub fn mirror_flags(&self) -> Vec<bool> {
        let reference = self.centroids.iter().flatten().next().copied();
        match reference {
            Some(m) if m.max_abs() > 0.05 * self.params.h => self
                .centroids
                .iter()
                .map(|c| c.is_some_and(|c| c.dist(&-m) < c.dist(&m)))
                .collect(),
            _ => vec![false; self.cells.len()],
        }
    }
}

struct CellOutcome {
    label: ClassLabel,
    centroid: Option<State>,
    overlay: Vec<State>,
}

fn classify_cell(s0: State, p: &ModelParams, cfg: &ClassifierConfig) -> CellOutcome {
    let c = classify_trajectory(s0, p, cfg);
    let tail = &c.diagnostics.attractor;
    if c.label != ClassLabel::Wqa || tail.is_empty() {
        return CellOutcome { label: c.label, centroid: None, overlay: Vec::new() };
    }
    let n = tail.len() as f64;
    let sum = tail.iter().fold(State::ORIGIN, |acc, s| State::new(acc.x + s.x, acc.y + s.y));
    let stride = (tail.len() / OVERLAY_PER_CELL).max(1);
    CellOutcome {
        label: c.label,
        centroid: Some(State::new(sum.x / n, sum.y / n)),
        overlay: tail.iter().step_by(stride).take(OVERLAY_PER_CELL).copied().collect(),
    }
}

/// Reservoir sample of at most `cap` points, deterministic for a given input order.
fn reservoir(points: impl Iterator<Item = State>, cap: usize, seed: u64) -> Vec<State> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(cap);
    for (seen, s) in points.enumerate() {
        if out.len() < cap {
            out.push(s);
        } else {
            let k = rng.below(seen as u64 + 1) as usize;
            if k < cap {
                out[k] = s;
            }
        }
    }
    out
}

pub fn compute_basin_grid(p: &ModelParams, g: &GridSpec2D, cfg: &ClassifierConfig) -> Result<BasinGrid> {
    p.validate()?;
    g.validate()?;
    cfg.validate(p.h)?;
    let rows: Vec<Vec<CellOutcome>> = (0..g.ny)
        .into_par_iter()
        .map(|j| (0..g.nx).map(|i| classify_cell(g.point(i, j), p, cfg)).collect())
        .collect();
    let outcomes: Vec<CellOutcome> = rows.into_iter().flatten().collect();
    let overlay = reservoir(outcomes.iter().flat_map(|o| o.overlay.iter().copied()), OVERLAY_CAP, OVERLAY_SEED);
    Ok(BasinGrid {
        spec: *g,
        params: *p,
        cells: outcomes.iter().map(|o| o.label).collect(),
        centroids: outcomes.iter().map(|o| o.centroid).collect(),
        overlay,
    })
}

/// Inputs of a two-parameter sweep. `b` varies along `i`, `c` along `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BifurcationSpec {
    pub b_min: f64,
    pub b_max: f64,
    pub c_min: f64,
    pub c_max: f64,
    pub nb: usize,
    pub nc: usize,
    pub h: f64,
    pub initial: State,
}

impl BifurcationSpec {
    pub fn validate(&self) -> Result<()> {
        let axis = GridSpec2D { x_min: self.b_min, x_max: self.b_max, y_min: self.c_min, y_max: self.c_max, nx: self.nb, ny: self.nc };
        axis.validate()?;
        if self.b_min < 0.0 || self.c_min < 0.0 {
            return Err(Error::InvalidConfig("b and c ranges must be nonnegative".into()));
        }
        ModelParams::new(1.0, 1.0, self.h)?;
        if !self.initial.is_finite() {
            return Err(Error::InvalidConfig("initial state must be finite".into()));
        }
        Ok(())
    }

    pub fn b(&self, i: usize) -> f64 {
        centre(self.b_min, self.b_max, self.nb, i)
    }

    pub fn c(&self, j: usize) -> f64 {
        centre(self.c_min, self.c_max, self.nc, j)
    }

    pub fn params(&self, i: usize, j: usize) -> Result<ModelParams> {
        ModelParams::new(self.b(i), self.c(j), self.h)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationGrid {
    pub spec: BifurcationSpec,
    /// Row-major with `j` (the `c` index) as the row.
    pub cells: Vec<ClassLabel>,
}

impl BifurcationGrid {
    pub fn cell(&self, i: usize, j: usize) -> ClassLabel {
        self.cells[j * self.spec.nb + i]
    }

    pub fn region(&self, i: usize, j: usize) -> ParamRegion {
        match self.spec.params(i, j) {
            Ok(p) => classify_region(&p, DEFAULT_BOUNDARY_TOL),
            Err(_) => ParamRegion::BoundaryCase,
        }
    }
}

pub fn compute_bifurcation_grid(spec: &BifurcationSpec, cfg: &ClassifierConfig) -> Result<BifurcationGrid> {
    spec.validate()?;
    cfg.validate(spec.h)?;
    let rows: Vec<Vec<ClassLabel>> = (0..spec.nc)
        .into_par_iter()
        .map(|j| {
            (0..spec.nb)
                .map(|i| match spec.params(i, j) {
                    Ok(p) => classify_trajectory(spec.initial, &p, cfg).label,
                    Err(_) => ClassLabel::Undecided,
                })
                .collect()
        })
        .collect();
    Ok(BifurcationGrid { spec: *spec, cells: rows.into_iter().flatten().collect() })
}

/// Label counts and fractions of a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridStats {
    pub total: usize,
    /// Indexed by [`LabelKind::index`].
    pub counts: [usize; 6],
    pub fractions: [f64; 6],
    /// Bifurcation grids only: label counts per region, regions in the order R1..R4, BoundaryCase.
    pub by_region: Option<[[usize; 6]; 5]>,
}

impl GridStats {
    pub fn count(&self, kind: LabelKind) -> usize {
        self.counts[kind.index()]
    }

    pub fn fraction(&self, kind: LabelKind) -> f64 {
        self.fractions[kind.index()]
    }

    /// Both fixed-point variants together.
    pub fn fixed_point_fraction(&self) -> f64 {
        self.fraction(LabelKind::FundamentalFp) + self.fraction(LabelKind::NonfundamentalFp)
    }

    pub fn region_count(&self, region: ParamRegion, kind: LabelKind) -> usize {
        self.by_region.map_or(0, |t| t[region_index(region)][kind.index()])
    }

    fn from_labels<'a>(labels: impl Iterator<Item = &'a ClassLabel>) -> Self {
        let mut counts = [0usize; 6];
        for l in labels {
            counts[l.kind().index()] += 1;
        }
        let total: usize = counts.iter().sum();
        let fractions = counts.map(|c| if total == 0 { 0.0 } else { c as f64 / total as f64 });
        Self { total, counts, fractions, by_region: None }
    }
}

pub fn region_index(region: ParamRegion) -> usize {
    match region {
        ParamRegion::R1 => 0,
        ParamRegion::R2 => 1,
        ParamRegion::R3 => 2,
        ParamRegion::R4 => 3,
        ParamRegion::BoundaryCase => 4,
    }
}

pub fn basin_stats(grid: &BasinGrid) -> GridStats {
    GridStats::from_labels(grid.cells.iter())
}

pub fn bifurcation_stats(grid: &BifurcationGrid) -> GridStats {
    let mut stats = GridStats::from_labels(grid.cells.iter());
    let mut table = [[0usize; 6]; 5];
    for j in 0..grid.spec.nc {
        for i in 0..grid.spec.nb {
            table[region_index(grid.region(i, j))][grid.cell(i, j).kind().index()] += 1;
        }
    }
    stats.by_region = Some(table);
    stats
}

/// Cells whose centre lies in the immediate basin but whose label is not a fixed point.
pub fn immediate_basin_violations(grid: &BasinGrid) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for j in 0..grid.spec.ny {
        for i in 0..grid.spec.nx {
            if in_immediate_basin(grid.spec.point(i, j), &grid.params) && !grid.cell(i, j).is_fixed_point() {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
