//! Symmetric attractors.
//!
//! `M(-x, -y) = -M(x, y)`, so a weird quasiperiodic attractor `A` is either
//! symmetric itself or coexists with its mirror image `-A`. Probes (and
//! their reflections) are classified, the post-transient samples of the
//! bounded non-recurrent ones are clustered by Hausdorff distance, and the
//! clusters are compared with their reflections.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::basin::a_double_prime;
use crate::analysis::classify::{classify_trajectory, ClassLabel, ClassifierConfig};
use crate::map::{step_m, State};
use crate::params::ModelParams;

/// Orbit points collected per attractor sample.
pub const SAMPLE_LEN: usize = 20_000;
/// Clustering tolerance as a fraction of the attractor diameter.
pub const HAUSDORFF_FRACTION: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairKind {
    /// One attractor, symmetric with respect to the origin.
    SymmetricSingle,
    /// Two attractors, mirror images of each other.
    CoexistingPair,
    /// No probe reached a weird quasiperiodic attractor.
    None,
    /// Clusters that do not match any of the symmetric configurations.
    Unpaired,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub kind: PairKind,
    /// `H(A, -A)` for a single attractor, `H(A', -A)` for a pair.
    pub hausdorff: Option<f64>,
    pub tolerance: Option<f64>,
    pub clusters: usize,
    pub wqa_probes: usize,
    /// One representative sample per cluster.
    #[serde(skip)]
    pub samples: Vec<Vec<State>>,
}

/// `A''` and an 8x8 grid over `[-4h, 4h]²`.
pub fn default_probes(p: &ModelParams) -> Vec<State> {
    let mut probes = vec![a_double_prime(p)];
    let span = 4.0 * p.h;
    for i in 0..8 {
        for j in 0..8 {
            let x = -span + 2.0 * span * (i as f64 + 0.5) / 8.0;
            let y = -span + 2.0 * span * (j as f64 + 0.5) / 8.0;
            probes.push(State::new(x, y));
        }
    }
    probes
}

/// Uniform bucket grid for nearest-neighbour queries.
struct PointIndex<'a> {
    points: &'a [State],
    origin: State,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
}

impl<'a> PointIndex<'a> {
    fn new(points: &'a [State]) -> Self {
        let (mut lo, mut hi) = (State::new(f64::INFINITY, f64::INFINITY), State::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for s in points {
            lo = State::new(lo.x.min(s.x), lo.y.min(s.y));
            hi = State::new(hi.x.max(s.x), hi.y.max(s.y));
        }
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-300);
        let side = ((points.len() as f64).sqrt().ceil() as usize).clamp(1, 512);
        let cell = extent / side as f64;
        let nx = (((hi.x - lo.x) / cell) as usize + 1).max(1);
        let ny = (((hi.y - lo.y) / cell) as usize + 1).max(1);
        let mut buckets = vec![Vec::new(); nx * ny];
        let mut index = Self { points, origin: lo, cell, nx, ny, buckets: Vec::new() };
        for (k, s) in points.iter().enumerate() {
            let (i, j) = index.bucket_of(*s);
            buckets[j * nx + i].push(k as u32);
        }
        index.buckets = buckets;
        index
    }

    fn bucket_of(&self, s: State) -> (usize, usize) {
        let clamp = |v: f64, n: usize| (v.max(0.0) as usize).min(n - 1);
        (clamp((s.x - self.origin.x) / self.cell, self.nx), clamp((s.y - self.origin.y) / self.cell, self.ny))
    }

    fn nearest(&self, q: State) -> f64 {
        let (ci, cj) = self.bucket_of(q);
        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.ny);
        for ring in 0..=max_ring {
            // every point in rings beyond `ring` is at least (ring - 1) cells away
            if ring > 0 && (ring as f64 - 1.0) * self.cell > best {
                break;
            }
            let (i0, i1) = (ci as isize - ring as isize, ci as isize + ring as isize);
            let (j0, j1) = (cj as isize - ring as isize, cj as isize + ring as isize);
            for j in j0..=j1 {
                for i in i0..=i1 {
                    let on_ring = i == i0 || i == i1 || j == j0 || j == j1;
                    if !on_ring || i < 0 || j < 0 || i >= self.nx as isize || j >= self.ny as isize {
                        continue;
                    }
                    for &k in &self.buckets[j as usize * self.nx + i as usize] {
                        best = best.min(q.dist(&self.points[k as usize]));
                    }
                }
            }
        }
        best
    }
}

/// Directed Hausdorff distance `sup_{a ∈ A} inf_{b ∈ B} |a - b|`.
pub fn directed_hausdorff(a: &[State], b: &[State]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return f64::INFINITY;
    }
    let index = PointIndex::new(b);
    a.iter().map(|&q| index.nearest(q)).fold(0.0, f64::max)
}

pub fn hausdorff(a: &[State], b: &[State]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

pub fn diameter_bound(points: &[State]) -> f64 {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for s in points {
        lo = [lo[0].min(s.x), lo[1].min(s.y)];
        hi = [hi[0].max(s.x), hi[1].max(s.y)];
    }
    (hi[0] - lo[0]).hypot(hi[1] - lo[1])
}

fn reflect(points: &[State]) -> Vec<State> {
    points.iter().map(|&s| -s).collect()
}

/// Continues a bounded orbit from its last tail point to `SAMPLE_LEN` points.
fn extend_sample(tail: &[State], p: &ModelParams) -> Vec<State> {
    let mut out = tail.to_vec();
    let mut s = *tail.last().expect("non-empty attractor tail");
    while out.len() < SAMPLE_LEN {
        s = step_m(s, p);
        out.push(s);
    }
    out
}

pub fn attractor_pair_check(p: &ModelParams, cfg: &ClassifierConfig, probes: &[State]) -> PairReport {
    let all: Vec<State> = probes.iter().flat_map(|&s| [s, -s]).collect();
    let samples: Vec<Vec<State>> = all
        .par_iter()
        .filter_map(|&s0| {
            let c = classify_trajectory(s0, p, cfg);
            (c.label == ClassLabel::Wqa).then(|| extend_sample(&c.diagnostics.attractor, p))
        })
        .collect();
    let wqa_probes = samples.len();
    if samples.is_empty() {
        return PairReport { kind: PairKind::None, hausdorff: None, tolerance: None, clusters: 0, wqa_probes, samples };
    }
    let diameter = samples.iter().map(|s| diameter_bound(s)).fold(0.0, f64::max);
    let tol = HAUSDORFF_FRACTION * diameter;

    let mut reps: Vec<Vec<State>> = Vec::new();
    for sample in samples {
        if !reps.iter().any(|r| hausdorff(r, &sample) < tol) {
            reps.push(sample);
        }
    }
    let (kind, distance) = match reps.len() {
        1 => {
            let d = hausdorff(&reps[0], &reflect(&reps[0]));
            (if d < tol { PairKind::SymmetricSingle } else { PairKind::Unpaired }, d)
        }
        2 => {
            let d = hausdorff(&reps[1], &reflect(&reps[0]));
            (if d < tol { PairKind::CoexistingPair } else { PairKind::Unpaired }, d)
        }
        _ => (PairKind::Unpaired, f64::NAN),
    };
    PairReport {
        kind,
        hausdorff: distance.is_finite().then_some(distance),
        tolerance: Some(tol),
        clusters: reps.len(),
        wqa_probes,
        samples: reps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_hausdorff(a: &[State], b: &[State]) -> f64 {
        let d = |x: &[State], y: &[State]| {
            x.iter().map(|p| y.iter().map(|q| p.dist(q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
        };
        d(a, b).max(d(b, a))
    }

    #[test]
    fn indexed_hausdorff_matches_brute_force() {
        let a: Vec<State> = (0..300).map(|i| {
            let t = i as f64 * 0.37;
            State::new(t.cos() * (1.0 + 0.3 * (3.0 * t).sin()), t.sin())
        }).collect();
        let b: Vec<State> = (0..250).map(|i| {
            let t = i as f64 * 0.51 + 0.2;
            State::new(0.9 * t.cos(), t.sin() + 0.05)
        }).collect();
        let fast = hausdorff(&a, &b);
        let slow = brute_hausdorff(&a, &b);
        assert!((fast - slow).abs() < 1e-15, "{fast} vs {slow}");
        assert_eq!(hausdorff(&a, &a), 0.0);
    }

    #[test]
    fn no_attractor_in_globally_attracting_region() {
        let p = ModelParams::new(0.8, 0.25, 0.05).unwrap();
        let r = attractor_pair_check(&p, &ClassifierConfig::default(), &default_probes(&p));
        assert_eq!(r.kind, PairKind::None);
        assert_eq!(r.wqa_probes, 0);
    }
}
