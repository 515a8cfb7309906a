//! Symbolic search for periodic orbits.
//!
//! A `k`-cycle with itinerary `σ1 … σk` is a fixed point of the linear map
//! `J_k = J_σk ⋯ J_σ1`. Unless `J_k` has the eigenvalue `+1` the only
//! solution is the origin, which has the all-`M` itinerary. When `+1` is an
//! eigenvalue, points on its eigenline are candidates and the partition
//! each iterate falls into decides whether the cycle is admissible.

use serde::Serialize;

use crate::linalg::{EigenPair, Mat2};
use crate::map::{apply_branch, branch_of, jacobian, Branch, State};
use crate::params::ModelParams;

/// Points sampled along a unit eigenline when checking admissibility.
pub const ADMISSIBILITY_SAMPLES: usize = 128;
/// Sampled eigenline points span `[-SPAN * h, SPAN * h]` in `x`.
pub const ADMISSIBILITY_SPAN: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleCandidate {
    /// Itinerary, first symbol applied first.
    pub sequence: String,
    pub k: usize,
    pub eigen: EigenPair,
    /// `|det(J_k - I)| < tol`.
    pub unit_eigenvalue: bool,
    /// Some nonzero point on the unit eigenline follows the itinerary and returns to itself.
    pub admissible: bool,
    /// All-`M` itinerary: the candidate points are the fixed segment, not a genuine cycle.
    pub fixed_segment: bool,
    /// An admissible periodic point, when one was found.
    pub witness: Option<State>,
}

impl CycleCandidate {
    pub fn has_outer(&self) -> bool {
        self.sequence.chars().any(|c| c != 'M')
    }
}

/// Lexicographically least rotation representatives of all words of
/// length `k` over `{L, M, R}`.
pub fn necklaces(k: usize) -> Vec<Vec<Branch>> {
    if k == 0 {
        return Vec::new();
    }
    let total = 3usize.pow(k as u32);
    let mut out = Vec::new();
    let mut word = vec![0u8; k];
    for mut code in 0..total {
        for slot in word.iter_mut().rev() {
            *slot = (code % 3) as u8;
            code /= 3;
        }
        let minimal = (1..k).all(|r| {
            let rotated = word[r..].iter().chain(&word[..r]);
            word.iter().le(rotated)
        });
        if minimal {
            out.push(word.iter().map(|&d| Branch::ALL[d as usize]).collect());
        }
    }
    out
}

/// `J_σk ⋯ J_σ1`.
pub fn itinerary_jacobian(seq: &[Branch], p: &ModelParams) -> Mat2 {
    seq.iter().fold(Mat2::IDENTITY, |acc, &br| jacobian(br, p) * acc)
}

fn unit_eigenvector(j: &Mat2) -> Option<[f64; 2]> {
    let v1 = [j.a12, 1.0 - j.a11];
    let v2 = [1.0 - j.a22, j.a21];
    let n1 = v1[0].hypot(v1[1]);
    let n2 = v2[0].hypot(v2[1]);
    let (v, n) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
    (n > 1e-300).then(|| [v[0] / n, v[1] / n])
}

fn follows(seq: &[Branch], x0: State, p: &ModelParams) -> bool {
    let mut s = x0;
    for &br in seq {
        if branch_of(s, p) != br {
            return false;
        }
        s = apply_branch(br, s, p);
    }
    let scale = x0.max_abs().max(p.h);
    s.dist_inf(&x0) <= 1e-9 * scale
}

fn eigenline_samples(j: &Mat2, h: f64) -> Vec<State> {
    let span = ADMISSIBILITY_SPAN * h;
    let n = ADMISSIBILITY_SAMPLES;
    let grid = move |i: usize| -span + 2.0 * span * i as f64 / (n - 1) as f64;
    match unit_eigenvector(j) {
        Some([vx, vy]) if vx.abs() > 1e-12 => (0..n).map(|i| {
            let x = grid(i);
            State::new(x, x * vy / vx)
        }).collect(),
        Some(_) => (0..n).map(|i| State::new(0.0, grid(i))).collect(),
        // J_k = I: every point is a candidate; probe both axes and the diagonal
        None => (0..n)
            .flat_map(|i| {
                let t = grid(i);
                [State::new(t, 0.0), State::new(0.0, t), State::new(t, t)]
            })
            .collect(),
    }
}

fn candidate(seq: &[Branch], p: &ModelParams, tol: f64) -> CycleCandidate {
    let j = itinerary_jacobian(seq, p);
    let unit = j.det_minus_identity().abs() < tol;
    let fixed_segment = seq.iter().all(|&b| b == Branch::M);
    let witness = if unit {
        eigenline_samples(&j, p.h)
            .into_iter()
            .find(|&x| x != State::ORIGIN && follows(seq, x, p))
    } else {
        None
    };
    CycleCandidate {
        sequence: seq.iter().map(|b| b.as_char()).collect(),
        k: seq.len(),
        eigen: j.eigen(),
        unit_eigenvalue: unit,
        admissible: witness.is_some(),
        fixed_segment,
        witness,
    }
}

/// Every itinerary of length `1..=k_max` up to cyclic shift.
pub fn cycle_scan(p: &ModelParams, k_max: usize, tol: f64) -> Vec<CycleCandidate> {
    (1..=k_max)
        .flat_map(necklaces)
        .map(|seq| candidate(&seq, p, tol))
        .collect()
}

/// Admissible candidates whose itinerary visits an outer partition.
pub fn genuine_cycles(scan: &[CycleCandidate]) -> impl Iterator<Item = &CycleCandidate> {
    scan.iter().filter(|c| c.admissible && c.has_outer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklace_counts() {
        // ternary necklaces, (1/k) Σ_{d|k} φ(d) 3^(k/d)
        let counts: Vec<usize> = (1..=5).map(|k| necklaces(k).len()).collect();
        assert_eq!(counts, vec![3, 6, 11, 24, 51]);
    }

    #[test]
    fn middle_only_is_fixed_segment() {
        let p = ModelParams::new(0.8, 2.5, 0.05).unwrap();
        let scan = cycle_scan(&p, 4, 1e-8);
        for k in 1..=4 {
            let seq = "M".repeat(k);
            let c = scan.iter().find(|c| c.sequence == seq).unwrap();
            assert!(c.unit_eigenvalue && c.admissible && c.fixed_segment, "{c:?}");
            let w = c.witness.unwrap();
            assert!((w.x - w.y).abs() < 1e-15 && w.x.abs() <= p.h);
        }
    }

    #[test]
    fn itinerary_product_order() {
        let p = ModelParams::new(0.8, 2.5, 0.05).unwrap();
        let j = itinerary_jacobian(&[Branch::L, Branch::M], &p);
        assert_eq!(j, jacobian(Branch::M, &p) * jacobian(Branch::L, &p));
        assert!((j.det() - 0.64).abs() < 1e-15);
    }
}
