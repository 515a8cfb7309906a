//! Largest Lyapunov exponent along an orbit of `M`.
//!
//! The map is linear on each partition, so the tangent dynamics is the
//! product of branch Jacobians along the orbit. The tangent vector is
//! renormalised every step and the log growth averaged after the transient.
//! It starts on the diagonal, the neutral direction of the middle branch.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{apply_branch, branch_of, jacobian, Branch, State};
use crate::params::ModelParams;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub exponent: f64,
    /// Post-transient visits to L, M, R.
    pub branch_visits: [u64; 3],
}

/// Escape radius beyond which the orbit counts as diverged.
const ESCAPE: f64 = 1e12;

pub fn lyapunov_max(s0: State, p: &ModelParams, n: usize, transient: usize) -> Result<LyapunovEstimate> {
    if n <= transient {
        return Err(Error::InvalidConfig(format!("n = {n} must exceed transient = {transient}")));
    }
    let jac = Branch::ALL.map(|br| jacobian(br, p));
    let mut s = s0;
    let mut v = [std::f64::consts::FRAC_1_SQRT_2; 2];
    let mut log_sum = 0.0;
    let mut visits = [0u64; 3];
    for t in 0..n {
        if !s.is_finite() || s.max_abs() > ESCAPE {
            return Err(Error::Diverged(t));
        }
        let br = branch_of(s, p);
        if t >= transient {
            let w = jac[br.index()].apply(v);
            let norm = w[0].hypot(w[1]);
            log_sum += norm.ln();
            v = [w[0] / norm, w[1] / norm];
            visits[br.index()] += 1;
        }
        s = apply_branch(br, s, p);
    }
    if !s.is_finite() || s.max_abs() > ESCAPE {
        return Err(Error::Diverged(n));
    }
    Ok(LyapunovEstimate { exponent: log_sum / (n - transient) as f64, branch_visits: visits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neutral_on_fixed_segment() {
        let p = ModelParams::new(0.8, 2.5, 0.05).unwrap();
        let est = lyapunov_max(State::new(0.02, 0.02), &p, 10_000, 100).unwrap();
        assert!(est.exponent.abs() < 1e-6, "{}", est.exponent);
        assert_eq!(est.branch_visits, [0, 9900, 0]);
    }

    #[test]
    fn divergent_orbit_is_an_error() {
        let p = ModelParams::new(1.05, 1.35, 0.05).unwrap();
        assert!(matches!(lyapunov_max(State::new(0.1, 0.0), &p, 100_000, 100), Err(Error::Diverged(_))));
    }

    #[test]
    fn outer_spiral_rate() {
        // Complex outer eigenvalues with |λ| = sqrt(b); the band is too thin to be hit.
        let p = ModelParams::new(0.8, 1.35, 1e-14).unwrap();
        let est = lyapunov_max(State::new(1.0, 0.0), &p, 250, 50).unwrap();
        assert_eq!(est.branch_visits[1], 0);
        assert!((est.exponent - 0.8f64.sqrt().ln()).abs() < 0.02, "{}", est.exponent);
    }
}
