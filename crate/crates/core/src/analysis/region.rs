//! Partition of the `(b, c)` plane.

use std::fmt;

use serde::Serialize;

use crate::map::{eigen, jacobian_f};
use crate::params::ModelParams;

/// Default distance from a region boundary below which `(b, c)` counts as a boundary case.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

/// Qualitative regime of map `M` for given `(b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParamRegion {
    /// `c < 2(1 - b)`: the fixed segment attracts almost everything.
    R1,
    /// `2(1 - b) < c < 2(1 + b)`: fixed points may coexist with weird quasiperiodic attractors.
    R2,
    /// `c > 2(1 + b)`: fixed points or divergence.
    R3,
    /// `b > 1`: divergence off the fixed segment.
    R4,
    /// Within tolerance of `b = 1`, `c = 2(1 - b)` or `c = 2(1 + b)`.
    BoundaryCase,
}

impl fmt::Display for ParamRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParamRegion::R1 => "R1",
            ParamRegion::R2 => "R2",
            ParamRegion::R3 => "R3",
            ParamRegion::R4 => "R4",
            ParamRegion::BoundaryCase => "BoundaryCase",
        };
        f.write_str(s)
    }
}

pub fn classify_region(p: &ModelParams, tol: f64) -> ParamRegion {
    let (b, c) = (p.b, p.c);
    if (b - 1.0).abs() <= tol {
        return ParamRegion::BoundaryCase;
    }
    if b > 1.0 {
        return ParamRegion::R4;
    }
    let lower = 2.0 * (1.0 - b);
    let upper = 2.0 * (1.0 + b);
    if (c - lower).abs() <= tol || (c - upper).abs() <= tol {
        ParamRegion::BoundaryCase
    } else if c < lower {
        ParamRegion::R1
    } else if c < upper {
        ParamRegion::R2
    } else {
        ParamRegion::R3
    }
}

/// Stability sub-region of the linear map `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FSubregion {
    /// Complex-conjugate eigenvalues: damped oscillation.
    S1,
    /// Real negative eigenvalues: alternating approach.
    S2,
    /// Real positive eigenvalues: monotonic approach.
    S3,
    Unstable,
}

impl fmt::Display for FSubregion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FSubregion::S1 => "S1",
            FSubregion::S2 => "S2",
            FSubregion::S3 => "S3",
            FSubregion::Unstable => "Unstable",
        };
        f.write_str(s)
    }
}

/// The three Jury conditions for `J_F`, simplified with `tr = 1 + b - c`, `det = b`:
/// `1 + tr + det = 2(1 + b) - c`, `1 - tr + det = c`, `1 - det = 1 - b`.
/// All three positive iff the origin of `F` is stable.
pub fn stability_conditions(p: &ModelParams) -> [f64; 3] {
    [2.0 * (1.0 + p.b) - p.c, p.c, 1.0 - p.b]
}

pub fn in_stability_box(p: &ModelParams) -> bool {
    stability_conditions(p).iter().all(|&v| v > 0.0)
}

pub fn f_subregion(p: &ModelParams) -> FSubregion {
    if !in_stability_box(p) {
        return FSubregion::Unstable;
    }
    let e = eigen(&jacobian_f(p));
    if e.is_complex() {
        FSubregion::S1
    } else if p.outer_trace() < 0.0 {
        // det = b > 0, so both roots share the sign of the trace
        FSubregion::S2
    } else {
        FSubregion::S3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(b: f64, c: f64) -> ModelParams {
        ModelParams::new(b, c, 0.05).unwrap()
    }

    #[test]
    fn region_fixtures() {
        let t = DEFAULT_BOUNDARY_TOL;
        assert_eq!(classify_region(&p(0.80, 0.25), t), ParamRegion::R1);
        assert_eq!(classify_region(&p(0.80, 2.50), t), ParamRegion::R2);
        assert_eq!(classify_region(&p(1.05, 1.35), t), ParamRegion::R4);
        assert_eq!(classify_region(&p(0.80, 3.61), t), ParamRegion::R3);
        assert_eq!(classify_region(&p(0.40, 1.20), t), ParamRegion::BoundaryCase);
        assert_eq!(classify_region(&p(1.0, 1.0), t), ParamRegion::BoundaryCase);
    }

    #[test]
    fn subregion_fixtures() {
        assert_eq!(f_subregion(&p(0.80, 1.35)), FSubregion::S1);
        assert_eq!(f_subregion(&p(0.20, 2.30)), FSubregion::S2);
        assert_eq!(f_subregion(&p(0.20, 0.30)), FSubregion::S3);
        assert_eq!(f_subregion(&p(1.05, 1.35)), FSubregion::Unstable);
        assert_eq!(f_subregion(&p(0.80, 3.61)), FSubregion::Unstable);
    }

    #[test]
    fn simplified_conditions_match_trace_form() {
        for &(b, c) in &[(0.8, 1.35), (0.2, 2.3), (1.05, 0.4), (0.3, 4.0)] {
            let q = p(b, c);
            let j = jacobian_f(&q);
            let (tr, det) = (j.trace(), j.det());
            let full = [1.0 + tr + det, 1.0 - tr + det, 1.0 - det];
            let simple = stability_conditions(&q);
            for i in 0..3 {
                assert!((full[i] - simple[i]).abs() < 1e-12);
            }
        }
    }
}
