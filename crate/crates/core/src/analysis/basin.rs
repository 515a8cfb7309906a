//! Exact geometry of the immediate basin of the fixed segment and of its
//! rank-1 preimages.
//!
//! For `0 < b < 1` every point `(u, u)` with `|u| <= h` is fixed and attracts
//! along its stable eigenline `y = u + (x - u) / b`. The part of those lines
//! inside the band `|x| <= h` sweeps out a parallelogram: the immediate
//! basin. Its two triangular tips outside `|y| <= h` have preimages under the
//! outer branches, which are triangles leaning on the discontinuity lines.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{apply_branch, c_limit, inverse_outer, Branch, State};
use crate::params::ModelParams;

fn require_contraction(p: &ModelParams) -> Result<()> {
    if p.b < 1.0 {
        Ok(())
    } else {
        Err(Error::RequiresContraction(p.b))
    }
}

/// Immediate basin of the fixed segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Parallelogram {
    /// `(-h, -h)`, `(h, -h + 2h/b)`, `(h, h)`, `(-h, h - 2h/b)`, in that order.
    pub vertices: [State; 4],
}

impl Parallelogram {
    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }
}

/// A rank-1 preimage of the immediate basin's tip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    /// Vertices `A`, `B`, `C`; `A` and `C` lie on the discontinuity line.
    pub vertices: [State; 3],
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

pub fn immediate_basin(p: &ModelParams) -> Result<Parallelogram> {
    require_contraction(p)?;
    let h = p.h;
    let rise = (h + h) / p.b;
    Ok(Parallelogram {
        vertices: [
            State::new(-h, -h),
            State::new(h, -h + rise),
            State::new(h, h),
            State::new(-h, h - rise),
        ],
    })
}

/// Membership in the closed immediate basin. Always `false` for `b >= 1`.
#[inline]
pub fn in_immediate_basin(s: State, p: &ModelParams) -> bool {
    let h = p.h;
    p.b < 1.0
        && s.x >= -h
        && s.x <= h
        && s.y <= -h + (s.x + h) / p.b
        && s.y >= h + (s.x - h) / p.b
}

/// Point where the lower edge of the immediate basin crosses `y = -h`.
fn lower_tip_corner(p: &ModelParams) -> State {
    State::new(p.h * (1.0 - 2.0 * p.b), -p.h)
}

/// The three corners of the immediate basin's lower tip (`y <= -h`), whose
/// outer-branch preimages are the left triangle's `A`, `B`, `C`.
pub fn lower_tip(p: &ModelParams) -> Result<[State; 3]> {
    let basin = immediate_basin(p)?;
    Ok([basin.vertices[0], basin.vertices[3], lower_tip_corner(p)])
}

/// Left and right rank-1 preimage triangles of the immediate basin.
pub fn preimage_triangles(p: &ModelParams) -> Result<(Triangle, Triangle)> {
    let tip = lower_tip(p)?;
    let left = tip.map(|v| inverse_outer(v.x, v.y, p));
    let right = left.map(|v| -v);
    Ok((
        Triangle { vertices: left, side: Side::Left },
        Triangle { vertices: right, side: Side::Right },
    ))
}

/// Closed-form vertices of the left preimage triangle.
///
/// The middle vertex is `(-h k, (h / b)(1 - (1 + b - c) k))` with `k = 2/b - 1`;
/// applying `f_L` to it returns `(-h, h - 2h/b)`.
pub fn left_triangle_closed_form(p: &ModelParams) -> Result<[State; 3]> {
    require_contraction(p)?;
    let (b, c, h) = (p.b, p.c, p.h);
    let k = 2.0 / b - 1.0;
    Ok([
        State::new(-h, h * (c - b) / b),
        State::new(-h * k, (h / b) * (1.0 - (1.0 + b - c) * k)),
        State::new(-h, (h / b) * (b + c - 2.0)),
    ])
}

/// `A'' = f_L(-h, -h) = (-h(1 - c), -h)`; its orbit tracks the attractor
/// that may coexist with the fixed segment.
pub fn a_double_prime(p: &ModelParams) -> State {
    apply_branch(Branch::L, State::new(-p.h, -p.h), p)
}

/// Default band around the line `y = x / b` treated as converging to the fundamental value.
pub const FUNDAMENTAL_LINE_TOL: f64 = 1e-10;

/// True iff `s0` lies (within [`FUNDAMENTAL_LINE_TOL`] in the limit value)
/// on the segment of `y = x / b` inside the band, whose points converge to
/// the origin.
pub fn fundamental_line_check(s0: State, p: &ModelParams) -> bool {
    fundamental_line_check_tol(s0, p, FUNDAMENTAL_LINE_TOL)
}

pub fn fundamental_line_check_tol(s0: State, p: &ModelParams, tol: f64) -> bool {
    if p.b >= 1.0 || s0.x.abs() > p.h {
        return false;
    }
    match c_limit(s0, p.b) {
        Ok(u) => u.abs() <= tol,
        Err(_) => false,
    }
}

/// Shoelace area of a simple polygon.
pub fn polygon_area(v: &[State]) -> f64 {
    let n = v.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum();
    0.5 * twice.abs()
}

/// Whether two closed convex polygons share at least one point (separating axis test).
pub fn convex_polygons_intersect(a: &[State], b: &[State]) -> bool {
    fn project(poly: &[State], n: (f64, f64)) -> (f64, f64) {
        poly.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let d = v.x * n.0 + v.y * n.1;
            (lo.min(d), hi.max(d))
        })
    }
    for poly in [a, b] {
        for i in 0..poly.len() {
            let (p0, p1) = (poly[i], poly[(i + 1) % poly.len()]);
            let normal = (p1.y - p0.y, p0.x - p1.x);
            let (a_lo, a_hi) = project(a, normal);
            let (b_lo, b_hi) = project(b, normal);
            if a_hi < b_lo || b_hi < a_lo {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(b: f64, c: f64) -> ModelParams {
        ModelParams::new(b, c, 0.05).unwrap()
    }

    fn close(a: State, b: State, tol: f64) -> bool {
        a.dist_inf(&b) <= tol
    }

    #[test]
    fn parallelogram_vertices() {
        let v = immediate_basin(&p(0.8, 2.5)).unwrap().vertices;
        let want = [(-0.05, -0.05), (0.05, 0.075), (0.05, 0.05), (-0.05, -0.075)];
        for (got, w) in v.iter().zip(want) {
            assert!(close(*got, w.into(), 1e-15), "{got:?}");
        }
        assert_eq!(immediate_basin(&p(0.8, 0.25)).unwrap(), immediate_basin(&p(0.8, 2.5)).unwrap());
        assert!(matches!(immediate_basin(&p(1.05, 1.0)), Err(Error::RequiresContraction(_))));
    }

    #[test]
    fn parallelogram_degenerates_as_b_approaches_one() {
        // area = 4h²(1 - b)/b
        for b in [0.5, 0.9, 0.999] {
            let area = immediate_basin(&p(b, 1.0)).unwrap().area();
            let h = 0.05;
            assert!((area - 4.0 * h * h * (1.0 - b) / b).abs() < 1e-15);
        }
    }

    #[test]
    fn membership() {
        let q = p(0.8, 2.5);
        assert!(in_immediate_basin(State::ORIGIN, &q));
        for v in immediate_basin(&q).unwrap().vertices {
            assert!(in_immediate_basin(v, &q), "{v:?}");
        }
        // 0.07 > -0.05 + 0.05/0.8 = 0.0125
        assert!(!in_immediate_basin(State::new(0.0, 0.07), &q));
        assert!(!in_immediate_basin(State::new(0.051, 0.05), &q));
        assert!(!in_immediate_basin(State::ORIGIN, &p(1.2, 1.0)));
    }

    #[test]
    fn triangle_vertices_match_closed_form() {
        let q = ModelParams::new(0.4, 2.85, 0.05).unwrap();
        let (left, right) = preimage_triangles(&q).unwrap();
        let closed = left_triangle_closed_form(&q).unwrap();
        for i in 0..3 {
            assert!(close(left.vertices[i], closed[i], 1e-14));
            assert_eq!(right.vertices[i], -left.vertices[i]);
        }
        assert!(close(left.vertices[0], State::new(-0.05, 0.30625), 1e-15));
        assert!(close(left.vertices[1], State::new(-0.2, 0.85), 1e-14));
        let back = apply_branch(Branch::L, left.vertices[1], &q);
        assert!(close(back, State::new(-0.05, 0.05 - 0.1 / 0.4), 1e-15));
        // the edge AC leans on x = -h
        assert_eq!(left.vertices[0].x, -q.h);
        assert_eq!(left.vertices[2].x, -q.h);
    }

    #[test]
    fn triangle_maps_onto_basin_tip() {
        for (b, c) in [(0.4, 2.85), (0.8, 2.5), (0.6, 0.3)] {
            let q = p(b, c);
            let (left, _) = preimage_triangles(&q).unwrap();
            let tip = lower_tip(&q).unwrap();
            for (v, t) in left.vertices.iter().zip(tip) {
                let image = apply_branch(Branch::L, *v, &q);
                assert!(close(image, t, 1e-12), "{image:?} vs {t:?}");
            }
        }
    }

    #[test]
    fn a_double_prime_on_lower_edge_at_boundary() {
        let b = 0.4;
        let q = p(b, 2.0 * (1.0 - b));
        let a = a_double_prime(&q);
        assert!(close(a, State::new(-q.h * (1.0 - q.c), -q.h), 1e-15));
        let on_line = q.h + (a.x - q.h) / q.b;
        assert!((a.y - on_line).abs() < 1e-15);
        // below the boundary it falls inside the basin, above it outside
        assert!(in_immediate_basin(a_double_prime(&p(b, 1.0)), &p(b, 1.0)));
        assert!(!in_immediate_basin(a_double_prime(&p(b, 1.4)), &p(b, 1.4)));
    }

    #[test]
    fn fundamental_line() {
        let q = p(0.8, 2.5);
        assert!(fundamental_line_check(State::ORIGIN, &q));
        let t = 0.04;
        assert!(fundamental_line_check(State::new(q.b * t, t), &q));
        assert!(!fundamental_line_check(State::new(q.h, 0.0), &q));
    }

    #[test]
    fn separating_axis() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)].map(State::from);
        let touching = [(1.0, 0.5), (2.0, 0.0), (2.0, 1.0)].map(State::from);
        let apart = [(1.1, 0.5), (2.0, 0.0), (2.0, 1.0)].map(State::from);
        assert!(convex_polygons_intersect(&sq, &touching));
        assert!(!convex_polygons_intersect(&sq, &apart));
    }
}
