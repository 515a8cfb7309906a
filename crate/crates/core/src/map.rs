//! The piecewise-linear discontinuous deviation map and its two linear limits.
//!
//! With `x` the current mispricing and `y` the previous one, the map `M` reads
//!
//! ```text
//! x' = (1 + b - c) x - b y   if |x| > h   (fundamentalists active)
//! x' = (1 + b) x - b y       if |x| <= h  (chartists only)
//! y' = x
//! ```
//!
//! Map `F` always uses the outer law (`h = 0`), map `C` always the inner
//! one (`h = ∞`).

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{EigenPair, Mat2};
use crate::params::{ModelParams, RawParams};

/// Current and lagged price deviation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct State {
    pub x: f64,
    pub y: f64,
}

impl State {
    pub const ORIGIN: State = State { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Chebyshev norm.
    #[inline]
    pub fn max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    #[inline]
    pub fn dist_inf(&self, other: &State) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    #[inline]
    pub fn dist(&self, other: &State) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn scale(&self, k: f64) -> State {
        State::new(self.x * k, self.y * k)
    }
}

impl Neg for State {
    type Output = State;

    fn neg(self) -> State {
        State::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for State {
    fn from((x, y): (f64, f64)) -> Self {
        State::new(x, y)
    }
}

/// Partition of the phase plane the current deviation falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    /// `x < -h`: undervalued, fundamentalists buy.
    L,
    /// `-h <= x <= h`: fundamentalists inactive.
    M,
    /// `x > h`: overvalued, fundamentalists sell.
    R,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::L, Branch::M, Branch::R];

    pub fn as_char(self) -> char {
        match self {
            Branch::L => 'L',
            Branch::M => 'M',
            Branch::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Branch> {
        match c {
            'L' => Some(Branch::L),
            'M' => Some(Branch::M),
            'R' => Some(Branch::R),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_outer(self) -> bool {
        self != Branch::M
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Which of the three maps to iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    /// Piecewise map with the band of inactivity.
    M,
    /// Chartists and fundamentalists always active.
    F,
    /// Chartists only.
    C,
}

impl std::str::FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(MapKind::M),
            "F" | "f" => Ok(MapKind::F),
            "C" | "c" => Ok(MapKind::C),
            other => Err(Error::InvalidConfig(format!("unknown map kind {other:?}"))),
        }
    }
}

/// Branch containing `s`. The band edges `x = ±h` belong to the middle branch.
#[inline]
pub fn branch_of(s: State, p: &ModelParams) -> Branch {
    if s.x > p.h {
        Branch::R
    } else if s.x < -p.h {
        Branch::L
    } else {
        Branch::M
    }
}

#[inline]
fn outer(s: State, p: &ModelParams) -> State {
    State::new((1.0 + p.b - p.c) * s.x - p.b * s.y, s.x)
}

#[inline]
fn inner(s: State, b: f64) -> State {
    State::new((1.0 + b) * s.x - b * s.y, s.x)
}

/// Applies the linear law of `branch` regardless of where `s` lies.
#[inline]
pub fn apply_branch(branch: Branch, s: State, p: &ModelParams) -> State {
    match branch {
        Branch::M => inner(s, p.b),
        Branch::L | Branch::R => outer(s, p),
    }
}

#[inline]
pub fn step_m(s: State, p: &ModelParams) -> State {
    apply_branch(branch_of(s, p), s, p)
}

#[inline]
pub fn step_f(s: State, p: &ModelParams) -> State {
    outer(s, p)
}

#[inline]
pub fn step_c(s: State, p: &ModelParams) -> State {
    inner(s, p.b)
}

pub fn step(kind: MapKind, s: State, p: &ModelParams) -> State {
    match kind {
        MapKind::M => step_m(s, p),
        MapKind::F => step_f(s, p),
        MapKind::C => step_c(s, p),
    }
}

/// An orbit together with the partition each point sits in.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub kind: MapKind,
    pub states: Vec<State>,
    /// Partition label per state; `None` for the unpartitioned maps `F` and `C`.
    pub branches: Vec<Option<Branch>>,
    /// Set when an iterate stopped being finite. The non-finite state is not stored.
    pub diverged: bool,
}

impl Trajectory {
    pub fn last(&self) -> State {
        *self.states.last().expect("trajectory holds at least the initial state")
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Iterates `kind` for `n` steps from `s0`, returning `n + 1` states unless
/// the orbit overflows first.
pub fn iterate(kind: MapKind, s0: State, n: usize, p: &ModelParams) -> Trajectory {
    let label = |s: State| match kind {
        MapKind::M => Some(branch_of(s, p)),
        MapKind::F | MapKind::C => None,
    };
    let mut states = Vec::with_capacity(n + 1);
    let mut branches = Vec::with_capacity(n + 1);
    let mut diverged = !s0.is_finite();
    if !diverged {
        states.push(s0);
        branches.push(label(s0));
        let mut s = s0;
        for _ in 0..n {
            s = step(kind, s, p);
            if !s.is_finite() {
                diverged = true;
                break;
            }
            states.push(s);
            branches.push(label(s));
        }
    }
    Trajectory { kind, states, branches, diverged }
}

/// Preimage of `(u, v)` under the outer linear law, `(v, ((1 + b - c) v - u) / b)`.
///
/// The result is only a genuine preimage under `M` when it lies in an outer
/// partition; callers check that themselves.
#[inline]
pub fn inverse_outer(u: f64, v: f64, p: &ModelParams) -> State {
    State::new(v, (p.outer_trace() * v - u) / p.b)
}

/// Preimage of `(u, v)` under the inner linear law.
#[inline]
pub fn inverse_inner(u: f64, v: f64, p: &ModelParams) -> State {
    State::new(v, ((1.0 + p.b) * v - u) / p.b)
}

/// Limit of the chartist-only map from `s0`: the common coordinate
/// `u = (b·y0 - x0) / (b - 1)` of the fixed point on the diagonal.
pub fn c_limit(s0: State, b: f64) -> Result<f64> {
    if b == 1.0 {
        return Err(Error::DegenerateB);
    }
    Ok((b * s0.y - s0.x) / (b - 1.0))
}

/// Exact `t`-th iterate of the chartist-only map.
pub fn c_closed_form(s0: State, b: f64, t: u32) -> Result<State> {
    let u = c_limit(s0, b)?;
    let k = b * (s0.y - s0.x) / (b - 1.0);
    let bt = b.powi(t as i32);
    Ok(State::new(u - k * bt, u - k * bt / b))
}

/// Branch Jacobian. Outer branches share `J_F`, the middle one is `J_C`.
pub fn jacobian(branch: Branch, p: &ModelParams) -> Mat2 {
    match branch {
        Branch::M => Mat2::companion(1.0 + p.b, p.b),
        Branch::L | Branch::R => Mat2::companion(p.outer_trace(), p.b),
    }
}

pub fn jacobian_f(p: &ModelParams) -> Mat2 {
    jacobian(Branch::R, p)
}

pub fn jacobian_c(p: &ModelParams) -> Mat2 {
    jacobian(Branch::M, p)
}

pub fn eigen(m: &Mat2) -> EigenPair {
    crate::linalg::eigen(m)
}

/// One step of the price-level law for the next price `P_{t+1}`.
///
/// Fundamentalists trade `gamma (F - P)` only when `|P - F| > h`; chartists
/// always trade `beta (P_t - P_{t-1})`; nonspeculative demand matches supply.
pub fn price_space_step(price: f64, prev_price: f64, fundamental: f64, rp: &RawParams) -> f64 {
    let chartist = rp.beta * (price - prev_price);
    let gap = price - fundamental;
    let h = rp.h();
    let fundamentalist = if gap > h || gap < -h { rp.gamma * (fundamental - price) } else { 0.0 };
    price + rp.alpha * (chartist + fundamentalist)
}
