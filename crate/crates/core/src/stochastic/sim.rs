//! Shocked deviation dynamics with the fundamental value as a random walk.
//!
//! Per step, with `δ_t = σ_δ z_t` and `z` from [`NormalStream`]:
//!
//! ```text
//! d_t     = -δ_t - b δ_{t-1}          (MaConvention::AsPublished)
//! x_{t+1} = M(x_t, x_{t-1}).x + d_t
//! F_{t+1} = F_t + δ_t
//! P_t     = x_t + F_t
//! ```
//!
//! `δ_{-1} = 0`, so `d_0 = -δ_0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{step_m, State};
use crate::params::{ModelParams, RawParams};
use crate::stochastic::rng::NormalStream;
use crate::map::price_space_step;

/// Which standard deviation the user fixed; the other follows from
/// `σ_d = σ_δ sqrt(1 + b²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ShockScale {
    Delta(f64),
    Deviation(f64),
}

impl ShockScale {
    pub fn sigma_delta(&self, b: f64) -> f64 {
        match *self {
            ShockScale::Delta(s) => s,
            ShockScale::Deviation(s) => s / (1.0 + b * b).sqrt(),
        }
    }

    pub fn sigma_d(&self, b: f64) -> f64 {
        match *self {
            ShockScale::Delta(s) => s * (1.0 + b * b).sqrt(),
            ShockScale::Deviation(s) => s,
        }
    }

    fn given(&self) -> f64 {
        match *self {
            ShockScale::Delta(s) | ShockScale::Deviation(s) => s,
        }
    }
}

/// Sign of the lagged term in the deviation shock.
///
/// `AsPublished` uses `d_t = -δ_t - b δ_{t-1}`. Substituting the random walk
/// into the price-level law instead gives `d_t = -δ_t + b δ_{t-1}`, which is
/// `PriceConsistent`; only that choice makes `P_t` agree with a direct
/// price-level simulation driven by the same `δ`. Both have variance
/// `σ_δ² (1 + b²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MaConvention {
    #[default]
    AsPublished,
    PriceConsistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShockConfig {
    pub scale: ShockScale,
    pub seed: u64,
    pub t_max: usize,
    pub f0: f64,
    pub p0: f64,
    pub p_minus1: f64,
    pub ma: MaConvention,
}

impl Default for ShockConfig {
    fn default() -> Self {
        Self {
            scale: ShockScale::Deviation(0.005),
            seed: 12,
            t_max: 10_000,
            f0: 100.0,
            p0: 100.0,
            p_minus1: 100.0,
            ma: MaConvention::AsPublished,
        }
    }
}

impl ShockConfig {
    /// Zero is allowed and reproduces the deterministic orbit.
    pub fn validate(&self) -> Result<()> {
        let s = self.scale.given();
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidParameter { name: "sigma", value: s, reason: "must be finite and nonnegative" });
        }
        for (name, v) in [("F0", self.f0), ("P0", self.p0), ("P_minus1", self.p_minus1)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter { name, value: v, reason: "must be finite" });
            }
        }
        Ok(())
    }

    /// Initial state `(P_0 - F_0, P_{-1} - F_0)`.
    pub fn initial_state(&self) -> State {
        State::new(self.p0 - self.f0, self.p_minus1 - self.f0)
    }
}

/// One time step. `delta` and `d` are the shocks applied between `t` and `t + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShockRecord {
    pub t: usize,
    pub delta: f64,
    pub d: f64,
    pub fundamental: f64,
    pub price: f64,
    pub x: f64,
    /// Previous deviation `x_{t-1}`.
    pub y: f64,
}

impl ShockRecord {
    pub fn state(&self) -> State {
        State::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StochasticRun {
    pub params: ModelParams,
    pub config: ShockConfig,
    pub sigma_delta: f64,
    pub sigma_d: f64,
    /// `t = 0..=t_max` unless truncated by divergence.
    pub records: Vec<ShockRecord>,
    pub diverged: bool,
}

impl StochasticRun {
    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        self.records.iter().map(ShockRecord::state)
    }
}

pub fn simulate_stochastic(p: &ModelParams, sc: &ShockConfig) -> Result<StochasticRun> {
    p.validate()?;
    sc.validate()?;
    let sigma_delta = sc.scale.sigma_delta(p.b);
    let lag_sign = match sc.ma {
        MaConvention::AsPublished => -1.0,
        MaConvention::PriceConsistent => 1.0,
    };
    let mut z = NormalStream::new(sc.seed);
    let mut records = Vec::with_capacity(sc.t_max + 1);
    let mut s = sc.initial_state();
    let mut f = sc.f0;
    let mut prev_delta = 0.0;
    let mut diverged = false;
    for t in 0..=sc.t_max {
        let delta = sigma_delta * z.next().expect("normal stream is infinite");
        let d = -delta + lag_sign * p.b * prev_delta;
        records.push(ShockRecord { t, delta, d, fundamental: f, price: s.x + f, x: s.x, y: s.y });
        if t == sc.t_max {
            break;
        }
        let next = step_m(s, p);
        s = State::new(next.x + d, next.y);
        f += delta;
        prev_delta = delta;
        if !(s.is_finite() && f.is_finite()) {
            diverged = true;
            break;
        }
    }
    Ok(StochasticRun { params: *p, config: *sc, sigma_delta, sigma_d: sc.scale.sigma_d(p.b), records, diverged })
}

/// Prices `P_0..=P_n` from the price-level law with a given fundamental path
/// (`fundamentals[t]` is `F_t`; needs at least `n` entries).
pub fn simulate_price_level(rp: &RawParams, fundamentals: &[f64], p0: f64, p_minus1: f64, n: usize) -> Result<Vec<f64>> {
    if fundamentals.len() < n {
        return Err(Error::InvalidConfig(format!("need {n} fundamental values, got {}", fundamentals.len())));
    }
    let mut prices = Vec::with_capacity(n + 1);
    prices.push(p0);
    let (mut prev, mut cur) = (p_minus1, p0);
    for &f in &fundamentals[..n] {
        let next = price_space_step(cur, prev, f, rp);
        prices.push(next);
        (prev, cur) = (cur, next);
    }
    Ok(prices)
}
