//! Model parameters.
//!
//! The deviation-form map only sees the aggregate impacts `b`, `c` and the
//! inactivity half-width `h`. The behavioural parameters of the price-level
//! model aggregate into them through [`RawParams::aggregate`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Aggregate parameters of the deviation map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Chartist market impact (`alpha * beta`).
    pub b: f64,
    /// Fundamentalist market impact (`alpha * gamma`).
    pub c: f64,
    /// Half-width of the fundamentalists' band of inactivity (`rho / theta`).
    pub h: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter { name, value, reason: "must be finite" });
    }
    if value <= 0.0 {
        return Err(Error::InvalidParameter { name, value, reason: "must be positive" });
    }
    Ok(value)
}

impl ModelParams {
    pub fn new(b: f64, c: f64, h: f64) -> Result<Self> {
        Ok(Self { b: positive("b", b)?, c: positive("c", c)?, h: positive("h", h)? })
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.b, self.c, self.h).map(|_| ())
    }

    /// Trace of the outer-branch Jacobian, `1 + b - c`.
    #[inline]
    pub fn outer_trace(&self) -> f64 {
        1.0 + self.b - self.c
    }

    /// Same `(b, c)` with the band rescaled to `h`.
    pub fn with_h(&self, h: f64) -> Result<Self> {
        Self::new(self.b, self.c, h)
    }
}

/// Behavioural parameters of the price-level model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    /// Market maker's price adjustment speed.
    pub alpha: f64,
    /// Chartists' reaction to the last price change.
    pub beta: f64,
    /// Fundamentalists' reaction to mispricing.
    pub gamma: f64,
    /// Fundamentalists' expected reversion fraction, in `(0, 1)`.
    pub theta: f64,
    /// Fundamentalists' required risk compensation.
    pub rho: f64,
}

impl RawParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, theta: f64, rho: f64) -> Result<Self> {
        positive("alpha", alpha)?;
        positive("beta", beta)?;
        positive("gamma", gamma)?;
        positive("rho", rho)?;
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "must lie in (0, 1)",
            });
        }
        let raw = Self { alpha, beta, gamma, theta, rho };
        raw.aggregate()?;
        Ok(raw)
    }

    /// Entry threshold of the fundamentalists, `rho / theta`.
    pub fn h(&self) -> f64 {
        self.rho / self.theta
    }

    pub fn aggregate(&self) -> Result<ModelParams> {
        ModelParams::new(self.alpha * self.beta, self.alpha * self.gamma, self.h())
    }
}

impl TryFrom<RawParams> for ModelParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        raw.aggregate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_from_risk_preference() {
        let raw = RawParams::new(1.0, 0.8, 2.5, 0.5, 0.025).unwrap();
        assert_eq!(raw.h(), 0.05);
        let p = raw.aggregate().unwrap();
        assert_eq!((p.b, p.c, p.h), (0.8, 2.5, 0.05));
    }

    #[test]
    fn aggregation_multiplies_by_alpha() {
        let p = RawParams::new(0.5, 1.6, 5.0, 0.25, 0.0125).unwrap().aggregate().unwrap();
        assert_eq!((p.b, p.c, p.h), (0.8, 2.5, 0.05));
    }

    #[test]
    fn rejects_nonpositive_and_nonfinite() {
        assert!(ModelParams::new(0.0, 1.0, 0.05).is_err());
        assert!(ModelParams::new(0.8, -1.0, 0.05).is_err());
        assert!(ModelParams::new(0.8, 1.0, f64::NAN).is_err());
        assert!(ModelParams::new(f64::INFINITY, 1.0, 0.05).is_err());
        assert!(RawParams::new(1.0, 1.0, 1.0, 1.0, 0.1).is_err());
        assert!(RawParams::new(1.0, 1.0, 1.0, 0.0, 0.1).is_err());
        assert!(RawParams::new(1.0, 1.0, 1.0, 0.5, 0.0).is_err());
    }
}
