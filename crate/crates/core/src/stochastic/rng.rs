//! Seeded generator for the fundamental shocks.
//!
//! The stream is fully specified here so that other implementations can
//! reproduce it bit for bit:
//!
//! 1. `SplitMix64`: state `s += 0x9E3779B97F4A7C15`, output
//!    `z = s; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//!    z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31)`
//!    (wrapping arithmetic).
//! 2. Uniform in the open interval `(0, 1)`: `((z >> 11) + 0.5) * 2^-53`.
//! 3. Box–Muller on consecutive uniforms `u1, u2`:
//!    `r = sqrt(-2 ln u1)`, emit `r cos(2π u2)` then `r sin(2π u2)`.

use std::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform deviate in `(0, 1)`, never exactly 0 or 1.
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n` (multiply-shift, `n > 0`).
    #[inline]
    pub fn below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }
}

/// Standard normal deviates via Box–Muller, both outputs used.
#[derive(Debug, Clone)]
pub struct NormalStream {
    rng: SplitMix64,
    spare: Option<f64>,
}

impl NormalStream {
    pub fn new(seed: u64) -> Self {
        Self { rng: SplitMix64::new(seed), spare: None }
    }
}

impl Iterator for NormalStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if let Some(z) = self.spare.take() {
            return Some(z);
        }
        let u1 = self.rng.next_open01();
        let u2 = self.rng.next_open01();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        self.spare = Some(r * s);
        Some(r * c)
    }
}

pub fn normal_stream(seed: u64, n: usize) -> Vec<f64> {
    NormalStream::new(seed).take(n).collect()
}
