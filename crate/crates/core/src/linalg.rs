//! 2x2 matrices and their eigenvalues.

use std::ops::Mul;

use serde::Serialize;

/// Row-major 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a11: 1.0, a12: 0.0, a21: 0.0, a22: 1.0 };

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    /// Companion form `[[trace, -det], [1, 0]]` shared by every branch of the map.
    pub const fn companion(trace: f64, det: f64) -> Self {
        Self::new(trace, -det, 1.0, 0.0)
    }

    #[inline]
    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    #[inline]
    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1]]
    }

    /// `det(self - I)`, zero iff 1 is an eigenvalue.
    #[inline]
    pub fn det_minus_identity(&self) -> f64 {
        (self.a11 - 1.0) * (self.a22 - 1.0) - self.a12 * self.a21
    }

    pub fn max_abs(&self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a21.abs()).max(self.a22.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    pub fn eigen(&self) -> EigenPair {
        eigen(self)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

/// Eigenvalues of a real 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EigenPair {
    /// Two real eigenvalues, `first >= second`.
    Real { first: f64, second: f64 },
    /// `re ± i·im` with `im > 0`.
    Complex { re: f64, im: f64 },
}

impl EigenPair {
    pub fn is_complex(&self) -> bool {
        matches!(self, EigenPair::Complex { .. })
    }

    pub fn spectral_radius(&self) -> f64 {
        match *self {
            EigenPair::Real { first, second } => first.abs().max(second.abs()),
            EigenPair::Complex { re, im } => re.hypot(im),
        }
    }

    /// `(re, im)` of both eigenvalues.
    pub fn parts(&self) -> [(f64, f64); 2] {
        match *self {
            EigenPair::Real { first, second } => [(first, 0.0), (second, 0.0)],
            EigenPair::Complex { re, im } => [(re, im), (re, -im)],
        }
    }

    pub fn sum(&self) -> f64 {
        match *self {
            EigenPair::Real { first, second } => first + second,
            EigenPair::Complex { re, .. } => 2.0 * re,
        }
    }

    pub fn product(&self) -> f64 {
        match *self {
            EigenPair::Real { first, second } => first * second,
            EigenPair::Complex { re, im } => re * re + im * im,
        }
    }
}

/// Eigenvalues from the characteristic polynomial `λ² - tr·λ + det`.
pub fn eigen(m: &Mat2) -> EigenPair {
    let tr = m.trace();
    let det = m.det();
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        return EigenPair::Complex { re: 0.5 * tr, im: 0.5 * (-disc).sqrt() };
    }
    // Larger-magnitude root first, the other from the product to avoid cancellation.
    let root = disc.sqrt();
    let big = 0.5 * (tr + tr.signum() * root);
    if big == 0.0 {
        return EigenPair::Real { first: 0.0, second: 0.0 };
    }
    let small = det / big;
    let (first, second) = if big >= small { (big, small) } else { (small, big) };
    EigenPair::Real { first, second }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_pair_from_quadratic_formula() {
        // tr = 0.9, det = 0.2 -> (0.9 ± 0.1) / 2
        let e = eigen(&Mat2::companion(0.9, 0.2));
        match e {
            EigenPair::Real { first, second } => {
                assert!((first - 0.5).abs() < 1e-15);
                assert!((second - 0.4).abs() < 1e-15);
            }
            _ => panic!("expected real pair"),
        }
    }

    #[test]
    fn complex_pair_preserves_sum_and_product() {
        let m = Mat2::companion(0.45, 0.8);
        let e = eigen(&m);
        assert!(e.is_complex());
        assert!((e.sum() - 0.45).abs() < 1e-12);
        assert!((e.product() - 0.8).abs() < 1e-12);
        assert!((e.spectral_radius() - 0.8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn product_matches_hand_multiplication() {
        let a = Mat2::new(1.0, 2.0, 3.0, 4.0);
        let b = Mat2::new(0.0, 1.0, -1.0, 0.5);
        assert_eq!(a * b, Mat2::new(-2.0, 2.0, -4.0, 5.0));
        assert_eq!(a * Mat2::IDENTITY, a);
        assert_eq!((a * b).det(), a.det() * b.det());
    }

    #[test]
    fn unit_eigenvalue_detected_by_shifted_determinant() {
        // [[1+b, -b], [1, 0]] has eigenvalues 1 and b
        let m = Mat2::companion(1.8, 0.8);
        assert!(m.det_minus_identity().abs() < 1e-15);
    }
}
