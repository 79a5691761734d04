//! Planar primitives: points as complex numbers, Hermite couples, the
//! quadratic tangent-angle representation and the reduction of two-point
//! data to normal position.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::FitError;

/// A point (or vector) in the plane, read as the complex number `x + iy`.
/// Serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ZERO: Point2 = Point2 { x: 0.0, y: 0.0 };
    pub const ONE: Point2 = Point2 { x: 1.0, y: 0.0 };
    pub const I: Point2 = Point2 { x: 0.0, y: 1.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// `r * exp(i * angle)`
    #[inline]
    pub fn from_polar(r: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point2::new(r * c, r * s)
    }

    /// `exp(i * angle)`
    #[inline]
    pub fn cis(angle: f64) -> Self {
        Self::from_polar(1.0, angle)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Argument in `(-pi, pi]`.
    #[inline]
    pub fn arg(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a == -PI {
            PI
        } else {
            a
        }
    }

    #[inline]
    pub fn conj(self) -> Self {
        Point2::new(self.x, -self.y)
    }

    #[inline]
    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// z-component of the planar cross product.
    #[inline]
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        self + (other - self) * t
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Point2 {
    #[inline]
    fn add_assign(&mut self, rhs: Point2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

/// Complex multiplication.
impl Mul for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, rhs: Point2) -> Point2 {
        Point2::new(
            self.x * rhs.x - self.y * rhs.y,
            self.x * rhs.y + self.y * rhs.x,
        )
    }
}

/// Complex division.
impl Div for Point2 {
    type Output = Point2;
    #[inline]
    fn div(self, rhs: Point2) -> Point2 {
        let n = rhs.norm_sqr();
        Point2::new(
            (self.x * rhs.x + self.y * rhs.y) / n,
            (self.y * rhs.x - self.x * rhs.y) / n,
        )
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn div(self, rhs: f64) -> Point2 {
        Point2::new(self.x / rhs, self.y / rhs)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2::new(x, y)
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// A point together with the tangent angle of a curve passing through it.
///
/// The angle is kept unwrapped so that sequences of couples can wind.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermiteCouple {
    #[serde(rename = "p")]
    pub point: Point2,
    #[serde(rename = "alpha")]
    pub angle: f64,
}

impl HermiteCouple {
    pub const fn new(point: Point2, angle: f64) -> Self {
        HermiteCouple { point, angle }
    }

    /// Build a couple from a normal vector, using `n = i * exp(i * alpha)`.
    pub fn from_normal(point: Point2, normal: Point2) -> Self {
        HermiteCouple::new(point, normal.arg() - PI / 2.0)
    }

    /// Unit normal `i * exp(i * alpha)`.
    pub fn normal(&self) -> Point2 {
        Point2::I * Point2::cis(self.angle)
    }

    /// Unit tangent `exp(i * alpha)`.
    pub fn tangent(&self) -> Point2 {
        Point2::cis(self.angle)
    }

    pub fn is_finite(&self) -> bool {
        self.point.is_finite() && self.angle.is_finite()
    }
}

/// Reduce an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut r = a % TAU;
    if r <= -PI {
        r += TAU;
    } else if r > PI {
        r -= TAU;
    }
    r
}

/// Shift `angle` by a multiple of `2 pi` so that it lies within `pi` of
/// `reference`.
pub fn rebase_angle(angle: f64, reference: f64) -> f64 {
    angle + TAU * ((reference - angle) / TAU).round()
}

/// Quadratic Lagrange basis on the break points `0, 1/2, 1`.
#[inline]
pub fn lagrange_basis(t: f64) -> (f64, f64, f64) {
    (
        (t - 1.0) * (2.0 * t - 1.0),
        4.0 * t * (1.0 - t),
        t * (2.0 * t - 1.0),
    )
}

/// Tangent-angle function `beta(t)` of a clothoid in normal position,
/// stored by its values at `t = 0, 1/2, 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadraticAngle {
    pub b0: f64,
    pub bh: f64,
    pub b1: f64,
}

impl QuadraticAngle {
    pub const fn new(b0: f64, bh: f64, b1: f64) -> Self {
        QuadraticAngle { b0, bh, b1 }
    }

    pub const fn constant(c: f64) -> Self {
        QuadraticAngle::new(c, c, c)
    }

    pub fn eval(&self, t: f64) -> f64 {
        // exact at the break points
        if t == 0.0 {
            return self.b0;
        }
        if t == 0.5 {
            return self.bh;
        }
        if t == 1.0 {
            return self.b1;
        }
        let (l0, lh, l1) = lagrange_basis(t);
        self.b0 * l0 + self.bh * lh + self.b1 * l1
    }

    /// Derivative `beta'(t)`.
    pub fn derivative(&self, t: f64) -> f64 {
        let d0 = 4.0 * t - 3.0;
        let dh = 4.0 - 8.0 * t;
        let d1 = 4.0 * t - 1.0;
        self.b0 * d0 + self.bh * dh + self.b1 * d1
    }
}

/// Free-function form of [`QuadraticAngle::eval`].
pub fn eval_angle(beta: &QuadraticAngle, t: f64) -> f64 {
    beta.eval(t)
}

/// Two-point data reduced to normal position.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalPosition {
    pub beta0: f64,
    pub beta1: f64,
    /// Secant `p1 - p0`.
    pub d: Point2,
}

/// Secant length below which two points are considered equal.
pub fn degenerate_secant_threshold(p0: Point2, p1: Point2) -> f64 {
    1e-12 * (1.0 + p0.norm() + p1.norm())
}

/// Express the boundary tangent angles relative to the secant `p1 - p0`.
/// Both angles are wrapped to `(-pi, pi]`.
pub fn similarity_to_normal(
    p0: Point2,
    p1: Point2,
    a0: f64,
    a1: f64,
) -> Result<NormalPosition, FitError> {
    let d = p1 - p0;
    let length = d.norm();
    if !(length > degenerate_secant_threshold(p0, p1)) {
        return Err(FitError::DegenerateSecant { length });
    }
    let phi = d.arg();
    Ok(NormalPosition {
        beta0: wrap_angle(a0 - phi),
        beta1: wrap_angle(a1 - phi),
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn basis_at_break_points() {
        assert_eq!(lagrange_basis(0.0), (1.0, 0.0, 0.0));
        assert_eq!(lagrange_basis(0.5), (0.0, 1.0, 0.0));
        assert_eq!(lagrange_basis(1.0), (0.0, 0.0, 1.0));
        let (a, b, c) = lagrange_basis(0.25);
        assert_abs_diff_eq!(a, 3.0 / 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 3.0 / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c, -1.0 / 8.0, epsilon = 1e-15);
    }

    #[test]
    fn eval_angle_examples() {
        assert_abs_diff_eq!(
            eval_angle(&QuadraticAngle::constant(1.0), 0.37),
            1.0,
            epsilon = 1e-15
        );
        assert_eq!(eval_angle(&QuadraticAngle::new(0.0, 0.0, 2.0), 1.0), 2.0);
        assert_abs_diff_eq!(
            eval_angle(&QuadraticAngle::new(1.0, 0.0, 0.0), 0.25),
            0.375,
            epsilon = 1e-15
        );
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let beta = QuadraticAngle::new(0.3, -0.7, 1.1);
        for &t in &[-0.5, 0.0, 0.3, 1.0, 1.7] {
            let h = 1e-6;
            let fd = (beta.eval(t + h) - beta.eval(t - h)) / (2.0 * h);
            assert_abs_diff_eq!(beta.derivative(t), fd, epsilon = 1e-8);
        }
    }

    #[test]
    fn normal_position_examples() {
        let n = similarity_to_normal(Point2::ZERO, Point2::ONE, 0.3, -0.2).unwrap();
        assert_eq!((n.beta0, n.beta1, n.d), (0.3, -0.2, Point2::ONE));

        let n =
            similarity_to_normal(Point2::ZERO, Point2::new(0.0, 2.0), PI / 2.0, PI / 2.0).unwrap();
        assert_eq!((n.beta0, n.beta1), (0.0, 0.0));
        assert_eq!(n.d, Point2::new(0.0, 2.0));

        let n = similarity_to_normal(Point2::new(1.0, 1.0), Point2::new(0.0, 1.0), PI, PI / 2.0)
            .unwrap();
        assert_abs_diff_eq!(n.beta0, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(n.beta1, -PI / 2.0, epsilon = 1e-15);
        assert_eq!(n.d, Point2::new(-1.0, 0.0));
    }

    #[test]
    fn degenerate_secant_is_rejected() {
        let p = Point2::new(3.0, 4.0);
        let err = similarity_to_normal(p, p + Point2::new(1e-13, 0.0), 0.0, 0.0).unwrap_err();
        assert!(matches!(err, FitError::DegenerateSecant { .. }));
    }

    #[test]
    fn arg_of_negative_real_axis_is_pi() {
        assert_eq!(Point2::new(-1.0, 0.0).arg(), PI);
        assert_eq!(Point2::new(-1.0, -0.0).arg(), PI);
    }

    #[test]
    fn normal_convention() {
        let h = HermiteCouple::from_normal(Point2::ZERO, Point2::new(0.0, 1.0));
        assert_eq!(h.angle, 0.0);
        let n = h.normal();
        assert_abs_diff_eq!(n.x, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(n.y, 1.0, epsilon = 1e-16);
    }

    #[test]
    fn complex_arithmetic() {
        let a = Point2::new(1.0, 2.0);
        let b = Point2::new(-0.5, 3.0);
        let q = (a * b) / b;
        assert_abs_diff_eq!(q.x, a.x, epsilon = 1e-15);
        assert_abs_diff_eq!(q.y, a.y, epsilon = 1e-15);
        assert_eq!(Point2::I * Point2::I, -Point2::ONE);
    }

    #[test]
    fn partition_of_unity_dense() {
        // deterministic sweep over [-2, 3]
        let n = 1_000_000;
        for k in 0..=n {
            let t = -2.0 + 5.0 * k as f64 / n as f64;
            let (a, b, c) = lagrange_basis(t);
            assert!((a + b + c - 1.0).abs() <= 1e-12, "t = {t}");
        }
    }

    proptest! {
        #[test]
        fn partition_of_unity(t in -2.0f64..3.0) {
            let (a, b, c) = lagrange_basis(t);
            prop_assert!((a + b + c - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn normal_angles_are_wrapped(
            x0 in -10.0f64..10.0, y0 in -10.0f64..10.0,
            x1 in -10.0f64..10.0, y1 in -10.0f64..10.0,
            a0 in -50.0f64..50.0, a1 in -50.0f64..50.0,
        ) {
            let p0 = Point2::new(x0, y0);
            let p1 = Point2::new(x1, y1);
            prop_assume!(p0.distance(p1) > 1e-6);
            let n = similarity_to_normal(p0, p1, a0, a1).unwrap();
            prop_assert!(n.beta0 > -PI && n.beta0 <= PI);
            prop_assert!(n.beta1 > -PI && n.beta1 <= PI);
        }

        #[test]
        fn rebase_stays_within_pi(a in -100.0f64..100.0, r in -100.0f64..100.0) {
            let b = rebase_angle(a, r);
            prop_assert!((b - r).abs() <= PI + 1e-9);
            prop_assert!(wrap_angle(b - a).abs() < 1e-9);
        }
    }
}
