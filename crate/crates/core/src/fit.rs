//! Approximate solution of the two-point geometric Hermite problem with
//! clothoids.
//!
//! In normal position the boundary angles `(beta0, beta1)` determine the
//! tangent angle `beta(t)` up to its midpoint value. That value is taken
//! from the odd symmetric cubic [`f_tilde`], optionally polished by Newton
//! steps on the angle defect `arg I(beta)`. Mapping the normalized curve
//! back through the secant gives a segment interpolating both points
//! exactly and both tangent angles up to the defect.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{ConfigError, FitError};
use crate::geometry::{similarity_to_normal, HermiteCouple, Point2, QuadraticAngle};
use crate::quadrature::{angle_integral, midpoint_weighted_integral, QuadratureConfig};

/// Below this modulus `I(beta)` is treated as zero.
pub const VANISHING_INTEGRAL: f64 = 1e-9;
/// Below this modulus the Newton denominator is treated as zero.
pub const NEWTON_BREAKDOWN: f64 = 1e-6;
pub const MAX_NEWTON_STEPS: usize = 8;

/// Cubic approximation of the midpoint tangent angle,
/// `(b0 + b1) * ((b0^2 + b1^2) / 68 - b0 b1 / 46 - 1/4)`.
#[inline]
pub fn f_tilde(beta0: f64, beta1: f64) -> f64 {
    (beta0 + beta1) * ((beta0 * beta0 + beta1 * beta1) / 68.0 - beta0 * beta1 / 46.0 - 0.25)
}

/// How boundary angles outside the square `[-pi/2, pi/2]^2` are handled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainPolicy {
    /// Reject anything outside the square.
    Strict,
    /// Project onto the square before fitting.
    Clamp,
    /// Accept any pair with Euclidean norm below `pi`.
    #[default]
    Permissive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFitOptions")]
pub struct FitOptions {
    newton_steps: usize,
    pub quad: QuadratureConfig,
    pub domain_policy: DomainPolicy,
}

#[derive(Deserialize)]
struct RawFitOptions {
    #[serde(default)]
    newton_steps: usize,
    #[serde(default)]
    quad: QuadratureConfig,
    #[serde(default)]
    domain_policy: DomainPolicy,
}

impl TryFrom<RawFitOptions> for FitOptions {
    type Error = ConfigError;
    fn try_from(raw: RawFitOptions) -> Result<Self, ConfigError> {
        Ok(FitOptions::new(raw.newton_steps, raw.quad)?.with_policy(raw.domain_policy))
    }
}

impl Default for FitOptions {
    /// Plain cubic approximation, three-node quadrature, permissive domain.
    fn default() -> Self {
        FitOptions {
            newton_steps: 0,
            quad: QuadratureConfig::default(),
            domain_policy: DomainPolicy::Permissive,
        }
    }
}

impl FitOptions {
    pub fn new(newton_steps: usize, quad: QuadratureConfig) -> Result<Self, ConfigError> {
        if newton_steps > MAX_NEWTON_STEPS {
            return Err(ConfigError::NewtonSteps(newton_steps));
        }
        Ok(FitOptions {
            newton_steps,
            quad,
            domain_policy: DomainPolicy::Permissive,
        })
    }

    /// Two Newton steps with accurate quadrature, for reference curves.
    pub fn reference() -> Self {
        FitOptions {
            newton_steps: 2,
            quad: QuadratureConfig::ACCURATE,
            domain_policy: DomainPolicy::Permissive,
        }
    }

    pub fn with_policy(mut self, policy: DomainPolicy) -> Self {
        self.domain_policy = policy;
        self
    }

    pub fn newton_steps(&self) -> usize {
        self.newton_steps
    }
}

/// Angles and residual of a normal-position fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub beta0: f64,
    pub beta1: f64,
    pub beta_half: f64,
    /// `arg I(beta)` of the final angle function.
    pub defect: f64,
    pub newton_steps_taken: usize,
    /// Whether the input pair was projected onto the square.
    pub clamped: bool,
}

fn checked_integral(beta: &QuadraticAngle, quad: QuadratureConfig) -> Result<Point2, FitError> {
    let i1 = angle_integral(beta, 1.0, quad);
    let magnitude = i1.norm();
    if !(magnitude >= VANISHING_INTEGRAL) {
        return Err(FitError::VanishingIntegral { magnitude });
    }
    Ok(i1)
}

/// `arg I(beta)` in `(-pi, pi]`.
pub fn angle_defect(beta: &QuadraticAngle, quad: QuadratureConfig) -> Result<f64, FitError> {
    checked_integral(beta, quad).map(Point2::arg)
}

/// One Newton step on `arg I(beta) = 0` in the midpoint value.
pub fn newton_step(
    beta: &QuadraticAngle,
    quad: QuadratureConfig,
) -> Result<QuadraticAngle, FitError> {
    let i1 = checked_integral(beta, quad)?;
    let weighted = midpoint_weighted_integral(beta, quad);
    let denominator = (weighted / i1).x;
    if !(denominator.abs() >= NEWTON_BREAKDOWN) {
        return Err(FitError::NewtonBreakdown { denominator });
    }
    Ok(QuadraticAngle {
        bh: beta.bh - i1.arg() / denominator,
        ..*beta
    })
}

fn admit(beta0: f64, beta1: f64, policy: DomainPolicy) -> Result<(f64, f64, bool), FitError> {
    let violation = FitError::DomainViolation { beta0, beta1 };
    if !(beta0.is_finite() && beta1.is_finite()) {
        return Err(violation);
    }
    let in_square = beta0.abs() <= FRAC_PI_2 && beta1.abs() <= FRAC_PI_2;
    match policy {
        DomainPolicy::Strict if in_square => Ok((beta0, beta1, false)),
        DomainPolicy::Strict => Err(violation),
        DomainPolicy::Clamp => Ok((
            beta0.clamp(-FRAC_PI_2, FRAC_PI_2),
            beta1.clamp(-FRAC_PI_2, FRAC_PI_2),
            !in_square,
        )),
        DomainPolicy::Permissive if beta0.hypot(beta1) < PI => Ok((beta0, beta1, false)),
        DomainPolicy::Permissive => Err(violation),
    }
}

/// Fit the tangent angle of a clothoid in normal position.
pub fn fit_normal(
    beta0: f64,
    beta1: f64,
    opts: &FitOptions,
) -> Result<(QuadraticAngle, FitDiagnostics), FitError> {
    let (b0, b1, clamped) = admit(beta0, beta1, opts.domain_policy)?;
    let mut beta = QuadraticAngle::new(b0, f_tilde(b0, b1), b1);
    for _ in 0..opts.newton_steps {
        beta = newton_step(&beta, opts.quad)?;
    }
    let defect = angle_defect(&beta, opts.quad)?;
    Ok((
        beta,
        FitDiagnostics {
            beta0: b0,
            beta1: b1,
            beta_half: beta.bh,
            defect,
            newton_steps_taken: opts.newton_steps,
            clamped,
        },
    ))
}

/// An approximate clothoid in general position,
/// `p(t) = p0 + d * I(beta, t) / I(beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClothoidSegment {
    pub p0: Point2,
    pub p1: Point2,
    /// Secant `p1 - p0`.
    pub d: Point2,
    pub beta: QuadraticAngle,
    /// Cached `I(beta)`.
    pub i1: Point2,
    /// `arg d`, shifted onto the branch of the start couple's angle.
    pub secant_angle: f64,
    pub quad: QuadratureConfig,
}

impl ClothoidSegment {
    pub fn point(&self, t: f64) -> Point2 {
        if t == 0.0 {
            return self.p0;
        }
        if t == 1.0 {
            return self.p1;
        }
        self.p0 + self.d * (angle_integral(&self.beta, t, self.quad) / self.i1)
    }

    /// Tangent angle, continuous in `t`.
    pub fn angle(&self, t: f64) -> f64 {
        self.beta.eval(t) + self.secant_angle - self.i1.arg()
    }

    pub fn eval(&self, t: f64) -> HermiteCouple {
        HermiteCouple::new(self.point(t), self.angle(t))
    }

    /// Constant speed `|p'|`.
    pub fn speed(&self) -> f64 {
        self.d.norm() / self.i1.norm()
    }

    pub fn curvature(&self, t: f64) -> f64 {
        self.beta.derivative(t) / self.speed()
    }

    pub fn defect(&self) -> f64 {
        self.i1.arg()
    }

    /// `n + 1` evenly spaced samples over `[0, 1]`.
    pub fn sample(&self, n: usize) -> Vec<HermiteCouple> {
        let n = n.max(1);
        (0..=n).map(|k| self.eval(k as f64 / n as f64)).collect()
    }
}

/// Free-function form of [`ClothoidSegment::eval`].
pub fn eval_segment(seg: &ClothoidSegment, t: f64) -> HermiteCouple {
    seg.eval(t)
}

/// Fit an approximate clothoid through two Hermite couples.
pub fn fit_hermite(
    h0: &HermiteCouple,
    h1: &HermiteCouple,
    opts: &FitOptions,
) -> Result<(ClothoidSegment, FitDiagnostics), FitError> {
    let normal = similarity_to_normal(h0.point, h1.point, h0.angle, h1.angle)?;
    let (beta, diagnostics) = fit_normal(normal.beta0, normal.beta1, opts)?;
    let i1 = angle_integral(&beta, 1.0, opts.quad);
    let segment = ClothoidSegment {
        p0: h0.point,
        p1: h1.point,
        d: normal.d,
        beta,
        i1,
        secant_angle: h0.angle - normal.beta0,
        quad: opts.quad,
    };
    Ok((segment, diagnostics))
}
