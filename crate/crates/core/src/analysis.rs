//! Diagnostics for fits and subdivision runs: angle-defect sweeps over the
//! square `[-pi/2, pi/2]^2`, contraction ratios of one midpoint insertion
//! over the disk of radius `3 pi / 4`, discrete curvature, chord-length
//! parametrization and per-level convergence measures.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::AnalysisError;
use crate::fit::{fit_hermite, fit_normal, FitOptions};
use crate::geometry::{wrap_angle, HermiteCouple, Point2};
use crate::quadrature::QuadratureConfig;
use crate::subdivision::HermiteSequence;

/// Radius of the disk on which one midpoint insertion contracts.
pub const CONTRACTION_RADIUS: f64 = 3.0 * PI / 4.0;
/// Bound on the secant ratio `r`.
pub const SECANT_CONTRACTION: f64 = 0.8;
/// Bound on the angle ratio `rho`.
pub const ANGLE_CONTRACTION: f64 = 0.95;
/// Bound on `|defect|`, and on `|defect| / (|b0 + b1| |b|^2)`.
pub const DEFECT_BOUND: f64 = 1.0 / 800.0;

const RATIO_CUTOFF: f64 = 1e-3;
const RHO_EXCLUSION: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub grid_resolution: usize,
    pub newton_steps: usize,
    pub max_abs_defect: f64,
    /// `800 * max |defect|`.
    pub max_scaled_defect: f64,
    /// `800 * max |defect| / (|b0 + b1| (b0^2 + b1^2))` over points where the
    /// denominator is at least `1e-3`.
    pub max_ratio_defect: f64,
    pub argmax_location: (f64, f64),
    pub ratio_argmax_location: (f64, f64),
    /// Grid points where the fit failed.
    pub failures: usize,
}

/// Evaluate the angle defect on a uniform `resolution x resolution` grid
/// over `[-pi/2, pi/2]^2`.
pub fn defect_sweep(resolution: usize, quad: QuadratureConfig, newton_steps: usize) -> SweepReport {
    let resolution = resolution.max(3);
    let opts = FitOptions::new(newton_steps.min(crate::fit::MAX_NEWTON_STEPS), quad)
        .expect("newton steps clamped");
    let grid = |k: usize| -FRAC_PI_2 + PI * k as f64 / (resolution - 1) as f64;
    let mut report = SweepReport {
        grid_resolution: resolution,
        newton_steps: opts.newton_steps(),
        max_abs_defect: 0.0,
        max_scaled_defect: 0.0,
        max_ratio_defect: 0.0,
        argmax_location: (grid(0), grid(0)),
        ratio_argmax_location: (grid(0), grid(0)),
        failures: 0,
    };
    for i in 0..resolution {
        for j in 0..resolution {
            let (b0, b1) = (grid(i), grid(j));
            let defect = match fit_normal(b0, b1, &opts) {
                Ok((_, diag)) => diag.defect.abs(),
                Err(_) => {
                    report.failures += 1;
                    continue;
                }
            };
            if defect > report.max_abs_defect {
                report.max_abs_defect = defect;
                report.argmax_location = (b0, b1);
            }
            let denominator = (b0 + b1).abs() * (b0 * b0 + b1 * b1);
            if denominator >= RATIO_CUTOFF {
                let ratio = defect / denominator / DEFECT_BOUND;
                if ratio > report.max_ratio_defect {
                    report.max_ratio_defect = ratio;
                    report.ratio_argmax_location = (b0, b1);
                }
            }
        }
    }
    report.max_scaled_defect = report.max_abs_defect / DEFECT_BOUND;
    report
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    pub max_r: f64,
    pub max_rho: f64,
    pub samples: usize,
    pub argmax_r: (f64, f64),
    pub argmax_rho: (f64, f64),
    pub failures: usize,
}

/// Ratios of one midpoint insertion in normal position.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionStep {
    /// `max(|d'_0|, |d'_1|) / |d|`
    pub r: f64,
    /// `max(|b'_0|, |b'_1|) / |b|`; NaN at the origin.
    pub rho: f64,
    pub children: [(f64, f64); 2],
}

/// Insert the midpoint between `(0, beta0)` and `(1, beta1)` and measure
/// how secants and angle pairs shrink.
pub fn contraction_step(
    beta0: f64,
    beta1: f64,
    fit: &FitOptions,
) -> Result<ContractionStep, crate::error::FitError> {
    let h0 = HermiteCouple::new(Point2::ZERO, beta0);
    let h1 = HermiteCouple::new(Point2::ONE, beta1);
    let (segment, _) = fit_hermite(&h0, &h1, fit)?;
    let mid = segment.eval(0.5);
    let d0 = mid.point;
    let d1 = Point2::ONE - mid.point;
    let (phi0, phi1) = (d0.arg(), d1.arg());
    let left = (wrap_angle(beta0 - phi0), wrap_angle(mid.angle - phi0));
    let right = (wrap_angle(mid.angle - phi1), wrap_angle(beta1 - phi1));
    let norm = beta0.hypot(beta1);
    let child = left.0.hypot(left.1).max(right.0.hypot(right.1));
    Ok(ContractionStep {
        r: d0.norm().max(d1.norm()),
        rho: if norm > 0.0 { child / norm } else { f64::NAN },
        children: [left, right],
    })
}

/// Deterministic quasi-uniform points in the disk of radius `radius`
/// (Vogel spiral), including points close to the rim.
pub fn disk_samples(samples: usize, radius: f64) -> impl Iterator<Item = (f64, f64)> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..samples).map(move |k| {
        let r = radius * ((k as f64 + 0.5) / samples as f64).sqrt();
        let theta = golden * k as f64;
        (r * theta.cos(), r * theta.sin())
    })
}

/// Maxima of the contraction ratios over the disk of radius `3 pi / 4`.
pub fn contraction_sweep(samples: usize, fit: &FitOptions) -> ContractionReport {
    let mut report = ContractionReport {
        max_r: 0.0,
        max_rho: 0.0,
        samples,
        argmax_r: (0.0, 0.0),
        argmax_rho: (0.0, 0.0),
        failures: 0,
    };
    // rim points first, the ratios peak at the boundary
    let rim = (samples / 16).max(8);
    let rim_points = (0..rim).map(|k| {
        let theta = 2.0 * PI * k as f64 / rim as f64;
        (
            CONTRACTION_RADIUS * theta.cos(),
            CONTRACTION_RADIUS * theta.sin(),
        )
    });
    let interior = disk_samples(samples.saturating_sub(rim), CONTRACTION_RADIUS);
    for (b0, b1) in rim_points.chain(interior) {
        let step = match contraction_step(b0, b1, fit) {
            Ok(step) => step,
            Err(_) => {
                report.failures += 1;
                continue;
            }
        };
        if step.r > report.max_r {
            report.max_r = step.r;
            report.argmax_r = (b0, b1);
        }
        if b0.hypot(b1) >= RHO_EXCLUSION && step.rho > report.max_rho {
            report.max_rho = step.rho;
            report.argmax_rho = (b0, b1);
        }
    }
    report
}

fn curvature_of_triple(a: Point2, b: Point2, c: Point2) -> Option<f64> {
    let (ab, bc, ca) = (b - a, c - b, a - c);
    let denominator = ab.norm() * bc.norm() * ca.norm();
    if denominator == 0.0 {
        return None;
    }
    Some(2.0 * ab.cross(bc) / denominator)
}

/// Signed curvature at every point: reciprocal radius of the circle
/// through the point and its two neighbours, positive for left turns.
/// Open polylines copy the neighbouring value to both ends.
pub fn estimate_curvature(points: &[Point2], closed: bool) -> Result<Vec<f64>, AnalysisError> {
    let n = points.len();
    if n < 3 {
        return Err(AnalysisError::TooFewPoints { len: n, min: 3 });
    }
    let check = |i: usize, j: usize, k: usize| -> Result<f64, AnalysisError> {
        for (x, y) in [(i, j), (j, k), (k, i)] {
            if points[x] == points[y] {
                return Err(AnalysisError::DegenerateTriple {
                    index: x.min(y),
                    other: x.max(y),
                });
            }
        }
        curvature_of_triple(points[i], points[j], points[k])
            .ok_or(AnalysisError::DegenerateTriple { index: i, other: k })
    };
    let mut kappa = Vec::with_capacity(n);
    if closed {
        for j in 0..n {
            kappa.push(check((j + n - 1) % n, j, (j + 1) % n)?);
        }
    } else {
        kappa.push(0.0);
        for j in 1..n - 1 {
            kappa.push(check(j - 1, j, j + 1)?);
        }
        kappa.push(kappa[n - 2]);
        kappa[0] = kappa[1];
    }
    Ok(kappa)
}

/// Cumulative chord length scaled so that the whole loop (closed) or
/// polyline (open) has length one.
pub fn chord_length_param(points: &[Point2], closed: bool) -> Result<Vec<f64>, AnalysisError> {
    let n = points.len();
    if n < 2 {
        return Err(AnalysisError::TooFewPoints { len: n, min: 2 });
    }
    let mut s = Vec::with_capacity(n);
    let mut acc = 0.0;
    s.push(0.0);
    for w in points.windows(2) {
        acc += w[0].distance(w[1]);
        s.push(acc);
    }
    let total = if closed {
        acc + points[n - 1].distance(points[0])
    } else {
        acc
    };
    if total > 0.0 {
        let sigma = 1.0 / total;
        s.iter_mut().for_each(|v| *v *= sigma);
    }
    Ok(s)
}

/// Curvature plotted over normalized chord length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
}

impl CurvatureProfile {
    pub fn of_sequence(seq: &HermiteSequence) -> Result<Self, AnalysisError> {
        let points: Vec<Point2> = seq.couples().iter().map(|h| h.point).collect();
        Ok(CurvatureProfile {
            s: chord_length_param(&points, seq.is_closed())?,
            kappa: estimate_curvature(&points, seq.is_closed())?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelDiagnostics {
    pub level: usize,
    pub max_secant: f64,
    pub max_beta_norm: f64,
    pub max_exterior_angle: f64,
    /// `max |alpha_j - arg d_j|`
    pub max_tangent_mismatch: f64,
}

/// Per-level maxima of secant length, angle-pair norm, exterior angle and
/// tangent-to-secant mismatch.
pub fn level_diagnostics(level: usize, seq: &HermiteSequence) -> LevelDiagnostics {
    let couples = seq.couples();
    let n = couples.len();
    let segments = seq.segment_count();
    let mut diag = LevelDiagnostics {
        level,
        max_secant: 0.0,
        max_beta_norm: 0.0,
        max_exterior_angle: 0.0,
        max_tangent_mismatch: 0.0,
    };
    let mut secant_angles = Vec::with_capacity(segments);
    for j in 0..segments {
        let (h0, h1) = (&couples[j], &couples[(j + 1) % n]);
        let d = h1.point - h0.point;
        let phi = d.arg();
        let b0 = wrap_angle(h0.angle - phi);
        let b1 = wrap_angle(h1.angle - phi);
        diag.max_secant = diag.max_secant.max(d.norm());
        diag.max_beta_norm = diag.max_beta_norm.max(b0.hypot(b1));
        diag.max_tangent_mismatch = diag.max_tangent_mismatch.max(b0.abs());
        secant_angles.push(phi);
    }
    let first = if seq.is_closed() { 0 } else { 1 };
    for j in first..segments {
        let prev = secant_angles[(j + segments - 1) % segments];
        let ext = wrap_angle(secant_angles[j] - prev).abs();
        diag.max_exterior_angle = diag.max_exterior_angle.max(ext);
    }
    diag
}

pub fn convergence_diagnostics(levels: &[HermiteSequence]) -> Vec<LevelDiagnostics> {
    levels
        .iter()
        .enumerate()
        .map(|(l, seq)| level_diagnostics(l, seq))
        .collect()
}

/// `max |p_j - m + i r exp(i alpha_j)| / r` over all levels.
pub fn circle_reproduction_error(levels: &[HermiteSequence], m: Point2, r: f64) -> f64 {
    levels
        .iter()
        .flat_map(|seq| seq.couples())
        .map(|h| (h.point - m + Point2::I * Point2::cis(h.angle) * r).norm() / r)
        .fold(0.0, f64::max)
}

/// One named bound check of [`verify_bounds`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub defect: SweepReport,
    pub newton_one: SweepReport,
    pub newton_two: SweepReport,
    pub contraction: ContractionReport,
    pub checks: Vec<BoundCheck>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Tolerance added to the sampled contraction bounds, which are read off
/// numerically rather than proven.
pub const CONTRACTION_MARGIN: f64 = 0.01;

/// Run the defect sweeps (plain, one and two Newton steps) and the
/// contraction sweep, and compare against the published bounds.
pub fn verify_bounds(resolution: usize, samples: usize) -> VerificationReport {
    let quad = QuadratureConfig::ACCURATE;
    let defect = defect_sweep(resolution, quad, 0);
    let newton_one = defect_sweep(resolution, quad, 1);
    let newton_two = defect_sweep(resolution, quad, 2);
    let contraction = contraction_sweep(samples, &FitOptions::default());
    let check = |name: &str, value: f64, bound: f64, strict: bool| BoundCheck {
        name: name.to_string(),
        value,
        bound,
        pass: if strict {
            value < bound
        } else {
            value <= bound
        },
    };
    let checks = vec![
        check("800*max|defect|", defect.max_scaled_defect, 1.02, false),
        check(
            "800*max|defect|/cubic",
            defect.max_ratio_defect,
            1.02,
            false,
        ),
        check(
            "max|defect| after 1 newton step",
            newton_one.max_abs_defect,
            1e-7,
            true,
        ),
        check(
            "max|defect| after 2 newton steps",
            newton_two.max_abs_defect,
            1e-12,
            true,
        ),
        check(
            "max secant ratio r",
            contraction.max_r,
            SECANT_CONTRACTION + CONTRACTION_MARGIN,
            false,
        ),
        check(
            "max angle ratio rho",
            contraction.max_rho,
            ANGLE_CONTRACTION + CONTRACTION_MARGIN,
            false,
        ),
        check(
            "fit failures",
            (defect.failures + newton_one.failures + newton_two.failures + contraction.failures)
                as f64,
            0.0,
            false,
        ),
    ];
    VerificationReport {
        defect,
        newton_one,
        newton_two,
        contraction,
        checks,
    }
}
