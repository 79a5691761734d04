//! Geometric Hermite subdivision built on the clothoid average.
//!
//! `a h0 (+) b h1` with `a + b = 1` fits the approximate clothoid through
//! `h0` and `h1` and evaluates it at `t = b`. On collinear data this is the
//! affine combination `a p0 + b p1`; `b` outside `[0, 1]` extrapolates.
//!
//! Operators provided:
//!
//! - [`refine_s1`]: keep every couple, insert the midpoint average between
//!   neighbours (Lane-Riesenfeld degree 1).
//! - [`average_a`]: replace the sequence by the midpoint averages of
//!   neighbours.
//! - [`refine_sn`]: `A^(n-1) S1`.
//! - [`refine_four_point`]: interpolatory four-point rule with tension
//!   `omega < 0`.

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, FitError, SubdivisionError};
use crate::fit::{fit_hermite, FitOptions};
use crate::geometry::{degenerate_secant_threshold, rebase_angle, HermiteCouple};

/// Largest sequence [`subdivide`] will produce.
pub const MAX_COUPLES: usize = 1 << 20;
/// Largest number of rounds [`subdivide`] accepts.
pub const MAX_LEVELS: usize = 12;

/// An ordered list of Hermite couples, open or periodic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence")]
pub struct HermiteSequence {
    closed: bool,
    couples: Vec<HermiteCouple>,
}

#[derive(Deserialize)]
struct RawSequence {
    closed: bool,
    couples: Vec<HermiteCouple>,
}

impl TryFrom<RawSequence> for HermiteSequence {
    type Error = SubdivisionError;
    fn try_from(raw: RawSequence) -> Result<Self, SubdivisionError> {
        HermiteSequence::new(raw.couples, raw.closed)
    }
}

impl HermiteSequence {
    /// Validates length, finiteness and distinctness of consecutive points
    /// (including last/first for closed sequences).
    pub fn new(couples: Vec<HermiteCouple>, closed: bool) -> Result<Self, SubdivisionError> {
        let len = couples.len();
        if len < 2 {
            return Err(SubdivisionError::SequenceTooShort { len, min: 2 });
        }
        if let Some(index) = couples.iter().position(|h| !h.is_finite()) {
            return Err(SubdivisionError::NonFinite { index });
        }
        let seq = HermiteSequence { closed, couples };
        for index in 0..seq.segment_count() {
            let next = seq.next_index(index);
            let (p, q) = (seq.couples[index].point, seq.couples[next].point);
            if !(p.distance(q) > degenerate_secant_threshold(p, q)) {
                return Err(SubdivisionError::CoincidentPoints { index, next });
            }
        }
        Ok(seq)
    }

    pub fn open(couples: Vec<HermiteCouple>) -> Result<Self, SubdivisionError> {
        Self::new(couples, false)
    }

    pub fn closed(couples: Vec<HermiteCouple>) -> Result<Self, SubdivisionError> {
        Self::new(couples, true)
    }

    // operator outputs skip validation; degeneracies surface in the next fit
    fn from_parts(couples: Vec<HermiteCouple>, closed: bool) -> Self {
        HermiteSequence { closed, couples }
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn couples(&self) -> &[HermiteCouple] {
        &self.couples
    }

    pub fn into_couples(self) -> Vec<HermiteCouple> {
        self.couples
    }

    pub fn len(&self) -> usize {
        self.couples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.couples.is_empty()
    }

    /// Number of secants: `len` when closed, `len - 1` when open.
    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.couples.len()
        } else {
            self.couples.len() - 1
        }
    }

    fn next_index(&self, j: usize) -> usize {
        (j + 1) % self.couples.len()
    }

    /// Apply `f` to every couple.
    pub fn map<F>(&self, f: F) -> HermiteSequence
    where
        F: FnMut(&HermiteCouple) -> HermiteCouple,
    {
        HermiteSequence::from_parts(self.couples.iter().map(f).collect(), self.closed)
    }

    /// Closed copy with indices shifted so that couple `k` comes first.
    pub fn rotated(&self, k: usize) -> HermiteSequence {
        let mut couples = self.couples.clone();
        couples.rotate_left(k % self.couples.len());
        HermiteSequence::from_parts(couples, self.closed)
    }
}

impl std::ops::Index<usize> for HermiteSequence {
    type Output = HermiteCouple;
    fn index(&self, j: usize) -> &HermiteCouple {
        &self.couples[j]
    }
}

fn average_at(
    h0: &HermiteCouple,
    h1: &HermiteCouple,
    t: f64,
    opts: &FitOptions,
) -> Result<HermiteCouple, FitError> {
    let (segment, _) = fit_hermite(h0, h1, opts)?;
    Ok(segment.eval(t))
}

/// The clothoid average `a h0 (+) b h1`, evaluated at `t = b`.
pub fn clothoid_average(
    a: f64,
    h0: &HermiteCouple,
    b: f64,
    h1: &HermiteCouple,
    opts: &FitOptions,
) -> Result<HermiteCouple, SubdivisionError> {
    if !((a + b - 1.0).abs() <= 1e-12) {
        return Err(SubdivisionError::WeightSum { a, b });
    }
    average_at(h0, h1, b, opts).map_err(|source| SubdivisionError::Fit {
        index: 0,
        next: 1,
        source,
    })
}

fn midpoint(
    seq: &HermiteSequence,
    j: usize,
    opts: &FitOptions,
) -> Result<HermiteCouple, SubdivisionError> {
    let next = seq.next_index(j);
    average_at(&seq[j], &seq[next], 0.5, opts).map_err(|source| SubdivisionError::Fit {
        index: j,
        next,
        source,
    })
}

fn with_angle_near(mut h: HermiteCouple, reference: f64) -> HermiteCouple {
    h.angle = rebase_angle(h.angle, reference);
    h
}

/// Lane-Riesenfeld degree 1: `h'_{2j} = h_j`,
/// `h'_{2j+1} = 1/2 h_j (+) 1/2 h_{j+1}`.
pub fn refine_s1(
    seq: &HermiteSequence,
    opts: &FitOptions,
) -> Result<HermiteSequence, SubdivisionError> {
    let mut out = Vec::with_capacity(2 * seq.len());
    for j in 0..seq.len() {
        out.push(seq[j]);
        if j < seq.segment_count() {
            let mid = midpoint(seq, j, opts)?;
            out.push(with_angle_near(mid, seq[j].angle));
        }
    }
    Ok(HermiteSequence::from_parts(out, seq.closed))
}

/// Averaging operator: `h'_j = 1/2 h_j (+) 1/2 h_{j+1}`.
pub fn average_a(
    seq: &HermiteSequence,
    opts: &FitOptions,
) -> Result<HermiteSequence, SubdivisionError> {
    if !seq.closed && seq.len() < 3 {
        return Err(SubdivisionError::SequenceTooShort {
            len: seq.len(),
            min: 3,
        });
    }
    let mut out: Vec<HermiteCouple> = Vec::with_capacity(seq.segment_count());
    for j in 0..seq.segment_count() {
        let reference = out.last().map_or(seq[j].angle, |h| h.angle);
        out.push(with_angle_near(midpoint(seq, j, opts)?, reference));
    }
    Ok(HermiteSequence::from_parts(out, seq.closed))
}

/// Lane-Riesenfeld degree `n`: `A^(n-1) S1`.
pub fn refine_sn(
    seq: &HermiteSequence,
    n: usize,
    opts: &FitOptions,
) -> Result<HermiteSequence, SubdivisionError> {
    if !(1..=8).contains(&n) {
        return Err(ConfigError::Degree(n).into());
    }
    let mut out = refine_s1(seq, opts)?;
    for _ in 1..n {
        out = average_a(&out, opts)?;
    }
    Ok(out)
}

/// How the two extrapolated couples of the four-point rule are combined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourPointOuter {
    /// Equal-weight clothoid average.
    #[default]
    ClothoidAverage,
    /// Arithmetic mean of points and of (branch-aligned) angles.
    ComponentwiseMean,
}

fn check_tension(omega: f64) -> Result<(), ConfigError> {
    if (-0.25..0.0).contains(&omega) {
        Ok(())
    } else {
        Err(ConfigError::Tension(omega))
    }
}

/// Interpolatory four-point rule:
/// `h'_{2j} = h_j`, `h'_{2j+1} = 1/2 e- (+) 1/2 e+` with
/// `e- = omega h_{j-1} (+) (1 - omega) h_j` and
/// `e+ = (1 - omega) h_{j+1} (+) omega h_{j+2}`.
///
/// Open sequences repeat their end couples; the average of a couple with
/// itself is that couple, so the missing extrapolation is the end couple.
pub fn refine_four_point(
    seq: &HermiteSequence,
    omega: f64,
    opts: &FitOptions,
    outer: FourPointOuter,
) -> Result<HermiteSequence, SubdivisionError> {
    check_tension(omega)?;
    let len = seq.len();
    let min = if seq.closed { 3 } else { 4 };
    if len < min {
        return Err(SubdivisionError::SequenceTooShort { len, min });
    }
    let fit_err = |index: usize, next: usize| {
        move |source| SubdivisionError::Fit {
            index,
            next,
            source,
        }
    };
    let mut out = Vec::with_capacity(2 * len);
    for j in 0..len {
        out.push(seq[j]);
        if j >= seq.segment_count() {
            continue;
        }
        let j1 = seq.next_index(j);
        let left = if seq.closed || j > 0 {
            let jm = (j + len - 1) % len;
            let e = average_at(&seq[jm], &seq[j], 1.0 - omega, opts).map_err(fit_err(jm, j))?;
            with_angle_near(e, seq[j].angle)
        } else {
            seq[j]
        };
        let right = if seq.closed || j1 + 1 < len {
            let j2 = seq.next_index(j1);
            let e = average_at(&seq[j1], &seq[j2], omega, opts).map_err(fit_err(j1, j2))?;
            with_angle_near(e, seq[j1].angle)
        } else {
            seq[j1]
        };
        let inserted = match outer {
            FourPointOuter::ClothoidAverage => {
                average_at(&left, &right, 0.5, opts).map_err(fit_err(j, j1))?
            }
            FourPointOuter::ComponentwiseMean => {
                let right_angle = rebase_angle(right.angle, left.angle);
                HermiteCouple::new(
                    (left.point + right.point) * 0.5,
                    0.5 * (left.angle + right_angle),
                )
            }
        };
        out.push(with_angle_near(inserted, seq[j].angle));
    }
    Ok(HermiteSequence::from_parts(out, seq.closed))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchemeKind {
    LaneRiesenfeld { n: usize },
    FourPoint { omega: f64 },
}

/// A subdivision scheme with its fit settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeSpec {
    pub kind: SchemeKind,
    pub fit: FitOptions,
    #[serde(default)]
    pub outer: FourPointOuter,
}

impl SchemeSpec {
    pub fn lane_riesenfeld(n: usize, fit: FitOptions) -> Result<Self, ConfigError> {
        let spec = SchemeSpec {
            kind: SchemeKind::LaneRiesenfeld { n },
            fit,
            outer: FourPointOuter::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn four_point(omega: f64, fit: FitOptions) -> Result<Self, ConfigError> {
        let spec = SchemeSpec {
            kind: SchemeKind::FourPoint { omega },
            fit,
            outer: FourPointOuter::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_outer(mut self, outer: FourPointOuter) -> Self {
        self.outer = outer;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match self.kind {
            SchemeKind::LaneRiesenfeld { n } if (1..=8).contains(&n) => Ok(()),
            SchemeKind::LaneRiesenfeld { n } => Err(ConfigError::Degree(n)),
            SchemeKind::FourPoint { omega } => check_tension(omega),
        }
    }

    pub fn is_interpolatory(&self) -> bool {
        matches!(
            self.kind,
            SchemeKind::LaneRiesenfeld { n: 1 } | SchemeKind::FourPoint { .. }
        )
    }

    /// Length of one refinement of a sequence with `len` couples.
    pub fn output_len(&self, len: usize, closed: bool) -> usize {
        match (self.kind, closed) {
            (_, true) => 2 * len,
            (SchemeKind::LaneRiesenfeld { n }, false) => (2 * len).saturating_sub(n),
            (SchemeKind::FourPoint { .. }, false) => 2 * len - 1,
        }
    }

    /// One round of refinement.
    pub fn apply(&self, seq: &HermiteSequence) -> Result<HermiteSequence, SubdivisionError> {
        match self.kind {
            SchemeKind::LaneRiesenfeld { n } => refine_sn(seq, n, &self.fit),
            SchemeKind::FourPoint { omega } => refine_four_point(seq, omega, &self.fit, self.outer),
        }
    }
}

/// Run `levels` rounds and return every level, starting with the input.
pub fn subdivide(
    seq: &HermiteSequence,
    scheme: &SchemeSpec,
    levels: usize,
) -> Result<Vec<HermiteSequence>, SubdivisionError> {
    scheme.validate()?;
    if levels > MAX_LEVELS {
        return Err(SubdivisionError::TooManyLevels {
            levels,
            max: MAX_LEVELS,
        });
    }
    let mut out = vec![seq.clone()];
    for _ in 0..levels {
        let last = out.last().expect("nonempty");
        let couples = scheme.output_len(last.len(), last.closed);
        if couples > MAX_COUPLES {
            return Err(SubdivisionError::ResourceLimit {
                couples,
                limit: MAX_COUPLES,
            });
        }
        let next = scheme.apply(last)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn line(n: usize) -> Vec<HermiteCouple> {
        (0..n)
            .map(|j| HermiteCouple::new(Point2::new(j as f64, 0.0), 0.0))
            .collect()
    }

    fn circle(k: usize, radius: f64) -> HermiteSequence {
        let couples = (0..k)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / k as f64;
                HermiteCouple::new(Point2::from_polar(radius, theta), theta + FRAC_PI_2)
            })
            .collect();
        HermiteSequence::closed(couples).unwrap()
    }

    fn on_circle(seq: &HermiteSequence, radius: f64, tol: f64) {
        for h in seq.couples() {
            assert!((h.point.norm() - radius).abs() <= tol * radius, "{h:?}");
            // p = m - i r exp(i alpha)
            let predicted = -(Point2::I * Point2::cis(h.angle)) * radius;
            assert!((predicted - h.point).norm() <= 10.0 * tol * radius, "{h:?}");
        }
    }

    #[test]
    fn sequence_validation() {
        assert!(matches!(
            HermiteSequence::open(line(1)),
            Err(SubdivisionError::SequenceTooShort { .. })
        ));
        let mut couples = line(3);
        couples[2].point = couples[1].point;
        assert!(matches!(
            HermiteSequence::open(couples),
            Err(SubdivisionError::CoincidentPoints { index: 1, next: 2 })
        ));
        let mut couples = line(3);
        couples[2].point = couples[0].point;
        assert!(HermiteSequence::open(couples.clone()).is_ok());
        assert!(matches!(
            HermiteSequence::closed(couples),
            Err(SubdivisionError::CoincidentPoints { index: 2, next: 0 })
        ));
        let mut couples = line(3);
        couples[1].angle = f64::NAN;
        assert!(matches!(
            HermiteSequence::open(couples),
            Err(SubdivisionError::NonFinite { index: 1 })
        ));
    }

    #[test]
    fn average_examples() {
        let opts = FitOptions::default();
        let h0 = HermiteCouple::new(Point2::ZERO, 0.0);
        let h1 = HermiteCouple::new(Point2::ONE, 0.0);
        let m = clothoid_average(0.5, &h0, 0.5, &h1, &opts).unwrap();
        assert_abs_diff_eq!(m.point.x, 0.5, epsilon = 1e-15);
        assert_eq!(m.point.y, 0.0);
        assert_eq!(m.angle, 0.0);

        let omega = -1.0 / 18.0;
        let e = clothoid_average(omega, &h0, 1.0 - omega, &h1, &opts).unwrap();
        assert_abs_diff_eq!(e.point.x, 19.0 / 18.0, epsilon = 1e-15);
        assert_eq!(e.point.y, 0.0);

        let h0 = HermiteCouple::new(Point2::ZERO, FRAC_PI_4);
        let h1 = HermiteCouple::new(Point2::ONE, -FRAC_PI_4);
        let m = clothoid_average(0.5, &h0, 0.5, &h1, &FitOptions::reference()).unwrap();
        // sagitta of the arc with R = 1/sqrt(2) and half-angle pi/4
        let r = FRAC_PI_4.sin().recip() / 2.0;
        assert_abs_diff_eq!(m.point.x, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(m.point.y, r * (1.0 - FRAC_PI_4.cos()), epsilon = 1e-14);
        assert_abs_diff_eq!(m.point.y, 0.207_106_781_186_547_5, epsilon = 1e-14);
        assert_abs_diff_eq!(m.angle, 0.0, epsilon = 1e-14);

        assert!(matches!(
            clothoid_average(0.5, &h0, 0.6, &h1, &opts),
            Err(SubdivisionError::WeightSum { .. })
        ));
        assert_eq!(
            clothoid_average(1.0, &h0, 0.0, &h1, &opts).unwrap().point,
            h0.point
        );
        assert_eq!(
            clothoid_average(0.0, &h0, 1.0, &h1, &opts).unwrap().point,
            h1.point
        );
    }

    #[test]
    fn s1_lengths_and_interpolation() {
        let opts = FitOptions::default();
        let open = HermiteSequence::open(line(2)).unwrap();
        let r = refine_s1(&open, &opts).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r
            .couples()
            .iter()
            .all(|h| h.point.y == 0.0 && h.angle == 0.0));
        let c = circle(4, 1.0);
        let r = refine_s1(&c, &opts).unwrap();
        assert_eq!(r.len(), 8);
        for j in 0..4 {
            assert_eq!(r[2 * j], c[j]);
        }
        on_circle(&r, 1.0, 1e-5);
    }

    #[test]
    fn s1_of_parallel_normals_is_odd_symmetric() {
        // two couples with parallel normals orthogonal to the secant
        let h0 = HermiteCouple::new(Point2::ZERO, FRAC_PI_2);
        let h1 = HermiteCouple::new(Point2::ONE, FRAC_PI_2);
        let seq = HermiteSequence::open(vec![h0, h1]).unwrap();
        let scheme = SchemeSpec::lane_riesenfeld(1, FitOptions::reference()).unwrap();
        let levels = subdivide(&seq, &scheme, 4).unwrap();
        let last = levels.last().unwrap();
        let n = last.len();
        assert_eq!(n, 17);
        let center = Point2::new(0.5, 0.0);
        for j in 0..n {
            let a = last[j].point - center;
            let b = last[n - 1 - j].point - center;
            assert!((a + b).norm() < 1e-10, "{j}");
        }
        // an S-shape: points on both sides of the secant
        assert!(last.couples().iter().any(|h| h.point.y > 0.05));
        assert!(last.couples().iter().any(|h| h.point.y < -0.05));
    }

    #[test]
    fn a_lengths() {
        let opts = FitOptions::default();
        let open = HermiteSequence::open(line(4)).unwrap();
        let r = average_a(&open, &opts).unwrap();
        assert_eq!(r.len(), 3);
        for (j, h) in r.couples().iter().enumerate() {
            assert_abs_diff_eq!(h.point.x, j as f64 + 0.5, epsilon = 1e-14);
        }
        let short = HermiteSequence::open(line(2)).unwrap();
        assert!(matches!(
            average_a(&short, &opts),
            Err(SubdivisionError::SequenceTooShort { .. })
        ));
        let c = circle(6, 2.0);
        let r = average_a(&c, &FitOptions::reference()).unwrap();
        assert_eq!(r.len(), 6);
        on_circle(&r, 2.0, 1e-12);
        for (j, h) in r.couples().iter().enumerate() {
            let expected = 2.0 * PI * (j as f64 + 0.5) / 6.0;
            assert_abs_diff_eq!(
                crate::geometry::wrap_angle(h.point.arg() - expected),
                0.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn sn_composition() {
        let opts = FitOptions::default();
        let c = circle(5, 1.0);
        assert_eq!(
            refine_sn(&c, 1, &opts).unwrap(),
            refine_s1(&c, &opts).unwrap()
        );
        let s2 = refine_sn(&c, 2, &opts).unwrap();
        let manual = average_a(&refine_s1(&c, &opts).unwrap(), &opts).unwrap();
        assert_eq!(s2, manual);
        on_circle(&s2, 1.0, 1e-5);
        assert!(refine_sn(&c, 0, &opts).is_err());
        assert!(refine_sn(&c, 9, &opts).is_err());
        let open = HermiteSequence::open(line(3)).unwrap();
        assert_eq!(refine_sn(&open, 3, &opts).unwrap().len(), 3);
    }

    #[test]
    fn four_point_on_a_line_is_classical() {
        let opts = FitOptions::default();
        let uneven = [0.0, 0.7, 1.9, 2.4, 3.8, 5.0];
        let even = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5];
        for (xs, omega) in [
            (uneven, -1.0 / 18.0),
            (uneven, -1.0 / 9.0),
            (even, -1.0 / 18.0),
            (even, -0.25),
        ] {
            let couples: Vec<_> = xs
                .iter()
                .map(|&x| HermiteCouple::new(Point2::new(x, 0.0), 0.0))
                .collect();
            let seq = HermiteSequence::open(couples).unwrap();
            let r = refine_four_point(&seq, omega, &opts, FourPointOuter::ClothoidAverage).unwrap();
            assert_eq!(r.len(), 2 * xs.len() - 1);
            for j in 1..xs.len() - 2 {
                let w = -omega / 2.0;
                let expected =
                    -w * xs[j - 1] + (0.5 + w) * xs[j] + (0.5 + w) * xs[j + 1] - w * xs[j + 2];
                assert_abs_diff_eq!(r[2 * j + 1].point.x, expected, epsilon = 1e-12);
                assert_eq!(r[2 * j + 1].point.y, 0.0);
            }
            // boundary: repeated end couple
            let expected0 = 0.5 * xs[0] + 0.5 * ((1.0 - omega) * xs[1] + omega * xs[2]);
            assert_abs_diff_eq!(r[1].point.x, expected0, epsilon = 1e-12);
        }
    }

    #[test]
    fn four_point_preconditions() {
        let opts = FitOptions::default();
        let seq = HermiteSequence::open(line(3)).unwrap();
        assert!(matches!(
            refine_four_point(&seq, -0.05, &opts, FourPointOuter::ClothoidAverage),
            Err(SubdivisionError::SequenceTooShort { min: 4, .. })
        ));
        let c = circle(3, 1.0);
        assert!(refine_four_point(&c, -0.05, &opts, FourPointOuter::ClothoidAverage).is_ok());
        assert!(refine_four_point(&c, 0.05, &opts, FourPointOuter::ClothoidAverage).is_err());
        assert!(refine_four_point(&c, -0.3, &opts, FourPointOuter::ClothoidAverage).is_err());
    }

    #[test]
    fn four_point_keeps_circles() {
        let c = circle(8, 1.0);
        let opts = FitOptions::default();
        let r = refine_four_point(&c, -1.0 / 18.0, &opts, FourPointOuter::ClothoidAverage).unwrap();
        for h in r.couples() {
            assert!((h.point.norm() - 1.0).abs() <= 5e-3);
        }
        // the chord midpoint of two arc points falls inside the circle
        let r =
            refine_four_point(&c, -1.0 / 18.0, &opts, FourPointOuter::ComponentwiseMean).unwrap();
        for j in 0..8 {
            assert_eq!(r[2 * j], c[j]);
            assert!(r[2 * j + 1].point.norm() < 1.0 - 1e-3);
        }
        let r = refine_four_point(
            &c,
            -1.0 / 18.0,
            &FitOptions::reference(),
            FourPointOuter::ClothoidAverage,
        )
        .unwrap();
        on_circle(&r, 1.0, 1e-12);
    }

    #[test]
    fn rotated_indices_commute() {
        let c = HermiteSequence::closed(
            (0..7)
                .map(|j| {
                    let t = j as f64 * 0.9;
                    HermiteCouple::new(
                        Point2::new(t.cos() * (1.0 + 0.2 * j as f64), t.sin()),
                        t + 1.4,
                    )
                })
                .collect(),
        );
        // this polygon winds; only check on a well-formed one
        let c = c.unwrap_or_else(|_| circle(7, 1.0));
        let scheme = SchemeSpec::four_point(-1.0 / 18.0, FitOptions::default()).unwrap();
        let a = scheme.apply(&c.rotated(3)).unwrap();
        let b = scheme.apply(&c).unwrap().rotated(6);
        for (x, y) in a.couples().iter().zip(b.couples()) {
            assert!((x.point - y.point).norm() < 1e-12);
            assert!(crate::geometry::wrap_angle(x.angle - y.angle).abs() < 1e-12);
        }
    }

    #[test]
    fn subdivide_levels_and_limits() {
        let scheme = SchemeSpec::lane_riesenfeld(1, FitOptions::default()).unwrap();
        let c = circle(8, 1.0);
        let out = subdivide(&c, &scheme, 0).unwrap();
        assert_eq!(out, vec![c.clone()]);
        let out = subdivide(&c, &scheme, 8).unwrap();
        assert_eq!(out.len(), 9);
        assert_eq!(out[8].len(), 2048);
        assert!(matches!(
            subdivide(&c, &scheme, 13),
            Err(SubdivisionError::TooManyLevels { .. })
        ));
        let big = circle(512, 1.0);
        assert!(matches!(
            subdivide(&big, &scheme, 12),
            Err(SubdivisionError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn scheme_validation_and_serde() {
        assert!(SchemeSpec::lane_riesenfeld(0, FitOptions::default()).is_err());
        assert!(SchemeSpec::four_point(0.0, FitOptions::default()).is_err());
        let s = SchemeSpec::four_point(-1.0 / 18.0, FitOptions::default()).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: SchemeSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn degenerate_extrapolation_reports_index() {
        // closed triangle where a fit hits the domain guard
        let couples = vec![
            HermiteCouple::new(Point2::new(0.0, 0.0), 0.0),
            HermiteCouple::new(Point2::new(1.0, 0.0), PI),
            HermiteCouple::new(Point2::new(0.5, 1.0), 0.0),
        ];
        let seq = HermiteSequence::closed(couples).unwrap();
        let err = refine_s1(&seq, &FitOptions::default()).unwrap_err();
        assert_eq!(err.index(), Some(0));
    }
}
