//! JSON input documents and run reports, CSV curvature tables and SVG
//! rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{convergence_diagnostics, CurvatureProfile, LevelDiagnostics};
use crate::error::{AnalysisError, InputError, RunError, SubdivisionError, ValidationError};
use crate::geometry::{HermiteCouple, Point2};
use crate::subdivision::{subdivide, HermiteSequence, SchemeKind, SchemeSpec};

/// Version tag of the JSON input and report schemas.
pub const FORMAT: u32 = 1;

/// Crate version, reported by the CLI and the HTTP service.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// An illustrative closed eight-couple polygon given by points and normals.
pub const DEMO_INPUT: &str = include_str!("../data/demo_octagon.json");

/// Boundary rule reported for open sequences refined with the four-point
/// scheme: missing outer neighbours repeat the end couples.
pub const DUPLICATE_ENDS: &str = "duplicate_ends";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeFamily {
    LaneRiesenfeld,
    FourPoint,
}

/// Optional run settings stored alongside the data.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDefaults {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<SchemeFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newton_steps: Option<usize>,
}

/// One couple as written in a document: a point plus either a tangent
/// angle or a normal vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoupleJson {
    pub p: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<[f64; 2]>,
}

/// The on-disk document schema, before validation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocumentJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub closed: bool,
    pub couples: Vec<CoupleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeDefaults>,
}

/// A validated input document. Normals have been converted to angles.
#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub sequence: HermiteSequence,
    pub scheme: Option<SchemeDefaults>,
}

impl TryFrom<InputDocumentJson> for InputDocument {
    type Error = ValidationError;

    fn try_from(doc: InputDocumentJson) -> Result<Self, ValidationError> {
        if let Some(format) = doc.format {
            if format != FORMAT {
                return Err(ValidationError::UnsupportedFormat(format));
            }
        }
        let mut couples = Vec::with_capacity(doc.couples.len());
        for (index, c) in doc.couples.iter().enumerate() {
            let point = Point2::from(c.p);
            let couple = match (c.alpha, c.normal) {
                (Some(_), Some(_)) => return Err(ValidationError::AngleAndNormal { index }),
                (None, None) => return Err(ValidationError::MissingAngle { index }),
                (Some(alpha), None) => HermiteCouple::new(point, alpha),
                (None, Some(n)) => {
                    let n = Point2::from(n);
                    if !n.is_finite() {
                        return Err(ValidationError::NonFinite { index });
                    }
                    if n == Point2::ZERO {
                        return Err(ValidationError::ZeroNormal { index });
                    }
                    HermiteCouple::from_normal(point, n)
                }
            };
            if !couple.is_finite() {
                return Err(ValidationError::NonFinite { index });
            }
            couples.push(couple);
        }
        let sequence = HermiteSequence::new(couples, doc.closed).map_err(|e| match e {
            SubdivisionError::SequenceTooShort { len, min } => {
                ValidationError::TooShort { len, min }
            }
            SubdivisionError::CoincidentPoints { index, next } => {
                ValidationError::DuplicatePoints { index, next }
            }
            SubdivisionError::NonFinite { index } => ValidationError::NonFinite { index },
            other => unreachable!("sequence construction cannot fail with {other}"),
        })?;
        Ok(InputDocument {
            sequence,
            scheme: doc.scheme,
        })
    }
}

impl InputDocument {
    pub fn new(sequence: HermiteSequence) -> Self {
        InputDocument {
            sequence,
            scheme: None,
        }
    }

    /// The demo document shipped with the crate.
    pub fn demo() -> Self {
        parse_input(DEMO_INPUT.as_bytes()).expect("embedded demo document is valid")
    }

    /// Canonical form: format tag, angles only.
    pub fn to_json(&self) -> InputDocumentJson {
        InputDocumentJson {
            format: Some(FORMAT),
            closed: self.sequence.is_closed(),
            couples: self
                .sequence
                .couples()
                .iter()
                .map(|h| CoupleJson {
                    p: h.point.into(),
                    alpha: Some(h.angle),
                    normal: None,
                })
                .collect(),
            scheme: self.scheme,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("document serializes")
    }
}

/// Parse and validate a UTF-8 JSON document.
pub fn parse_input(bytes: &[u8]) -> Result<InputDocument, InputError> {
    let raw: InputDocumentJson = serde_json::from_slice(bytes)?;
    Ok(InputDocument::try_from(raw)?)
}

/// Everything produced by one subdivision run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: u32,
    pub version: String,
    pub scheme: SchemeSpec,
    /// Level 0 is the input.
    pub levels: Vec<HermiteSequence>,
    /// Curvature of the final level over normalized chord length.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureProfile>,
    pub diagnostics: Vec<LevelDiagnostics>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_policy: Option<String>,
}

impl RunReport {
    pub fn final_level(&self) -> Option<&HermiteSequence> {
        self.levels.last()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Subdivide `input` and collect levels, diagnostics and (optionally) the
/// curvature profile of the final level.
///
/// Curvature is omitted when the final level has fewer than three points.
pub fn run(
    input: &HermiteSequence,
    scheme: &SchemeSpec,
    levels: usize,
    want_curvature: bool,
) -> Result<RunReport, RunError> {
    let all = subdivide(input, scheme, levels)?;
    let diagnostics = convergence_diagnostics(&all);
    let last = all.last().expect("subdivide returns the input level");
    let curvature = if want_curvature {
        match CurvatureProfile::of_sequence(last) {
            Ok(profile) => Some(profile),
            Err(AnalysisError::TooFewPoints { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let boundary_policy = (!input.is_closed()
        && matches!(scheme.kind, SchemeKind::FourPoint { .. }))
    .then(|| DUPLICATE_ENDS.to_string());
    Ok(RunReport {
        format: FORMAT,
        version: VERSION.to_string(),
        scheme: *scheme,
        levels: all,
        curvature,
        diagnostics,
        boundary_policy,
    })
}

/// Curvature table with header `s,kappa`. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn curvature_csv(profile: &CurvatureProfile) -> String {
    let mut out = String::from("s,kappa\n");
    for (s, k) in profile.s.iter().zip(&profile.kappa) {
        writeln!(out, "{s},{k}").expect("writing to a String");
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvgOptions {
    pub show_normals: bool,
    pub show_comb: bool,
    /// Comb height per unit curvature in data units; `None` picks a scale
    /// where the tallest tooth is 15% of the drawing's diagonal.
    pub comb_scale: Option<f64>,
    pub show_chart: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            show_normals: true,
            show_comb: true,
            comb_scale: None,
            show_chart: true,
        }
    }
}

const SVG_WIDTH: f64 = 800.0;
const PANEL_HEIGHT: f64 = 600.0;
const CHART_HEIGHT: f64 = 220.0;
const MARGIN: f64 = 40.0;
const NORMAL_PX: f64 = 28.0;

struct Frame {
    center: Point2,
    /// Pixel position of `center`.
    origin: (f64, f64),
    scale: f64,
}

impl Frame {
    fn fit(points: &[Point2], width: f64, height: f64) -> Frame {
        let (min, max) = bounds(points);
        let span = (max - min).norm().max(1e-300);
        let w = (max.x - min.x).max(span * 1e-3);
        let h = (max.y - min.y).max(span * 1e-3);
        Frame {
            center: (min + max) / 2.0,
            origin: (width / 2.0, height / 2.0),
            scale: ((width - 2.0 * MARGIN) / w).min((height - 2.0 * MARGIN) / h),
        }
    }

    /// Data coordinates to pixels, y pointing down.
    fn px(&self, p: Point2) -> (f64, f64) {
        let q = (p - self.center) * self.scale;
        (self.origin.0 + q.x, self.origin.1 - q.y)
    }
}

fn bounds(points: &[Point2]) -> (Point2, Point2) {
    if points.is_empty() {
        return (Point2::ZERO, Point2::ONE);
    }
    points.iter().fold(
        (
            Point2::new(f64::INFINITY, f64::INFINITY),
            Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        ),
        |(lo, hi), p| {
            (
                Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        },
    )
}

fn points_attr(frame: &Frame, points: impl Iterator<Item = Point2>) -> String {
    let mut s = String::new();
    for p in points {
        let (x, y) = frame.px(p);
        write!(s, "{x:.2},{y:.2} ").expect("writing to a String");
    }
    s.pop();
    s
}

/// Draw the final level, the input couples, a curvature comb and a chart of
/// curvature over chord length as an SVG 1.1 document.
pub fn render_svg(report: &RunReport, options: &SvgOptions) -> String {
    let empty = HermiteSequence::open(vec![
        HermiteCouple::new(Point2::ZERO, 0.0),
        HermiteCouple::new(Point2::ONE, 0.0),
    ])
    .expect("two distinct points");
    let last = report.levels.last().unwrap_or(&empty);
    let first = report.levels.first().unwrap_or(&empty);
    let profile = report
        .curvature
        .clone()
        .or_else(|| CurvatureProfile::of_sequence(last).ok());

    let curve: Vec<Point2> = last.couples().iter().map(|h| h.point).collect();
    let mut extent = curve.clone();
    extent.extend(first.couples().iter().map(|h| h.point));
    let teeth: Vec<(Point2, Point2)> = match (&profile, options.show_comb) {
        (Some(profile), true) => {
            let max_kappa = profile.kappa.iter().fold(0.0, |m: f64, k| m.max(k.abs()));
            let (lo, hi) = bounds(&extent);
            let diag = (hi - lo).norm();
            let scale = options.comb_scale.unwrap_or(if max_kappa > 0.0 {
                0.15 * diag / max_kappa
            } else {
                1.0
            });
            last.couples()
                .iter()
                .zip(&profile.kappa)
                .map(|(h, k)| (h.point, h.point - h.normal() * (k * scale)))
                .collect()
        }
        _ => Vec::new(),
    };
    extent.extend(teeth.iter().map(|t| t.1));

    let height = if options.show_chart && profile.is_some() {
        PANEL_HEIGHT + CHART_HEIGHT
    } else {
        PANEL_HEIGHT
    };
    let frame = Frame::fit(&extent, SVG_WIDTH, PANEL_HEIGHT);
    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{height}" viewBox="0 0 {SVG_WIDTH} {height}">"#
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);

    if !teeth.is_empty() {
        let _ = writeln!(
            w,
            r##"<g id="comb" stroke="#d9822b" stroke-width="0.6" fill="none">"##
        );
        for (p, tip) in &teeth {
            let ((x0, y0), (x1, y1)) = (frame.px(*p), frame.px(*tip));
            let _ = writeln!(
                w,
                r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}"/>"#
            );
        }
        let tag = if last.is_closed() {
            "polygon"
        } else {
            "polyline"
        };
        let _ = writeln!(
            w,
            r#"<{tag} points="{}" stroke-width="1"/>"#,
            points_attr(&frame, teeth.iter().map(|t| t.1))
        );
        let _ = writeln!(w, "</g>");
    }

    let tag = if last.is_closed() {
        "polygon"
    } else {
        "polyline"
    };
    let _ = writeln!(
        w,
        r##"<g id="curve"><{tag} points="{}" fill="none" stroke="#1f4e79" stroke-width="1.5"/></g>"##,
        points_attr(&frame, curve.iter().copied())
    );

    let _ = writeln!(w, r##"<g id="control" fill="#c0392b" stroke="#c0392b">"##);
    for h in first.couples() {
        let (x, y) = frame.px(h.point);
        let _ = writeln!(w, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5"/>"#);
        if options.show_normals {
            let n = h.normal();
            let (nx, ny) = (x + n.x * NORMAL_PX, y - n.y * NORMAL_PX);
            let _ = writeln!(
                w,
                r#"<line x1="{x:.2}" y1="{y:.2}" x2="{nx:.2}" y2="{ny:.2}" stroke-width="1.2"/>"#
            );
        }
    }
    let _ = writeln!(w, "</g>");

    if let (true, Some(profile)) = (options.show_chart, &profile) {
        render_chart(w, profile);
    }
    let _ = writeln!(w, "</svg>");
    svg
}

fn render_chart(w: &mut String, profile: &CurvatureProfile) {
    let (x0, y0) = (MARGIN, PANEL_HEIGHT + 10.0);
    let (cw, ch) = (SVG_WIDTH - 2.0 * MARGIN, CHART_HEIGHT - 40.0);
    let (mut lo, mut hi) = profile
        .kappa
        .iter()
        .fold((0.0f64, 0.0f64), |(lo, hi), &k| (lo.min(k), hi.max(k)));
    if hi - lo < 1e-12 {
        lo -= 1.0;
        hi += 1.0;
    }
    let pad = 0.05 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);
    let to_px = |s: f64, k: f64| (x0 + s * cw, y0 + (hi - k) / (hi - lo) * ch);

    let _ = writeln!(
        w,
        r#"<g id="curvature-chart" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        w,
        r##"<rect x="{x0}" y="{y0}" width="{cw}" height="{ch}" fill="none" stroke="#888"/>"##
    );
    let (_, zy) = to_px(0.0, 0.0);
    let _ = writeln!(
        w,
        r##"<line x1="{x0}" y1="{zy:.2}" x2="{:.2}" y2="{zy:.2}" stroke="#bbb" stroke-dasharray="4 3"/>"##,
        x0 + cw
    );
    let mut pts = String::new();
    for (&s, &k) in profile.s.iter().zip(&profile.kappa) {
        let (x, y) = to_px(s, k);
        let _ = write!(pts, "{x:.2},{y:.2} ");
    }
    pts.pop();
    let _ = writeln!(
        w,
        r##"<polyline points="{pts}" fill="none" stroke="#1f4e79" stroke-width="1.2"/>"##
    );
    let _ = writeln!(
        w,
        r#"<text x="{x0}" y="{:.2}">s</text><text x="{:.2}" y="{:.2}">kappa [{:.3}, {:.3}]</text>"#,
        y0 + ch + 16.0,
        x0 + 20.0,
        y0 + ch + 16.0,
        lo + pad,
        hi - pad
    );
    let _ = writeln!(w, "</g>");
}
