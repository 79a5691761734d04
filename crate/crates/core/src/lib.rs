//! Approximate clothoid fitting and geometric Hermite subdivision of planar
//! curves.
//!
//! The building block is the clothoid average of two Hermite couples
//! (point plus tangent angle): fit a curve of linear curvature through both
//! couples and evaluate it at the requested parameter. Lane-Riesenfeld-type
//! schemes and an interpolatory four-point scheme are built from it.
//!
//! ```
//! use clothoid_hermite::{fit_hermite, FitOptions, HermiteCouple, Point2};
//!
//! let h0 = HermiteCouple::new(Point2::new(0.0, 0.0), 0.5);
//! let h1 = HermiteCouple::new(Point2::new(2.0, 0.0), -0.2);
//! let (segment, diagnostics) = fit_hermite(&h0, &h1, &FitOptions::default()).unwrap();
//! assert_eq!(segment.point(1.0), h1.point);
//! assert!(diagnostics.defect.abs() < 1.0 / 800.0);
//! ```

// `!(x > bound)` checks are written to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod fit;
pub mod geometry;
pub mod io;
pub mod quadrature;
pub mod service;
pub mod subdivision;

pub use error::{
    AnalysisError, ConfigError, FitError, InputError, RunError, SubdivisionError, ValidationError,
};
pub use fit::{
    angle_defect, eval_segment, f_tilde, fit_hermite, fit_normal, newton_step, ClothoidSegment,
    DomainPolicy, FitDiagnostics, FitOptions,
};
pub use geometry::{
    eval_angle, lagrange_basis, similarity_to_normal, wrap_angle, HermiteCouple, Point2,
    QuadraticAngle,
};
pub use io::{parse_input, render_svg, run, InputDocument, RunReport, SvgOptions};
pub use quadrature::{angle_integral, QuadratureConfig};
pub use subdivision::{
    average_a, clothoid_average, refine_four_point, refine_s1, refine_sn, subdivide,
    FourPointOuter, HermiteSequence, SchemeKind, SchemeSpec,
};
