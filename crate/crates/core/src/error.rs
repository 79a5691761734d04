use thiserror::Error;

/// Failures of the two-point fit.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum FitError {
    #[error("degenerate secant: |p1 - p0| = {length:e}")]
    DegenerateSecant { length: f64 },
    #[error("angle pair ({beta0}, {beta1}) outside the admissible fit domain")]
    DomainViolation { beta0: f64, beta1: f64 },
    #[error("tangent-angle integral vanishes: |I(beta)| = {magnitude:e}")]
    VanishingIntegral { magnitude: f64 },
    #[error("newton step breaks down: denominator {denominator:e}")]
    NewtonBreakdown { denominator: f64 },
}

/// Invalid parameters for quadrature, fitting or a subdivision scheme.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("quadrature needs 2..=10 nodes per interval, got {0}")]
    QuadratureNodes(usize),
    #[error("quadrature needs at least one subinterval, got {0}")]
    QuadraturePanels(usize),
    #[error("at most 8 newton steps are supported, got {0}")]
    NewtonSteps(usize),
    #[error("lane-riesenfeld degree must lie in 1..=8, got {0}")]
    Degree(usize),
    #[error("four-point tension must satisfy -1/4 <= omega < 0, got {0}")]
    Tension(f64),
}

/// Failures of subdivision operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubdivisionError {
    #[error("fit failed between couples {index} and {next}: {source}")]
    Fit {
        index: usize,
        next: usize,
        #[source]
        source: FitError,
    },
    #[error("clothoid average weights must sum to 1, got {a} + {b}")]
    WeightSum { a: f64, b: f64 },
    #[error("sequence of length {len} is too short, need at least {min}")]
    SequenceTooShort { len: usize, min: usize },
    #[error("non-finite couple at index {index}")]
    NonFinite { index: usize },
    #[error("consecutive couples {index} and {next} coincide")]
    CoincidentPoints { index: usize, next: usize },
    #[error("refinement would produce {couples} couples, limit is {limit}")]
    ResourceLimit { couples: usize, limit: usize },
    #[error("at most {max} levels are supported, got {levels}")]
    TooManyLevels { levels: usize, max: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl SubdivisionError {
    /// Index of the offending couple, when the failure is local.
    pub fn index(&self) -> Option<usize> {
        match *self {
            SubdivisionError::Fit { index, .. }
            | SubdivisionError::NonFinite { index }
            | SubdivisionError::CoincidentPoints { index, .. } => Some(index),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("points {index} and {other} of a curvature triple coincide")]
    DegenerateTriple { index: usize, other: usize },
    #[error("need at least {min} points, got {len}")]
    TooFewPoints { len: usize, min: usize },
}

/// Semantic problems in an otherwise well-formed input document.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("unsupported document format {0}, expected 1")]
    UnsupportedFormat(u32),
    #[error("couple {index} gives both alpha and normal")]
    AngleAndNormal { index: usize },
    #[error("couple {index} gives neither alpha nor normal")]
    MissingAngle { index: usize },
    #[error("couple {index} has a zero normal")]
    ZeroNormal { index: usize },
    #[error("couple {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("document has {len} couples, need at least {min}")]
    TooShort { len: usize, min: usize },
    #[error("consecutive couples {index} and {next} share a point")]
    DuplicatePoints { index: usize, next: usize },
}

impl ValidationError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ValidationError::UnsupportedFormat(_) => "unsupported_format",
            ValidationError::AngleAndNormal { .. } => "angle_and_normal",
            ValidationError::MissingAngle { .. } => "missing_angle",
            ValidationError::ZeroNormal { .. } => "zero_normal",
            ValidationError::NonFinite { .. } => "non_finite",
            ValidationError::TooShort { .. } => "too_short",
            ValidationError::DuplicatePoints { .. } => "duplicate_points",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match *self {
            ValidationError::AngleAndNormal { index }
            | ValidationError::MissingAngle { index }
            | ValidationError::ZeroNormal { index }
            | ValidationError::NonFinite { index }
            | ValidationError::DuplicatePoints { index, .. } => Some(index),
            _ => None,
        }
    }
}

/// Failure to load an input document.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Failure of a full subdivision run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}
