use std::fmt;

use thiserror::Error;

/// Why a point list was rejected as input data.
///
/// Indices are zero-based positions in the input list; `Display` prints them
/// one-based to match observation numbering in tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Duplicate {
        first: usize,
        second: usize,
    },
    Collinear {
        indices: [usize; 3],
    },
    /// More points on one line than a positive MAD in every direction allows.
    CrowdedLine {
        count: usize,
        limit: usize,
        indices: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Duplicate { first, second } => {
                write!(f, "observations {} and {} coincide", first + 1, second + 1)
            }
            Violation::Collinear { indices: [a, b, c] } => {
                write!(f, "observations {}, {}, {} are collinear", a + 1, b + 1, c + 1)
            }
            Violation::CrowdedLine { count, limit, indices } => {
                let shown: Vec<String> = indices.iter().take(8).map(|i| (i + 1).to_string()).collect();
                write!(
                    f,
                    "{count} observations share a line (at most {limit} allowed): {}{}",
                    shown.join(", "),
                    if indices.len() > 8 { ", ..." } else { "" }
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DepthError {
    #[error("empty sample")]
    EmptySample,
    #[error("degenerate projection: MAD is zero")]
    DegenerateProjection,
    #[error("sample too small for positive MAD: n = {0}, need at least 4")]
    SampleTooSmall(usize),
    #[error("general position violated: {0}")]
    GeneralPosition(Violation),
    #[error("stale fragment: median information disagrees with the ordering inside the arc")]
    StaleFragment,
    #[error("arc not fragment-pure: [{start}, {end}] spans a critical angle")]
    ArcNotFragmentPure { start: f64, end: f64 },
    #[error("degenerate fragment: denominator not positive at an arc endpoint")]
    DegenerateFragment,
    #[error("empty halfspace family")]
    EmptyFamily,
    #[error("family does not positively span the plane")]
    NotPositivelySpanning,
    #[error("alpha exceeds maximal depth, contour empty (alpha = {alpha}, maximal depth = {max_depth})")]
    AlphaExceedsMaximalDepth { alpha: f64, max_depth: f64 },
    #[error("alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("covariance matrix is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error("contamination kept breaking general position after {0} redraws")]
    ContaminationRetriesExhausted(usize),
    #[error("chunk width {0} too small, need at least {min}", min = crate::polytope::MIN_CHUNK_WIDTH)]
    ChunkTooNarrow(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = DepthError> = std::result::Result<T, E>;
