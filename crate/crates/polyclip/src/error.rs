//! Error type shared across the library.

use thiserror::Error;

/// Errors reported by geometry predicates, decomposition, clipping, and I/O.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Winding number queried at a point within tolerance of a boundary edge.
    #[error("winding number undefined: point lies on a polygon boundary")]
    PointOnBoundary,

    /// Two non-adjacent edges of one contour overlap along a segment.
    #[error("contour {contour} has collinear self-overlapping edges {edge_a} and {edge_b}")]
    CollinearSelfOverlap {
        contour: usize,
        edge_a: usize,
        edge_b: usize,
    },

    /// Two distinct input contours cross transversally.
    #[error("contours {contour_a} and {contour_b} cross each other transversally")]
    CrossContourCrossing { contour_a: usize, contour_b: usize },

    /// A contour has fewer than 3 vertices or no measurable area.
    #[error("degenerate contour: {0}")]
    DegenerateContour(String),

    /// No representative interior point could be found for a contour.
    #[error("no interior point found for contour (sliver below tolerance?)")]
    NoInteriorPoint,

    /// Entry/exit labels along the subject boundary do not alternate.
    #[error("entry/exit labels do not alternate: {0}")]
    AlternationViolation(String),

    /// A boundary traversal failed to close within its step budget.
    #[error("traversal exceeded {0} steps without closing")]
    NonTermination(usize),

    /// Malformed line in a polygon file.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Polygon file lacks the leading fill-rule declaration.
    #[error("missing fill-rule declaration (expected `fillrule nonzero` or `fillrule evenodd`)")]
    MissingFillRule,

    /// Contour line with fewer than 3 coordinate pairs.
    #[error("line {line}: contour has fewer than 3 vertices")]
    TooFewVertices { line: usize },

    /// Random fixture generation did not satisfy its constraint within the redraw budget.
    #[error("fixture generation failed after {0} redraws")]
    GenerationFailure(usize),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
