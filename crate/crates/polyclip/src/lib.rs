//! Clipping of self-intersecting polygons.
//!
//! Classic Weiler-Atherton clipping assumes simple input contours with a
//! known orientation; a self-intersecting boundary has neither. This library
//! first planarizes each contour and splits it into simple sub-contours with
//! a stack pass, classifies every sub-contour as filled region or hole from
//! the winding number of the original polygon under its fill rule (even-odd
//! or non-zero), normalizes orientations, clips non-hole pairs with a
//! Weiler-Atherton traversal, and finally removes the edges covered by hole
//! contours and stitches the survivors back into closed result contours.
//!
//! The [`pipeline::clip_polygons`] entry point runs the whole sequence; the
//! lower-level stages are public for direct use and for verification. The
//! [`oracle`] module provides independent brute-force checks (angle-summation
//! winding, grid-sampling region comparison) used by the test suite and the
//! CLI.

pub mod classify;
pub mod decompose;
pub mod error;
pub mod format;
pub mod geom;
pub mod oracle;
pub mod pipeline;
pub mod svg;
pub mod weiler_atherton;

pub use error::{Error, Result};
pub use geom::{Contour, FillRule, Point, Polygon, Tolerance};
