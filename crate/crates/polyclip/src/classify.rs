//! Hole classification and orientation normalization.
//!
//! Each simple contour gets a winding number sampled at a representative
//! point in its own region, a hole flag under the polygon's fill rule
//! (even-odd: even winding is a hole; non-zero: only zero winding is a
//! hole), and a canonical orientation: counter-clockwise for filled
//! contours, clockwise for holes.

use crate::decompose::SimpleContourSet;
use crate::error::{Error, Result};
use crate::geom::{winding_number, Contour, FillRule, Orientation, Point, Polygon, Tolerance};

/// A simple contour annotated with its winding number, hole flag, and
/// normalized orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedContour {
    pub contour: Contour,
    /// Winding number of the original polygon about `rep_point`.
    pub winding: i32,
    pub is_hole: bool,
    pub rep_point: Point,
}

/// True when `inner`'s region lies strictly within `outer`'s: smaller area
/// and every vertex inside or on `outer`. Region-equal rings (for instance
/// the two copies of a doubly-traversed boundary) are not nested.
pub fn nested_within(inner: &Contour, outer: &Contour, tol: Tolerance) -> bool {
    if inner.signed_area().abs() >= outer.signed_area().abs() {
        return false;
    }
    let eps = tol.eps();
    inner.vertices().iter().all(|&v| outer.inside_or_boundary(v, eps))
}

/// Deterministic point strictly inside `c`'s own region: inside `c`, farther
/// than eps from every edge of `all`, and outside every other contour of
/// `all` nested within `c`.
///
/// Scans horizontal lines at midpoints between consecutive distinct vertex
/// ordinates of `c`, nearest the median first, and takes the first interval
/// midpoint along each line that qualifies.
pub fn representative_point(c: &Contour, all: &[Contour], tol: Tolerance) -> Result<Point> {
    let eps = tol.eps();

    let mut ys: Vec<f64> = c.vertices().iter().map(|p| p.y).collect();
    ys.sort_by(f64::total_cmp);
    ys.dedup_by(|a, b| (*a - *b).abs() <= eps);
    if ys.len() < 2 {
        return Err(Error::NoInteriorPoint);
    }
    let median = ys[(ys.len() - 1) / 2];
    let mut lines: Vec<f64> = ys.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    lines.sort_by(|a, b| {
        (a - median)
            .abs()
            .total_cmp(&(b - median).abs())
            .then(a.total_cmp(b))
    });

    let nested: Vec<&Contour> = all
        .iter()
        .filter(|d| *d != c && nested_within(d, c, tol))
        .collect();

    for &y in &lines {
        let mut xs: Vec<f64> = Vec::new();
        let mut scan = |d: &Contour| {
            for (a, b) in d.edges() {
                if (a.y <= y && b.y > y) || (b.y <= y && a.y > y) {
                    let t = (y - a.y) / (b.y - a.y);
                    xs.push(a.x + t * (b.x - a.x));
                }
            }
        };
        for d in all {
            scan(d);
        }
        if !all.contains(c) {
            scan(c);
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * eps);

        for w in xs.windows(2) {
            if w[1] - w[0] <= 4.0 * eps {
                continue;
            }
            let p = Point::new(0.5 * (w[0] + w[1]), y);
            if !c.strictly_inside(p, eps) {
                continue;
            }
            if all.iter().any(|d| d.distance_to_boundary(p) <= eps) {
                continue;
            }
            if nested.iter().any(|d| d.even_odd_contains(p)) {
                continue;
            }
            return Ok(p);
        }
    }
    Err(Error::NoInteriorPoint)
}

/// Reverse the contour if its orientation disagrees with its hole flag:
/// filled contours counter-clockwise, holes clockwise. Idempotent.
pub fn canonical_orientation(mut cc: ClassifiedContour, tol: Tolerance) -> ClassifiedContour {
    let want = if cc.is_hole { Orientation::Cw } else { Orientation::Ccw };
    let have = cc.contour.orientation(tol);
    if have != want && have != Orientation::Degenerate {
        cc.contour = cc.contour.reversed();
    }
    cc
}

/// Classify every contour of a decomposition against the original polygon:
/// winding sampled at the representative point, hole flag per the original
/// fill rule, orientation normalized.
pub fn classify(
    set: &SimpleContourSet,
    original: &Polygon,
    tol: Tolerance,
) -> Result<Vec<ClassifiedContour>> {
    let mut out = Vec::with_capacity(set.contours.len());
    for c in &set.contours {
        let rep_point = representative_point(c, &set.contours, tol)?;
        let winding = winding_number(rep_point, &original.contours, tol)?;
        let is_hole = match original.fill_rule {
            FillRule::EvenOdd => winding.rem_euclid(2) == 0,
            FillRule::NonZero => winding == 0,
        };
        let cc = ClassifiedContour { contour: c.clone(), winding, is_hole, rep_point };
        out.push(canonical_orientation(cc, tol));
    }
    Ok(out)
}
