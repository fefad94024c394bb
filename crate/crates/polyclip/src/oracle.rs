//! Independent brute-force verification instruments.
//!
//! The winding oracle sums subtended turn angles instead of counting axis
//! crossings, so it shares no failure mode with the shipped kernel. The grid
//! oracle compares clipped-result membership against direct membership in
//! both inputs over a lattice, skipping a band around all boundaries where
//! floating-point membership is legitimately ambiguous.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decompose::{is_simple, planarize};
use crate::error::{Error, Result};
use crate::geom::{
    dist_point_segment, point_in_polygon, segment_intersect, signed_area, winding_number, Bounds,
    Contour, FillRule, Point, Polygon, SegmentIntersection, Tolerance,
};

/// Outcome of a grid membership comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub grid_n: usize,
    /// Lattice points actually compared.
    pub sampled: usize,
    /// Lattice points skipped for lying within the boundary band.
    pub skipped_boundary_band: usize,
    pub mismatches: usize,
    pub mismatch_fraction: f64,
    /// Intersection area estimated from the grid samples.
    pub area_grid: f64,
    /// Signed-area sum of the result polygon.
    pub area_shoelace: f64,
}

/// Winding number by angle summation: total signed turn subtended at `p`,
/// divided by a full turn and rounded.
pub fn winding_oracle(p: Point, contours: &[Contour], tol: Tolerance) -> Result<i32> {
    let eps = tol.eps();
    let mut total = 0.0f64;
    for c in contours {
        for (a, b) in c.edges() {
            if dist_point_segment(p, a, b) <= eps {
                return Err(Error::PointOnBoundary);
            }
            let va = a - p;
            let vb = b - p;
            total += va.cross(vb).atan2(va.dot(vb));
        }
    }
    Ok((total / TAU).round() as i32)
}

/// Compare membership in `result` (non-zero rule) against membership in
/// `subject` AND `clipper` over a `grid_n` x `grid_n` lattice spanning the
/// joint bounding box; points within `band` of any edge are skipped and
/// reported separately.
pub fn compare_regions(
    subject: &Polygon,
    clipper: &Polygon,
    result: &Polygon,
    grid_n: usize,
    band: f64,
) -> OracleReport {
    assert!(grid_n >= 16, "grid_n must be at least 16");
    let tol = Tolerance::for_polygons([subject, clipper, result]);
    let band = band.max(tol.eps());

    let mut report = OracleReport {
        grid_n,
        sampled: 0,
        skipped_boundary_band: 0,
        mismatches: 0,
        mismatch_fraction: 0.0,
        area_grid: 0.0,
        area_shoelace: result.signed_area(),
    };

    let bounds = [subject, clipper, result]
        .iter()
        .filter_map(|p| p.bounds())
        .reduce(Bounds::union);
    let Some(mut bounds) = bounds else {
        report.skipped_boundary_band = grid_n * grid_n;
        return report;
    };
    if bounds.width() == 0.0 {
        bounds.min.x -= 0.5;
        bounds.max.x += 0.5;
    }
    if bounds.height() == 0.0 {
        bounds.min.y -= 0.5;
        bounds.max.y += 0.5;
    }

    let cell_w = bounds.width() / grid_n as f64;
    let cell_h = bounds.height() / grid_n as f64;
    let cell_area = cell_w * cell_h;
    let polys = [subject, clipper, result];

    for j in 0..grid_n {
        for i in 0..grid_n {
            let p = Point::new(
                bounds.min.x + (i as f64 + 0.5) * cell_w,
                bounds.min.y + (j as f64 + 0.5) * cell_h,
            );
            let near_boundary = polys.iter().any(|poly| {
                poly.contours
                    .iter()
                    .any(|c| c.edges().any(|(a, b)| dist_point_segment(p, a, b) <= band))
            });
            if near_boundary {
                report.skipped_boundary_band += 1;
                continue;
            }
            let membership = (|| -> Result<(bool, bool)> {
                let truth =
                    point_in_polygon(p, subject, tol)? && point_in_polygon(p, clipper, tol)?;
                let got = winding_number(p, &result.contours, tol)? != 0;
                Ok((truth, got))
            })();
            match membership {
                Ok((truth, got)) => {
                    report.sampled += 1;
                    if truth {
                        report.area_grid += cell_area;
                    }
                    if truth != got {
                        report.mismatches += 1;
                    }
                }
                Err(_) => report.skipped_boundary_band += 1,
            }
        }
    }
    if report.sampled > 0 {
        report.mismatch_fraction = report.mismatches as f64 / report.sampled as f64;
    }
    report
}

const FIXTURE_SPAN: f64 = 100.0;
const MAX_REDRAWS: usize = 1000;

/// Deterministic pseudo-random polygon from `seed`. With
/// `self_intersecting`, vertices are drawn uniformly in a box and redrawn
/// until at least one self-crossing exists; otherwise the contour is a
/// randomized convex or star-shaped simple ring.
pub fn random_fixture(seed: u64, n_vertices: usize, self_intersecting: bool) -> Result<Polygon> {
    assert!(
        (4..=64).contains(&n_vertices),
        "n_vertices must be in [4, 64]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tolerance::new(1e-9 * FIXTURE_SPAN);

    for _ in 0..MAX_REDRAWS {
        let fill_rule = if rng.random_bool(0.5) { FillRule::NonZero } else { FillRule::EvenOdd };
        let candidate = if self_intersecting {
            draw_scribble(&mut rng, n_vertices, tol)
        } else if rng.random_bool(0.5) {
            draw_convex(&mut rng, n_vertices)
        } else {
            draw_star(&mut rng, n_vertices)
        };
        if let Some(contour) = candidate {
            return Ok(Polygon::new(vec![contour], fill_rule));
        }
    }
    Err(Error::GenerationFailure(MAX_REDRAWS))
}

/// Random convex contour (counter-clockwise hull of uniform draws); used for
/// clipper fixtures.
pub fn random_convex_contour(seed: u64, n_points: usize) -> Result<Contour> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        if let Some(c) = draw_convex(&mut rng, n_points.max(4)) {
            return Ok(c);
        }
    }
    Err(Error::GenerationFailure(MAX_REDRAWS))
}

fn draw_scribble(rng: &mut ChaCha8Rng, n: usize, tol: Tolerance) -> Option<Contour> {
    let pts: Vec<Point> = (0..n)
        .map(|_| {
            Point::new(
                rng.random_range(0.0..FIXTURE_SPAN),
                rng.random_range(0.0..FIXTURE_SPAN),
            )
        })
        .collect();
    // Well-separated vertices keep the eps machinery far from its limits.
    for i in 0..n {
        for j in (i + 1)..n {
            if pts[i].dist(pts[j]) < 0.5 {
                return None;
            }
        }
    }
    let contour = Contour::new(pts);
    let mut crossings = 0;
    let m = contour.len();
    for i in 0..m {
        let (a1, a2) = contour.edge(i);
        for j in (i + 1)..m {
            let d = (j + m - i) % m;
            if d == 1 || d == m - 1 {
                continue;
            }
            let (b1, b2) = contour.edge(j);
            match segment_intersect(a1, a2, b1, b2, tol) {
                SegmentIntersection::Crossing { .. } => crossings += 1,
                SegmentIntersection::CollinearOverlap { .. } => return None,
                _ => {}
            }
        }
    }
    if crossings == 0 {
        return None;
    }
    // Confirm the planarization machinery accepts it.
    planarize(&contour, tol).ok()?;
    Some(contour)
}

fn draw_convex(rng: &mut ChaCha8Rng, n: usize) -> Option<Contour> {
    let pts: Vec<Point> = (0..n)
        .map(|_| {
            Point::new(
                rng.random_range(0.0..FIXTURE_SPAN),
                rng.random_range(0.0..FIXTURE_SPAN),
            )
        })
        .collect();
    let hull = convex_hull(&pts);
    if hull.len() < 3 || signed_area(&hull) < 100.0 {
        return None;
    }
    Some(Contour::new(hull))
}

fn draw_star(rng: &mut ChaCha8Rng, n: usize) -> Option<Contour> {
    let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
    angles.sort_by(f64::total_cmp);
    for w in angles.windows(2) {
        if w[1] - w[0] < 0.05 {
            return None;
        }
    }
    let center = Point::new(FIXTURE_SPAN / 2.0, FIXTURE_SPAN / 2.0);
    let pts: Vec<Point> = angles
        .iter()
        .map(|&a| {
            let r = rng.random_range(10.0..45.0);
            center + Point::new(a.cos(), a.sin()) * r
        })
        .collect();
    Some(Contour::new(pts))
}

/// Andrew's monotone chain; returns the hull counter-clockwise.
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup_by(|a, b| a == b);
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
