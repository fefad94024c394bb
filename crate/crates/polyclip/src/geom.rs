//! Geometric primitives and predicates.
//!
//! Everything downstream (decomposition, classification, traversal) is built
//! on the types and predicates here: signed area, orientation, robust segment
//! intersection with endpoint snapping, and the axis-crossing winding number.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// A 2D point in world units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Cross product of `self` and `other` treated as vectors.
    pub fn cross(&self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(&self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(&self, other: Point) -> f64 {
        (*self - other).norm()
    }

    /// Lexicographic order by (x, y); used for deterministic tie-breaking.
    pub fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        self.x
            .total_cmp(&other.x)
            .then(self.y.total_cmp(&other.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Point,
    pub max: Point,
}

impl Bounds {
    pub fn of_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Bounds> {
        let mut it = points.into_iter();
        let first = *it.next()?;
        let mut b = Bounds { min: first, max: first };
        for p in it {
            b.min.x = b.min.x.min(p.x);
            b.min.y = b.min.y.min(p.y);
            b.max.x = b.max.x.max(p.x);
            b.max.y = b.max.y.max(p.y);
        }
        Some(b)
    }

    pub fn union(self, other: Bounds) -> Bounds {
        Bounds {
            min: Point::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    pub fn diagonal(&self) -> f64 {
        self.max.dist(self.min)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

/// Fill rule deciding which winding numbers count as interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillRule {
    EvenOdd,
    NonZero,
}

impl fmt::Display for FillRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FillRule::EvenOdd => write!(f, "evenodd"),
            FillRule::NonZero => write!(f, "nonzero"),
        }
    }
}

/// Orientation of a closed contour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Degenerate,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Ccw => write!(f, "ccw"),
            Orientation::Cw => write!(f, "cw"),
            Orientation::Degenerate => write!(f, "degenerate"),
        }
    }
}

/// A closed vertex ring. The last vertex connects implicitly back to the
/// first; the first vertex is never repeated at the end in storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    vertices: Vec<Point>,
}

impl Contour {
    pub fn new(vertices: Vec<Point>) -> Self {
        Contour { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edge `i`, from vertex `i` to vertex `i+1` (cyclic).
    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    /// Iterator over the `n` directed edges of the ring.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    /// Same ring traversed in the opposite direction, starting vertex kept.
    pub fn reversed(&self) -> Contour {
        let mut v = self.vertices.clone();
        v[1..].reverse();
        Contour::new(v)
    }

    /// Shoelace sum: positive for counter-clockwise rings.
    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn bounds(&self) -> Option<Bounds> {
        Bounds::of_points(&self.vertices)
    }

    /// Orientation with a degeneracy band of `eps` times the bbox diagonal.
    pub fn orientation(&self, tol: Tolerance) -> Orientation {
        let area = self.signed_area();
        let scale = self.bounds().map_or(0.0, |b| b.diagonal());
        let threshold = tol.eps() * scale;
        if area > threshold {
            Orientation::Ccw
        } else if area < -threshold {
            Orientation::Cw
        } else {
            Orientation::Degenerate
        }
    }

    /// Total boundary length.
    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    /// Minimum distance from `p` to the ring's boundary.
    pub fn distance_to_boundary(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| dist_point_segment(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Even-odd membership by ray-crossing parity. Points on the boundary are
    /// not meaningfully classified here; use the `eps`-aware helpers below.
    pub fn even_odd_contains(&self, p: Point) -> bool {
        let mut crossings = 0usize;
        for (a, b) in self.edges() {
            if crosses_ray_upward(a, b, p) || crosses_ray_upward(b, a, p) {
                crossings += 1;
            }
        }
        crossings % 2 == 1
    }

    /// True iff `p` is inside by parity and farther than `eps` from the boundary.
    pub fn strictly_inside(&self, p: Point, eps: f64) -> bool {
        self.distance_to_boundary(p) > eps && self.even_odd_contains(p)
    }

    /// True iff `p` is inside by parity or within `eps` of the boundary.
    pub fn inside_or_boundary(&self, p: Point, eps: f64) -> bool {
        self.distance_to_boundary(p) <= eps || self.even_odd_contains(p)
    }
}

/// Shoelace sum over a point ring.
pub fn signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    if n < 3 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    0.5 * sum
}

/// A set of contours with a fill rule. May be empty (an empty clip result).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub contours: Vec<Contour>,
    pub fill_rule: FillRule,
}

impl Polygon {
    pub fn new(contours: Vec<Contour>, fill_rule: FillRule) -> Self {
        Polygon { contours, fill_rule }
    }

    pub fn empty(fill_rule: FillRule) -> Self {
        Polygon { contours: Vec::new(), fill_rule }
    }

    pub fn is_empty(&self) -> bool {
        self.contours.is_empty()
    }

    pub fn bounds(&self) -> Option<Bounds> {
        self.contours
            .iter()
            .filter_map(|c| c.bounds())
            .reduce(Bounds::union)
    }

    /// Sum of contour signed areas.
    pub fn signed_area(&self) -> f64 {
        self.contours.iter().map(|c| c.signed_area()).sum()
    }
}

/// Absolute snapping and equality distance, in world units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

const EPS_RELATIVE: f64 = 1e-9;
const EPS_FLOOR: f64 = 1e-12;

impl Tolerance {
    pub fn new(eps: f64) -> Self {
        assert!(eps.is_finite() && eps > 0.0, "tolerance must be positive");
        Tolerance { eps }
    }

    /// Default tolerance for a set of inputs: 1e-9 times the diagonal of the
    /// combined bounding box, floored at 1e-12 absolute.
    pub fn for_polygons<'a>(polygons: impl IntoIterator<Item = &'a Polygon>) -> Self {
        let bounds = polygons
            .into_iter()
            .filter_map(|p| p.bounds())
            .reduce(Bounds::union);
        let diag = bounds.map_or(0.0, |b| b.diagonal());
        Tolerance::new((EPS_RELATIVE * diag).max(EPS_FLOOR))
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(EPS_FLOOR)
    }
}

/// Classification of how two segments meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentIntersection {
    /// No contact.
    None,
    /// Transversal crossing at the interior of both segments.
    Crossing { point: Point, t: f64, u: f64 },
    /// Contact at which at least one parameter is an endpoint (within eps).
    Touch { point: Point, t: f64, u: f64 },
    /// Collinear segments sharing an interval longer than eps.
    CollinearOverlap { start: Point, end: Point },
}

/// Shortest distance from `p` to segment `a`-`b`.
pub fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

fn snap_to_endpoints(p: Point, candidates: [Point; 4], eps: f64) -> Point {
    let mut best: Option<Point> = None;
    let mut best_d = eps;
    for c in candidates {
        let d = p.dist(c);
        // Lexicographic tie-break keeps the result symmetric in the segments.
        if d < best_d || (d == best_d && best.is_some_and(|b| c.lex_cmp(&b).is_lt())) {
            best_d = d;
            best = Some(c);
        }
    }
    best.unwrap_or(p)
}

/// Classify the intersection of segments `a1`-`a2` and `b1`-`b2`.
///
/// Intersection points within eps of an input endpoint snap to that endpoint,
/// and the returned parameters are recomputed from the snapped point so they
/// stay consistent with it.
pub fn segment_intersect(
    a1: Point,
    a2: Point,
    b1: Point,
    b2: Point,
    tol: Tolerance,
) -> SegmentIntersection {
    let eps = tol.eps();
    let d1 = a2 - a1;
    let d2 = b2 - b1;
    let len1 = d1.norm();
    let len2 = d2.norm();
    debug_assert!(len1 > eps && len2 > eps, "degenerate segment");

    // Signed distances of b's endpoints from the line through a.
    let h1 = d1.cross(b1 - a1) / len1;
    let h2 = d1.cross(b2 - a1) / len1;

    if h1.abs() <= eps && h2.abs() <= eps {
        return collinear_overlap(a1, a2, b1, b2, eps);
    }

    let denom = d1.cross(d2);
    if denom == 0.0 {
        return SegmentIntersection::None;
    }

    let t = (b1 - a1).cross(d2) / denom;
    let u = (b1 - a1).cross(d1) / denom;
    let eps_t = eps / len1;
    let eps_u = eps / len2;
    if t < -eps_t || t > 1.0 + eps_t || u < -eps_u || u > 1.0 + eps_u {
        return SegmentIntersection::None;
    }

    let raw = a1 + d1 * t;
    let point = snap_to_endpoints(raw, [a1, a2, b1, b2], eps);
    let t = ((point - a1).dot(d1) / (len1 * len1)).clamp(0.0, 1.0);
    let u = ((point - b1).dot(d2) / (len2 * len2)).clamp(0.0, 1.0);

    let interior_t = t * len1 > eps && (1.0 - t) * len1 > eps;
    let interior_u = u * len2 > eps && (1.0 - u) * len2 > eps;
    if interior_t && interior_u {
        SegmentIntersection::Crossing { point, t, u }
    } else {
        SegmentIntersection::Touch { point, t, u }
    }
}

fn collinear_overlap(a1: Point, a2: Point, b1: Point, b2: Point, eps: f64) -> SegmentIntersection {
    let d1 = a2 - a1;
    let len1 = d1.norm();
    // Arc-length coordinates of b's endpoints along a.
    let s1 = (b1 - a1).dot(d1) / len1;
    let s2 = (b2 - a1).dot(d1) / len1;
    let (blo, bhi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    let lo = blo.max(0.0);
    let hi = bhi.min(len1);

    if hi - lo > eps {
        let dir = d1 * (1.0 / len1);
        let start = snap_to_endpoints(a1 + dir * lo, [a1, a2, b1, b2], eps);
        let end = snap_to_endpoints(a1 + dir * hi, [a1, a2, b1, b2], eps);
        SegmentIntersection::CollinearOverlap { start, end }
    } else if hi >= lo - eps {
        // Single-point contact between collinear segments.
        let s = 0.5 * (lo + hi);
        let dir = d1 * (1.0 / len1);
        let point = snap_to_endpoints(a1 + dir * s, [a1, a2, b1, b2], eps);
        let t = (s / len1).clamp(0.0, 1.0);
        let d2 = b2 - b1;
        let len2 = d2.norm();
        let u = ((point - b1).dot(d2) / (len2 * len2)).clamp(0.0, 1.0);
        SegmentIntersection::Touch { point, t, u }
    } else {
        SegmentIntersection::None
    }
}

/// Interns points so coordinates within eps of each other share one
/// representative. Later stages then match vertices exactly instead of
/// re-deriving eps-equality edge by edge.
#[derive(Debug, Clone)]
pub(crate) struct SnapRegistry {
    eps: f64,
    points: Vec<Point>,
}

impl SnapRegistry {
    pub fn new(tol: Tolerance) -> Self {
        SnapRegistry { eps: tol.eps(), points: Vec::new() }
    }

    /// Index of the first registered point within eps of `p`, registering `p`
    /// itself when there is none.
    pub fn intern(&mut self, p: Point) -> usize {
        for (i, q) in self.points.iter().enumerate() {
            if q.dist(p) <= self.eps {
                return i;
            }
        }
        self.points.push(p);
        self.points.len() - 1
    }

    pub fn snap(&mut self, p: Point) -> Point {
        let i = self.intern(p);
        self.points[i]
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }
}

/// True if directed edge `a`->`b` crosses the rightward ray from `p` upward.
///
/// Half-open endpoint rule: an endpoint exactly on the ray counts for the
/// edge whose interior lies above it, so shared vertices are never counted
/// twice.
fn crosses_ray_upward(a: Point, b: Point, p: Point) -> bool {
    a.y <= p.y && b.y > p.y && (b - a).cross(p - a) > 0.0
}

fn crosses_ray_downward(a: Point, b: Point, p: Point) -> bool {
    a.y > p.y && b.y <= p.y && (b - a).cross(p - a) < 0.0
}

/// Signed winding number of `contours` about `p` by the axis-crossing method:
/// edges crossing the rightward horizontal ray from `p` upward contribute +1,
/// downward -1.
///
/// Fails with `PointOnBoundary` when `p` is within eps of any edge, where the
/// winding number is undefined.
pub fn winding_number(p: Point, contours: &[Contour], tol: Tolerance) -> Result<i32> {
    let eps = tol.eps();
    let mut wn = 0i32;
    for contour in contours {
        for (a, b) in contour.edges() {
            if dist_point_segment(p, a, b) <= eps {
                return Err(Error::PointOnBoundary);
            }
            if crosses_ray_upward(a, b, p) {
                wn += 1;
            } else if crosses_ray_downward(a, b, p) {
                wn -= 1;
            }
        }
    }
    Ok(wn)
}

/// Membership of `p` in `poly` under its fill rule.
pub fn point_in_polygon(p: Point, poly: &Polygon, tol: Tolerance) -> Result<bool> {
    let w = winding_number(p, &poly.contours, tol)?;
    Ok(match poly.fill_rule {
        FillRule::NonZero => w != 0,
        FillRule::EvenOdd => w.rem_euclid(2) == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contour(points: &[(f64, f64)]) -> Contour {
        Contour::new(points.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    fn unit_square() -> Contour {
        contour(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    #[test]
    fn signed_area_unit_square_ccw() {
        assert_eq!(unit_square().signed_area(), 1.0);
    }

    #[test]
    fn signed_area_reversed_negates() {
        assert_eq!(unit_square().reversed().signed_area(), -1.0);
    }

    #[test]
    fn signed_area_triangle_cw() {
        let t = contour(&[(2.0, 2.0), (4.0, 4.0), (4.0, 0.0)]);
        // Half base times height with clockwise sign: base 4 along x=4,
        // apex at distance 2.
        assert_eq!(t.signed_area(), -4.0);
    }

    #[test]
    fn orientation_cases() {
        let tol = Tolerance::default();
        assert_eq!(unit_square().orientation(tol), Orientation::Ccw);
        assert_eq!(unit_square().reversed().orientation(tol), Orientation::Cw);
        let flat = contour(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(flat.orientation(tol), Orientation::Degenerate);
    }

    #[test]
    fn winding_square_center() {
        let tol = Tolerance::default();
        let w = winding_number(Point::new(0.5, 0.5), &[unit_square()], tol).unwrap();
        assert_eq!(w, 1);
    }

    #[test]
    fn winding_outside_is_zero() {
        let tol = Tolerance::default();
        let w = winding_number(Point::new(5.0, 5.0), &[unit_square()], tol).unwrap();
        assert_eq!(w, 0);
    }

    #[test]
    fn winding_cw_square_center() {
        let tol = Tolerance::default();
        let w = winding_number(Point::new(0.5, 0.5), &[unit_square().reversed()], tol).unwrap();
        assert_eq!(w, -1);
    }

    fn doubly_wound_square() -> Contour {
        contour(&[
            (0.0, 0.0),
            (4.0, 0.0),
            (4.0, 4.0),
            (0.0, 4.0),
            (0.0, 0.0),
            (4.0, 0.0),
            (4.0, 4.0),
            (0.0, 4.0),
        ])
    }

    #[test]
    fn winding_doubly_wound_square() {
        let tol = Tolerance::default();
        let w = winding_number(Point::new(2.0, 2.0), &[doubly_wound_square()], tol).unwrap();
        assert_eq!(w, 2);
    }

    #[test]
    fn winding_on_boundary_is_undefined() {
        let tol = Tolerance::default();
        let err = winding_number(Point::new(0.5, 0.0), &[unit_square()], tol).unwrap_err();
        assert_eq!(err, Error::PointOnBoundary);
    }

    #[test]
    fn point_in_polygon_fill_rules() {
        let tol = Tolerance::default();
        let p = Point::new(2.0, 2.0);
        let nonzero = Polygon::new(vec![doubly_wound_square()], FillRule::NonZero);
        let evenodd = Polygon::new(vec![doubly_wound_square()], FillRule::EvenOdd);
        assert!(point_in_polygon(p, &nonzero, tol).unwrap());
        assert!(!point_in_polygon(p, &evenodd, tol).unwrap());
        let outside = Point::new(9.0, 9.0);
        assert!(!point_in_polygon(outside, &nonzero, tol).unwrap());
        assert!(!point_in_polygon(outside, &evenodd, tol).unwrap());
    }

    #[test]
    fn segments_crossing_at_center() {
        let tol = Tolerance::default();
        let r = segment_intersect(
            Point::new(0.0, 0.0),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
            Point::new(2.0, 0.0),
            tol,
        );
        match r {
            SegmentIntersection::Crossing { point, t, u } => {
                assert_eq!(point, Point::new(1.0, 1.0));
                assert!((t - 0.5).abs() < 1e-12);
                assert!((u - 0.5).abs() < 1e-12);
            }
            other => panic!("expected crossing, got {other:?}"),
        }
    }

    #[test]
    fn segments_parallel_disjoint() {
        let tol = Tolerance::default();
        let r = segment_intersect(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            tol,
        );
        assert_eq!(r, SegmentIntersection::None);
    }

    #[test]
    fn segments_collinear_overlap() {
        let tol = Tolerance::default();
        let r = segment_intersect(
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(3.0, 0.0),
            tol,
        );
        match r {
            SegmentIntersection::CollinearOverlap { start, end } => {
                assert_eq!(start, Point::new(1.0, 0.0));
                assert_eq!(end, Point::new(2.0, 0.0));
            }
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn segments_touch_at_shared_endpoint() {
        let tol = Tolerance::default();
        let r = segment_intersect(
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 2.0),
            tol,
        );
        match r {
            SegmentIntersection::Touch { point, t, u } => {
                assert_eq!(point, Point::new(2.0, 0.0));
                assert_eq!(t, 1.0);
                assert_eq!(u, 0.0);
            }
            other => panic!("expected touch, got {other:?}"),
        }
    }

    #[test]
    fn tolerance_from_inputs() {
        let poly = Polygon::new(vec![unit_square()], FillRule::NonZero);
        let tol = Tolerance::for_polygons([&poly]);
        let diag = 2.0f64.sqrt();
        assert!((tol.eps() - 1e-9 * diag).abs() < 1e-24);
        let tiny = Polygon::new(
            vec![contour(&[(0.0, 0.0), (1e-6, 0.0), (0.0, 1e-6)])],
            FillRule::NonZero,
        );
        assert_eq!(Tolerance::for_polygons([&tiny]).eps(), 1e-12);
    }
}
