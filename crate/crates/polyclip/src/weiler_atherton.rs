//! Weiler-Atherton intersection clipping of one simple counter-clockwise
//! subject contour against one simple counter-clockwise clip contour.
//!
//! Boundary intersections are labeled entering/leaving from the membership
//! of the subject arc midpoint between consecutive intersections, which stays
//! robust at grazing angles. Touches where the boundaries do not locally
//! cross are tangent and take no part in the traversal; a boundary segment
//! shared by both contours counts as inside, so clipping a contour against
//! itself returns the contour.

use std::f64::consts::TAU;

use crate::classify::representative_point;
use crate::error::{Error, Result};
use crate::geom::{
    segment_intersect, Contour, Orientation, Point, SegmentIntersection, Tolerance,
};

/// Which input boundary an output edge came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    Subject,
    Clipper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionKind {
    /// The subject boundary enters the clipper here.
    Entering,
    /// The subject boundary leaves the clipper here.
    Leaving,
    /// Touch without a local crossing; excluded from traversal.
    Tangent,
}

/// One intersection of the subject and clip boundaries.
///
/// `kind` is `None` until [`label_entry_exit`] has run, except for touches
/// already recognizable as tangent from the local edge directions.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryIntersection {
    pub point: Point,
    pub subj_edge: usize,
    pub subj_t: f64,
    pub clip_edge: usize,
    pub clip_u: f64,
    pub kind: Option<IntersectionKind>,
    pub visited: bool,
}

/// A closed, counter-clockwise output contour with per-edge origin tags;
/// `origins[k]` tags the edge from vertex `k` to vertex `k+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub ring: Contour,
    pub origins: Vec<EdgeOrigin>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PieceSet {
    pub pieces: Vec<Piece>,
    pub dropped_slivers: usize,
}

impl PieceSet {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// Cumulative arc-length positions along a ring.
struct ArcIndex {
    cum: Vec<f64>,
    total: f64,
}

impl ArcIndex {
    fn new(c: &Contour) -> Self {
        let mut cum = Vec::with_capacity(c.len());
        let mut acc = 0.0;
        for (a, b) in c.edges() {
            cum.push(acc);
            acc += a.dist(b);
        }
        ArcIndex { cum, total: acc }
    }

    fn arc_of(&self, c: &Contour, edge: usize, t: f64) -> f64 {
        let (a, b) = c.edge(edge);
        self.cum[edge] + t * a.dist(b)
    }

    fn point_at(&self, c: &Contour, arc: f64) -> Point {
        let arc = arc.rem_euclid(self.total);
        let i = match self.cum.binary_search_by(|x| x.total_cmp(&arc)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let (a, b) = c.edge(i);
        let len = a.dist(b);
        a + (b - a) * ((arc - self.cum[i]) / len)
    }

    /// Cyclic distance traveled forward from `from` to `to`.
    fn forward(&self, from: f64, to: f64) -> f64 {
        (to - from).rem_euclid(self.total)
    }
}

/// Directions of travel into and out of the boundary point at (`edge`, `t`).
fn boundary_dirs(c: &Contour, edge: usize, t: f64, eps: f64) -> (Point, Point) {
    let n = c.len();
    let (a, b) = c.edge(edge);
    let len = a.dist(b);
    let dir = (b - a) * (1.0 / len);
    if t * len <= eps {
        let (pa, pb) = c.edge((edge + n - 1) % n);
        let before = (pb - pa) * (1.0 / pa.dist(pb));
        (before, dir)
    } else if (1.0 - t) * len <= eps {
        let (na, nb) = c.edge((edge + 1) % n);
        let after = (nb - na) * (1.0 / na.dist(nb));
        (dir, after)
    } else {
        (dir, dir)
    }
}

fn angle_of(v: Point) -> f64 {
    v.y.atan2(v.x)
}

/// True when ray `x` lies strictly inside the counter-clockwise sector from
/// ray `a` to ray `b`.
fn in_ccw_sector(x: f64, a: f64, b: f64) -> bool {
    let span = (b - a).rem_euclid(TAU);
    let d = (x - a).rem_euclid(TAU);
    d > 0.0 && d < span
}

const PARALLEL_ANGLE_EPS: f64 = 1e-9;

fn nearly_same_dir(u: Point, v: Point) -> bool {
    u.cross(v).abs() <= PARALLEL_ANGLE_EPS && u.dot(v) > 0.0
}

/// Local-crossing test at a touch point: the boundaries cross iff the two
/// clip rays are separated by the subject's backward/forward rays. `None`
/// when a ray pair is (close to) parallel and the test is unreliable.
fn locally_crosses(
    s: &Contour,
    c: &Contour,
    r: &BoundaryIntersection,
    eps: f64,
) -> Option<bool> {
    let (s_before, s_after) = boundary_dirs(s, r.subj_edge, r.subj_t, eps);
    let (c_before, c_after) = boundary_dirs(c, r.clip_edge, r.clip_u, eps);
    let s_back = s_before * -1.0;
    let c_back = c_before * -1.0;
    for su in [s_back, s_after] {
        for cu in [c_back, c_after] {
            if nearly_same_dir(su, cu) {
                return None;
            }
        }
    }
    let a = angle_of(s_back);
    let b = angle_of(s_after);
    let mut inside = 0;
    for cu in [c_back, c_after] {
        if in_ccw_sector(angle_of(cu), a, b) {
            inside += 1;
        }
    }
    Some(inside == 1)
}

/// All intersections of the subject and clip boundaries, sorted along the
/// subject and deduplicated within eps. Collinear overlap runs contribute
/// their two endpoints. Touches that verifiably do not cross locally are
/// pre-marked tangent.
pub fn find_boundary_intersections(
    s: &Contour,
    c: &Contour,
    tol: Tolerance,
) -> Vec<BoundaryIntersection> {
    let eps = tol.eps();
    let mut records: Vec<BoundaryIntersection> = Vec::new();

    let mut push = |point: Point, i: usize, t: f64, j: usize, u: f64| {
        records.push(BoundaryIntersection {
            point,
            subj_edge: i,
            subj_t: t,
            clip_edge: j,
            clip_u: u,
            kind: None,
            visited: false,
        });
    };

    for i in 0..s.len() {
        let (a1, a2) = s.edge(i);
        for j in 0..c.len() {
            let (b1, b2) = c.edge(j);
            match segment_intersect(a1, a2, b1, b2, tol) {
                SegmentIntersection::None => {}
                SegmentIntersection::Crossing { point, t, u }
                | SegmentIntersection::Touch { point, t, u } => push(point, i, t, j, u),
                SegmentIntersection::CollinearOverlap { start, end } => {
                    let da = a2 - a1;
                    let db = b2 - b1;
                    let la2 = da.dot(da);
                    let lb2 = db.dot(db);
                    for p in [start, end] {
                        let t = ((p - a1).dot(da) / la2).clamp(0.0, 1.0);
                        let u = ((p - b1).dot(db) / lb2).clamp(0.0, 1.0);
                        push(p, i, t, j, u);
                    }
                }
            }
        }
    }

    let sa = ArcIndex::new(s);
    records.sort_by(|x, y| {
        sa.arc_of(s, x.subj_edge, x.subj_t)
            .total_cmp(&sa.arc_of(s, y.subj_edge, y.subj_t))
    });

    // Merge records produced by several edge pairs for one geometric event.
    let mut merged: Vec<BoundaryIntersection> = Vec::new();
    for r in records {
        let arc = sa.arc_of(s, r.subj_edge, r.subj_t);
        let dup = merged.last().is_some_and(|m| {
            sa.forward(sa.arc_of(s, m.subj_edge, m.subj_t), arc) <= eps
                && m.point.dist(r.point) <= eps
        });
        if !dup {
            merged.push(r);
        }
    }
    while merged.len() > 1 {
        let first_arc = sa.arc_of(s, merged[0].subj_edge, merged[0].subj_t);
        let last = merged.last().unwrap();
        let last_arc = sa.arc_of(s, last.subj_edge, last.subj_t);
        if sa.forward(last_arc, first_arc) <= eps && last.point.dist(merged[0].point) <= eps {
            merged.pop();
        } else {
            break;
        }
    }

    for r in &mut merged {
        if locally_crosses(s, c, r, eps) == Some(false) {
            r.kind = Some(IntersectionKind::Tangent);
        }
    }
    merged
}

/// Label each intersection from the membership of the subject arc midpoint
/// that follows it: the boundary is entering the clipper when the next arc
/// lies inside, leaving when it lies outside, tangent when the state does
/// not change. Points on the clip boundary count as inside, so shared
/// boundary runs stay part of the intersection.
pub fn label_entry_exit(
    s: &Contour,
    c: &Contour,
    xs: Vec<BoundaryIntersection>,
    tol: Tolerance,
) -> Result<Vec<BoundaryIntersection>> {
    if xs.is_empty() {
        return Ok(xs);
    }
    let eps = tol.eps();
    let sa = ArcIndex::new(s);
    let arcs: Vec<f64> = xs
        .iter()
        .map(|r| sa.arc_of(s, r.subj_edge, r.subj_t))
        .collect();
    let n = xs.len();

    // states[k]: is the arc after intersection k inside the clipper?
    let mut states = Vec::with_capacity(n);
    for k in 0..n {
        let gap = sa.forward(arcs[k], arcs[(k + 1) % n]);
        let gap = if n == 1 { sa.total } else { gap };
        let mid = sa.point_at(s, arcs[k] + 0.5 * gap);
        states.push(c.inside_or_boundary(mid, eps));
    }

    let mut out = xs;
    for k in 0..n {
        let prev = states[(k + n - 1) % n];
        let next = states[k];
        let flip = prev != next;
        match (out[k].kind, flip) {
            (Some(IntersectionKind::Tangent), false) => {}
            (Some(IntersectionKind::Tangent), true) => {
                return Err(Error::AlternationViolation(format!(
                    "membership flips across tangent intersection at {}",
                    out[k].point
                )));
            }
            (_, true) => {
                out[k].kind = Some(if next {
                    IntersectionKind::Entering
                } else {
                    IntersectionKind::Leaving
                });
            }
            (_, false) => out[k].kind = Some(IntersectionKind::Tangent),
        }
    }

    let labels: Vec<IntersectionKind> = out
        .iter()
        .filter_map(|r| r.kind)
        .filter(|k| *k != IntersectionKind::Tangent)
        .collect();
    let entering = labels
        .iter()
        .filter(|k| **k == IntersectionKind::Entering)
        .count();
    if entering * 2 != labels.len() {
        return Err(Error::AlternationViolation(format!(
            "{} entering vs {} leaving",
            entering,
            labels.len() - entering
        )));
    }
    for w in labels.windows(2) {
        if w[0] == w[1] {
            return Err(Error::AlternationViolation(
                "consecutive intersections carry the same label".into(),
            ));
        }
    }
    Ok(out)
}

/// Walk the labeled intersections into closed pieces: from an unvisited
/// entering intersection follow the subject forward to the next intersection,
/// switch to the clipper, and alternate until the loop closes.
pub fn wa_traverse(
    s: &Contour,
    c: &Contour,
    xs: &[BoundaryIntersection],
    tol: Tolerance,
) -> Result<PieceSet> {
    let eps = tol.eps();
    let active: Vec<usize> = (0..xs.len())
        .filter(|&i| {
            matches!(
                xs[i].kind,
                Some(IntersectionKind::Entering | IntersectionKind::Leaving)
            )
        })
        .collect();
    if active.is_empty() {
        return Ok(PieceSet::default());
    }

    let sa = ArcIndex::new(s);
    let ca = ArcIndex::new(c);
    let arc_s: Vec<f64> = xs
        .iter()
        .map(|r| sa.arc_of(s, r.subj_edge, r.subj_t))
        .collect();
    let arc_c: Vec<f64> = xs
        .iter()
        .map(|r| ca.arc_of(c, r.clip_edge, r.clip_u))
        .collect();

    let by_subject = active.clone(); // xs is already sorted along the subject
    let mut by_clipper = active.clone();
    by_clipper.sort_by(|&a, &b| arc_c[a].total_cmp(&arc_c[b]));

    let successor = |order: &[usize], id: usize| -> usize {
        let pos = order.iter().position(|&x| x == id).unwrap();
        order[(pos + 1) % order.len()]
    };

    let vertices_between = |arcidx: &ArcIndex, contour: &Contour, from: f64, to: f64| {
        let span = arcidx.forward(from, to);
        let mut found: Vec<(f64, Point)> = Vec::new();
        for (i, &cum) in arcidx.cum.iter().enumerate() {
            let d = arcidx.forward(from, cum);
            if d > 0.0 && d < span {
                found.push((d, contour.vertices()[i]));
            }
        }
        found.sort_by(|a, b| a.0.total_cmp(&b.0));
        found
    };

    let max_steps = 2 * (s.len() + c.len() + xs.len());
    let mut visited = vec![false; xs.len()];
    let mut set = PieceSet::default();

    for &start in &by_subject {
        if visited[start] || xs[start].kind != Some(IntersectionKind::Entering) {
            continue;
        }
        let mut ring: Vec<Point> = Vec::new();
        let mut origins: Vec<EdgeOrigin> = Vec::new();
        let mut cur = start;
        let mut on_subject = true;
        let mut steps = 0;
        loop {
            steps += 1;
            if steps > max_steps {
                return Err(Error::NonTermination(max_steps));
            }
            visited[cur] = true;
            let origin = if on_subject { EdgeOrigin::Subject } else { EdgeOrigin::Clipper };
            ring.push(xs[cur].point);
            origins.push(origin);

            let (order, arcs, arcidx, contour) = if on_subject {
                (&by_subject, &arc_s, &sa, s)
            } else {
                (&by_clipper, &arc_c, &ca, c)
            };
            let next = successor(order, cur);
            for (_, v) in vertices_between(arcidx, contour, arcs[cur], arcs[next]) {
                ring.push(v);
                origins.push(origin);
            }
            if next == start {
                break;
            }
            if visited[next] {
                return Err(Error::AlternationViolation(format!(
                    "traversal re-entered intersection at {}",
                    xs[next].point
                )));
            }
            let expected = if on_subject {
                IntersectionKind::Leaving
            } else {
                IntersectionKind::Entering
            };
            if xs[next].kind != Some(expected) {
                return Err(Error::AlternationViolation(format!(
                    "expected {:?} at {}, found {:?}",
                    expected, xs[next].point, xs[next].kind
                )));
            }
            cur = next;
            on_subject = !on_subject;
        }

        // Drop zero-length edges introduced by vertices snapped onto
        // intersection points.
        let mut k = 0;
        while ring.len() >= 2 && k < ring.len() {
            let nk = (k + 1) % ring.len();
            if ring[k].dist(ring[nk]) <= eps {
                ring.remove(nk);
                origins.remove(k.min(origins.len() - 1));
            } else {
                k += 1;
            }
        }

        let contour = Contour::new(ring);
        match contour.orientation(tol) {
            Orientation::Degenerate => set.dropped_slivers += 1,
            Orientation::Ccw => set.pieces.push(Piece { ring: contour, origins }),
            Orientation::Cw => {
                let n = contour.len();
                let flipped: Vec<EdgeOrigin> = (0..n).map(|k| origins[(n - 1 - k) % n]).collect();
                set.pieces.push(Piece { ring: contour.reversed(), origins: flipped });
            }
        }
    }
    Ok(set)
}

/// Clip one simple counter-clockwise contour against another. With no
/// non-tangent intersections, containment of representative points decides:
/// subject inside clipper, clipper inside subject, or disjoint.
pub fn clip_simple_pair(s: &Contour, c: &Contour, tol: Tolerance) -> Result<PieceSet> {
    let xs = find_boundary_intersections(s, c, tol);
    let labeled = label_entry_exit(s, c, xs, tol)?;
    let has_crossings = labeled.iter().any(|r| {
        matches!(
            r.kind,
            Some(IntersectionKind::Entering | IntersectionKind::Leaving)
        )
    });
    if has_crossings {
        return wa_traverse(s, c, &labeled, tol);
    }

    let both = vec![s.clone(), c.clone()];
    let rep_s = representative_point(s, &both, tol)?;
    if c.even_odd_contains(rep_s) {
        let origins = vec![EdgeOrigin::Subject; s.len()];
        return Ok(PieceSet { pieces: vec![Piece { ring: s.clone(), origins }], dropped_slivers: 0 });
    }
    let rep_c = representative_point(c, &both, tol)?;
    if s.even_odd_contains(rep_c) {
        let origins = vec![EdgeOrigin::Clipper; c.len()];
        return Ok(PieceSet { pieces: vec![Piece { ring: c.clone(), origins }], dropped_slivers: 0 });
    }
    Ok(PieceSet::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::is_simple;

    fn contour(points: &[(f64, f64)]) -> Contour {
        Contour::new(points.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    fn square(x0: f64, y0: f64, x1: f64, y1: f64) -> Contour {
        contour(&[(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
    }

    #[test]
    fn shifted_squares_two_crossings() {
        let tol = Tolerance::default();
        let s = square(0.0, 0.0, 1.0, 1.0);
        let c = square(0.5, 0.5, 1.5, 1.5);
        let xs = find_boundary_intersections(&s, &c, tol);
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0].point, Point::new(1.0, 0.5));
        assert_eq!(xs[1].point, Point::new(0.5, 1.0));
    }

    #[test]
    fn disjoint_squares_no_intersections() {
        let tol = Tolerance::default();
        let s = square(0.0, 0.0, 1.0, 1.0);
        let c = square(3.0, 3.0, 4.0, 4.0);
        assert!(find_boundary_intersections(&s, &c, tol).is_empty());
    }

    #[test]
    fn corner_touch_is_single_tangent() {
        let tol = Tolerance::default();
        let s = square(0.0, 0.0, 1.0, 1.0);
        let c = square(1.0, 1.0, 2.0, 2.0);
        let xs = find_boundary_intersections(&s, &c, tol);
        assert_eq!(xs.len(), 1);
        assert_eq!(xs[0].kind, Some(IntersectionKind::Tangent));
        let labeled = label_entry_exit(&s, &c, xs, tol).unwrap();
        assert_eq!(labeled[0].kind, Some(IntersectionKind::Tangent));
    }

    #[test]
    fn shifted_squares_one_entering_one_leaving() {
        let tol = Tolerance::default();
        let s = square(0.0, 0.0, 1.0, 1.0);
        let c = square(0.5, 0.5, 1.5, 1.5);
        let xs = find_boundary_intersections(&s, &c, tol);
        let labeled = label_entry_exit(&s, &c, xs, tol).unwrap();
        assert_eq!(labeled[0].kind, Some(IntersectionKind::Entering));
        assert_eq!(labeled[1].kind, Some(IntersectionKind::Leaving));
    }

    #[test]
    fn piercing_convex_clipper_alternates() {
        let tol = Tolerance::default();
        // Subject pokes through the clipper left to right.
        let s = contour(&[(-1.0, 0.2), (3.0, 0.2), (3.0, 0.8), (-1.0, 0.8)]);
        let c = square(0.0, 0.0, 2.0, 2.0);
        let xs = find_boundary_intersections(&s, &c, tol);
        let labeled = label_entry_exit(&s, &c, xs, tol).unwrap();
        let kinds: Vec<_> = labeled.iter().filter_map(|r| r.kind).collect();
        assert_eq!(
            kinds,
            vec![
                IntersectionKind::Entering,
                IntersectionKind::Leaving,
                IntersectionKind::Entering,
                IntersectionKind::Leaving
            ]
        );
    }

    #[test]
    fn traverse_shifted_squares_overlap() {
        let tol = Tolerance::default();
        let s = square(0.0, 0.0, 1.0, 1.0);
        let c = square(0.5, 0.5, 1.5, 1.5);
        let xs = label_entry_exit(&s, &c, find_boundary_intersections(&s, &c, tol), tol).unwrap();
        let set = wa_traverse(&s, &c, &xs, tol).unwrap();
        assert_eq!(set.pieces.len(), 1);
        let piece = &set.pieces[0];
        assert!((piece.ring.signed_area() - 0.25).abs() < 1e-12);
        assert!(is_simple(&piece.ring, tol));
        assert!(piece.origins.contains(&EdgeOrigin::Subject));
        assert!(piece.origins.contains(&EdgeOrigin::Clipper));
    }

    #[test]
    fn clip_square_with_itself_is_identity() {
        let tol = Tolerance::default();
        let s = square(0.0, 0.0, 1.0, 1.0);
        let set = clip_simple_pair(&s, &s.clone(), tol).unwrap();
        assert_eq!(set.pieces.len(), 1);
        assert_eq!(set.pieces[0].ring, s);
    }

    #[test]
    fn clip_containment_both_ways() {
        let tol = Tolerance::default();
        let big = square(0.0, 0.0, 4.0, 4.0);
        let small = square(1.0, 1.0, 2.0, 2.0);
        let set = clip_simple_pair(&small, &big, tol).unwrap();
        assert_eq!(set.pieces.len(), 1);
        assert_eq!(set.pieces[0].ring, small);
        assert!(set.pieces[0].origins.iter().all(|o| *o == EdgeOrigin::Subject));

        let set = clip_simple_pair(&big, &small, tol).unwrap();
        assert_eq!(set.pieces.len(), 1);
        assert_eq!(set.pieces[0].ring, small);
        assert!(set.pieces[0].origins.iter().all(|o| *o == EdgeOrigin::Clipper));
    }

    #[test]
    fn clip_disjoint_is_empty() {
        let tol = Tolerance::default();
        let s = square(0.0, 0.0, 1.0, 1.0);
        let c = square(3.0, 3.0, 4.0, 4.0);
        assert!(clip_simple_pair(&s, &c, tol).unwrap().is_empty());
    }

    #[test]
    fn clip_corner_touch_is_empty() {
        let tol = Tolerance::default();
        let s = square(0.0, 0.0, 1.0, 1.0);
        let c = square(1.0, 1.0, 2.0, 2.0);
        assert!(clip_simple_pair(&s, &c, tol).unwrap().is_empty());
    }
}
