//! Decomposition of self-intersecting contours into simple ones.
//!
//! A self-intersecting boundary first gets planarized: every crossing between
//! two of its edges becomes an explicitly repeated vertex. A stack pass then
//! peels off one simple loop per repeated vertex: vertices are pushed in
//! traversal order, and when an incoming vertex matches one already on the
//! stack, everything above the match pops off as a finished contour while the
//! matched vertex stays for the remainder of the traversal.

use crate::error::{Error, Result};
use crate::geom::{
    segment_intersect, Contour, Orientation, Point, Polygon, SegmentIntersection, SnapRegistry,
    Tolerance,
};

/// A contour whose self-crossings all appear as repeated vertices, so its
/// edges intersect only at shared vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarContour {
    vertices: Vec<Point>,
}

impl PlanarContour {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn as_contour(&self) -> Contour {
        Contour::new(self.vertices.clone())
    }

    /// Directed edges of the ring, after subdivision.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// Simple contours produced by decomposition, with the index of the
/// originating input contour recorded per output contour.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleContourSet {
    pub contours: Vec<Contour>,
    /// Input-contour index each output contour (and so each of its edges)
    /// came from.
    pub origin: Vec<usize>,
    /// Zero-area pieces dropped during splitting.
    pub dropped_slivers: usize,
}

impl SimpleContourSet {
    fn empty() -> Self {
        SimpleContourSet { contours: Vec::new(), origin: Vec::new(), dropped_slivers: 0 }
    }
}

fn adjacent(i: usize, j: usize, n: usize) -> bool {
    let d = (j + n - i) % n;
    d == 1 || d == n - 1
}

/// Insert every self-crossing of `c` as an explicit vertex in both edges
/// involved. Touch points land as vertices where not already present, and
/// inserted points within eps of each other (or of an input vertex) merge.
pub fn planarize(c: &Contour, tol: Tolerance) -> Result<PlanarContour> {
    planarize_indexed(c, 0, tol)
}

fn planarize_indexed(c: &Contour, contour_index: usize, tol: Tolerance) -> Result<PlanarContour> {
    let eps = tol.eps();
    let n = c.len();
    let verts = c.vertices();

    let mut registry = SnapRegistry::new(tol);
    for &v in verts {
        registry.intern(v);
    }

    // Split points per edge, keyed by the parameter along the edge.
    let mut splits: Vec<Vec<(f64, Point)>> = vec![Vec::new(); n];
    for i in 0..n {
        let (a1, a2) = c.edge(i);
        let len_a = a1.dist(a2);
        for j in (i + 1)..n {
            if adjacent(i, j, n) {
                continue;
            }
            let (b1, b2) = c.edge(j);
            let len_b = b1.dist(b2);
            match segment_intersect(a1, a2, b1, b2, tol) {
                SegmentIntersection::None => {}
                SegmentIntersection::CollinearOverlap { .. } => {
                    // A multiply-traversed boundary repeats whole edges; the
                    // repeated vertices already carry the crossing structure,
                    // so only partial overlaps are rejected.
                    let identical = a1.dist(b1) <= eps && a2.dist(b2) <= eps;
                    if identical {
                        continue;
                    }
                    return Err(Error::CollinearSelfOverlap {
                        contour: contour_index,
                        edge_a: i,
                        edge_b: j,
                    });
                }
                SegmentIntersection::Crossing { point, t, u }
                | SegmentIntersection::Touch { point, t, u } => {
                    let point = registry.snap(point);
                    if t * len_a > eps && (1.0 - t) * len_a > eps {
                        splits[i].push((t, point));
                    }
                    if u * len_b > eps && (1.0 - u) * len_b > eps {
                        splits[j].push((u, point));
                    }
                }
            }
        }
    }

    let mut ring: Vec<Point> = Vec::with_capacity(n + splits.iter().map(Vec::len).sum::<usize>());
    for i in 0..n {
        ring.push(verts[i]);
        splits[i].sort_by(|a, b| a.0.total_cmp(&b.0));
        for &(_, p) in &splits[i] {
            ring.push(p);
        }
    }

    // Merge consecutive duplicates, including across the wrap.
    let mut cleaned: Vec<Point> = Vec::with_capacity(ring.len());
    for p in ring {
        if cleaned.last().is_none_or(|q| q.dist(p) > eps) {
            cleaned.push(p);
        }
    }
    while cleaned.len() > 1 && cleaned[0].dist(*cleaned.last().unwrap()) <= eps {
        cleaned.pop();
    }

    Ok(PlanarContour { vertices: cleaned })
}

/// Split a planarized ring into simple contours with the stack procedure:
/// push vertices in order; when an incoming vertex matches one on the stack,
/// pop everything above the match and emit it (prefixed by the matched
/// vertex) as one contour; the remaining stack is the final contour.
pub fn split_contour(pc: &PlanarContour, tol: Tolerance) -> Result<SimpleContourSet> {
    let eps = tol.eps();
    let mut stack: Vec<Point> = Vec::new();
    let mut rings: Vec<Vec<Point>> = Vec::new();

    for &v in &pc.vertices {
        // The stack never holds two eps-equal vertices, so one match at most.
        if let Some(k) = stack.iter().rposition(|s| s.dist(v) <= eps) {
            let mut piece = vec![stack[k]];
            piece.extend(stack.drain(k + 1..));
            rings.push(piece);
        } else {
            stack.push(v);
        }
    }
    rings.push(stack);

    let mut set = SimpleContourSet::empty();
    let mut pending = rings;
    let mut rounds = 0;
    while let Some(ring) = pending.pop() {
        let contour = Contour::new(ring);
        if contour.len() < 3 || contour.orientation(tol) == Orientation::Degenerate {
            set.dropped_slivers += 1;
            continue;
        }
        if is_simple(&contour, tol) {
            set.contours.push(contour);
            continue;
        }
        // A multiplicity >= 3 vertex can leave a piece that still self-touches;
        // re-run the split on it.
        rounds += 1;
        if rounds > 64 {
            return Err(Error::DegenerateContour(
                "contour did not become simple after repeated splitting".into(),
            ));
        }
        let again = split_contour(&planarize(&contour, tol)?, tol)?;
        set.dropped_slivers += again.dropped_slivers;
        pending.extend(again.contours.into_iter().map(|c| c.vertices().to_vec()));
    }

    set.contours.reverse(); // emission order: traversal order
    set.origin = vec![0; set.contours.len()];
    Ok(set)
}

/// Brute-force simplicity check: no pair of non-adjacent edges crosses.
pub fn is_simple(c: &Contour, tol: Tolerance) -> bool {
    let n = c.len();
    for i in 0..n {
        let (a1, a2) = c.edge(i);
        for j in (i + 1)..n {
            if adjacent(i, j, n) {
                continue;
            }
            let (b1, b2) = c.edge(j);
            if let SegmentIntersection::Crossing { .. } = segment_intersect(a1, a2, b1, b2, tol) {
                return false;
            }
        }
    }
    true
}

/// Decompose every contour of `poly` into simple contours. Distinct input
/// contours may nest, touch at points, or be disjoint, but must not cross.
pub fn decompose_polygon(poly: &Polygon, tol: Tolerance) -> Result<SimpleContourSet> {
    let m = poly.contours.len();
    for i in 0..m {
        for j in (i + 1)..m {
            let (ci, cj) = (&poly.contours[i], &poly.contours[j]);
            for (a1, a2) in ci.edges() {
                for (b1, b2) in cj.edges() {
                    if let SegmentIntersection::Crossing { .. } =
                        segment_intersect(a1, a2, b1, b2, tol)
                    {
                        return Err(Error::CrossContourCrossing { contour_a: i, contour_b: j });
                    }
                }
            }
        }
    }

    let mut set = SimpleContourSet::empty();
    for (idx, c) in poly.contours.iter().enumerate() {
        let split = split_contour(&planarize_indexed(c, idx, tol)?, tol)?;
        set.dropped_slivers += split.dropped_slivers;
        for contour in split.contours {
            set.contours.push(contour);
            set.origin.push(idx);
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::FillRule;

    fn contour(points: &[(f64, f64)]) -> Contour {
        Contour::new(points.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    fn points(c: &[Point]) -> Vec<(f64, f64)> {
        c.iter().map(|p| (p.x, p.y)).collect()
    }

    fn bowtie() -> Contour {
        contour(&[(0.0, 0.0), (4.0, 4.0), (4.0, 0.0), (0.0, 4.0)])
    }

    fn overlap_figure() -> Contour {
        contour(&[
            (0.0, 0.0),
            (8.0, 0.0),
            (8.0, 6.0),
            (3.0, 6.0),
            (3.0, 2.0),
            (5.0, 2.0),
            (5.0, 4.0),
            (0.0, 4.0),
        ])
    }

    #[test]
    fn planarize_bowtie_inserts_crossing() {
        let tol = Tolerance::default();
        let pc = planarize(&bowtie(), tol).unwrap();
        assert_eq!(
            points(pc.vertices()),
            vec![
                (0.0, 0.0),
                (2.0, 2.0),
                (4.0, 4.0),
                (4.0, 0.0),
                (2.0, 2.0),
                (0.0, 4.0)
            ]
        );
    }

    #[test]
    fn planarize_simple_square_unchanged() {
        let tol = Tolerance::default();
        let square = contour(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let pc = planarize(&square, tol).unwrap();
        assert_eq!(pc.vertices(), square.vertices());
    }

    #[test]
    fn planarize_overlap_figure_inserts_crossing() {
        let tol = Tolerance::default();
        let pc = planarize(&overlap_figure(), tol).unwrap();
        assert_eq!(
            points(pc.vertices()),
            vec![
                (0.0, 0.0),
                (8.0, 0.0),
                (8.0, 6.0),
                (3.0, 6.0),
                (3.0, 4.0),
                (3.0, 2.0),
                (5.0, 2.0),
                (5.0, 4.0),
                (3.0, 4.0),
                (0.0, 4.0)
            ]
        );
    }

    #[test]
    fn planarize_rejects_collinear_self_overlap() {
        let tol = Tolerance::default();
        // Edge 0 runs (0,0)-(4,0); edge 2 retraces (3,0)-(1,0).
        let c = contour(&[(0.0, 0.0), (4.0, 0.0), (3.0, 0.0), (1.0, 0.0), (0.0, 3.0)]);
        // Non-adjacent pair (0, 2) overlaps along y = 0.
        let err = planarize(&c, tol).unwrap_err();
        assert!(matches!(err, Error::CollinearSelfOverlap { .. }), "{err:?}");
    }

    #[test]
    fn split_bowtie_into_two_triangles() {
        let tol = Tolerance::default();
        let set = split_contour(&planarize(&bowtie(), tol).unwrap(), tol).unwrap();
        assert_eq!(set.contours.len(), 2);
        assert_eq!(
            points(set.contours[0].vertices()),
            vec![(2.0, 2.0), (4.0, 4.0), (4.0, 0.0)]
        );
        assert_eq!(
            points(set.contours[1].vertices()),
            vec![(0.0, 0.0), (2.0, 2.0), (0.0, 4.0)]
        );
        assert_eq!(set.dropped_slivers, 0);
    }

    #[test]
    fn split_overlap_figure_into_lens_and_outer() {
        let tol = Tolerance::default();
        let set = split_contour(&planarize(&overlap_figure(), tol).unwrap(), tol).unwrap();
        assert_eq!(set.contours.len(), 2);
        assert_eq!(
            points(set.contours[0].vertices()),
            vec![(3.0, 4.0), (3.0, 2.0), (5.0, 2.0), (5.0, 4.0)]
        );
        assert_eq!(
            points(set.contours[1].vertices()),
            vec![
                (0.0, 0.0),
                (8.0, 0.0),
                (8.0, 6.0),
                (3.0, 6.0),
                (3.0, 4.0),
                (0.0, 4.0)
            ]
        );
    }

    #[test]
    fn split_simple_square_passes_through() {
        let tol = Tolerance::default();
        let square = contour(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let set = split_contour(&planarize(&square, tol).unwrap(), tol).unwrap();
        assert_eq!(set.contours.len(), 1);
        assert_eq!(set.contours[0], square);
    }

    #[test]
    fn decompose_polygon_bowtie() {
        let tol = Tolerance::default();
        let poly = Polygon::new(vec![bowtie()], FillRule::NonZero);
        let set = decompose_polygon(&poly, tol).unwrap();
        assert_eq!(set.contours.len(), 2);
        assert_eq!(set.origin, vec![0, 0]);
    }

    #[test]
    fn decompose_polygon_nested_square_hole_unchanged() {
        let tol = Tolerance::default();
        let outer = contour(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]);
        let hole = contour(&[(1.0, 1.0), (1.0, 3.0), (3.0, 3.0), (3.0, 1.0)]);
        let poly = Polygon::new(vec![outer.clone(), hole.clone()], FillRule::NonZero);
        let set = decompose_polygon(&poly, tol).unwrap();
        assert_eq!(set.contours, vec![outer, hole]);
        assert_eq!(set.origin, vec![0, 1]);
    }

    #[test]
    fn decompose_polygon_rejects_crossing_contours() {
        let tol = Tolerance::default();
        let a = contour(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)]);
        let b = contour(&[(1.0, 1.0), (3.0, 1.0), (3.0, 3.0), (1.0, 3.0)]);
        let poly = Polygon::new(vec![a, b], FillRule::NonZero);
        let err = decompose_polygon(&poly, tol).unwrap_err();
        assert_eq!(err, Error::CrossContourCrossing { contour_a: 0, contour_b: 1 });
    }

    #[test]
    fn doubly_wound_square_splits_into_two_copies() {
        let tol = Tolerance::default();
        let ring = contour(&[
            (0.0, 0.0),
            (4.0, 0.0),
            (4.0, 4.0),
            (0.0, 4.0),
            (0.0, 0.0),
            (4.0, 0.0),
            (4.0, 4.0),
            (0.0, 4.0),
        ]);
        let set = split_contour(&planarize(&ring, tol).unwrap(), tol).unwrap();
        assert_eq!(set.contours.len(), 2);
        assert_eq!(set.contours[0], set.contours[1]);
    }
}
