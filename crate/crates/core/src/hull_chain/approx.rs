//! Inner/outer approximations of a chain subtree and constant-size convex
//! tests on them.

use crate::geom::{convex_hull, intersect_closed, line_intersection, orientation, Orientation, Point, SegmentIntersection};

use super::tree::Node;

/// Approximations of the convex region spanned by the edges below a node.
///
/// `inner` is the hull of the node edge and the subtree's first and last
/// edges. The region minus `inner` lies in the two ear triangles, the left
/// one only when there is a left child and likewise on the right. An ear is
/// `None` when its bounding lines are parallel, which disables pruning on it.
pub(crate) struct NodeApprox {
    pub inner: Vec<Point>,
    pub outer: Option<Vec<Point>>,
    pub left_ear: Option<Vec<Point>>,
    pub right_ear: Option<Vec<Point>>,
}

impl NodeApprox {
    pub fn of(node: &Node) -> NodeApprox {
        let e = &node.edge;
        let lo = &node.first;
        let hi = &node.last;
        let inner = convex_hull(&[lo.a.clone(), lo.b.clone(), e.a.clone(), e.b.clone(), hi.a.clone(), hi.b.clone()]);

        let has_left = node.left.root().is_some();
        let has_right = node.right.root().is_some();
        let apex_left = if has_left { line_intersection(&lo.a, &lo.b, &e.a, &e.b) } else { None };
        let apex_right = if has_right { line_intersection(&e.a, &e.b, &hi.a, &hi.b) } else { None };

        let left_ear = apex_left.as_ref().map(|apex| convex_hull(&[lo.b.clone(), apex.clone(), e.a.clone()]));
        let right_ear = apex_right.as_ref().map(|apex| convex_hull(&[e.b.clone(), apex.clone(), hi.a.clone()]));

        let outer = if (has_left && apex_left.is_none()) || (has_right && apex_right.is_none()) {
            None
        } else {
            let mut pts = inner.clone();
            pts.extend(apex_left);
            pts.extend(apex_right);
            Some(convex_hull(&pts))
        };
        NodeApprox { inner, outer, left_ear, right_ear }
    }
}

/// Closed containment in a convex vertex list (CCW, possibly 1 or 2 points).
pub(crate) fn convex_contains(hull: &[Point], q: &Point) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == *q,
        2 => crate::geom::on_segment(&hull[0], &hull[1], q),
        n => (0..n).all(|i| orientation(&hull[i], &hull[(i + 1) % n], q) != Orientation::Clockwise),
    }
}

fn hull_edges(hull: &[Point]) -> Vec<(&Point, &Point)> {
    match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![(&hull[0], &hull[1])],
        n => (0..n).map(|i| (&hull[i], &hull[(i + 1) % n])).collect(),
    }
}

/// A common point of two small convex regions, if any.
pub(crate) fn convex_intersection(a: &[Point], b: &[Point]) -> Option<Point> {
    if let Some(p) = a.iter().find(|p| convex_contains(b, p)) {
        return Some(p.clone());
    }
    if let Some(p) = b.iter().find(|p| convex_contains(a, p)) {
        return Some(p.clone());
    }
    for (p1, p2) in hull_edges(a) {
        for (q1, q2) in hull_edges(b) {
            match intersect_closed(p1, p2, q1, q2) {
                SegmentIntersection::Empty => {}
                SegmentIntersection::At(p) => return Some(p),
                SegmentIntersection::Overlap(s) => return Some(s.a),
            }
        }
    }
    None
}

/// Whether the line through `p`, `q` meets the closed convex region.
pub(crate) fn line_meets(hull: &[Point], p: &Point, q: &Point) -> bool {
    let mut left = false;
    let mut right = false;
    for v in hull {
        match orientation(p, q, v) {
            Orientation::Collinear => return true,
            Orientation::CounterClockwise => left = true,
            Orientation::Clockwise => right = true,
        }
        if left && right {
            return true;
        }
    }
    false
}
