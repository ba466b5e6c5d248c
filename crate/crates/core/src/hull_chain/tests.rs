use proptest::prelude::*;

use super::*;
use crate::geom::{canonical_rotation, convex_hull, line_param, segments_touch};

fn p(x: i64, y: i64) -> Point {
    Point::int(x, y)
}

fn square(x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<Point> {
    vec![p(x0, y0), p(x1, y0), p(x1, y1), p(x0, y1)]
}

fn poly(v: &[Point]) -> ConvexPoly {
    ConvexPoly::build(v, 0).unwrap()
}

/// Half-plane scan over the vertex list.
fn naive_contains(v: &[Point], q: &Point) -> bool {
    match v.len() {
        1 => v[0] == *q,
        2 => crate::geom::on_segment(&v[0], &v[1], q),
        n => (0..n).all(|i| orientation(&v[i], &v[(i + 1) % n], q) != Orientation::Clockwise),
    }
}

fn ring_edges(v: &[Point]) -> Vec<(Point, Point)> {
    match v.len() {
        1 => vec![(v[0].clone(), v[0].clone())],
        2 => vec![(v[0].clone(), v[1].clone())],
        n => (0..n).map(|i| (v[i].clone(), v[(i + 1) % n].clone())).collect(),
    }
}

fn naive_intersects(a: &[Point], b: &[Point]) -> bool {
    for (p1, p2) in ring_edges(a) {
        for (q1, q2) in ring_edges(b) {
            if segments_touch(&p1, &p2, &q1, &q2) {
                return true;
            }
        }
    }
    naive_contains(b, &a[0]) || naive_contains(a, &b[0])
}

fn naive_clip(v: &[Point], s: &Point, t: &Point) -> Option<(Point, Point)> {
    let mut hits = Vec::new();
    for (a, b) in ring_edges(v) {
        let oa = orientation(s, t, &a);
        let ob = orientation(s, t, &b);
        if oa == Orientation::Collinear {
            hits.push(a.clone());
        }
        if ob == Orientation::Collinear {
            hits.push(b.clone());
        }
        if oa != ob && oa != Orientation::Collinear && ob != Orientation::Collinear {
            hits.push(line_intersection(s, t, &a, &b).unwrap());
        }
    }
    let lo = hits.iter().min_by_key(|h| line_param(s, t, h))?.clone();
    let hi = hits.iter().max_by_key(|h| line_param(s, t, h))?.clone();
    Some((lo, hi))
}

#[test]
fn build_square_and_traverse() {
    let sq = square(0, 0, 4, 4);
    let cp = poly(&sq);
    assert_eq!(cp.len(), 4);
    assert_eq!(cp.vertices(), sq);
    assert_eq!(cp.extremes(), (&p(0, 0), &p(4, 4)));
    // Left vertical edge sits on the upper chain, right one on the lower.
    assert_eq!(cp.upper().edges().next().unwrap(), &Edge { a: p(0, 0), b: p(0, 4) });
    assert_eq!(cp.lower().edges().last().unwrap(), &Edge { a: p(4, 0), b: p(4, 4) });
}

#[test]
fn build_degenerate_and_hexagon() {
    let seg = poly(&[p(0, 0), p(2, 0)]);
    assert_eq!(seg.len(), 2);
    assert_eq!(crate::geom::polygon_area(&seg.vertices()), num_rational::BigRational::from_integer(0.into()));
    let hex = vec![p(0, 0), p(2, 0), p(3, 1), p(3, 3), p(1, 3), p(0, 2)];
    let mut pts = square(0, 0, 2, 2);
    pts.extend(square(1, 1, 3, 3));
    assert_eq!(convex_hull(&pts), hex);
    assert_eq!(poly(&hex).vertices(), hex);
    let rotated: Vec<Point> = hex[3..].iter().chain(hex[..3].iter()).cloned().collect();
    assert_eq!(poly(&rotated).vertices(), hex);
}

#[test]
fn build_rejects_non_convex() {
    let l_shape = vec![p(0, 0), p(2, 0), p(2, 1), p(1, 1), p(1, 2), p(0, 2)];
    assert!(matches!(ConvexPoly::build(&l_shape, 0), Err(HullError::NotConvex(_))));
    let cw = vec![p(0, 0), p(0, 1), p(1, 0)];
    assert!(ConvexPoly::build(&cw, 0).is_err());
    // Winds twice: a pentagram's outer points in star order are all left turns.
    let star = vec![p(0, 10), p(-6, -8), p(10, 3), p(-10, 3), p(6, -8)];
    assert!(ConvexPoly::build(&star, 0).is_err());
    assert_eq!(ConvexPoly::build(&[], 0).unwrap_err(), HullError::Empty);
}

#[test]
fn contains_examples() {
    let sq = poly(&square(0, 0, 2, 2));
    assert!(sq.contains_point(&p(1, 1)));
    assert!(sq.contains_point(&p(2, 1)));
    assert!(sq.contains_point(&p(0, 2)));
    assert!(!sq.contains_point(&p(3, 1)));
    assert!(!sq.contains_point(&p(1, -1)));
    assert!(sq.on_boundary(&p(2, 1)));
    assert!(sq.on_boundary(&p(0, 1)));
    assert!(!sq.on_boundary(&p(1, 1)));
    let pt = poly(&[p(5, 5)]);
    assert!(pt.contains_point(&p(5, 5)));
    assert!(!pt.contains_point(&p(5, 6)));
}

#[test]
fn intersect_examples() {
    let a = poly(&square(0, 0, 2, 2));
    let b = poly(&square(1, 1, 3, 3));
    let w = a.intersect(&b).unwrap();
    assert!(a.contains_point(&w) && b.contains_point(&w));
    assert!(w.x >= p(1, 0).x && w.x <= p(2, 0).x && w.y >= p(0, 1).y && w.y <= p(0, 2).y);

    let far = poly(&square(5, 5, 6, 6));
    let unit = poly(&square(0, 0, 1, 1));
    assert!(unit.intersect(&far).is_none());

    let tri = poly(&[p(1, 1), p(3, 1), p(2, 3)]);
    let big = poly(&square(0, 0, 4, 4));
    let w = big.intersect(&tri).unwrap();
    assert!(big.contains_point(&w) && tri.contains_point(&w));
    assert!(tri.intersect(&big).is_some());
}

#[test]
fn line_clip_examples() {
    let sq = poly(&square(0, 0, 2, 2));
    assert_eq!(sq.line_clip(&p(-5, 1), &p(5, 1)), Some((p(0, 1), p(2, 1))));
    assert_eq!(sq.line_clip(&p(5, 1), &p(-5, 1)), Some((p(2, 1), p(0, 1))));
    assert_eq!(sq.line_clip(&p(0, 3), &p(1, 3)), None);
    assert_eq!(naive_clip(&square(0, 0, 2, 2), &p(0, 2), &p(2, 0)), Some((p(0, 2), p(2, 0))));
    assert_eq!(sq.line_clip(&p(0, 2), &p(2, 0)), Some((p(0, 2), p(2, 0))));
    // Tangent at a vertex.
    assert_eq!(sq.line_clip(&p(1, 3), &p(3, 1)), Some((p(2, 2), p(2, 2))));
}

#[test]
fn merge_examples() {
    let (m, u) = poly(&square(0, 0, 2, 2)).merge(poly(&square(1, 1, 3, 3))).unwrap();
    assert_eq!(m.vertices(), vec![p(0, 0), p(2, 0), p(3, 1), p(3, 3), p(1, 3), p(0, 2)]);
    assert_eq!(u, 2);

    let (m, u) = poly(&square(0, 0, 4, 4)).merge(poly(&[p(1, 1), p(3, 1), p(2, 3)])).unwrap();
    assert_eq!(m.vertices(), square(0, 0, 4, 4));
    assert_eq!(u, 3);
    let (m, u) = poly(&[p(1, 1), p(3, 1), p(2, 3)]).merge(poly(&square(0, 0, 4, 4))).unwrap();
    assert_eq!(m.vertices(), square(0, 0, 4, 4));
    assert_eq!(u, 3);

    let (m, u) = poly(&square(0, 0, 2, 2)).merge(poly(&square(0, 0, 2, 2))).unwrap();
    assert_eq!(m.vertices(), square(0, 0, 2, 2));
    assert_eq!(u, 4);

    assert_eq!(poly(&square(0, 0, 1, 1)).merge(poly(&square(3, 3, 4, 4))).unwrap_err(), HullError::Disjoint);
}

#[test]
fn merge_reports_new_edges() {
    let out = poly(&square(0, 0, 2, 2)).merge_detailed(poly(&square(1, 1, 3, 3))).unwrap();
    let mut got = out.new_edges.clone();
    got.sort();
    assert_eq!(got, vec![(p(1, 3), p(0, 2)), (p(2, 0), p(3, 1))]);
    let out = poly(&square(0, 0, 4, 4)).merge_detailed(poly(&[p(1, 1), p(3, 1), p(2, 3)])).unwrap();
    assert!(out.new_edges.is_empty());
    // Touching along a shared edge leaves one bridge on each side.
    let out = poly(&square(0, 0, 2, 2)).merge_detailed(poly(&square(2, 0, 4, 2))).unwrap();
    assert_eq!(out.poly.vertices(), square(0, 0, 4, 2));
    let mut got = out.new_edges.clone();
    got.sort();
    assert_eq!(got, vec![(p(0, 0), p(4, 0)), (p(4, 2), p(0, 2))]);
}

fn naive_new_edges(a: &[Point], b: &[Point], hull: &[Point]) -> Vec<(Point, Point)> {
    let a_edges = ring_edges(a);
    let b_edges = ring_edges(b);
    let mut out: Vec<(Point, Point)> = ring_edges(hull)
        .into_iter()
        .filter(|e| e.0 != e.1 && !a_edges.contains(e) && !b_edges.contains(e))
        .filter(|e| {
            let rev = (e.1.clone(), e.0.clone());
            !(a.len() == 2 && a_edges.contains(&rev)) && !(b.len() == 2 && b_edges.contains(&rev))
        })
        .collect();
    out.sort();
    out
}

#[test]
fn merge_with_degenerate_operands() {
    let (m, u) = poly(&[p(0, 0), p(2, 2)]).merge(poly(&[p(0, 2), p(2, 0)])).unwrap();
    assert_eq!(m.vertices(), square(0, 0, 2, 2));
    assert_eq!(u, 0);
    let (m, _) = poly(&[p(0, 0), p(4, 0)]).merge(poly(&[p(2, 0), p(6, 0)])).unwrap();
    assert_eq!(m.vertices(), vec![p(0, 0), p(6, 0)]);
}

#[test]
fn merge_keeps_splice_path_on_generic_overlap() {
    let a = poly(&[p(0, 0), p(10, 0), p(10, 10), p(0, 10)]);
    let b = poly(&[p(5, 3), p(20, 4), p(6, 7)]);
    let out = a.merge_detailed(b).unwrap();
    assert!(!out.rebuilt);
    assert_eq!(out.poly.vertices(), vec![p(0, 0), p(10, 0), p(20, 4), p(10, 10), p(0, 10)]);
    assert_eq!(out.deleted, 2);
}

fn convex_strategy() -> impl Strategy<Value = Vec<Point>> {
    (prop::collection::vec((-30i64..30, -30i64..30), 1..14), -20i64..20, -20i64..20).prop_map(|(pts, dx, dy)| {
        let pts: Vec<Point> = pts.into_iter().map(|(x, y)| p(x + dx, y + dy)).collect();
        convex_hull(&pts)
    })
}

fn chain_height_bound(a: &ConvexPoly, b: &ConvexPoly) -> usize {
    2 * (a.height().max(b.height()) as usize + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn contains_matches_scan(v in convex_strategy(), q in (-50i64..50, -50i64..50)) {
        let cp = poly(&v);
        let q = p(q.0, q.1);
        prop_assert_eq!(cp.contains_point(&q), naive_contains(&v, &q));
        prop_assert_eq!(cp.vertices(), canonical_rotation(&v));
    }

    #[test]
    fn intersect_matches_naive(a in convex_strategy(), b in convex_strategy()) {
        let (pa, pb) = (poly(&a), poly(&b));
        let mut stats = DescentStats::default();
        let got = pa.intersect_with_stats(&pb, &mut stats);
        prop_assert_eq!(got.is_some(), naive_intersects(&a, &b));
        if let Some(w) = got {
            prop_assert!(naive_contains(&a, &w) && naive_contains(&b, &w));
        }
        prop_assert!(stats.max_depth <= chain_height_bound(&pa, &pb));
    }

    #[test]
    fn clip_matches_naive(v in convex_strategy(), s in (-40i64..40, -40i64..40), t in (-40i64..40, -40i64..40)) {
        prop_assume!(s != t);
        let (s, t) = (p(s.0, s.1), p(t.0, t.1));
        let cp = poly(&v);
        let mut stats = DescentStats::default();
        prop_assert_eq!(cp.line_clip_with_stats(&s, &t, &mut stats), naive_clip(&v, &s, &t));
        prop_assert!(stats.max_depth <= 2 * (cp.height() as usize + 1));
    }

    #[test]
    fn merge_matches_hull(a in convex_strategy(), b in convex_strategy()) {
        prop_assume!(naive_intersects(&a, &b));
        prop_assume!(boundary_contacts(&a, &b) <= 2);
        let mut all = a.clone();
        all.extend(b.iter().cloned());
        let want = convex_hull(&all);
        let out = poly(&a).merge_detailed(poly(&b)).unwrap();
        prop_assert_eq!(out.poly.vertices(), canonical_rotation(&want));
        prop_assert_eq!(out.deleted, a.len() + b.len() - want.len());
        let mut got = out.new_edges.clone();
        got.sort();
        prop_assert_eq!(got, naive_new_edges(&a, &b, &want));
    }
}
