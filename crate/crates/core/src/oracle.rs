//! Brute-force convexification and cover validation.
//!
//! Everything here uses plain vertex lists and quadratic scans, independent
//! of the chain structure and the ray engine.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convexify::{Cover, CoverElement};
use crate::geom::{canonical_rotation, convex_hull, on_segment, orientation, segments_touch, ExactScalar, Orientation, Point};

/// Boundary pieces of a vertex list: a ring, a segment or a point.
fn boundary(v: &[Point]) -> Vec<(&Point, &Point)> {
    match v.len() {
        0 => Vec::new(),
        1 => vec![(&v[0], &v[0])],
        2 => vec![(&v[0], &v[1])],
        n => (0..n).map(|i| (&v[i], &v[(i + 1) % n])).collect(),
    }
}

/// Closed containment in a convex CCW vertex list (possibly degenerate).
pub fn convex_contains(v: &[Point], q: &Point) -> bool {
    match v.len() {
        0 => false,
        1 => v[0] == *q,
        2 => on_segment(&v[0], &v[1], q),
        n => (0..n).all(|i| orientation(&v[i], &v[(i + 1) % n], q) != Orientation::Clockwise),
    }
}

/// Whether two closed convex regions meet: some boundary contact, or one
/// lies inside the other.
pub fn convex_regions_meet(a: &[Point], b: &[Point]) -> bool {
    for (p, q) in boundary(a) {
        for (r, s) in boundary(b) {
            if segments_touch(p, q, r, s) {
                return true;
            }
        }
    }
    convex_contains(b, &a[0]) || convex_contains(a, &b[0])
}

/// Convexification by arbitrary intersecting-pair merges, in an order drawn
/// from `seed`. Each shape starts as its own hull.
pub fn brute_convexify(shapes: &[Vec<Point>], seed: u64) -> Cover {
    let parts = shapes.iter().enumerate().map(|(i, s)| (convex_hull(s), vec![i])).collect();
    brute_convexify_groups(parts, seed)
}

/// Same as [`brute_convexify`], starting from given (hull, ids) groups.
pub fn brute_convexify_groups(mut parts: Vec<(Vec<Point>, Vec<usize>)>, seed: u64) -> Cover {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut pairs = Vec::new();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if convex_regions_meet(&parts[i].0, &parts[j].0) {
                    pairs.push((i, j));
                }
            }
        }
        let Some(&(i, j)) = pairs.choose(&mut rng) else { break };
        let (vj, ij) = parts.swap_remove(j);
        let (vi, ii) = &mut parts[i];
        let mut pts = std::mem::take(vi);
        pts.extend(vj);
        *vi = convex_hull(&pts);
        ii.extend(ij);
    }
    Cover::new(parts.into_iter().map(|(v, ids)| CoverElement::new(v, ids)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub disjoint: bool,
    pub partitioned: bool,
    pub hull_of_group: bool,
    pub tight_sampling_failures: usize,
    pub area: ExactScalar,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.disjoint && self.partitioned && self.hull_of_group && self.tight_sampling_failures == 0
    }
}

/// Lines sampled per cover element in the tightness check.
pub const TIGHTNESS_LINES: usize = 100;

/// Checks a cover of `shapes` (polygon rings or segments).
pub fn validate_cover(shapes: &[Vec<Point>], cover: &Cover) -> ValidationReport {
    let elems = &cover.elements;
    let disjoint = (0..elems.len()).all(|i| (i + 1..elems.len()).all(|j| !convex_regions_meet(&elems[i].vertices, &elems[j].vertices)));

    let mut seen = BTreeSet::new();
    let mut partitioned = elems.iter().all(|e| !e.ids.is_empty());
    for e in elems {
        for &id in &e.ids {
            partitioned &= id < shapes.len() && seen.insert(id);
        }
    }
    partitioned &= seen.len() == shapes.len();

    let hull_of_group = partitioned
        && elems.iter().all(|e| {
            let pts: Vec<Point> = e.ids.iter().flat_map(|&i| shapes[i].iter().cloned()).collect();
            canonical_rotation(&convex_hull(&pts)) == canonical_rotation(&e.vertices)
        });

    let mut rng = ChaCha8Rng::seed_from_u64(0x7157);
    let mut tight_sampling_failures = 0;
    if partitioned {
        for e in elems.iter().filter(|e| e.vertices.len() >= 3) {
            for _ in 0..TIGHTNESS_LINES {
                let p = random_interior_point(&e.vertices, &mut rng);
                let mut q = random_interior_point(&e.vertices, &mut rng);
                while q == p {
                    q = random_interior_point(&e.vertices, &mut rng);
                }
                if !e.ids.iter().any(|&i| line_meets(&shapes[i], &p, &q)) {
                    tight_sampling_failures += 1;
                }
            }
        }
    }
    let area = elems.iter().map(CoverElement::area).fold(ExactScalar::zero(), |acc, a| acc + a);
    ValidationReport { disjoint, partitioned, hull_of_group, tight_sampling_failures, area }
}

/// A positive-weight combination of the vertices: strictly interior.
fn random_interior_point(v: &[Point], rng: &mut ChaCha8Rng) -> Point {
    let weights: Vec<i64> = v.iter().map(|_| rng.gen_range(1..=1000)).collect();
    let total: i64 = weights.iter().sum();
    let mut x = ExactScalar::zero();
    let mut y = ExactScalar::zero();
    for (p, &w) in v.iter().zip(&weights) {
        let w = ExactScalar::new(w.into(), total.into());
        x += &p.x * &w;
        y += &p.y * &w;
    }
    Point::new(x, y)
}

/// Whether the line through `p` and `q` meets a shape given by its vertices.
fn line_meets(shape: &[Point], p: &Point, q: &Point) -> bool {
    let mut left = false;
    let mut right = false;
    for v in shape {
        match orientation(p, q, v) {
            Orientation::Collinear => return true,
            Orientation::CounterClockwise => left = true,
            Orientation::Clockwise => right = true,
        }
    }
    left && right
}

/// Equality of covers as sets of (canonical vertex cycle, id set).
pub fn canonical_equal(c1: &Cover, c2: &Cover) -> bool {
    canonical_form(c1) == canonical_form(c2)
}

fn canonical_form(c: &Cover) -> Vec<(Vec<usize>, Vec<Point>)> {
    let mut out: Vec<(Vec<usize>, Vec<Point>)> = c
        .elements
        .iter()
        .map(|e| {
            let mut ids = e.ids.clone();
            ids.sort_unstable();
            (ids, canonical_rotation(&e.vertices))
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    fn sq(x: i64, y: i64, s: i64) -> Vec<Point> {
        vec![p(x, y), p(x + s, y), p(x + s, y + s), p(x, y + s)]
    }

    #[test]
    fn far_triangles_stay_apart() {
        let shapes = vec![vec![p(0, 0), p(4, 0), p(2, 3)], vec![p(100, 100), p(104, 100), p(102, 103)]];
        for seed in 0..5 {
            let c = brute_convexify(&shapes, seed);
            assert_eq!(c.len(), 2);
            assert!(validate_cover(&shapes, &c).accepted());
        }
    }

    #[test]
    fn forced_single_merge() {
        let shapes = vec![sq(0, 0, 2), sq(1, 1, 2), sq(10, 10, 2)];
        let c = brute_convexify(&shapes, 3);
        assert_eq!(c.len(), 2);
        assert_eq!(c.elements[0].ids, vec![0, 1]);
        assert_eq!(c.elements[0].vertices, vec![p(0, 0), p(2, 0), p(3, 1), p(3, 3), p(1, 3), p(0, 2)]);
        assert_eq!(c.elements[1].vertices, sq(10, 10, 2));
    }

    #[test]
    fn staircase_is_seed_independent() {
        let shapes: Vec<Vec<Point>> = crate::fixtures::staircase(8).iter().map(|s| s.vertices().to_vec()).collect();
        let first = brute_convexify(&shapes, 0);
        assert_eq!(first.len(), 1);
        for seed in 1..10 {
            assert!(canonical_equal(&first, &brute_convexify(&shapes, seed)));
        }
    }

    #[test]
    fn validation_negatives() {
        let shapes = vec![sq(0, 0, 2), sq(1, 1, 2)];
        // One group split into two overlapping hulls.
        let split = Cover::new(vec![CoverElement::new(sq(0, 0, 2), vec![0]), CoverElement::new(sq(1, 1, 2), vec![1])]);
        let r = validate_cover(&shapes, &split);
        assert!(!r.disjoint && r.partitioned && !r.accepted());
        // One polygon assigned twice.
        let twice = Cover::new(vec![
            CoverElement::new(brute_convexify(&shapes, 0).elements[0].vertices.clone(), vec![0, 1]),
            CoverElement::new(sq(0, 0, 2), vec![0]),
        ]);
        assert!(!validate_cover(&shapes, &twice).partitioned);
        // A hull larger than the group's hull.
        let loose = Cover::new(vec![CoverElement::new(sq(-1, -1, 5), vec![0, 1])]);
        assert!(!validate_cover(&shapes, &loose).hull_of_group);
    }

    #[test]
    fn tightness_sampling_flags_loose_groups() {
        // Two far squares claimed as one element: lines between them miss both.
        let shapes = vec![sq(0, 0, 1), sq(100, 0, 1)];
        let hull = convex_hull(&[sq(0, 0, 1), sq(100, 0, 1)].concat());
        let cover = Cover::new(vec![CoverElement::new(hull, vec![0, 1])]);
        let r = validate_cover(&shapes, &cover);
        assert!(r.hull_of_group);
        assert!(r.tight_sampling_failures > 0);
    }

    #[test]
    fn canonical_comparison() {
        let shapes = vec![sq(0, 0, 2), sq(1, 1, 2), sq(10, 10, 2)];
        let c = brute_convexify(&shapes, 1);
        let mut permuted = c.clone();
        permuted.elements.reverse();
        permuted.elements[0].vertices.rotate_left(2);
        assert!(canonical_equal(&c, &permuted));
        let mut perturbed = c.clone();
        perturbed.elements[1].vertices[0] = p(10, 9);
        assert!(!canonical_equal(&c, &perturbed));
    }

    #[test]
    fn degenerate_shapes() {
        let segs = vec![vec![p(0, 0), p(2, 2)], vec![p(0, 2), p(2, 0)], vec![p(10, 0), p(12, 0)]];
        let c = brute_convexify(&segs, 0);
        assert_eq!(c.len(), 2);
        assert_eq!(c.elements[0].vertices, sq(0, 0, 2));
        assert_eq!(c.elements[1].vertices, vec![p(10, 0), p(12, 0)]);
        assert!(validate_cover(&segs, &c).accepted());
    }
}
