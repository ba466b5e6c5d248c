//! Instances shared by the benchmarks.

use convexify::geom::{convex_hull, Point, SimplePolygon};
use convexify::io::gen_clustered;

/// Clustered instance with about `n` vertices: clusters of four spiky 10-gons.
pub fn clustered(n: usize, seed: u64) -> Vec<SimplePolygon> {
    gen_clustered((n / 40).max(1), 4, 10, 120, seed).expect("feasible parameters")
}

/// Two overlapping regular-ish hulls with about `k` vertices each.
pub fn hull_pair(k: usize) -> (Vec<Point>, Vec<Point>) {
    let ring = |cx: f64, r: f64| {
        let pts: Vec<Point> = (0..k)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / k as f64;
                Point::int((cx + r * t.cos()).round() as i64, (r * t.sin()).round() as i64)
            })
            .collect();
        convex_hull(&pts)
    };
    let r = (k * k) as f64;
    (ring(0.0, r), ring(r, r))
}
