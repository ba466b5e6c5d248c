#![allow(dead_code)]

use convexify::geom::{Point, Segment, SimplePolygon};
use convexify::io::{gen_clustered, gen_scattered, gen_segments, IoError};

/// Small interacting instance: at most 10 polygons and 60 vertices.
pub fn small_instance(seed: u64) -> Vec<SimplePolygon> {
    let n = 2 + (seed % 9) as usize;
    let max_m = (60 / n).min(12);
    let m = 3 + (seed / 9) as usize % (max_m - 2);
    let mut bbox = 200;
    loop {
        match gen_scattered(n, m, bbox, seed) {
            Ok(p) => return p,
            Err(IoError::Infeasible(_)) => bbox += 100,
            Err(e) => panic!("{e}"),
        }
    }
}

/// Clustered instance with about `n` total vertices (40 per cluster).
pub fn clustered_instance(n: usize, seed: u64) -> Vec<SimplePolygon> {
    gen_clustered(n / 40, 4, 10, 120, seed).expect("feasible")
}

/// At most 30 random segments.
pub fn segment_instance(seed: u64) -> Vec<Segment> {
    gen_segments(5 + (seed % 26) as usize, 60, seed).expect("feasible")
}

pub fn shapes(polys: &[SimplePolygon]) -> Vec<Vec<Point>> {
    polys.iter().map(|p| p.vertices().to_vec()).collect()
}

pub fn segment_shapes(segs: &[Segment]) -> Vec<Vec<Point>> {
    segs.iter().map(|s| vec![s.a.clone(), s.b.clone()]).collect()
}
