//! Seeded random instances.
//!
//! `gen_instance` puts one star-shaped polygon strictly inside each chosen
//! cell of a grid, so polygons and their hulls never meet. `gen_scattered`
//! and `gen_clustered` place spiky stars by rejection so that hulls overlap
//! while the polygons stay disjoint.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{rings_intersect, Point, Segment, SimplePolygon};

use super::IoError;

const ATTEMPTS: usize = 200;

/// Star-shaped ring around `(cx, cy)` with outer radius `r` and inner
/// radius fraction at least `inner`. With `spiky`, odd vertices sit in
/// deep notches. `None` if rounding broke simplicity.
fn star(rng: &mut ChaCha8Rng, cx: f64, cy: f64, r: f64, m: usize, inner: f64, spiky: bool) -> Option<SimplePolygon> {
    let ring: Vec<Point> = (0..m)
        .map(|k| {
            let theta = TAU * (k as f64 + rng.gen_range(0.1..0.9)) / m as f64;
            let rho = match (spiky, k % 2) {
                (true, 0) => r * rng.gen_range(0.75..=1.0),
                (true, _) => r * rng.gen_range(inner..=0.4),
                (false, _) => r * rng.gen_range(inner..=1.0),
            };
            Point::int((cx + rho * theta.cos()).round() as i64, (cy + rho * theta.sin()).round() as i64)
        })
        .collect();
    SimplePolygon::new(ring).ok()
}

fn check_params(n: usize, m: usize, bbox: i64) -> Result<(), IoError> {
    if n == 0 || m < 3 || bbox <= 0 {
        return Err(IoError::Infeasible(format!("need n >= 1, m >= 3, bbox > 0 (got {n}, {m}, {bbox})")));
    }
    Ok(())
}

/// `n` disjoint star polygons with `m` vertices each inside `[0, bbox]^2`.
pub fn gen_instance(n: usize, m: usize, bbox: i64, seed: u64) -> Result<Vec<SimplePolygon>, IoError> {
    check_params(n, m, bbox)?;
    let g = (n as f64).sqrt().ceil() as i64;
    let cell = bbox / g;
    let r_max = (cell - 2) as f64 / 2.0;
    if r_max < 0.5 * m as f64 + 2.0 {
        return Err(IoError::Infeasible(format!("cells of width {cell} are too small for {m}-gons")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells: Vec<(i64, i64)> = (0..g).flat_map(|i| (0..g).map(move |j| (i, j))).collect();
    cells.shuffle(&mut rng);
    let mut out = Vec::with_capacity(n);
    for &(i, j) in &cells[..n] {
        let poly = (0..ATTEMPTS).find_map(|_| {
            let r = rng.gen_range(r_max / 2.0..=r_max);
            // Keep the rounded disc at least one unit inside the cell.
            let slack = (cell as f64 - 2.0 - 2.0 * r - 1.0).max(0.0);
            let cx = (i * cell) as f64 + 1.5 + r + rng.gen_range(0.0..=slack);
            let cy = (j * cell) as f64 + 1.5 + r + rng.gen_range(0.0..=slack);
            star(&mut rng, cx, cy, r, m, 0.35, false)
        });
        out.push(poly.ok_or_else(|| IoError::Infeasible(format!("no simple {m}-gon fits a cell of width {cell}")))?);
    }
    Ok(out)
}

/// Places `count` spiky stars inside the box `[x0, x0 + size]^2` without
/// mutual contact. Most stars after the first are small and centered near
/// an earlier one, so they tend to land in its notches.
fn place_spiky(rng: &mut ChaCha8Rng, x0: i64, y0: i64, size: i64, count: usize, m: usize) -> Result<Vec<SimplePolygon>, IoError> {
    let s = size as f64;
    let r_min = 2.0 + m as f64 / 2.0;
    let mut placed: Vec<(SimplePolygon, f64, f64, f64)> = Vec::with_capacity(count);
    for _ in 0..count {
        let next = (0..ATTEMPTS).find_map(|_| {
            let (r, cx, cy) = match placed.choose(rng) {
                Some(&(_, px, py, pr)) if rng.gen_bool(0.7) => {
                    let r = (pr * rng.gen_range(0.15..0.5)).max(r_min);
                    let (d, phi) = (pr * rng.gen_range(0.3..1.0), rng.gen_range(0.0..TAU));
                    (r, px + d * phi.cos(), py + d * phi.sin())
                }
                _ => {
                    let r = rng.gen_range(s / 12.0..=s / 4.0).max(r_min);
                    (r, x0 as f64 + rng.gen_range(r + 1.0..=s - r - 1.0), y0 as f64 + rng.gen_range(r + 1.0..=s - r - 1.0))
                }
            };
            let inside = |c: f64, o: i64| c - r >= o as f64 + 1.0 && c + r <= (o + size) as f64 - 1.0;
            if !inside(cx, x0) || !inside(cy, y0) {
                return None;
            }
            let p = star(rng, cx, cy, r, m, 0.1, true)?;
            placed.iter().all(|q| !rings_intersect(p.vertices(), q.0.vertices())).then_some((p, cx, cy, r))
        });
        placed.push(next.ok_or_else(|| IoError::Infeasible(format!("could not place {count} stars in a box of width {size}")))?);
    }
    Ok(placed.into_iter().map(|p| p.0).collect())
}

/// `n` disjoint spiky `m`-gons in `[0, bbox]^2` whose hulls tend to overlap.
pub fn gen_scattered(n: usize, m: usize, bbox: i64, seed: u64) -> Result<Vec<SimplePolygon>, IoError> {
    check_params(n, m, bbox)?;
    if bbox < 8 * m as i64 {
        return Err(IoError::Infeasible(format!("bbox {bbox} is too small for {m}-gons")));
    }
    place_spiky(&mut ChaCha8Rng::seed_from_u64(seed), 0, 0, bbox, n, m)
}

/// A grid of `cells` separated clusters, each holding `per_cell` spiky
/// `m`-gons placed as in [`gen_scattered`] within a box of width `cell`.
pub fn gen_clustered(cells: usize, per_cell: usize, m: usize, cell: i64, seed: u64) -> Result<Vec<SimplePolygon>, IoError> {
    check_params(cells * per_cell, m, cell)?;
    if cell < 8 * m as i64 {
        return Err(IoError::Infeasible(format!("cell {cell} is too small for {m}-gons")));
    }
    let g = (cells as f64).sqrt().ceil() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(cells * per_cell);
    for k in 0..cells as i64 {
        // One unit of gap between neighboring boxes.
        let (x0, y0) = ((k % g) * (cell + 1), (k / g) * (cell + 1));
        out.extend(place_spiky(&mut rng, x0, y0, cell, per_cell, m)?);
    }
    Ok(out)
}

/// `n` random segments with endpoints in `[0, bbox]^2` and length at most
/// about a third of the box.
pub fn gen_segments(n: usize, bbox: i64, seed: u64) -> Result<Vec<Segment>, IoError> {
    check_params(n, 3, bbox)?;
    if bbox < 3 {
        return Err(IoError::Infeasible(format!("bbox {bbox} is too small")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reach = (bbox / 3).max(1);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (ax, ay) = (rng.gen_range(0..=bbox), rng.gen_range(0..=bbox));
        let bx = (ax + rng.gen_range(-reach..=reach)).clamp(0, bbox);
        let by = (ay + rng.gen_range(-reach..=reach)).clamp(0, bbox);
        if let Ok(s) = Segment::new(Point::int(ax, ay), Point::int(bx, by)) {
            out.push(s);
        }
    }
    Ok(out)
}
