//! Permanent ray shooting: every shot segment becomes an obstacle for all
//! later queries.
//!
//! Two engines share the exact hit rule: a linear scan and a uniform grid
//! with conservative floating-point bucketing. Both report identical hits.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geom::{intersect_closed, line_param, ratio_to_f64, ExactScalar, Point, Segment, SegmentIntersection, SimplePolygon};

pub type ObstacleId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObstacleKind {
    /// An edge of an input polygon.
    Edge,
    /// A previously shot ray.
    Ray,
}

/// A scene segment. `owner` is the input polygon id of the edge, or of the
/// polygon the ray was shot from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstacle {
    pub segment: Segment,
    pub owner: usize,
    pub kind: ObstacleKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hit {
    pub point: Point,
    pub obstacle: ObstacleId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub from: Point,
    pub toward: Point,
    pub owner: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RayError {
    #[error("ray from {} toward {} hit nothing", .0.0, .0.1)]
    NoHit(Box<(Point, Point)>),
    #[error("ray with coincident endpoints at {0}")]
    Degenerate(Box<Point>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EngineKind {
    Naive,
    #[default]
    Grid,
}

impl FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(EngineKind::Naive),
            "grid" => Ok(EngineKind::Grid),
            other => Err(format!("unknown engine `{other}` (expected naive or grid)")),
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Naive => "naive",
            EngineKind::Grid => "grid",
        })
    }
}

/// Obstacle endpoints in floating point, for filtering only.
#[derive(Debug, Clone, Copy)]
struct Approx {
    a: (f64, f64),
    b: (f64, f64),
}

impl Approx {
    fn of(s: &Segment) -> Approx {
        Approx { a: s.a.to_f64(), b: s.b.to_f64() }
    }
}

/// Cheap conservative rejection: true only if the segments surely miss.
fn surely_disjoint(r: &Approx, o: &Approx) -> bool {
    let (rx0, rx1) = (r.a.0.min(r.b.0), r.a.0.max(r.b.0));
    let (ry0, ry1) = (r.a.1.min(r.b.1), r.a.1.max(r.b.1));
    let (ox0, ox1) = (o.a.0.min(o.b.0), o.a.0.max(o.b.0));
    let (oy0, oy1) = (o.a.1.min(o.b.1), o.a.1.max(o.b.1));
    let m = [rx0, rx1, ry0, ry1, ox0, ox1, oy0, oy1].iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let pad = 1e-12 * m;
    if rx1 + pad < ox0 || ox1 + pad < rx0 || ry1 + pad < oy0 || oy1 + pad < ry0 {
        return true;
    }
    let tol = 1e-12 * m * m;
    let side = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    let (c1, c2) = (side(r.a, r.b, o.a), side(r.a, r.b, o.b));
    if (c1 > tol && c2 > tol) || (c1 < -tol && c2 < -tol) {
        return true;
    }
    let (c3, c4) = (side(o.a, o.b, r.a), side(o.a, o.b, r.b));
    (c3 > tol && c4 > tol) || (c3 < -tol && c4 < -tol)
}

/// First contact of the half-open ray `(from, toward]` with a closed segment,
/// as (parameter along the ray, point). A collinear overlap starting at
/// `from` counts as a contact at `from` with parameter 0.
fn contact(from: &Point, toward: &Point, s: &Segment) -> Option<(ExactScalar, Point)> {
    match intersect_closed(from, toward, &s.a, &s.b) {
        SegmentIntersection::Empty => None,
        SegmentIntersection::At(p) => (p != *from).then(|| (line_param(from, toward, &p), p)),
        SegmentIntersection::Overlap(o) => {
            let ta = line_param(from, toward, &o.a);
            let tb = line_param(from, toward, &o.b);
            Some(if ta <= tb { (ta, o.a) } else { (tb, o.b) })
        }
    }
}

/// Uniform grid of obstacle ids.
#[derive(Debug)]
struct Grid {
    origin: (f64, f64),
    cell: (f64, f64),
    nx: usize,
    ny: usize,
    cells: Vec<Vec<u32>>,
    /// Bucketing slack in world units.
    pad: f64,
}

/// Rebuild once the average number of obstacles per cell exceeds this.
const MAX_OCCUPANCY: f64 = 4.0;

impl Grid {
    fn new(bounds: ((f64, f64), (f64, f64)), target_cells: usize) -> Grid {
        let ((x0, y0), (x1, y1)) = bounds;
        let w = (x1 - x0).max(1.0);
        let h = (y1 - y0).max(1.0);
        let target = target_cells.max(1) as f64;
        let nx = ((target * w / h).sqrt().ceil() as usize).clamp(1, 1 << 12);
        let ny = ((target / nx as f64).ceil() as usize).clamp(1, 1 << 12);
        let m = x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs()).max(1.0);
        let cell = (w / nx as f64, h / ny as f64);
        Grid { origin: (x0, y0), cell, nx, ny, cells: vec![Vec::new(); nx * ny], pad: 1e-7 * cell.0.max(cell.1) + 1e-9 * m }
    }

    fn index(&self, v: f64, axis: usize) -> usize {
        let (o, c, n) = if axis == 0 { (self.origin.0, self.cell.0, self.nx) } else { (self.origin.1, self.cell.1, self.ny) };
        let i = ((v - o) / c).floor();
        if i <= 0.0 {
            0
        } else {
            (i as usize).min(n - 1)
        }
    }

    /// Visits the cells a (padded) segment may touch, strip by strip along
    /// its dominant axis in the direction of travel. The callback receives
    /// the strip's cells and the segment parameter at the strip's far
    /// boundary; returning `false` stops the walk.
    fn walk(&self, a: (f64, f64), b: (f64, f64), mut visit: impl FnMut(&[usize], f64) -> bool) {
        let d = (b.0 - a.0, b.1 - a.1);
        let dom = if (d.0 / self.cell.0).abs() >= (d.1 / self.cell.1).abs() { 0 } else { 1 };
        let oth = 1 - dom;
        let get = |p: (f64, f64), k: usize| if k == 0 { p.0 } else { p.1 };
        let (o, size) = if dom == 0 { (self.origin.0, self.cell.0) } else { (self.origin.1, self.cell.1) };
        let (ad, dd) = (get(a, dom), get(d, dom));
        let (ao, do_) = (get(a, oth), get(d, oth));
        let bd = get(b, dom);
        let (lo_i, hi_i) = (self.index(ad.min(bd) - self.pad, dom) as isize, self.index(ad.max(bd) + self.pad, dom) as isize);
        let (i0, i1) = if dd >= 0.0 { (lo_i, hi_i) } else { (hi_i, lo_i) };
        let step: isize = if i1 >= i0 { 1 } else { -1 };
        let n_strips = if dom == 0 { self.nx } else { self.ny } as isize;
        let mut buf = Vec::new();
        let mut i = i0;
        loop {
            // Parameter range of the segment inside the padded strip.
            let (t0, t1, far) = if dd == 0.0 {
                (0.0, 1.0, if i == i1 { 1.0 } else { 0.0 })
            } else {
                let lo = if i == 0 { f64::NEG_INFINITY } else { o + i as f64 * size - self.pad };
                let hi = if i == n_strips - 1 { f64::INFINITY } else { o + (i + 1) as f64 * size + self.pad };
                let (ta, tb) = ((lo - ad) / dd, (hi - ad) / dd);
                let (ta, tb) = if ta <= tb { (ta, tb) } else { (tb, ta) };
                let far_edge = if step > 0 { o + (i + 1) as f64 * size } else { o + i as f64 * size };
                let far = if i == i1 { 1.0 } else { (far_edge - ad) / dd };
                (ta.max(0.0), tb.min(1.0), far)
            };
            if t0 <= t1 {
                let (v0, v1) = (ao + t0 * do_, ao + t1 * do_);
                let j0 = self.index(v0.min(v1) - self.pad, oth);
                let j1 = self.index(v0.max(v1) + self.pad, oth);
                buf.clear();
                for j in j0..=j1 {
                    let (cx, cy) = if dom == 0 { (i as usize, j) } else { (j, i as usize) };
                    buf.push(cy * self.nx + cx);
                }
                if !visit(&buf, far) {
                    return;
                }
            }
            if i == i1 {
                return;
            }
            i += step;
        }
    }

    fn insert(&mut self, id: u32, s: &Approx) {
        let mut touched = Vec::new();
        self.walk(s.a, s.b, |cells, _| {
            touched.extend_from_slice(cells);
            true
        });
        touched.sort_unstable();
        touched.dedup();
        for c in touched {
            self.cells[c].push(id);
        }
    }

    fn occupancy(&self, obstacles: usize) -> f64 {
        obstacles as f64 / self.cells.len() as f64
    }
}

#[derive(Debug)]
enum Index {
    Naive,
    Grid { grid: Grid, bounds: ((f64, f64), (f64, f64)), stamps: Vec<u32>, epoch: u32 },
}

/// Obstacles plus the engine's index. Owned by a single run.
#[derive(Debug)]
pub struct Scene {
    obstacles: Vec<Obstacle>,
    approx: Vec<Approx>,
    index: Index,
    log: Option<Vec<(Query, Hit)>>,
    rays: usize,
    rebuilds: usize,
}

impl Scene {
    /// A scene holding every edge of every polygon, labeled with its index.
    pub fn new(polygons: &[SimplePolygon], kind: EngineKind) -> Scene {
        let mut obstacles = Vec::new();
        for (id, poly) in polygons.iter().enumerate() {
            for (a, b) in poly.edges() {
                obstacles.push(Obstacle { segment: Segment { a: a.clone(), b: b.clone() }, owner: id, kind: ObstacleKind::Edge });
            }
        }
        Scene::from_obstacles(obstacles, kind)
    }

    pub fn from_obstacles(obstacles: Vec<Obstacle>, kind: EngineKind) -> Scene {
        let approx: Vec<Approx> = obstacles.iter().map(|o| Approx::of(&o.segment)).collect();
        let index = match kind {
            EngineKind::Naive => Index::Naive,
            EngineKind::Grid => {
                let mut lo = (f64::INFINITY, f64::INFINITY);
                let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
                for a in &approx {
                    for p in [a.a, a.b] {
                        lo = (lo.0.min(p.0), lo.1.min(p.1));
                        hi = (hi.0.max(p.0), hi.1.max(p.1));
                    }
                }
                if approx.is_empty() {
                    (lo, hi) = ((0.0, 0.0), (1.0, 1.0));
                }
                let bounds = (lo, hi);
                Index::Grid { grid: Grid::new(bounds, 1), bounds, stamps: Vec::new(), epoch: 0 }
            }
        };
        let mut scene = Scene { obstacles, approx, index, log: None, rays: 0, rebuilds: 0 };
        scene.rebuild_index();
        scene.rebuilds = 0;
        scene
    }

    pub fn kind(&self) -> EngineKind {
        match self.index {
            Index::Naive => EngineKind::Naive,
            Index::Grid { .. } => EngineKind::Grid,
        }
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn obstacle(&self, id: ObstacleId) -> &Obstacle {
        &self.obstacles[id]
    }

    pub fn len(&self) -> usize {
        self.obstacles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obstacles.is_empty()
    }

    /// Number of successful shots so far.
    pub fn rays_shot(&self) -> usize {
        self.rays
    }

    /// How many times the grid was rebuilt after construction.
    pub fn rebuilds(&self) -> usize {
        self.rebuilds
    }

    /// Starts recording every (query, hit) pair.
    pub fn record(&mut self) {
        self.log.get_or_insert_with(Vec::new);
    }

    pub fn take_log(&mut self) -> Vec<(Query, Hit)> {
        self.log.take().unwrap_or_default()
    }

    /// Shoots from `from` toward `toward` and inserts the traced segment,
    /// labeled with `owner`, as a permanent obstacle.
    pub fn shoot(&mut self, from: &Point, toward: &Point, owner: usize) -> Result<Hit, RayError> {
        let hit = self.first_hit(from, toward)?;
        self.rays += 1;
        if hit.point != *from {
            self.insert(Obstacle { segment: Segment { a: from.clone(), b: hit.point.clone() }, owner, kind: ObstacleKind::Ray });
        }
        if let Some(log) = &mut self.log {
            log.push((Query { from: from.clone(), toward: toward.clone(), owner }, hit.clone()));
        }
        Ok(hit)
    }

    /// The hit `shoot` would report, without inserting anything.
    pub fn first_hit(&mut self, from: &Point, toward: &Point) -> Result<Hit, RayError> {
        if from == toward {
            return Err(RayError::Degenerate(Box::new(from.clone())));
        }
        let ray = Approx { a: from.to_f64(), b: toward.to_f64() };
        let mut best: Option<(ExactScalar, Point, ObstacleId)> = None;
        let obstacles = &self.obstacles;
        let approx = &self.approx;
        let consider = |id: ObstacleId, best: &mut Option<(ExactScalar, Point, ObstacleId)>| {
            if surely_disjoint(&ray, &approx[id]) {
                return;
            }
            if let Some((t, p)) = contact(from, toward, &obstacles[id].segment) {
                let better = match best {
                    None => true,
                    Some((bt, _, bid)) => t < *bt || (t == *bt && id < *bid),
                };
                if better {
                    *best = Some((t, p, id));
                }
            }
        };
        match &mut self.index {
            Index::Naive => {
                for id in 0..obstacles.len() {
                    consider(id, &mut best);
                }
            }
            Index::Grid { grid, stamps, epoch, .. } => {
                *epoch = epoch.wrapping_add(1);
                if *epoch == 0 {
                    stamps.iter_mut().for_each(|s| *s = 0);
                    *epoch = 1;
                }
                let ep = *epoch;
                grid.walk(ray.a, ray.b, |cells, far| {
                    for &c in cells {
                        for &id in &grid.cells[c] {
                            let slot = &mut stamps[id as usize];
                            if *slot != ep {
                                *slot = ep;
                                consider(id as usize, &mut best);
                            }
                        }
                    }
                    // Anything in later strips lies at parameter >= far.
                    !matches!(&best, Some((t, _, _)) if ratio_to_f64(t) < far - 1e-9)
                });
            }
        }
        best.map(|(_, point, obstacle)| Hit { point, obstacle }).ok_or_else(|| RayError::NoHit(Box::new((from.clone(), toward.clone()))))
    }

    fn insert(&mut self, o: Obstacle) {
        let id = self.obstacles.len();
        let a = Approx::of(&o.segment);
        self.obstacles.push(o);
        self.approx.push(a);
        let n = self.obstacles.len();
        if let Index::Grid { grid, stamps, .. } = &mut self.index {
            stamps.push(0);
            grid.insert(id as u32, &a);
            if grid.occupancy(n) > MAX_OCCUPANCY {
                self.rebuild_index();
            }
        }
    }

    fn rebuild_index(&mut self) {
        let n = self.obstacles.len();
        if let Index::Grid { grid, bounds, stamps, epoch } = &mut self.index {
            *grid = Grid::new(*bounds, n);
            for (id, a) in self.approx.iter().enumerate() {
                grid.insert(id as u32, a);
            }
            *stamps = vec![0; n];
            *epoch = 0;
            self.rebuilds += 1;
        }
    }
}

/// Replays a recorded log against a fresh scene; returns the index of the
/// first query whose hit differs, if any.
pub fn replay(mut scene: Scene, log: &[(Query, Hit)]) -> Result<(), usize> {
    for (i, (q, hit)) in log.iter().enumerate() {
        match scene.shoot(&q.from, &q.toward, q.owner) {
            Ok(h) if h == *hit => {}
            _ => return Err(i),
        }
    }
    Ok(())
}
