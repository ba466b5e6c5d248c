//! Queue-driven convexification with permanent ray shooting.
//!
//! Every hull edge that is not an input edge is traced by a ray from its
//! first endpoint. When the ray meets another component the two hulls are
//! merged and the merged hull's new edges are queued. A final sweep folds
//! hulls nested in other hulls into their containers.

mod cover;
mod forest;
mod sweep;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::geom::{
    convex_hull, find_overlap, intersect_closed, line_param, on_segment, segments_touch, GeomError, Point, Segment, SegmentIntersection,
    SimplePolygon,
};
use crate::hull_chain::{boundary_contacts, ConvexPoly, HullError};
use crate::ray_engine::{EngineKind, Hit, Query, RayError, Scene};

pub use cover::{Cover, CoverElement};
pub use forest::{HistoryNode, MergeForest};
pub use sweep::{outermost_containers, BoundaryContact};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConvexifyError {
    #[error("invalid input polygon {0}: {1}")]
    InvalidPolygon(usize, GeomError),
    #[error("input polygons {0} and {1} intersect")]
    Overlap(usize, usize),
    #[error("no input")]
    Empty,
    #[error("hull operation failed: {0}")]
    Hull(#[from] HullError),
    #[error("ray shooting failed: {0}")]
    Ray(#[from] RayError),
    #[error("hull boundaries {0} and {1} meet after the main loop")]
    BoundaryContact(usize, usize),
}

/// A hull edge waiting to be traced, directed counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeTask {
    pub p1: Point,
    pub p2: Point,
    /// Input polygons owning `p1` and `p2`.
    pub owner1: usize,
    pub owner2: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub engine: EngineKind,
    /// Count boundary contacts of every merged pair (quadratic per merge).
    pub check_pseudo_disks: bool,
    /// Collect trace events.
    pub trace: bool,
    /// Record every ray query and hit.
    pub record_rays: bool,
    /// Check input disjointness before running.
    pub validate: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub polygons: usize,
    pub input_vertices: usize,
    pub initial_tasks: usize,
    pub tasks_processed: usize,
    pub rays_shot: usize,
    pub merges: usize,
    /// Sum over merges of the hull vertices that disappeared.
    pub deleted: usize,
    /// Hull vertices at initialization. Merged hulls only reuse them.
    pub hull_vertices: usize,
    /// Merges that fell back to rebuilding the hull.
    pub rebuilt_merges: usize,
    /// Largest boundary contact count seen (only with `check_pseudo_disks`).
    pub max_contacts: usize,
    /// Merges whose boundaries met more than twice.
    pub pseudo_disk_violations: usize,
    /// Hulls folded into a container by the final sweep.
    pub nested: usize,
    /// Traces resumed past a hit that left the rest of the edge on the hull.
    pub continued_traces: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum TraceEvent {
    /// Hulls at initialization and the initial queue.
    Init { hulls: Vec<Vec<Point>>, queue: Vec<EdgeTask> },
    /// A ray shot while processing `task`.
    Shot { task: EdgeTask, from: Point, hit: Point, merged: bool },
    /// Two components merged into `hull`; `tasks` were queued.
    Merge { roots: (usize, usize), hull: Vec<Point>, ids: Vec<usize>, tasks: Vec<EdgeTask> },
    /// Final sweep result.
    Cleanup { nested: usize },
}

#[derive(Debug)]
pub struct Run {
    pub cover: Cover,
    pub stats: RunStats,
    pub trace: Vec<TraceEvent>,
    pub rays: Vec<(Query, Hit)>,
    pub forest: MergeForest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Processed {
    NoMerge,
    Merged(Vec<EdgeTask>),
}

/// Mutable state of one run.
pub struct State {
    pub scene: Scene,
    pub forest: MergeForest,
    /// Live hull per union-find root.
    hulls: Vec<Option<ConvexPoly>>,
    owner: HashMap<Point, usize>,
    pub queue: VecDeque<EdgeTask>,
    pub stats: RunStats,
    pub trace: Vec<TraceEvent>,
    options: Options,
}

impl State {
    /// Builds hulls, the scene and the initial queue of non-input hull edges.
    pub fn initialize(polygons: &[SimplePolygon], options: Options) -> Result<State, ConvexifyError> {
        if options.validate {
            if let Some((i, j)) = find_overlap(polygons) {
                return Err(ConvexifyError::Overlap(i, j));
            }
        }
        let mut owner = HashMap::new();
        let mut hulls = Vec::with_capacity(polygons.len());
        let mut queue = VecDeque::new();
        let mut stats = RunStats { polygons: polygons.len(), ..RunStats::default() };
        for (id, poly) in polygons.iter().enumerate() {
            let ring = poly.vertices();
            stats.input_vertices += ring.len();
            let mut pos = HashMap::with_capacity(ring.len());
            for (i, v) in ring.iter().enumerate() {
                owner.insert(v.clone(), id);
                pos.insert(v, i);
            }
            let hull = convex_hull(ring);
            let k = hull.len();
            for i in 0..k {
                let (u, v) = (&hull[i], &hull[(i + 1) % k]);
                if !on_input_boundary(ring, pos[u], pos[v]) {
                    queue.push_back(EdgeTask { p1: u.clone(), p2: v.clone(), owner1: id, owner2: id });
                }
            }
            stats.hull_vertices += k;
            hulls.push(Some(ConvexPoly::build(&hull, id)?));
        }
        stats.initial_tasks = queue.len();
        let mut scene = Scene::new(polygons, options.engine);
        if options.record_rays {
            scene.record();
        }
        let mut trace = Vec::new();
        if options.trace {
            trace.push(TraceEvent::Init {
                hulls: hulls.iter().flatten().map(ConvexPoly::vertices).collect(),
                queue: queue.iter().cloned().collect(),
            });
        }
        Ok(State { scene, forest: MergeForest::new(polygons.len()), hulls, owner, queue, stats, trace, options })
    }

    pub fn hull(&self, root: usize) -> Option<&ConvexPoly> {
        self.hulls[root].as_ref()
    }

    /// Traces one task; merges if the ray reaches another component.
    pub fn process_edge(&mut self, task: &EdgeTask) -> Result<Processed, ConvexifyError> {
        self.stats.tasks_processed += 1;
        let mut from = task.p1.clone();
        let mut new_tasks = Vec::new();
        let mut merged_any = false;
        loop {
            let hit = self.scene.shoot(&from, &task.p2, task.owner1)?;
            let x = self.forest.find(task.owner1);
            let x2 = self.forest.find(self.scene.obstacle(hit.obstacle).owner);
            let merged = x != x2;
            if self.options.trace {
                self.trace.push(TraceEvent::Shot { task: task.clone(), from: from.clone(), hit: hit.point.clone(), merged });
            }
            if merged {
                new_tasks.extend(self.merge(x, x2)?);
                merged_any = true;
            }
            // Keep tracing while the rest of the edge is still hull boundary.
            let next = self.resume_point(&from, &task.p2, &hit);
            if next == task.p2 {
                break;
            }
            let root = self.forest.find(task.owner1);
            let hull = self.hulls[root].as_ref().expect("root has a hull");
            if !hull.on_boundary(&next.midpoint(&task.p2)) {
                break;
            }
            self.stats.continued_traces += 1;
            from = next;
        }
        self.stats.rays_shot = self.scene.rays_shot();
        Ok(if merged_any { Processed::Merged(new_tasks) } else { Processed::NoMerge })
    }

    /// Where tracing resumes after `hit`: the hit point, or the far end of a
    /// collinear overlap that starts at `from`.
    fn resume_point(&self, from: &Point, toward: &Point, hit: &Hit) -> Point {
        if hit.point != *from {
            return hit.point.clone();
        }
        let s = &self.scene.obstacle(hit.obstacle).segment;
        match intersect_closed(from, toward, &s.a, &s.b) {
            SegmentIntersection::Overlap(o) => {
                if line_param(from, toward, &o.a) >= line_param(from, toward, &o.b) {
                    o.a
                } else {
                    o.b
                }
            }
            _ => hit.point.clone(),
        }
    }

    fn merge(&mut self, x: usize, x2: usize) -> Result<Vec<EdgeTask>, ConvexifyError> {
        let a = self.hulls[x].take().expect("live root");
        let b = self.hulls[x2].take().expect("live root");
        if self.options.check_pseudo_disks {
            let c = boundary_contacts(&a.vertices(), &b.vertices());
            self.stats.max_contacts = self.stats.max_contacts.max(c);
            if c > 2 {
                self.stats.pseudo_disk_violations += 1;
            }
        }
        let out = a.merge_detailed(b)?;
        let root = self.forest.union(x, x2);
        self.stats.merges += 1;
        self.stats.deleted += out.deleted;
        if out.rebuilt {
            self.stats.rebuilt_merges += 1;
        }
        let tasks: Vec<EdgeTask> = out
            .new_edges
            .iter()
            .map(|(p1, p2)| EdgeTask { p1: p1.clone(), p2: p2.clone(), owner1: self.owner[p1], owner2: self.owner[p2] })
            .collect();
        let mut poly = out.poly;
        poly.set_id(root);
        if self.options.trace {
            self.trace.push(TraceEvent::Merge {
                roots: (x, x2),
                hull: poly.vertices(),
                ids: self.forest.polys(self.forest.node_of(root)),
                tasks: tasks.clone(),
            });
        }
        self.hulls[root] = Some(poly);
        self.queue.extend(tasks.iter().cloned());
        Ok(tasks)
    }

    /// Drains the queue.
    pub fn run_queue(&mut self) -> Result<(), ConvexifyError> {
        while let Some(task) = self.queue.pop_front() {
            self.process_edge(&task)?;
        }
        Ok(())
    }

    /// Folds nested hulls into their outermost containers and builds the cover.
    pub fn cleanup_sweep(&mut self) -> Result<Cover, ConvexifyError> {
        let roots: Vec<usize> = (0..self.hulls.len()).filter(|&r| self.hulls[r].is_some()).collect();
        let polys: Vec<&ConvexPoly> = roots.iter().map(|&r| self.hulls[r].as_ref().expect("root")).collect();
        let top = outermost_containers(&polys).map_err(|BoundaryContact(i, j)| ConvexifyError::BoundaryContact(roots[i], roots[j]))?;
        let mut ids: Vec<Vec<usize>> = vec![Vec::new(); roots.len()];
        for group in self.forest.groups() {
            let r = self.forest.root_of(group[0]);
            let k = roots.binary_search(&r).expect("group root is live");
            ids[top[k]].extend(group);
        }
        let nested = (0..roots.len()).filter(|&k| top[k] != k).count();
        self.stats.nested = nested;
        if self.options.trace {
            self.trace.push(TraceEvent::Cleanup { nested });
        }
        let elements = (0..roots.len())
            .filter(|&k| top[k] == k)
            .map(|k| CoverElement::new(polys[k].vertices(), std::mem::take(&mut ids[k])))
            .collect();
        Ok(Cover::new(elements))
    }
}

/// Whether the hull edge between ring positions `i` and `j` runs along the
/// input boundary (the ring walk from `i` to `j` stays on the segment).
fn on_input_boundary(ring: &[Point], i: usize, j: usize) -> bool {
    let n = ring.len();
    let (u, v) = (&ring[i], &ring[j]);
    let mut k = (i + 1) % n;
    while k != j {
        if !on_segment(u, v, &ring[k]) {
            return false;
        }
        k = (k + 1) % n;
    }
    true
}

/// The unique minimum-area convex cover of disjoint simple polygons.
pub fn convexify(polygons: &[SimplePolygon]) -> Result<Cover, ConvexifyError> {
    Ok(convexify_with(polygons, Options::default())?.cover)
}

pub fn convexify_with(polygons: &[SimplePolygon], options: Options) -> Result<Run, ConvexifyError> {
    let mut state = State::initialize(polygons, options)?;
    state.run_queue()?;
    let cover = state.cleanup_sweep()?;
    state.stats.rays_shot = state.scene.rays_shot();
    let rays = state.scene.take_log();
    Ok(Run { cover, stats: state.stats, trace: state.trace, rays, forest: state.forest })
}

/// Cover for arbitrary (possibly crossing) segments: connected groups of
/// touching segments start as hulls, then intersecting hulls are merged until
/// all are disjoint. Isolated segments give zero-area elements.
pub fn convexify_segments(segments: &[Segment]) -> Result<Cover, ConvexifyError> {
    if segments.is_empty() {
        return Err(ConvexifyError::Empty);
    }
    let starts = segment_components(segments);
    Ok(merge_until_disjoint(starts))
}

/// Groups segments by the touching relation; returns (hull, ids) per group.
pub fn segment_components(segments: &[Segment]) -> Vec<(Vec<Point>, Vec<usize>)> {
    let n = segments.len();
    let mut forest = MergeForest::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let (s, t) = (&segments[i], &segments[j]);
            if segments_touch(&s.a, &s.b, &t.a, &t.b) {
                let (ri, rj) = (forest.find(i), forest.find(j));
                if ri != rj {
                    forest.union(ri, rj);
                }
            }
        }
    }
    forest
        .groups()
        .into_iter()
        .map(|ids| {
            let pts: Vec<Point> = ids.iter().flat_map(|&i| [segments[i].a.clone(), segments[i].b.clone()]).collect();
            (convex_hull(&pts), ids)
        })
        .collect()
}

/// Generic convexification: merge any two intersecting hulls until none
/// intersect. Hulls here need not be pseudo-disks, so merges rebuild.
pub fn merge_until_disjoint(mut parts: Vec<(Vec<Point>, Vec<usize>)>) -> Cover {
    loop {
        let polys: Vec<ConvexPoly> = parts.iter().map(|(v, _)| ConvexPoly::build(v, 0).expect("hull")).collect();
        let pair = (0..parts.len()).find_map(|i| (i + 1..parts.len()).find(|&j| polys[i].intersect(&polys[j]).is_some()).map(|j| (i, j)));
        let Some((i, j)) = pair else { break };
        let (vj, ij) = parts.swap_remove(j);
        let (vi, ii) = &mut parts[i];
        vi.extend(vj);
        *vi = convex_hull(vi);
        ii.extend(ij);
    }
    Cover::new(parts.into_iter().map(|(v, ids)| CoverElement::new(v, ids)).collect())
}

#[cfg(test)]
mod tests;
