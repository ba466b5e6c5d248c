//! Dynamic convex polygons stored as two x-monotone edge chains.
//!
//! "x-monotone" is with respect to lexicographic (x, then y) order, which
//! acts as an infinitesimal shear: a vertical edge on the left side belongs
//! to the upper chain, one on the right side to the lower chain.
//!
//! Each chain is a balanced sequence tree whose nodes also know the first and
//! last edge of their subtree. That is enough to build, per node, a constant
//! size inner and outer approximation of the subchain's hull, which drives
//! logarithmic intersection and line-clipping descents. Merging two polygons
//! whose boundaries cross at most twice splices the surviving arcs and pays
//! only for deleted vertices.

mod approx;
mod tree;

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::geom::{
    convex_hull, intersect_closed, line_intersection, line_param, orientation, ExactScalar, Orientation, Point, SegmentIntersection,
};

use approx::{convex_intersection, line_meets, NodeApprox};
pub use tree::Edge;
use tree::{EdgeRef, Node, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("a convex polygon needs at least one vertex")]
    Empty,
    #[error("vertex list is not strictly convex and counterclockwise (at vertex {0})")]
    NotConvex(usize),
    #[error("polygons do not intersect; merge requires a common point")]
    Disjoint,
    #[error("hull boundaries cross more than twice; pseudo-disk merge is not applicable")]
    PseudoDiskViolation,
    #[error("internal chain invariant broken: {0}")]
    Internal(&'static str),
}

/// One x-monotone side of a convex polygon, edges sorted left to right.
#[derive(Debug, Default)]
pub struct Chain {
    tree: Tree,
}

impl Chain {
    fn new(tree: Tree) -> Chain {
        Chain { tree }
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn height(&self) -> u32 {
        self.tree.height()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.tree.iter().map(|e| &**e)
    }
}

/// Counters recorded by the approximation descents.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DescentStats {
    pub calls: usize,
    pub max_depth: usize,
}

impl DescentStats {
    fn enter(&mut self, depth: usize) {
        self.calls += 1;
        self.max_depth = self.max_depth.max(depth);
    }
}

/// Result of a merge with bookkeeping.
#[derive(Debug)]
pub struct MergeOutcome {
    pub poly: ConvexPoly,
    /// Vertices of the inputs missing from the result.
    pub deleted: usize,
    /// The splice could not be used (degenerate contact or a point/segment
    /// operand) and the hull was rebuilt from scratch.
    pub rebuilt: bool,
    /// Counterclockwise edges of the result that are edges of neither input.
    pub new_edges: Vec<(Point, Point)>,
}

/// A convex polygon (possibly a point or a segment) as upper and lower chains.
#[derive(Debug)]
pub struct ConvexPoly {
    id: usize,
    upper: Chain,
    lower: Chain,
    left: Point,
    right: Point,
}

#[derive(Debug, Clone)]
struct ClipEnd {
    point: Point,
    /// Counterclockwise edge index holding the point.
    edge: usize,
}

impl ConvexPoly {
    /// Builds from a strictly convex counterclockwise vertex list. One or two
    /// distinct vertices give a degenerate point or segment polygon.
    pub fn build(vertices: &[Point], id: usize) -> Result<ConvexPoly, HullError> {
        let n = vertices.len();
        match n {
            0 => return Err(HullError::Empty),
            1 => {
                return Ok(ConvexPoly {
                    id,
                    upper: Chain::default(),
                    lower: Chain::default(),
                    left: vertices[0].clone(),
                    right: vertices[0].clone(),
                })
            }
            2 => {
                if vertices[0] == vertices[1] {
                    return Err(HullError::NotConvex(1));
                }
                let (a, b) = if vertices[0] < vertices[1] {
                    (vertices[0].clone(), vertices[1].clone())
                } else {
                    (vertices[1].clone(), vertices[0].clone())
                };
                let e = Arc::new(Edge { a: a.clone(), b: b.clone() });
                return Ok(ConvexPoly {
                    id,
                    upper: Chain::new(Tree::from_sorted(vec![e.clone()])),
                    lower: Chain::new(Tree::from_sorted(vec![e])),
                    left: a,
                    right: b,
                });
            }
            _ => {}
        }
        for i in 0..n {
            if orientation(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]) != Orientation::CounterClockwise {
                return Err(HullError::NotConvex((i + 1) % n));
            }
        }
        let lo = (0..n).min_by(|&i, &j| vertices[i].cmp(&vertices[j])).expect("non-empty");
        let hi = (0..n).max_by(|&i, &j| vertices[i].cmp(&vertices[j])).expect("non-empty");
        let mut lower = Vec::new();
        let mut i = lo;
        while i != hi {
            let j = (i + 1) % n;
            if vertices[i] >= vertices[j] {
                return Err(HullError::NotConvex(j));
            }
            lower.push(Arc::new(Edge { a: vertices[i].clone(), b: vertices[j].clone() }));
            i = j;
        }
        let mut upper = Vec::new();
        while i != lo {
            let j = (i + 1) % n;
            if vertices[i] <= vertices[j] {
                return Err(HullError::NotConvex(j));
            }
            upper.push(Arc::new(Edge { a: vertices[j].clone(), b: vertices[i].clone() }));
            i = j;
        }
        upper.reverse();
        Ok(ConvexPoly {
            id,
            upper: Chain::new(Tree::from_sorted(upper)),
            lower: Chain::new(Tree::from_sorted(lower)),
            left: vertices[lo].clone(),
            right: vertices[hi].clone(),
        })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn set_id(&mut self, id: usize) {
        self.id = id;
    }

    pub fn upper(&self) -> &Chain {
        &self.upper
    }

    pub fn lower(&self) -> &Chain {
        &self.lower
    }

    /// Number of distinct vertices.
    pub fn len(&self) -> usize {
        if self.lower.is_empty() {
            1
        } else {
            self.lower.len() + self.upper.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_degenerate(&self) -> bool {
        self.len() < 3
    }

    pub fn height(&self) -> u32 {
        self.lower.height().max(self.upper.height())
    }

    /// Lexicographically smallest and largest vertices.
    pub fn extremes(&self) -> (&Point, &Point) {
        (&self.left, &self.right)
    }

    /// Vertex `i` in counterclockwise order starting from the leftmost vertex.
    pub fn vertex(&self, i: usize) -> Point {
        let n = self.len();
        if n == 1 {
            return self.left.clone();
        }
        let i = i % n;
        let l = self.lower.len();
        if i < l {
            self.lower.tree.get(i).expect("rank in range").a.clone()
        } else {
            let m = self.upper.len();
            self.upper.tree.get(m - 1 - (i - l)).expect("rank in range").b.clone()
        }
    }

    /// Counterclockwise vertex list starting at the leftmost vertex.
    pub fn vertices(&self) -> Vec<Point> {
        if self.len() == 1 {
            return vec![self.left.clone()];
        }
        if self.len() == 2 {
            return vec![self.left.clone(), self.right.clone()];
        }
        let mut out: Vec<Point> = self.lower.tree.iter().map(|e| e.a.clone()).collect();
        let upper: Vec<&EdgeRef> = self.upper.tree.iter().collect();
        out.extend(upper.iter().rev().map(|e| e.b.clone()));
        out
    }

    /// Closed point location by binary search on both chains.
    pub fn contains_point(&self, q: &Point) -> bool {
        if *q < self.left || *q > self.right {
            return false;
        }
        if self.len() == 1 {
            return *q == self.left;
        }
        let below_upper = match self.upper.tree.locate(q) {
            Some((_, e)) => orientation(&e.a, &e.b, q) != Orientation::CounterClockwise,
            None => false,
        };
        below_upper
            && match self.lower.tree.locate(q) {
                Some((_, e)) => orientation(&e.a, &e.b, q) != Orientation::Clockwise,
                None => false,
            }
    }

    /// Whether `q` lies on the boundary.
    pub fn on_boundary(&self, q: &Point) -> bool {
        if !self.contains_point(q) {
            return false;
        }
        if self.len() < 3 {
            return true;
        }
        let on = |chain: &Chain| chain.tree.locate(q).is_some_and(|(_, e)| orientation(&e.a, &e.b, q) == Orientation::Collinear);
        on(&self.upper) || on(&self.lower)
    }

    /// Whether `q` is one of the vertices.
    /// Whether `a -> b` is a counterclockwise boundary edge.
    pub fn has_edge(&self, a: &Point, b: &Point) -> bool {
        if self.len() < 3 {
            let (l, r) = (&self.left, &self.right);
            return self.len() == 2 && ((a == l && b == r) || (a == r && b == l));
        }
        self.is_vertex(a)
            && self.is_vertex(b)
            && orientation(a, b, &self.interior()) == Orientation::CounterClockwise
            && self.on_boundary(&a.midpoint(b))
    }

    /// A point strictly inside a polygon with at least three vertices.
    fn interior(&self) -> Point {
        let n = self.len();
        let (a, b, c) = (self.vertex(0), self.vertex(n / 3), self.vertex(2 * n / 3));
        let three = ExactScalar::from_integer(3.into());
        Point::new((&a.x + &b.x + &c.x) / &three, (&a.y + &b.y + &c.y) / &three)
    }

    pub fn is_vertex(&self, q: &Point) -> bool {
        if *q == self.left || *q == self.right {
            return true;
        }
        let hit = |chain: &Chain| chain.tree.locate(q).is_some_and(|(_, e)| e.a == *q || e.b == *q);
        hit(&self.upper) || hit(&self.lower)
    }

    /// A point common to both closed regions, if they intersect.
    pub fn intersect(&self, other: &ConvexPoly) -> Option<Point> {
        self.intersect_with_stats(other, &mut DescentStats::default())
    }

    pub fn intersect_with_stats(&self, other: &ConvexPoly, stats: &mut DescentStats) -> Option<Point> {
        if self.len() == 1 {
            return other.contains_point(&self.left).then(|| self.left.clone());
        }
        if other.len() == 1 {
            return self.contains_point(&other.left).then(|| other.left.clone());
        }
        if self.right.x < other.left.x || other.right.x < self.left.x {
            return None;
        }
        let mut seen = HashSet::new();
        for a in [&self.upper, &self.lower] {
            for b in [&other.upper, &other.lower] {
                if let (Some(u), Some(v)) = (a.tree.root(), b.tree.root()) {
                    if let Some(w) = descend_intersect(u, v, 1, &mut seen, stats) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    /// Endpoints of the intersection with the line through `p` and `q`,
    /// ordered along the direction from `p` to `q`.
    pub fn line_clip(&self, p: &Point, q: &Point) -> Option<(Point, Point)> {
        self.line_clip_with_stats(p, q, &mut DescentStats::default())
    }

    pub fn line_clip_with_stats(&self, p: &Point, q: &Point, stats: &mut DescentStats) -> Option<(Point, Point)> {
        assert!(p != q, "line_clip needs two distinct points");
        self.clip_located(p, q, stats).map(|(lo, hi)| (lo.point, hi.point))
    }

    fn clip_located(&self, p: &Point, q: &Point, stats: &mut DescentStats) -> Option<(ClipEnd, ClipEnd)> {
        if self.len() == 1 {
            return (orientation(p, q, &self.left) == Orientation::Collinear).then(|| {
                let end = ClipEnd { point: self.left.clone(), edge: 0 };
                (end.clone(), end)
            });
        }
        let l = self.lower.len();
        let m = self.upper.len();
        let mut hits: Vec<ClipEnd> = Vec::new();
        if let Some(root) = self.lower.tree.root() {
            clip_node(root, 0, p, q, 1, stats, &mut |point, rank| hits.push(ClipEnd { point, edge: rank }));
        }
        if let Some(root) = self.upper.tree.root() {
            clip_node(root, 0, p, q, 1, stats, &mut |point, rank| hits.push(ClipEnd { point, edge: l + (m - 1 - rank) }));
        }
        if hits.is_empty() {
            return None;
        }
        let keyed: Vec<_> = hits.into_iter().map(|h| (line_param(p, q, &h.point), h)).collect();
        let lo = keyed.iter().min_by(|a, b| a.0.cmp(&b.0)).expect("non-empty").1.clone();
        let hi = keyed.iter().max_by(|a, b| a.0.cmp(&b.0)).expect("non-empty").1.clone();
        Some((lo, hi))
    }

    /// Counterclockwise edge `i` as (from, to).
    fn ccw_edge(&self, i: usize) -> (Point, Point) {
        let n = self.len();
        (self.vertex(i % n), self.vertex((i + 1) % n))
    }

    /// Replaces both polygons by the hull of their union.
    pub fn merge(self, other: ConvexPoly) -> Result<(ConvexPoly, usize), HullError> {
        let out = self.merge_detailed(other)?;
        Ok((out.poly, out.deleted))
    }

    /// Like [`ConvexPoly::merge`], also reporting whether the splice path was used.
    /// The result keeps the id of `self`.
    pub fn merge_detailed(self, other: ConvexPoly) -> Result<MergeOutcome, HullError> {
        let witness = self.intersect(&other).ok_or(HullError::Disjoint)?;
        if self.is_degenerate() || other.is_degenerate() {
            return rebuild(self, other);
        }
        match plan_splice(&self, &other, &witness)? {
            Plan::Rebuild => rebuild(self, other),
            Plan::Keep { first } => {
                let n = self.len() + other.len();
                let id = self.id;
                let mut poly = if first { self } else { other };
                let deleted = n - poly.len();
                poly.id = id;
                Ok(MergeOutcome { poly, deleted, rebuilt: false, new_edges: Vec::new() })
            }
            Plan::Splice(s) => {
                let n = self.len() + other.len();
                let id = self.id;
                let (a, b) = if s.swapped { (other, self) } else { (self, other) };
                let bridges = [(s.a_vertex(&a, s.ca - 1), s.b_vertex(&b, 0)), (s.b_vertex(&b, s.cb - 1), s.a_vertex(&a, 0))];
                let new_edges = bridges.iter().filter(|(u, v)| !a.has_edge(u, v) && !b.has_edge(u, v)).cloned().collect();
                let mut pieces = extract_edges(a, s.a_lo, s.ca - 1);
                pieces.extend(extract_edges(b, s.b_lo, s.cb - 1));
                for (from, to) in bridges {
                    pieces.push(single_edge(from, to));
                }
                let poly = assemble(pieces, id)?;
                let deleted = n - poly.len();
                Ok(MergeOutcome { poly, deleted, rebuilt: false, new_edges })
            }
        }
    }

    /// Number of connected pieces of the boundary intersection, computed
    /// naively. Used to check the pseudo-disk invariant.
    pub fn boundary_contacts(&self, other: &ConvexPoly) -> usize {
        boundary_contacts(&self.vertices(), &other.vertices())
    }
}

/// Counts connected components of `∂A ∩ ∂B` for two convex vertex lists.
pub fn boundary_contacts(a: &[Point], b: &[Point]) -> usize {
    let edges = |v: &[Point]| -> Vec<(Point, Point)> {
        match v.len() {
            1 => vec![(v[0].clone(), v[0].clone())],
            2 => vec![(v[0].clone(), v[1].clone())],
            n => (0..n).map(|i| (v[i].clone(), v[(i + 1) % n].clone())).collect(),
        }
    };
    let mut pieces: Vec<(Point, Point)> = Vec::new();
    for (p1, p2) in edges(a) {
        for (q1, q2) in edges(b) {
            match intersect_closed(&p1, &p2, &q1, &q2) {
                SegmentIntersection::Empty => {}
                SegmentIntersection::At(p) => pieces.push((p.clone(), p)),
                SegmentIntersection::Overlap(s) => pieces.push((s.a, s.b)),
            }
        }
    }
    let k = pieces.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..k {
        for j in i + 1..k {
            let touch = !matches!(intersect_closed(&pieces[i].0, &pieces[i].1, &pieces[j].0, &pieces[j].1), SegmentIntersection::Empty);
            if touch {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    (0..k).filter(|&i| find(&mut parent, i) == i).count()
}

fn descend_intersect(u: &Node, v: &Node, depth: usize, seen: &mut HashSet<(usize, usize)>, stats: &mut DescentStats) -> Option<Point> {
    if !seen.insert((u as *const Node as usize, v as *const Node as usize)) {
        return None;
    }
    stats.enter(depth);
    let au = NodeApprox::of(u);
    let av = NodeApprox::of(v);
    if let (Some(ou), Some(ov)) = (&au.outer, &av.outer) {
        convex_intersection(ou, ov)?;
    }
    if let Some(w) = convex_intersection(&au.inner, &av.inner) {
        return Some(w);
    }
    let meets = |ear: &Option<Vec<Point>>, other: &[Point]| ear.as_ref().is_none_or(|t| convex_intersection(t, other).is_some());
    let v_children = [(v.left.root(), &av.left_ear), (v.right.root(), &av.right_ear)];
    let u_children = [(u.left.root(), &au.left_ear), (u.right.root(), &au.right_ear)];

    for (child, ear) in v_children {
        if let Some(c) = child {
            if meets(ear, &au.inner) {
                if let Some(w) = descend_intersect(u, c, depth + 1, seen, stats) {
                    return Some(w);
                }
            }
        }
    }
    for (child, ear) in u_children {
        if let Some(c) = child {
            if meets(ear, &av.inner) {
                if let Some(w) = descend_intersect(c, v, depth + 1, seen, stats) {
                    return Some(w);
                }
            }
        }
    }
    for (uc, uear) in u_children {
        let Some(uc) = uc else { continue };
        for (vc, vear) in v_children {
            let Some(vc) = vc else { continue };
            let ears_meet = match (uear, vear) {
                (Some(a), Some(b)) => convex_intersection(a, b).is_some(),
                _ => true,
            };
            if ears_meet {
                if let Some(w) = descend_intersect(uc, vc, depth + 1, seen, stats) {
                    return Some(w);
                }
            }
        }
    }
    None
}

fn clip_node(node: &Node, offset: usize, p: &Point, q: &Point, depth: usize, stats: &mut DescentStats, emit: &mut dyn FnMut(Point, usize)) {
    stats.enter(depth);
    let ap = NodeApprox::of(node);
    if let Some(outer) = &ap.outer {
        if !line_meets(outer, p, q) {
            return;
        }
    }
    let ls = node.left.len();
    let mut check = |e: &Edge, rank: usize| {
        let oa = orientation(p, q, &e.a);
        let ob = orientation(p, q, &e.b);
        match (oa, ob) {
            (Orientation::Collinear, Orientation::Collinear) => {
                emit(e.a.clone(), rank);
                emit(e.b.clone(), rank);
            }
            (Orientation::Collinear, _) => emit(e.a.clone(), rank),
            (_, Orientation::Collinear) => emit(e.b.clone(), rank),
            (x, y) if x != y => {
                let point = line_intersection(p, q, &e.a, &e.b).expect("crossing edge is not parallel");
                emit(point, rank);
            }
            _ => {}
        }
    };
    check(&node.edge, offset + ls);
    check(&node.first, offset);
    check(&node.last, offset + node.size() - 1);
    if let Some(left) = node.left.root() {
        if ap.left_ear.as_ref().is_none_or(|t| line_meets(t, p, q)) {
            clip_node(left, offset, p, q, depth + 1, stats, emit);
        }
    }
    if let Some(right) = node.right.root() {
        if ap.right_ear.as_ref().is_none_or(|t| line_meets(t, p, q)) {
            clip_node(right, offset + ls + 1, p, q, depth + 1, stats, emit);
        }
    }
}

enum Plan {
    Rebuild,
    /// One polygon contains the other; keep the first or the second operand.
    Keep {
        first: bool,
    },
    Splice(Splice),
}

/// Surviving arcs of a merge. With `swapped`, arc A belongs to the second
/// operand. The result cycle is arc A followed by arc B, counterclockwise.
struct Splice {
    swapped: bool,
    a_lo: usize,
    ca: usize,
    b_lo: usize,
    cb: usize,
}

impl Splice {
    fn a_vertex(&self, a: &ConvexPoly, i: usize) -> Point {
        a.vertex(self.a_lo + i)
    }

    fn b_vertex(&self, b: &ConvexPoly, i: usize) -> Point {
        b.vertex(self.b_lo + i)
    }
}

/// Fixed fallback directions for the probing line through the witness.
const PROBE_DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)];

fn probe_point(w: &Point, d: (i64, i64)) -> Point {
    let off = Point::int(d.0, d.1);
    Point::new(&w.x + &off.x, &w.y + &off.y)
}

/// Finds a vertex of one polygon lying in the other. Returns (second operand?, index).
fn find_seed(p1: &ConvexPoly, p2: &ConvexPoly, w: &Point) -> Option<(bool, usize)> {
    let mut stats = DescentStats::default();
    let (c1, c2) = (p1.interior(), p2.interior());
    let mut targets = vec![c1.midpoint(&c2), c1, c2];
    targets.extend(PROBE_DIRECTIONS.iter().map(|&d| probe_point(w, d)));
    for q in targets.iter().filter(|q| *q != w) {
        let (Some(c1), Some(c2)) = (p1.clip_located(w, q, &mut stats), p2.clip_located(w, q, &mut stats)) else {
            continue;
        };
        if c1.0.point == c1.1.point || c2.0.point == c2.1.point {
            continue;
        }
        let n1 = p1.len();
        let n2 = p2.len();
        for end in [&c1.0, &c1.1] {
            for i in [end.edge, (end.edge + 1) % n1] {
                if p2.contains_point(&p1.vertex(i)) {
                    return Some((false, i));
                }
            }
        }
        for end in [&c2.0, &c2.1] {
            for i in [end.edge, (end.edge + 1) % n2] {
                if p1.contains_point(&p2.vertex(i)) {
                    return Some((true, i));
                }
            }
        }
        // No endpoint of a crossing edge lies inside: the lens is cut off by
        // a single edge of one polygon. Clip the other one with that edge's line.
        let s1 = line_param(w, q, &c1.0.point);
        let s2 = line_param(w, q, &c2.0.point);
        let e1 = line_param(w, q, &c1.1.point);
        let e2 = line_param(w, q, &c2.1.point);
        let middles = [if s2 >= s1 { (true, &c2.0) } else { (false, &c1.0) }, if e2 <= e1 { (true, &c2.1) } else { (false, &c1.1) }];
        for (on_second, end) in middles {
            let (owner, other) = if on_second { (p2, p1) } else { (p1, p2) };
            let (a, b) = owner.ccw_edge(end.edge);
            if let Some((x, y)) = other.clip_located(&a, &b, &mut stats) {
                let no = other.len();
                for e in [x.edge, y.edge] {
                    for i in [e, (e + 1) % no] {
                        if owner.contains_point(&other.vertex(i)) {
                            return Some((!on_second, i));
                        }
                    }
                }
            }
        }
        return None;
    }
    None
}

/// Maximal cyclic run of `a`'s vertices inside `b` around `seed`: (start, len).
fn inside_run(a: &ConvexPoly, seed: usize, inside: impl Fn(&Point) -> bool) -> (usize, usize) {
    let n = a.len();
    let mut start = seed;
    let mut len = 1;
    while len < n && inside(&a.vertex((start + n - 1) % n)) {
        start = (start + n - 1) % n;
        len += 1;
    }
    while len < n && inside(&a.vertex(start + len)) {
        len += 1;
    }
    (start, len)
}

fn plan_splice(p1: &ConvexPoly, p2: &ConvexPoly, w: &Point) -> Result<Plan, HullError> {
    let Some((swapped, seed)) = find_seed(p1, p2, w) else {
        return Ok(Plan::Rebuild);
    };
    let (a, b) = if swapped { (p2, p1) } else { (p1, p2) };
    let (na, nb) = (a.len(), b.len());
    let (ra, la) = inside_run(a, seed, |v| b.contains_point(v));
    if la == na {
        return Ok(Plan::Keep { first: swapped });
    }
    // The edge where A's boundary leaves B.
    let exit_from = a.vertex(ra + la - 1);
    let exit_to = a.vertex(ra + la);
    let mut stats = DescentStats::default();
    let Some((_, hi)) = b.clip_located(&exit_from, &exit_to, &mut stats) else {
        return Ok(Plan::Rebuild);
    };
    // Vertices shared with A were dropped from A's arc, so B keeps them.
    let in_a = |v: &Point| a.contains_point(v) && !a.is_vertex(v);
    let mut k = hi.edge;
    if hi.point == b.vertex(k + 1) {
        k = (k + 1) % nb;
    }
    let seed_b = if in_a(&b.vertex(k + 1)) {
        Some((k + 1) % nb)
    } else if in_a(&b.vertex(k)) {
        Some(k)
    } else {
        None
    };
    let (b_lo, cb) = match seed_b {
        Some(sb) => {
            let (rb, lb) = inside_run(b, sb, in_a);
            if lb == nb {
                return Ok(Plan::Keep { first: !swapped });
            }
            ((rb + lb) % nb, nb - lb)
        }
        None => ((k + 1) % nb, nb),
    };
    let mut s = Splice { swapped, a_lo: (ra + la) % na, ca: na - la, b_lo, cb };

    let ccw = |x: &Point, y: &Point, z: &Point| orientation(x, y, z) == Orientation::CounterClockwise;
    loop {
        if s.ca + s.cb < 3 {
            return Ok(Plan::Rebuild);
        }
        let a_first = s.a_vertex(a, 0);
        let a_last = s.a_vertex(a, s.ca - 1);
        let b_first = s.b_vertex(b, 0);
        let b_last = s.b_vertex(b, s.cb - 1);
        let before_a_last = if s.ca >= 2 { s.a_vertex(a, s.ca - 2) } else { b_last.clone() };
        let after_b_first = if s.cb >= 2 { s.b_vertex(b, 1) } else { a_first.clone() };
        let before_b_last = if s.cb >= 2 { s.b_vertex(b, s.cb - 2) } else { a_last.clone() };
        let after_a_first = if s.ca >= 2 { s.a_vertex(a, 1) } else { b_first.clone() };

        if !ccw(&before_a_last, &a_last, &b_first) {
            if s.ca == 1 {
                return Ok(Plan::Rebuild);
            }
            s.ca -= 1;
        } else if !ccw(&a_last, &b_first, &after_b_first) {
            if s.cb == 1 {
                return Ok(Plan::Rebuild);
            }
            s.b_lo = (s.b_lo + 1) % nb;
            s.cb -= 1;
        } else if !ccw(&before_b_last, &b_last, &a_first) {
            if s.cb == 1 {
                return Ok(Plan::Rebuild);
            }
            s.cb -= 1;
        } else if !ccw(&b_last, &a_first, &after_a_first) {
            if s.ca == 1 {
                return Ok(Plan::Rebuild);
            }
            s.a_lo = (s.a_lo + 1) % na;
            s.ca -= 1;
        } else {
            break;
        }
    }

    // Contacts through a vertex lying on the other boundary break the
    // run bookkeeping above; those merges go through the exact rebuild.
    let a_near = [ra + na - 1, ra, ra + la - 1, ra + la, s.a_lo + na - 1, s.a_lo, s.a_lo + s.ca - 1, s.a_lo + s.ca];
    let b_near = [b_lo + nb - 1, b_lo, b_lo + cb - 1, b_lo + cb, s.b_lo + nb - 1, s.b_lo, s.b_lo + s.cb - 1, s.b_lo + s.cb, k, k + 1];
    if a_near.iter().any(|&i| b.on_boundary(&a.vertex(i % na))) || b_near.iter().any(|&i| a.on_boundary(&b.vertex(i % nb))) {
        return Ok(Plan::Rebuild);
    }

    // A locally convex cycle is convex iff it winds once, i.e. it has a
    // single lexicographic local minimum. Inside an arc the only candidate
    // is the owning polygon's own leftmost vertex (index 0).
    let total = s.ca + s.cb;
    let at = |pos: usize| -> Point {
        let pos = pos % total;
        if pos < s.ca {
            s.a_vertex(a, pos)
        } else {
            s.b_vertex(b, pos - s.ca)
        }
    };
    let mut candidates = vec![0, s.ca - 1, s.ca, total - 1];
    let a_min = (na - s.a_lo) % na;
    if a_min < s.ca {
        candidates.push(a_min);
    }
    let b_min = (nb - s.b_lo) % nb;
    if b_min < s.cb {
        candidates.push(s.ca + b_min);
    }
    candidates.sort_unstable();
    candidates.dedup();
    let minima = candidates
        .into_iter()
        .filter(|&pos| {
            let v = at(pos);
            v < at(pos + total - 1) && v < at(pos + 1)
        })
        .count();
    if minima != 1 {
        return Err(HullError::PseudoDiskViolation);
    }
    Ok(Plan::Splice(s))
}

fn rebuild(p1: ConvexPoly, p2: ConvexPoly) -> Result<MergeOutcome, HullError> {
    let n = p1.len() + p2.len();
    let mut pts = p1.vertices();
    pts.extend(p2.vertices());
    let hull = convex_hull(&pts);
    let poly = ConvexPoly::build(&hull, p1.id)?;
    let deleted = n - poly.len();
    let k = hull.len();
    let new_edges = match k {
        1 => Vec::new(),
        2 => vec![(hull[0].clone(), hull[1].clone())],
        _ => (0..k).map(|i| (hull[i].clone(), hull[(i + 1) % k].clone())).collect(),
    };
    let new_edges = new_edges.into_iter().filter(|(u, v)| !p1.has_edge(u, v) && !p2.has_edge(u, v)).collect();
    Ok(MergeOutcome { poly, deleted, rebuilt: true, new_edges })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Upper,
    Lower,
}

fn single_edge(from: Point, to: Point) -> (Side, Tree) {
    if from < to {
        (Side::Lower, Tree::from_sorted(vec![Arc::new(Edge { a: from, b: to })]))
    } else {
        (Side::Upper, Tree::from_sorted(vec![Arc::new(Edge { a: to, b: from })]))
    }
}

/// Cuts the counterclockwise edge range `[start, start + count)` out of the
/// polygon's chains. Everything else is dropped.
fn extract_edges(poly: ConvexPoly, start: usize, count: usize) -> Vec<(Side, Tree)> {
    let n = poly.len();
    let l = poly.lower.len();
    if count == 0 {
        return Vec::new();
    }
    let mut linear = vec![];
    if start + count <= n {
        linear.push((start, start + count));
    } else {
        linear.push((start, n));
        linear.push((0, start + count - n));
    }
    let mut lower_ranges = vec![];
    let mut upper_ranges = vec![];
    for (x, y) in linear {
        if x < l {
            lower_ranges.push((x, y.min(l)));
        }
        if y > l {
            let x2 = x.max(l);
            upper_ranges.push((n - y, n - x2));
        }
    }
    let mut out: Vec<(Side, Tree)> = take_ranges(poly.lower.tree, lower_ranges).into_iter().map(|t| (Side::Lower, t)).collect();
    out.extend(take_ranges(poly.upper.tree, upper_ranges).into_iter().map(|t| (Side::Upper, t)));
    out
}

fn take_ranges(mut tree: Tree, mut ranges: Vec<(usize, usize)>) -> Vec<Tree> {
    ranges.retain(|r| r.0 < r.1);
    ranges.sort_unstable_by_key(|r| std::cmp::Reverse(r.0));
    let mut out = Vec::new();
    for (x, y) in ranges {
        let (rest, _tail) = tree.split_at(y);
        let (rest, piece) = rest.split_at(x);
        tree = rest;
        out.push(piece);
    }
    out
}

fn assemble(pieces: Vec<(Side, Tree)>, id: usize) -> Result<ConvexPoly, HullError> {
    let mut chains = [Tree::empty(), Tree::empty()];
    let mut lower: Vec<Tree> = Vec::new();
    let mut upper: Vec<Tree> = Vec::new();
    for (side, t) in pieces {
        if t.is_empty() {
            continue;
        }
        match side {
            Side::Lower => lower.push(t),
            Side::Upper => upper.push(t),
        }
    }
    for (slot, mut list) in [(0, lower), (1, upper)] {
        list.sort_by(|x, y| x.first().expect("non-empty").a.cmp(&y.first().expect("non-empty").a));
        let mut acc = Tree::empty();
        for t in list {
            if let Some(last) = acc.last() {
                if last.b != t.first().expect("non-empty").a {
                    return Err(HullError::Internal("chain pieces are not contiguous"));
                }
            }
            acc = Tree::join(acc, t);
        }
        chains[slot] = acc;
    }
    let [lower, upper] = chains;
    let (Some(lf), Some(uf), Some(ll), Some(ul)) = (lower.first(), upper.first(), lower.last(), upper.last()) else {
        return Err(HullError::Internal("merged polygon lost a chain"));
    };
    if lf.a != uf.a || ll.b != ul.b {
        return Err(HullError::Internal("chains do not share their extreme vertices"));
    }
    let left = lf.a.clone();
    let right = ll.b.clone();
    Ok(ConvexPoly { id, upper: Chain::new(upper), lower: Chain::new(lower), left, right })
}

#[cfg(test)]
mod tests;
