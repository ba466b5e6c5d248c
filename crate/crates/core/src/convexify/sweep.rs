//! Left-to-right sweep over hull boundaries that finds nested hulls.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::geom::{orientation, segments_touch, Orientation, Point};
use crate::hull_chain::ConvexPoly;

/// Boundary edge of hull `hull`, with `a < b` lexicographically.
#[derive(Debug, Clone)]
struct SweepEdge {
    a: Point,
    b: Point,
    hull: usize,
    upper: bool,
    id: usize,
}

#[derive(Debug, Clone)]
enum Key {
    Edge(SweepEdge),
    /// Stand-in for a point on the sweep line; sorts just below any edge through it.
    Probe(Point),
}

fn cmp_edges(s: &SweepEdge, t: &SweepEdge) -> Ordering {
    if s.id == t.id {
        return Ordering::Equal;
    }
    let (later, earlier, flip) = if s.a.x >= t.a.x { (s, t, false) } else { (t, s, true) };
    let mut o = orientation(&earlier.a, &earlier.b, &later.a);
    if o == Orientation::Collinear {
        o = orientation(&earlier.a, &earlier.b, &later.b);
    }
    let ord = match o {
        Orientation::CounterClockwise => Ordering::Greater,
        Orientation::Clockwise => Ordering::Less,
        Orientation::Collinear => later.id.cmp(&earlier.id),
    };
    if flip {
        ord.reverse()
    } else {
        ord
    }
}

fn cmp_probe(v: &Point, e: &SweepEdge) -> Ordering {
    match orientation(&e.a, &e.b, v) {
        Orientation::CounterClockwise => Ordering::Greater,
        _ => Ordering::Less,
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Key::Edge(s), Key::Edge(t)) => cmp_edges(s, t),
            (Key::Probe(v), Key::Edge(e)) => cmp_probe(v, e),
            (Key::Edge(e), Key::Probe(v)) => cmp_probe(v, e).reverse(),
            (Key::Probe(u), Key::Probe(v)) => u.y.cmp(&v.y),
        }
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key {}

/// Boundaries of two hulls meet, which the main loop rules out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryContact(pub usize, pub usize);

/// For each hull, the index of the outermost hull containing it (itself if
/// none). Fails if boundaries of two hulls touch or cross.
pub fn outermost_containers(hulls: &[&ConvexPoly]) -> Result<Vec<usize>, BoundaryContact> {
    let mut edges = Vec::new();
    let mut verticals = Vec::new();
    for (h, poly) in hulls.iter().enumerate() {
        for (upper, chain) in [(true, poly.upper()), (false, poly.lower())] {
            for e in chain.edges() {
                let edge = SweepEdge { a: e.a.clone(), b: e.b.clone(), hull: h, upper, id: edges.len() };
                if e.a.x != e.b.x {
                    edges.push(edge);
                } else {
                    verticals.push(edge);
                }
            }
        }
    }
    check_verticals(&mut verticals)?;
    // Event kinds in processing order at a shared point.
    const REMOVE: u8 = 0;
    const QUERY: u8 = 1;
    const INSERT: u8 = 2;
    const VERTICAL: u8 = 3;
    let mut events: Vec<(&Point, u8, usize)> = Vec::with_capacity(2 * edges.len() + hulls.len() + verticals.len());
    for e in &edges {
        events.push((&e.a, INSERT, e.id));
        events.push((&e.b, REMOVE, e.id));
    }
    for (i, v) in verticals.iter().enumerate() {
        events.push((&v.b, VERTICAL, i));
    }
    for (h, poly) in hulls.iter().enumerate() {
        events.push((poly.extremes().0, QUERY, h));
    }
    events.sort_by(|x, y| x.0.cmp(y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut parent: Vec<Option<usize>> = vec![None; hulls.len()];
    let mut top: Vec<usize> = (0..hulls.len()).collect();
    let mut status: BTreeSet<Key> = BTreeSet::new();
    let check = |s: &SweepEdge, t: &SweepEdge| -> Result<(), BoundaryContact> {
        if s.hull != t.hull && segments_touch(&s.a, &s.b, &t.a, &t.b) {
            Err(BoundaryContact(s.hull.min(t.hull), s.hull.max(t.hull)))
        } else {
            Ok(())
        }
    };
    let as_edge = |k: &Key| match k {
        Key::Edge(e) => e.clone(),
        Key::Probe(_) => unreachable!("probes are never stored"),
    };
    for (point, kind, idx) in events {
        match kind {
            REMOVE => {
                let key = Key::Edge(edges[idx].clone());
                let below = status.range(..&key).next_back().map(as_edge);
                let above = status.range((std::ops::Bound::Excluded(&key), std::ops::Bound::Unbounded)).next().map(as_edge);
                status.remove(&key);
                if let (Some(b), Some(a)) = (below, above) {
                    check(&b, &a)?;
                }
            }
            QUERY => {
                let probe = Key::Probe(point.clone());
                if let Some(k) = status.range(&probe..).next().map(as_edge) {
                    parent[idx] = if k.upper { Some(k.hull) } else { parent[k.hull] };
                    if let Some(p) = parent[idx] {
                        top[idx] = top[p];
                    }
                }
            }
            VERTICAL => {
                // Edges crossing the sweep line within the vertical edge's span.
                let v = &verticals[idx];
                for k in status.range(Key::Probe(v.a.clone())..) {
                    let e = as_edge(k);
                    if orientation(&e.a, &e.b, &v.b) == Orientation::Clockwise {
                        break;
                    }
                    check(v, &e)?;
                }
            }
            _ => {
                let e = &edges[idx];
                let key = Key::Edge(e.clone());
                if let Some(b) = status.range(..&key).next_back() {
                    check(e, &as_edge(b))?;
                }
                if let Some(a) = status.range((std::ops::Bound::Excluded(&key), std::ops::Bound::Unbounded)).next() {
                    check(e, &as_edge(a))?;
                }
                status.insert(key);
            }
        }
    }
    Ok(top)
}

/// Overlaps between vertical edges of different hulls on a common line.
fn check_verticals(verticals: &mut [SweepEdge]) -> Result<(), BoundaryContact> {
    verticals.sort_by(|s, t| s.a.cmp(&t.a));
    let mut reach: Option<&SweepEdge> = None;
    for v in verticals.iter() {
        if let Some(r) = reach {
            if r.a.x == v.a.x && v.a.y <= r.b.y {
                if r.hull != v.hull {
                    return Err(BoundaryContact(r.hull.min(v.hull), r.hull.max(v.hull)));
                }
                if v.b.y <= r.b.y {
                    continue;
                }
            }
        }
        reach = Some(v);
    }
    Ok(())
}
