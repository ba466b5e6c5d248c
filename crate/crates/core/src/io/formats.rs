//! JSON instance and cover files.
//!
//! Instances carry integer coordinates. Cover coordinates are exact
//! rationals written as "p/q" strings next to a lossy decimal.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::convexify::{Cover, CoverElement, EdgeTask, TraceEvent};
use crate::geom::{find_overlap, polygon_area, ratio_to_f64, ExactScalar, Point, Segment, SimplePolygon};

use super::IoError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Polygons(Vec<SimplePolygon>),
    Segments(Vec<Segment>),
}

impl Instance {
    pub fn len(&self) -> usize {
        match self {
            Instance::Polygons(p) => p.len(),
            Instance::Segments(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Vertex lists in the shape the oracle works on.
    pub fn shapes(&self) -> Vec<Vec<Point>> {
        match self {
            Instance::Polygons(p) => p.iter().map(|r| r.vertices().to_vec()).collect(),
            Instance::Segments(s) => s.iter().map(|s| vec![s.a.clone(), s.b.clone()]).collect(),
        }
    }

    pub fn total_vertices(&self) -> usize {
        match self {
            Instance::Polygons(p) => p.iter().map(SimplePolygon::len).sum(),
            Instance::Segments(s) => 2 * s.len(),
        }
    }
}

type RawPoint = [i64; 2];

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Polygons,
    Segments,
}

/// Flat rather than an internally tagged enum, which would lose error
/// positions.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    kind: Kind,
    polygons: Option<Vec<Vec<RawPoint>>>,
    segments: Option<Vec<[RawPoint; 2]>>,
}

fn point(p: RawPoint) -> Point {
    Point::int(p[0], p[1])
}

fn raw(p: &Point) -> RawPoint {
    assert!(p.is_integral(), "instance coordinates are integers");
    let c = |v: &ExactScalar| v.to_integer().to_i64().expect("coordinate fits in i64");
    [c(&p.x), c(&p.y)]
}

fn syntax(e: serde_json::Error) -> IoError {
    IoError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Parses and validates an instance. Clockwise rings are reversed.
pub fn parse_instance(bytes: &[u8]) -> Result<Instance, IoError> {
    let raw: RawInstance = serde_json::from_slice(bytes).map_err(syntax)?;
    match (raw.kind, raw.polygons, raw.segments) {
        (Kind::Polygons, Some(polygons), None) => {
            let mut out = Vec::with_capacity(polygons.len());
            for (i, ring) in polygons.into_iter().enumerate() {
                let mut ring: Vec<Point> = ring.into_iter().map(point).collect();
                if ring.len() >= 3 && polygon_area(&ring) < ExactScalar::from_integer(0.into()) {
                    ring.reverse();
                }
                out.push(SimplePolygon::new(ring).map_err(|e| IoError::InvalidPolygon(i, e))?);
            }
            if let Some((i, j)) = find_overlap(&out) {
                return Err(IoError::Overlap(i, j));
            }
            Ok(Instance::Polygons(out))
        }
        (Kind::Segments, None, Some(segments)) => segments
            .into_iter()
            .enumerate()
            .map(|(i, [a, b])| Segment::new(point(a), point(b)).map_err(|e| IoError::InvalidSegment(i, e)))
            .collect::<Result<_, _>>()
            .map(Instance::Segments),
        (kind, _, _) => {
            let key = if kind == Kind::Polygons { "polygons" } else { "segments" };
            Err(IoError::Schema(format!("a {key} instance needs exactly the \"{key}\" list")))
        }
    }
}

/// One shape per line.
pub fn emit_instance(instance: &Instance) -> String {
    let lines: Vec<String> = match instance {
        Instance::Polygons(polys) => {
            polys.iter().map(|p| serde_json::to_string(&p.vertices().iter().map(raw).collect::<Vec<_>>()).expect("serializable")).collect()
        }
        Instance::Segments(segs) => segs.iter().map(|s| serde_json::to_string(&[raw(&s.a), raw(&s.b)]).expect("serializable")).collect(),
    };
    let key = match instance {
        Instance::Polygons(_) => "polygons",
        Instance::Segments(_) => "segments",
    };
    if lines.is_empty() {
        return format!("{{\"kind\":\"{key}\",\"{key}\":[]}}\n");
    }
    format!("{{\"kind\":\"{key}\",\"{key}\":[\n  {}\n]}}\n", lines.join(",\n  "))
}

/// Always "p/q", also for integers.
pub fn rational_string(r: &ExactScalar) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<ExactScalar> {
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let q = BigInt::from_str(q.trim()).ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            ExactScalar::new(BigInt::from_str(p.trim()).ok()?, q)
        }
        None => ExactScalar::new(BigInt::from_str(s.trim()).ok()?, BigInt::one()),
    };
    Some(r)
}

#[derive(Serialize, Deserialize)]
struct RawVertex {
    x: String,
    y: String,
    approx: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    ids: Vec<usize>,
    vertices: Vec<RawVertex>,
}

#[derive(Serialize, Deserialize)]
struct RawCover {
    elements: Vec<RawElement>,
    area: String,
    area_approx: f64,
}

pub fn emit_cover(cover: &Cover) -> String {
    let raw = RawCover {
        elements: cover
            .elements
            .iter()
            .map(|e| RawElement {
                ids: e.ids.clone(),
                vertices: e
                    .vertices
                    .iter()
                    .map(|p| RawVertex {
                        x: rational_string(&p.x),
                        y: rational_string(&p.y),
                        approx: [ratio_to_f64(&p.x), ratio_to_f64(&p.y)],
                    })
                    .collect(),
            })
            .collect(),
        area: rational_string(&cover.area),
        area_approx: ratio_to_f64(&cover.area),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("serializable");
    s.push('\n');
    s
}

/// Parses a cover file. Decimals are ignored; the stated total area must
/// match the elements.
pub fn parse_cover(bytes: &[u8]) -> Result<Cover, IoError> {
    let raw: RawCover = serde_json::from_slice(bytes).map_err(syntax)?;
    let mut elements = Vec::with_capacity(raw.elements.len());
    for (i, e) in raw.elements.into_iter().enumerate() {
        let mut vertices = Vec::with_capacity(e.vertices.len());
        for v in e.vertices {
            let coord = |s: &str| parse_rational(s).ok_or_else(|| IoError::BadRational(i, s.to_string()));
            vertices.push(Point::new(coord(&v.x)?, coord(&v.y)?));
        }
        elements.push(CoverElement::new(vertices, e.ids));
    }
    let cover = Cover::new(elements);
    let stated = parse_rational(&raw.area).ok_or_else(|| IoError::BadRational(usize::MAX, raw.area.clone()))?;
    if stated != cover.area {
        return Err(IoError::AreaMismatch { stated: raw.area, computed: rational_string(&cover.area) });
    }
    Ok(cover)
}

fn point_json(p: &Point) -> Value {
    json!([rational_string(&p.x), rational_string(&p.y)])
}

fn task_json(t: &EdgeTask) -> Value {
    json!({"p1": point_json(&t.p1), "p2": point_json(&t.p2), "owner1": t.owner1, "owner2": t.owner2})
}

/// One JSON object per trace event.
pub fn event_json(event: &TraceEvent) -> Value {
    let ring = |v: &Vec<Point>| Value::Array(v.iter().map(point_json).collect());
    match event {
        TraceEvent::Init { hulls, queue } => json!({
            "event": "init",
            "hulls": hulls.iter().map(ring).collect::<Vec<_>>(),
            "queue": queue.iter().map(task_json).collect::<Vec<_>>(),
        }),
        TraceEvent::Shot { task, from, hit, merged } => json!({
            "event": "shot", "task": task_json(task), "from": point_json(from), "hit": point_json(hit), "merged": merged,
        }),
        TraceEvent::Merge { roots, hull, ids, tasks } => json!({
            "event": "merge", "roots": [roots.0, roots.1], "hull": ring(hull), "ids": ids,
            "tasks": tasks.iter().map(task_json).collect::<Vec<_>>(),
        }),
        TraceEvent::Cleanup { nested } => json!({"event": "cleanup", "nested": nested}),
    }
}
