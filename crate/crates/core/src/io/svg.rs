//! SVG 1.1 rendering of inputs, hulls, traced rays and covers.
//!
//! Inputs are filled, hulls outlined, queued edges dashed and rays drawn as
//! arrows.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::convexify::{Cover, EdgeTask, Run, TraceEvent};
use crate::geom::Point;

use super::IoError;

const WIDTH: f64 = 800.0;
const INPUT_FILL: &str = "#9ecae1";
const HULL: &str = "#08519c";
const MERGED: &str = "#e6550d";
const QUEUED: &str = "#31a354";
const RAY: &str = "#c0392b";

struct Canvas {
    lo: (f64, f64),
    hi: (f64, f64),
    unit: f64,
    body: String,
}

impl Canvas {
    fn new<'a>(points: impl Iterator<Item = &'a Point>) -> Canvas {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            let (x, y) = p.to_f64();
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if lo.0 > hi.0 {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let extent = (hi.0 - lo.0).max(hi.1 - lo.1).max(1.0);
        let margin = extent * 0.05;
        Canvas { lo: (lo.0 - margin, lo.1 - margin), hi: (hi.0 + margin, hi.1 + margin), unit: extent / 400.0, body: String::new() }
    }

    /// Flips y so that the picture is in the usual orientation.
    fn xy(&self, p: &Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        (x, self.hi.1 + self.lo.1 - y)
    }

    fn shape(&mut self, pts: &[Point], fill: &str, stroke: &str, width: f64, dash: bool) {
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = self.xy(p);
                format!("{x},{y}")
            })
            .collect();
        let dash = if dash { format!(" stroke-dasharray=\"{0},{0}\"", 4.0 * self.unit) } else { String::new() };
        let sw = width * self.unit;
        let tag = if pts.len() >= 3 { "polygon" } else { "polyline" };
        let pts = if pts.len() == 1 { format!("{0} {0}", coords[0]) } else { coords.join(" ") };
        let cap = if tag == "polyline" { " stroke-linecap=\"round\"" } else { "" };
        let _ = writeln!(self.body, "  <{tag} points=\"{pts}\" fill=\"{fill}\" stroke=\"{stroke}\" stroke-width=\"{sw}\"{dash}{cap}/>");
    }

    fn input(&mut self, pts: &[Point]) {
        self.shape(pts, if pts.len() >= 3 { INPUT_FILL } else { "none" }, "#3182bd", 1.0, false);
    }

    fn hull(&mut self, pts: &[Point], color: &str, width: f64) {
        self.shape(pts, "none", color, width, false);
    }

    fn task(&mut self, t: &EdgeTask) {
        self.shape(&[t.p1.clone(), t.p2.clone()], "none", QUEUED, 1.5, true);
    }

    fn arrow(&mut self, from: &Point, to: &Point) {
        let ((x1, y1), (x2, y2)) = (self.xy(from), self.xy(to));
        let sw = self.unit;
        let _ = writeln!(
            self.body,
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{RAY}\" stroke-width=\"{sw}\" marker-end=\"url(#arrow)\"/>"
        );
    }

    fn caption(&mut self, text: &str) {
        let (x, y) = (self.lo.0 + 2.0 * self.unit, self.lo.1 + 12.0 * self.unit);
        let size = 10.0 * self.unit;
        let _ = writeln!(self.body, "  <text x=\"{x}\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"{size}\">{text}</text>");
    }

    fn finish(&self) -> String {
        let (w, h) = (self.hi.0 - self.lo.0, self.hi.1 - self.lo.1);
        let height = (WIDTH * h / w).round();
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{height}\" viewBox=\"{} {} {w} {h}\">\n\
             <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\
             <path d=\"M0,0 L10,5 L0,10 z\" fill=\"{RAY}\"/></marker></defs>\n{}</svg>\n",
            self.lo.0, self.lo.1, self.body
        )
    }
}

/// Frames of a traced run: inputs, initial hulls, initial queue, one frame
/// per merge, and the final cover with every shot ray. The run must have
/// been made with tracing on.
pub fn trace_frames(shapes: &[Vec<Point>], run: &Run) -> Vec<String> {
    let all = || shapes.iter().flatten();
    let base = |caption: &str| {
        let mut c = Canvas::new(all());
        for s in shapes {
            c.input(s);
        }
        c.caption(caption);
        c
    };
    let mut frames = Vec::new();
    frames.push(base("input").finish());

    // Live hulls keyed by their smallest id.
    let mut live: BTreeMap<usize, (Vec<usize>, Vec<Point>)> = BTreeMap::new();
    let mut rays: Vec<(Point, Point)> = Vec::new();
    let mut merges = 0;
    for event in &run.trace {
        match event {
            TraceEvent::Init { hulls, queue } => {
                live = hulls.iter().enumerate().map(|(i, h)| (i, (vec![i], h.clone()))).collect();
                let mut c = base("hulls");
                for (_, h) in live.values() {
                    c.hull(h, HULL, 1.0);
                }
                frames.push(c.finish());
                let mut c = base(&format!("initial queue: {} edges", queue.len()));
                for (_, h) in live.values() {
                    c.hull(h, HULL, 1.0);
                }
                for t in queue {
                    c.task(t);
                }
                frames.push(c.finish());
            }
            TraceEvent::Shot { from, hit, .. } => rays.push((from.clone(), hit.clone())),
            TraceEvent::Merge { hull, ids, tasks, .. } => {
                merges += 1;
                live.retain(|_, (group, _)| !group.iter().any(|g| ids.binary_search(g).is_ok()));
                live.insert(ids[0], (ids.clone(), hull.clone()));
                let mut c = base(&format!("merge {merges}: {} polygons", ids.len()));
                for (group, h) in live.values() {
                    if group != ids {
                        c.hull(h, HULL, 1.0);
                    }
                }
                c.hull(hull, MERGED, 2.5);
                for (a, b) in &rays {
                    c.arrow(a, b);
                }
                for t in tasks {
                    c.task(t);
                }
                frames.push(c.finish());
            }
            TraceEvent::Cleanup { .. } => {}
        }
    }
    let mut c = base(&format!("cover: {} elements, {} rays", run.cover.len(), rays.len()));
    for e in &run.cover.elements {
        c.hull(&e.vertices, HULL, 2.0);
    }
    for (a, b) in &rays {
        c.arrow(a, b);
    }
    frames.push(c.finish());
    frames
}

/// A single picture of the inputs and their cover.
pub fn render_cover(shapes: &[Vec<Point>], cover: &Cover) -> String {
    let mut c = Canvas::new(shapes.iter().flatten().chain(cover.elements.iter().flat_map(|e| e.vertices.iter())));
    for s in shapes {
        c.input(s);
    }
    for e in &cover.elements {
        c.hull(&e.vertices, HULL, 2.0);
    }
    c.finish()
}

/// Writes `frame_000.svg`, `frame_001.svg`, ... into `dir`.
pub fn write_frames(dir: &Path, frames: &[String]) -> Result<Vec<PathBuf>, IoError> {
    std::fs::create_dir_all(dir).map_err(|e| IoError::Write(dir.to_path_buf(), e))?;
    frames
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let path = dir.join(format!("frame_{i:03}.svg"));
            std::fs::write(&path, f).map_err(|e| IoError::Write(path.clone(), e))?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexify::{convexify_with, Options};
    use crate::fixtures;

    fn traced(polys: &[crate::SimplePolygon]) -> (Vec<Vec<Point>>, Run) {
        let run = convexify_with(polys, Options { trace: true, ..Options::default() }).unwrap();
        (polys.iter().map(|p| p.vertices().to_vec()).collect(), run)
    }

    #[test]
    fn algorithm_figure_has_five_frames() {
        let (shapes, run) = traced(&fixtures::algorithm_figure());
        let frames = trace_frames(&shapes, &run);
        assert_eq!(frames.len(), 5);
        assert!(frames.iter().all(|f| f.starts_with("<?xml") && f.ends_with("</svg>\n")));
        assert!(frames[4].contains("marker-end"));
        assert!(frames[2].contains("stroke-dasharray"));
    }

    #[test]
    fn staircase_has_one_frame_per_merge() {
        let k = 7;
        let (shapes, run) = traced(&fixtures::staircase(k));
        assert_eq!(trace_frames(&shapes, &run).len(), 4 + (k - 1));
    }

    #[test]
    fn empty_cover_is_a_valid_canvas() {
        let svg = render_cover(&[], &Cover::default());
        assert!(svg.contains("viewBox"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }

    #[test]
    fn frames_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let paths = write_frames(&dir.path().join("out"), &vec!["<svg/>".to_string(); 3]).unwrap();
        assert_eq!(paths.len(), 3);
        assert!(paths[2].ends_with("frame_002.svg"));
        assert!(write_frames(Path::new("/proc/definitely/not/here"), &["x".into()]).is_err());
    }
}
