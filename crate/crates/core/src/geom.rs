//! Exact planar primitives over arbitrary-precision rationals.
//!
//! Input coordinates are integers; every derived point (ray hits, chain
//! approximation apexes) is the intersection of two lines through such points,
//! so all coordinates are exact rationals and every predicate is exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar. `num_rational` keeps it normalized (positive
/// denominator, reduced) after every operation.
pub type ExactScalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("segment endpoints coincide at {0}")]
    DegenerateSegment(Box<Point>),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("consecutive vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("polygon boundary self-intersects (edges {0} and {1})")]
    SelfIntersecting(usize, usize),
    #[error("polygon is not counterclockwise")]
    Clockwise,
}

/// Result of an orientation test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    fn from_sign(ord: Ordering) -> Orientation {
        match ord {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

/// A point with exact rational coordinates. Ordered lexicographically (x, then y).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: ExactScalar,
    pub y: ExactScalar,
}

impl Point {
    pub fn new(x: ExactScalar, y: ExactScalar) -> Point {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point { x: BigRational::from_integer(BigInt::from(x)), y: BigRational::from_integer(BigInt::from(y)) }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Lossy conversion for rendering and grid bucketing only.
    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_to_f64(&self.x), ratio_to_f64(&self.y))
    }

    pub fn sub(&self, other: &Point) -> (ExactScalar, ExactScalar) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &ExactScalar) -> Point {
        Point { x: &self.x + t * (&other.x - &self.x), y: &self.y + t * (&other.y - &self.y) }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = BigRational::from_integer(BigInt::from(2));
        Point { x: (&self.x + &other.x) / &two, y: (&self.y + &other.y) / &two }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn ratio_to_f64(r: &ExactScalar) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for huge numerators/denominators.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn small_int(r: &ExactScalar) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64().filter(|v| v.unsigned_abs() < (1 << 62))
    } else {
        None
    }
}

/// Exact sign of `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    // Integer fast path; i128 cannot overflow for |coords| < 2^62.
    if let (Some(px), Some(py), Some(qx), Some(qy), Some(rx), Some(ry)) =
        (small_int(&p.x), small_int(&p.y), small_int(&q.x), small_int(&q.y), small_int(&r.x), small_int(&r.y))
    {
        let (px, py, qx, qy, rx, ry) = (px as i128, py as i128, qx as i128, qy as i128, rx as i128, ry as i128);
        let cross = (qx - px) * (ry - py) - (qy - py) * (rx - px);
        return Orientation::from_sign(cross.cmp(&0));
    }
    Orientation::from_sign(cross(p, q, r).cmp(&BigRational::zero()))
}

/// `(q - p) x (r - p)` as an exact scalar.
pub fn cross(p: &Point, q: &Point, r: &Point) -> ExactScalar {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    ax * by - ay * bx
}

/// `(b - a) . (d - c)`.
pub fn dot(a: &Point, b: &Point, c: &Point, d: &Point) -> ExactScalar {
    let (ux, uy) = b.sub(a);
    let (vx, vy) = d.sub(c);
    ux * vx + uy * vy
}

/// Closed line segment with distinct endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Segment, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment(Box::new(a)));
        }
        Ok(Segment { a, b })
    }

    /// The same segment with endpoints in lexicographic order.
    pub fn normalized(&self) -> Segment {
        if self.a <= self.b {
            self.clone()
        } else {
            Segment { a: self.b.clone(), b: self.a.clone() }
        }
    }

    /// Whether `p` lies on the closed segment.
    pub fn contains(&self, p: &Point) -> bool {
        on_segment(&self.a, &self.b, p)
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}-{:?}", self.a, self.b)
    }
}

/// `p` on the closed segment `ab` (which may be a single point).
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orientation(a, b, p) == Orientation::Collinear && in_box(a, b, p)
}

fn in_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    *xlo <= p.x && p.x <= *xhi && *ylo <= p.y && p.y <= *yhi
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentIntersection {
    Empty,
    At(Point),
    Overlap(Segment),
}

/// Exact closed-segment intersection. Degenerate segments (a == b) are
/// accepted and treated as points.
pub fn segment_intersect(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    intersect_closed(&s1.a, &s1.b, &s2.a, &s2.b)
}

pub(crate) fn intersect_closed(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> SegmentIntersection {
    let o1 = orientation(p1, p2, q1);
    let o2 = orientation(p1, p2, q2);
    let o3 = orientation(q1, q2, p1);
    let o4 = orientation(q1, q2, p2);

    let all_collinear =
        o1 == Orientation::Collinear && o2 == Orientation::Collinear && o3 == Orientation::Collinear && o4 == Orientation::Collinear;
    if all_collinear {
        // Project onto a common order: lexicographic order is monotone along a line.
        let (a1, b1) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let (a2, b2) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
        // Points (a == b) that are not on the other segment's line were
        // already caught by the orientation tests only when the other is
        // proper; handle point-vs-point explicitly.
        if p1 == p2 && q1 == q2 {
            return if p1 == q1 { SegmentIntersection::At(p1.clone()) } else { SegmentIntersection::Empty };
        }
        if p1 == p2 {
            return if on_segment(q1, q2, p1) { SegmentIntersection::At(p1.clone()) } else { SegmentIntersection::Empty };
        }
        if q1 == q2 {
            return if on_segment(p1, p2, q1) { SegmentIntersection::At(q1.clone()) } else { SegmentIntersection::Empty };
        }
        let lo = if a1 >= a2 { a1 } else { a2 };
        let hi = if b1 <= b2 { b1 } else { b2 };
        return match lo.cmp(hi) {
            Ordering::Less => SegmentIntersection::Overlap(Segment { a: lo.clone(), b: hi.clone() }),
            Ordering::Equal => SegmentIntersection::At(lo.clone()),
            Ordering::Greater => SegmentIntersection::Empty,
        };
    }

    if o1 != o2 && o3 != o4 {
        // Proper crossing or a touching endpoint.
        if o1 == Orientation::Collinear {
            return SegmentIntersection::At(q1.clone());
        }
        if o2 == Orientation::Collinear {
            return SegmentIntersection::At(q2.clone());
        }
        if o3 == Orientation::Collinear {
            return SegmentIntersection::At(p1.clone());
        }
        if o4 == Orientation::Collinear {
            return SegmentIntersection::At(p2.clone());
        }
        let point = line_intersection(p1, p2, q1, q2).expect("crossing segments are not parallel");
        return SegmentIntersection::At(point);
    }
    // Remaining collinear-touch cases where one endpoint sits on the other segment.
    if o1 == Orientation::Collinear && in_box(p1, p2, q1) {
        return SegmentIntersection::At(q1.clone());
    }
    if o2 == Orientation::Collinear && in_box(p1, p2, q2) {
        return SegmentIntersection::At(q2.clone());
    }
    if o3 == Orientation::Collinear && in_box(q1, q2, p1) {
        return SegmentIntersection::At(p1.clone());
    }
    if o4 == Orientation::Collinear && in_box(q1, q2, p2) {
        return SegmentIntersection::At(p2.clone());
    }
    SegmentIntersection::Empty
}

/// Whether two closed segments share at least one point.
pub fn segments_touch(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> bool {
    !matches!(intersect_closed(p1, p2, q1, q2), SegmentIntersection::Empty)
}

/// Intersection of the lines `p1p2` and `q1q2`; `None` when parallel.
pub fn line_intersection(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Option<Point> {
    let (dx, dy) = p2.sub(p1);
    let (ex, ey) = q2.sub(q1);
    let denom = &dx * &ey - &dy * &ex;
    if denom.is_zero() {
        return None;
    }
    let (fx, fy) = q1.sub(p1);
    let t = (fx * &ey - fy * &ex) / denom;
    Some(Point { x: &p1.x + &t * dx, y: &p1.y + t * dy })
}

/// Parameter `t` with `p = from + t (to - from)` for a point on the line.
pub fn line_param(from: &Point, to: &Point, p: &Point) -> ExactScalar {
    let (dx, dy) = to.sub(from);
    if dx.abs() >= dy.abs() {
        (&p.x - &from.x) / dx
    } else {
        (&p.y - &from.y) / dy
    }
}

/// Counterclockwise, strictly convex hull (collinear boundary points dropped).
/// One or two distinct input points yield a degenerate hull of that size.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && orientation(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Orientation::CounterClockwise {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orientation(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Orientation::CounterClockwise {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 1 {
        // All points collinear: the two chains collapse onto the extremes.
        lower.push(pts[pts.len() - 1].clone());
    }
    lower
}

/// Signed shoelace area; non-negative for counterclockwise input and zero for
/// degenerate hulls.
pub fn polygon_area(vertices: &[Point]) -> ExactScalar {
    if vertices.len() < 3 {
        return BigRational::zero();
    }
    let mut twice = BigRational::zero();
    for i in 0..vertices.len() {
        let p = &vertices[i];
        let q = &vertices[(i + 1) % vertices.len()];
        twice += &p.x * &q.y - &q.x * &p.y;
    }
    twice / BigRational::from_integer(BigInt::from(2))
}

/// Rotate a cyclic vertex list so that it starts at its lexicographic minimum.
pub fn canonical_rotation(vertices: &[Point]) -> Vec<Point> {
    let Some(start) = (0..vertices.len()).min_by(|&i, &j| vertices[i].cmp(&vertices[j])) else {
        return Vec::new();
    };
    vertices[start..].iter().chain(vertices[..start].iter()).cloned().collect()
}

/// A simple polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

impl SimplePolygon {
    /// Validates the ring. The self-intersection check is quadratic.
    pub fn new(vertices: Vec<Point>) -> Result<SimplePolygon, GeomError> {
        check_ring(&vertices)?;
        if polygon_area(&vertices) <= BigRational::zero() {
            return Err(GeomError::Clockwise);
        }
        Ok(SimplePolygon { vertices })
    }

    /// Skips validation; for rings simple by construction.
    pub fn new_unchecked(vertices: Vec<Point>) -> SimplePolygon {
        SimplePolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Closed point-in-polygon test by ray crossing parity.
    pub fn contains(&self, q: &Point) -> bool {
        point_in_ring(&self.vertices, q)
    }

    pub fn bbox(&self) -> (Point, Point) {
        bbox(&self.vertices)
    }
}

pub fn bbox(points: &[Point]) -> (Point, Point) {
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in &points[1..] {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    (lo, hi)
}

/// Structural ring checks shared by polygon validation paths: size, repeated
/// vertices and non-adjacent edge contacts.
pub fn check_ring(vertices: &[Point]) -> Result<(), GeomError> {
    let n = vertices.len();
    if n < 3 {
        return Err(GeomError::TooFewVertices(n));
    }
    for i in 0..n {
        if vertices[i] == vertices[(i + 1) % n] {
            return Err(GeomError::RepeatedVertex(i, (i + 1) % n));
        }
    }
    for i in 0..n {
        let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (&vertices[j], &vertices[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            match intersect_closed(a, b, c, d) {
                SegmentIntersection::Empty => {}
                SegmentIntersection::At(p) if adjacent => {
                    // Adjacent edges may only share their common vertex.
                    let shared = if j == i + 1 { b } else { a };
                    if p != *shared {
                        return Err(GeomError::SelfIntersecting(i, j));
                    }
                }
                _ => return Err(GeomError::SelfIntersecting(i, j)),
            }
        }
    }
    Ok(())
}

/// Closed point-in-ring test (boundary counts as inside).
pub fn point_in_ring(ring: &[Point], q: &Point) -> bool {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        if on_segment(a, b, q) {
            return true;
        }
        // Half-open rule on y avoids double counting vertices.
        if (a.y > q.y) != (b.y > q.y) {
            let o = orientation(a, b, q);
            let upward = b.y > a.y;
            if (upward && o == Orientation::CounterClockwise) || (!upward && o == Orientation::Clockwise) {
                inside = !inside;
            }
        }
    }
    inside
}

/// Whether two simple rings (closed regions) share any point.
pub fn rings_intersect(r1: &[Point], r2: &[Point]) -> bool {
    let n1 = r1.len();
    let n2 = r2.len();
    for i in 0..n1 {
        for j in 0..n2 {
            if segments_touch(&r1[i], &r1[(i + 1) % n1], &r2[j], &r2[(j + 1) % n2]) {
                return true;
            }
        }
    }
    point_in_ring(r2, &r1[0]) || point_in_ring(r1, &r2[0])
}

/// First pair of polygons (by index) whose closed regions share a point.
/// Pairs are pruned by sweeping bounding boxes along x.
pub fn find_overlap(polygons: &[SimplePolygon]) -> Option<(usize, usize)> {
    let boxes: Vec<(Point, Point)> = polygons.iter().map(|p| p.bbox()).collect();
    let mut order: Vec<usize> = (0..polygons.len()).collect();
    order.sort_by(|&i, &j| boxes[i].0.x.cmp(&boxes[j].0.x));
    let mut found: Option<(usize, usize)> = None;
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if boxes[j].0.x > boxes[i].1.x {
                break;
            }
            let y_overlap = boxes[i].0.y <= boxes[j].1.y && boxes[j].0.y <= boxes[i].1.y;
            if y_overlap && rings_intersect(polygons[i].vertices(), polygons[j].vertices()) {
                let pair = (i.min(j), i.max(j));
                if found.is_none_or(|f| pair < f) {
                    found = Some(pair);
                }
            }
        }
    }
    found
}
