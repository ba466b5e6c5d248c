//! Small named instances used by tests, the CLI and benchmarks.

use crate::geom::{Point, SimplePolygon};

fn ring(coords: &[(i64, i64)]) -> SimplePolygon {
    SimplePolygon::new(coords.iter().map(|&(x, y)| Point::int(x, y)).collect()).expect("fixture ring is simple and CCW")
}

/// `k` interleaved L-shapes; each one's hull reaches into the next, so the
/// whole staircase collapses into a single hull.
pub fn staircase(k: usize) -> Vec<SimplePolygon> {
    (0..k as i64)
        .map(|i| {
            let (x, y) = (4 * i, 2 * i);
            ring(&[(x, y), (x + 6, y), (x + 6, y + 1), (x + 1, y + 1), (x + 1, y + 10), (x, y + 10)])
        })
        .collect()
}

/// A C-shape, a triangle poking out of its pocket and a separate L-shape:
/// 17 edges, two initial tasks, exactly one merge.
pub fn algorithm_figure() -> Vec<SimplePolygon> {
    vec![
        ring(&[(0, 0), (10, 0), (10, 2), (2, 2), (2, 8), (10, 8), (10, 10), (0, 10)]),
        ring(&[(6, 4), (14, 5), (6, 6)]),
        ring(&[(20, 0), (26, 0), (26, 1), (21, 1), (21, 6), (20, 6)]),
    ]
}

/// Two disjoint U-shapes whose hulls are the squares (0,0)-(20,20) and
/// (10,10)-(30,30); the cover is their hexagonal union hull.
pub fn interlocking_u() -> Vec<SimplePolygon> {
    vec![
        ring(&[(0, 0), (20, 0), (20, 20), (19, 20), (19, 1), (1, 1), (1, 20), (0, 20)]),
        ring(&[(10, 10), (11, 10), (11, 29), (29, 29), (29, 10), (30, 10), (30, 30), (10, 30)]),
    ]
}

/// A C-shape with a square inside its hull but away from the opening.
pub fn c_with_square() -> Vec<SimplePolygon> {
    vec![ring(&[(0, 0), (10, 0), (10, 2), (2, 2), (2, 8), (10, 8), (10, 10), (0, 10)]), ring(&[(4, 4), (6, 4), (6, 6), (4, 6)])]
}

/// A C-shape holding a smaller C-shape holding a square.
pub fn nested_cs() -> Vec<SimplePolygon> {
    vec![
        ring(&[(0, 0), (100, 0), (100, 10), (10, 10), (10, 90), (100, 90), (100, 100), (0, 100)]),
        ring(&[(20, 20), (80, 20), (80, 25), (25, 25), (25, 75), (80, 75), (80, 80), (20, 80)]),
        ring(&[(40, 40), (50, 40), (50, 50), (40, 50)]),
    ]
}

/// A single L-shape (one notch).
pub fn l_shape() -> Vec<SimplePolygon> {
    vec![ring(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])]
}

/// Two triangles far apart.
pub fn far_triangles() -> Vec<SimplePolygon> {
    vec![ring(&[(0, 0), (4, 0), (2, 3)]), ring(&[(100, 100), (104, 100), (102, 103)])]
}
