use super::*;
use crate::fixtures;
use crate::geom::ExactScalar;
use crate::oracle::{brute_convexify, canonical_equal, validate_cover};
use proptest::prelude::*;

fn p(x: i64, y: i64) -> Point {
    Point::int(x, y)
}

fn shapes(polys: &[SimplePolygon]) -> Vec<Vec<Point>> {
    polys.iter().map(|s| s.vertices().to_vec()).collect()
}

fn ring(coords: &[(i64, i64)]) -> SimplePolygon {
    SimplePolygon::new(coords.iter().map(|&(x, y)| p(x, y)).collect()).unwrap()
}

fn check_against_oracle(polys: &[SimplePolygon]) -> Run {
    let run = convexify_with(polys, Options { check_pseudo_disks: true, ..Options::default() }).unwrap();
    let sh = shapes(polys);
    assert!(validate_cover(&sh, &run.cover).accepted(), "{:?}", run.cover);
    assert!(canonical_equal(&run.cover, &brute_convexify(&sh, 0)));
    assert_eq!(run.stats.pseudo_disk_violations, 0);
    run
}

#[test]
fn convex_input_has_empty_queue() {
    let polys = vec![ring(&[(0, 0), (4, 0), (4, 4), (0, 4)])];
    let state = State::initialize(&polys, Options::default()).unwrap();
    assert!(state.queue.is_empty());
    let run = check_against_oracle(&polys);
    assert_eq!(run.stats.rays_shot, 0);
    assert_eq!(run.cover.elements[0].vertices, polys[0].vertices());
}

#[test]
fn collinear_ring_vertices_are_not_tasks() {
    let polys = vec![ring(&[(0, 0), (2, 0), (4, 0), (4, 4), (0, 4)])];
    let state = State::initialize(&polys, Options::default()).unwrap();
    assert!(state.queue.is_empty());
}

#[test]
fn l_shape_has_one_task() {
    let polys = fixtures::l_shape();
    let state = State::initialize(&polys, Options::default()).unwrap();
    assert_eq!(state.queue.len(), 1);
    assert_eq!(state.queue[0], EdgeTask { p1: p(2, 1), p2: p(1, 2), owner1: 0, owner2: 0 });
    let run = check_against_oracle(&polys);
    assert_eq!(run.stats.merges, 0);
    assert_eq!(run.cover.elements[0].vertices, vec![p(0, 0), p(2, 0), p(2, 1), p(1, 2), p(0, 2)]);
}

#[test]
fn algorithm_figure_counts() {
    let polys = fixtures::algorithm_figure();
    let state = State::initialize(&polys, Options::default()).unwrap();
    assert_eq!(state.scene.len(), 17);
    assert_eq!(state.queue.len(), 2);
    let run = check_against_oracle(&polys);
    assert_eq!(run.stats.merges, 1);
    assert_eq!(run.cover.len(), 2);
    assert_eq!(run.cover.elements[0].ids, vec![0, 1]);
    assert_eq!(run.cover.elements[0].vertices, vec![p(0, 0), p(10, 0), p(14, 5), p(10, 10), p(0, 10)]);
}

#[test]
fn far_triangles_unchanged() {
    let polys = fixtures::far_triangles();
    let run = check_against_oracle(&polys);
    assert_eq!(run.cover.len(), 2);
    assert_eq!(run.stats.rays_shot, 0);
}

#[test]
fn nested_hulls_fold_into_containers() {
    let run = check_against_oracle(&fixtures::c_with_square());
    assert_eq!(run.cover.len(), 1);
    assert_eq!(run.stats.nested, 1);
    assert_eq!(run.stats.merges, 0);

    let run = check_against_oracle(&fixtures::nested_cs());
    assert_eq!(run.cover.len(), 1);
    assert_eq!(run.cover.elements[0].ids, vec![0, 1, 2]);
}

#[test]
fn staircase_collapses() {
    let run = check_against_oracle(&fixtures::staircase(6));
    assert_eq!(run.cover.len(), 1);
    assert_eq!(run.stats.merges, 5);
}

#[test]
fn interlocking_u_gives_hexagon() {
    let run = check_against_oracle(&fixtures::interlocking_u());
    assert_eq!(run.cover.len(), 1);
    assert_eq!(run.cover.elements[0].vertices, vec![p(0, 0), p(20, 0), p(30, 10), p(30, 30), p(10, 30), p(0, 20)]);
}

#[test]
fn process_edge_outcomes() {
    let polys = fixtures::algorithm_figure();
    let mut state = State::initialize(&polys, Options::default()).unwrap();
    let tasks: Vec<EdgeTask> = state.queue.drain(..).collect();
    let outcomes: Vec<Processed> = tasks.iter().map(|t| state.process_edge(t).unwrap()).collect();
    let merged = outcomes.iter().filter(|o| matches!(o, Processed::Merged(_))).count();
    assert_eq!(merged, 1);
    assert!(outcomes.contains(&Processed::NoMerge));
}

#[test]
fn trace_and_ray_log() {
    let polys = fixtures::algorithm_figure();
    let run = convexify_with(&polys, Options { trace: true, record_rays: true, ..Options::default() }).unwrap();
    assert!(matches!(run.trace.first(), Some(TraceEvent::Init { .. })));
    assert!(matches!(run.trace.last(), Some(TraceEvent::Cleanup { .. })));
    assert_eq!(run.trace.iter().filter(|e| matches!(e, TraceEvent::Merge { .. })).count(), 1);
    assert_eq!(run.rays.len(), run.stats.rays_shot);
    let fresh = Scene::new(&polys, EngineKind::Naive);
    assert_eq!(crate::ray_engine::replay(fresh, &run.rays), Ok(()));
}

#[test]
fn overlapping_input_rejected() {
    let polys = vec![ring(&[(0, 0), (4, 0), (4, 4), (0, 4)]), ring(&[(2, 2), (6, 2), (6, 6), (2, 6)])];
    let err = convexify_with(&polys, Options { validate: true, ..Options::default() }).unwrap_err();
    assert_eq!(err, ConvexifyError::Overlap(0, 1));
}

#[test]
fn segments() {
    let seg = |a: (i64, i64), b: (i64, i64)| Segment::new(p(a.0, a.1), p(b.0, b.1)).unwrap();
    let cover = convexify_segments(&[seg((0, 0), (2, 2)), seg((0, 2), (2, 0))]).unwrap();
    assert_eq!(cover.len(), 1);
    assert_eq!(cover.elements[0].vertices, vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)]);

    let cover = convexify_segments(&[seg((0, 0), (1, 0)), seg((10, 0), (10, 5))]).unwrap();
    assert_eq!(cover.len(), 2);
    assert_eq!(cover.area, ExactScalar::from_integer(0.into()));

    // Two triangles from touching segments, whose hulls then overlap.
    let cover = convexify_segments(&[seg((0, 0), (4, 0)), seg((4, 0), (0, 4)), seg((2, 1), (6, 1)), seg((6, 1), (6, 6))]).unwrap();
    assert_eq!(cover.len(), 1);
    assert_eq!(convexify_segments(&[]), Err(ConvexifyError::Empty));
}

#[test]
fn engines_agree_on_fixtures() {
    for polys in [fixtures::algorithm_figure(), fixtures::staircase(10), fixtures::interlocking_u(), fixtures::nested_cs()] {
        let naive = convexify_with(&polys, Options { engine: EngineKind::Naive, ..Options::default() }).unwrap();
        let grid = convexify_with(&polys, Options { engine: EngineKind::Grid, ..Options::default() }).unwrap();
        assert_eq!(naive.cover, grid.cover);
        assert_eq!(naive.stats, grid.stats);
    }
}

/// Disjoint random polygons: jittered stars in separate cells, some of
/// them reaching into neighbors through notches.
fn scattered(cells: &[(i64, i64, u8)]) -> Vec<SimplePolygon> {
    let mut out = Vec::new();
    for (k, &(jx, jy, shape)) in cells.iter().enumerate() {
        let (cx, cy) = ((k as i64 % 4) * 20 + jx, (k as i64 / 4) * 20 + jy);
        let r = match shape % 3 {
            0 => ring(&[(cx, cy), (cx + 12, cy), (cx + 12, cy + 2), (cx + 2, cy + 2), (cx + 2, cy + 12), (cx, cy + 12)]),
            1 => ring(&[(cx, cy), (cx + 6, cy + 1), (cx + 3, cy + 4)]),
            _ => ring(&[(cx, cy), (cx + 8, cy), (cx + 8, cy + 8), (cx + 4, cy + 3), (cx, cy + 8)]),
        };
        out.push(r);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_layouts_match_oracle(cells in prop::collection::vec((0i64..6, 0i64..6, 0u8..3), 1..10)) {
        let polys = scattered(&cells);
        prop_assume!(find_overlap(&polys).is_none());
        check_against_oracle(&polys);
    }
}
