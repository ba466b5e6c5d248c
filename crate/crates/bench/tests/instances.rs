use convexify::hull_chain::boundary_contacts;
use convexify::oracle::convex_regions_meet;
use convexify_bench::{clustered, hull_pair};

#[test]
fn clustered_size_is_close_to_request() {
    let polys = clustered(4000, 0);
    let n: usize = polys.iter().map(|p| p.len()).sum();
    assert_eq!(n, 4000);
}

#[test]
fn hull_pairs_are_overlapping_pseudo_disks() {
    for k in [16, 64, 256] {
        let (a, b) = hull_pair(k);
        assert!(a.len() > k / 2 && b.len() > k / 2);
        assert!(convex_regions_meet(&a, &b));
        assert_eq!(boundary_contacts(&a, &b), 2);
    }
}
