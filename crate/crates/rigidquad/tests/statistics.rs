use proptest::prelude::*;
use rigidquad::bijection::psi;
use rigidquad::oracle::brute_rooted;
use rigidquad::sampler::{seeded_rng, Sampler};
use rigidquad::statistics::*;
use rigidquad::Corner;

fn fish_formula(n: u64) -> u64 {
    // 3 * 2^(n-1) * (2n)! / (n! (n+2)!)
    let f = |k: u64| (1..=k).product::<u64>();
    3 * (1 << (n - 1)) * f(2 * n) / (f(n) * f(n + 2))
}

#[test]
fn dictionary_holds_exhaustively() {
    for n in 3..=7 {
        for r in brute_rooted(n) {
            let rep = dictionary_report(&r).unwrap();
            rep.check().unwrap();
            assert_eq!(rep.vertices, n);
            assert_eq!(rep.concave_corners, r.count(Corner::Concave));
        }
    }
}

#[test]
fn square_statistics() {
    let r = &brute_rooted(3)[0];
    let q = psi(r).unwrap();
    assert_eq!(rows_and_columns(r), (1, 1));
    let lines = level_lines(&q);
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.nesting_depth == 0));
    let tau: Vec<i64> = r.turning_numbers().iter().map(|x| x.1).collect();
    assert_eq!(tau, vec![0, 1, 2]);
    assert!(is_fighting_fish(r));
    let cls = classify_sides(r).unwrap();
    assert_eq!(cls.sides.len(), 4);
}

#[test]
fn every_side_gets_one_tag() {
    for r in brute_rooted(6) {
        let cls = classify_sides(&r).unwrap();
        assert_eq!(cls.sides.len(), r.sides().len());
        let non_root_convex = r.count(Corner::Convex) - 1;
        assert_eq!(cls.corners.len(), non_root_convex);
        for &(_, tag, deg) in &cls.corners {
            assert_eq!(tag == Tangency::NonTangential, deg == 0);
        }
    }
}

#[test]
fn fighting_fish_counts() {
    for n in 1..=4u64 {
        let count = brute_rooted(n as usize + 2).iter().filter(|r| is_fighting_fish(r)).count() as u64;
        assert_eq!(count, fish_formula(n), "n = {n}");
    }
    assert_eq!((1..=4).map(fish_formula).collect::<Vec<_>>(), vec![1, 3, 12, 56]);
}

#[test]
fn extrema_partition_vertices() {
    for r in brute_rooted(6) {
        let q = psi(&r).unwrap();
        let ext = local_extrema(&q);
        assert_eq!(ext.len(), q.map().vertex_count());
        // the label-0 root endpoint is a minimum
        assert!(ext.iter().any(|e| matches!(e, Extremum::Min(_))));
        assert!(ext.iter().any(|e| matches!(e, Extremum::Max(_))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn dictionary_holds_on_samples(seed in any::<u64>(), n in 8usize..=12) {
        let s = Sampler::new(12);
        let r = s.sample_rigid_rooted(n, &mut seeded_rng(seed)).unwrap();
        prop_assert_eq!(r.n(), n);
        let rep = dictionary_report(&r).unwrap();
        prop_assert!(rep.check().is_ok(), "{:?}", rep);
    }
}
