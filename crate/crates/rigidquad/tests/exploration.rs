use proptest::prelude::*;
use rigidquad::exploration::{detect_step_colorful, detect_step_rigid};
use rigidquad::oracle::{brute_rigid, traces_exact, words};
use rigidquad::sampler::{seeded_rng, Sampler};
use rigidquad::{assemble_colorful, assemble_rigid, explore_rigid, peel, Error, Letter, Step, Trace};

#[test]
fn trace_text_round_trip() {
    let t: Trace = "p=2; R(ud) G(0,0) G(1,1) G(0,0) G(0,0)".parse().unwrap();
    assert_eq!(t.to_string(), "p=2; R(ud) G(0,0) G(1,1) G(0,0) G(0,0)");
    assert!(t.check().is_ok());
    assert!("p=1 G(0,0)".parse::<Trace>().is_err());
    assert!("p=1; X(0)".parse::<Trace>().is_err());
    assert!("p=1; R(ux)".parse::<Trace>().is_err());
}

#[test]
fn trace_check_rejects_bad_traces() {
    let t = Trace { p: 1, steps: vec![Step::G { left: 1, right: 0 }] };
    assert_eq!(t.check(), Err(Error::FrontierMismatch(0)));
    let t = Trace { p: 1, steps: vec![Step::R(vec![Letter::Up])] };
    assert_eq!(t.check(), Err(Error::IncompleteTrace));
    let t = Trace { p: 1, steps: vec![Step::G { left: 0, right: 0 }, Step::G { left: 0, right: 0 }] };
    assert_eq!(t.check(), Err(Error::FrontierMismatch(1)));
    assert!(assemble_rigid(&t).is_err());
}

#[test]
fn word_counts_are_binomial() {
    for k in 0..5 {
        for l in 0..5 {
            let w = words(k, l);
            let expected = rigidquad::series::binom((k + l) as i64, l as i64);
            assert_eq!(num_bigint::BigInt::from(w.len()), expected);
        }
    }
}

#[test]
fn square_trace() {
    let t: Trace = "p=1; G(0,0)".parse().unwrap();
    let r = assemble_rigid(&t).unwrap();
    assert_eq!(r.cells().len(), 1);
    assert_eq!(explore_rigid(&r).unwrap(), t);
    assert_eq!(brute_rigid(1, 1), vec![t]);
}

#[test]
fn exploration_inverts_assembly_exhaustively() {
    for p in 1..=3 {
        for j in 1..=6 {
            for t in traces_exact(p, j) {
                let r = assemble_rigid(&t).unwrap();
                assert_eq!(explore_rigid(&r).unwrap(), t);
                assert_eq!(detect_step_rigid(&r).unwrap(), t.steps[0]);
                // every vertex has a class and the corner balance holds
                assert_eq!(r.count(rigidquad::Corner::Convex) - r.count(rigidquad::Corner::Concave), 4);
            }
        }
    }
}

#[test]
fn peeling_inverts_colorful_assembly_exhaustively() {
    for p in 1..=3 {
        for j in 1..=6 {
            for t in traces_exact(p, j) {
                let q = assemble_colorful(&t).unwrap();
                assert_eq!(peel(&q).unwrap(), t);
                assert_eq!(detect_step_colorful(&q).unwrap(), t.steps[0]);
                assert_eq!(q.boundary_labels().len(), 2 * p);
            }
        }
    }
}

#[test]
fn distinct_traces_give_distinct_objects() {
    for p in 1..=2 {
        let ts = brute_rigid(p, 5);
        let mut codes: Vec<Vec<usize>> = ts.iter().map(|t| assemble_rigid(t).unwrap().canonical_code()).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), ts.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_large_traces_round_trip(seed in any::<u64>(), p in 1usize..=3, m in 6usize..=12) {
        let s = Sampler::new(12);
        let t = s.sample_trace(p, m, &mut seeded_rng(seed)).unwrap();
        prop_assert!(t.check().is_ok());
        let r = assemble_rigid(&t).unwrap();
        prop_assert_eq!(explore_rigid(&r).unwrap(), t.clone());
        let q = assemble_colorful(&t).unwrap();
        prop_assert_eq!(peel(&q).unwrap(), t);
    }
}
