use std::collections::HashMap;

use num_bigint::BigUint;
use rigidquad::oracle::{brute_rooted, traces_exact};
use rigidquad::sampler::*;
use rigidquad::Error;

#[test]
fn smallest_class_is_the_square() {
    for seed in 0..20 {
        let r = sample_rigid(1, 2, seed).unwrap();
        assert!(r == brute_rooted(3)[0]);
        let r = sample_rigid_rooted(3, seed).unwrap();
        assert!(r == brute_rooted(3)[0]);
    }
}

#[test]
fn sampling_is_deterministic_per_seed() {
    let a = sample_rigid_rooted(14, 99).unwrap();
    let b = sample_rigid_rooted(14, 99).unwrap();
    assert!(a == b);
    let s = Sampler::new(10);
    let t1 = s.sample_trace(2, 10, &mut seeded_rng(5)).unwrap();
    let t2 = s.sample_trace(2, 10, &mut seeded_rng(5)).unwrap();
    assert_eq!(t1, t2);
}

#[test]
fn empty_classes_are_errors() {
    let s = Sampler::new(6);
    assert_eq!(s.sample_rigid_rooted(2, &mut seeded_rng(0)).unwrap_err(), Error::EmptyClass);
    assert_eq!(s.sample_rigid(1, 1, &mut seeded_rng(0)).unwrap_err(), Error::EmptyClass);
    assert_eq!(s.step_distribution(&[], 3).unwrap_err(), Error::EmptyClass);
    assert_eq!(s.step_distribution(&[1], 7).unwrap_err(), Error::EmptyClass);
    // base 2 needs at least two steps
    assert!(s.sample_trace(2, 1, &mut seeded_rng(0)).is_err());
}

#[test]
fn counts_match_enumeration() {
    let s = Sampler::new(6);
    for p in 1..=3 {
        for m in 1..=6 {
            assert_eq!(s.count(p, m), BigUint::from(traces_exact(p, m).len()), "p={p} m={m}");
        }
    }
}

#[test]
fn step_distribution_matches_first_steps() {
    let s = Sampler::new(6);
    for p in 1..=3 {
        for m in 2..=6 {
            let ts = traces_exact(p, m);
            let mut by_class: HashMap<StepChoice, usize> = HashMap::new();
            for t in &ts {
                *by_class.entry(StepChoice::of(&t.steps[0])).or_default() += 1;
            }
            if ts.is_empty() {
                assert_eq!(s.step_distribution(&[p], m).unwrap_err(), Error::EmptyClass);
                continue;
            }
            let d = s.step_distribution(&[p], m).unwrap();
            assert_eq!(d.total, BigUint::from(ts.len()));
            assert_eq!(d.entries.len(), by_class.len());
            for (c, w) in &d.entries {
                assert_eq!(*w, BigUint::from(by_class[c]), "p={p} m={m} {c:?}");
            }
        }
    }
}

#[test]
fn rooted_sampler_is_uniform() {
    // 33 rooted objects at n = 5
    let all = brute_rooted(5);
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, r)| (r.canonical_code(), i)).collect();
    let s = Sampler::new(5);
    let mut rng = seeded_rng(2024);
    let mut obs = vec![0u64; all.len()];
    for _ in 0..33 * 1000 {
        let r = s.sample_rigid_rooted(5, &mut rng).unwrap();
        obs[index[&r.canonical_code()]] += 1;
    }
    let (_, pval) = chi_square_uniform(&obs);
    assert!(pval > 1e-3, "p = {pval}");
}

#[test]
fn first_step_marginals_within_four_sigma() {
    let s = Sampler::new(9);
    let d = s.step_distribution(&[2], 9).unwrap();
    let draws = 10_000;
    let mut rng = seeded_rng(7);
    let mut seen: HashMap<StepChoice, usize> = HashMap::new();
    for _ in 0..draws {
        let t = s.sample_trace(2, 9, &mut rng).unwrap();
        *seen.entry(StepChoice::of(&t.steps[0])).or_default() += 1;
    }
    for (c, p) in d.ratios() {
        let k = *seen.get(&c).unwrap_or(&0) as f64;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        assert!((k - draws as f64 * p).abs() <= 4.0 * sigma.max(1.0), "{c:?}");
    }
}

#[test]
fn chi_square_reference_values() {
    let (stat, p) = chi_square_uniform(&[10, 10, 10, 10]);
    assert_eq!(stat, 0.0);
    assert!((p - 1.0).abs() < 1e-12);
    // stat 2.5 on one degree of freedom: p = erfc(sqrt(1.25))
    let (stat, p) = chi_square_uniform(&[15, 25]);
    assert!((stat - 2.5).abs() < 1e-12);
    assert!((p - 0.113_846_298).abs() < 1e-6);
}

#[test]
fn size_four_objects_are_equally_likely() {
    let all = brute_rooted(4);
    assert_eq!(all.len(), 5);
    let s = Sampler::new(4);
    let mut rng = seeded_rng(41);
    let mut obs = [0u64; 5];
    let draws = 10_000;
    for _ in 0..draws {
        let r = s.sample_rigid_rooted(4, &mut rng).unwrap();
        obs[all.iter().position(|x| *x == r).unwrap()] += 1;
    }
    let sigma = (draws as f64 * 0.2 * 0.8).sqrt();
    for k in obs {
        assert!((k as f64 - draws as f64 / 5.0).abs() < 4.0 * sigma, "{obs:?}");
    }
}
