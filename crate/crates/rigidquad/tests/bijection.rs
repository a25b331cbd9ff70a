use std::collections::HashSet;

use rigidquad::bijection::*;
use rigidquad::colorful::validate_sphere;
use rigidquad::oracle::{brute_colorful, brute_rooted, traces_exact};
use rigidquad::{assemble_colorful, assemble_rigid, walk_of_signature, ColorfulQuad, Kind};

fn code(q: &ColorfulQuad) -> (Vec<usize>, Vec<i64>) {
    q.canonical_code()
}

#[test]
fn psi_of_square() {
    let sq = &brute_rooted(3)[0];
    let q = psi(sq).unwrap();
    assert_eq!(q.kind(), Kind::Sphere);
    assert_eq!(q.n(), 3);
    assert_eq!(q.map().edge_count(), 2);
    assert_eq!(q.map().face_count(), 1);
    q.check_root_face().unwrap();
    assert!(psi_inverse(&q).unwrap() == *sq);
}

#[test]
fn psi_is_a_bijection_onto_brute_colorful() {
    for n in 3..=5 {
        let imgs: Vec<ColorfulQuad> = brute_rooted(n).iter().map(|r| psi(r).unwrap()).collect();
        let codes: HashSet<_> = imgs.iter().map(code).collect();
        let brute: HashSet<_> = brute_colorful(n).iter().map(code).collect();
        assert_eq!(codes, brute, "n = {n}");
        assert_eq!(codes.len(), imgs.len());
    }
}

#[test]
fn psi_round_trip_and_vertex_labels() {
    for n in 3..=7 {
        let all = brute_rooted(n);
        let mut codes = HashSet::new();
        for r in &all {
            let q = psi(r).unwrap();
            validate_sphere(q.map(), q.labels().to_vec()).unwrap();
            assert!(psi_inverse(&q).unwrap() == *r);
            assert!(codes.insert(code(&q)));
        }
    }
}

#[test]
fn mirror_equivariance() {
    for n in 3..=7 {
        for r in brute_rooted(n) {
            let lhs = psi(&r.mirror()).unwrap();
            let rhs = psi(&r).unwrap().relabel().unwrap();
            assert!(lhs == rhs);
        }
    }
}

#[test]
fn psi_p_round_trip() {
    for p in 1..=3 {
        for j in 1..=6 {
            let mut codes = HashSet::new();
            for t in traces_exact(p, j) {
                let r = assemble_rigid(&t).unwrap();
                let q = psi_p(&r).unwrap();
                assert_eq!(q.kind(), Kind::Disk);
                assert!(q == assemble_colorful(&t).unwrap());
                assert!(psi_p_inverse(&q).unwrap() == r);
                assert!(codes.insert(code(&q)));
            }
        }
    }
}

#[test]
fn expand_and_zip_inverses() {
    for n in 3..=6 {
        for r in brute_rooted(n) {
            let e = expand(&r);
            assert!(unexpand(&e).unwrap() == r);
            let d = psi_p(&e).unwrap();
            let s = zip(&d).unwrap();
            assert!(unzip(&s).unwrap() == d);
        }
    }
}

#[test]
fn psi_b_round_trip_and_walk() {
    for n in 3..=7 {
        let mut seen = HashSet::new();
        for r in brute_rooted(n) {
            let sig = r.base_signature();
            let q = psi(&r).unwrap();
            assert_eq!(ascent_path(&q).unwrap().signature, sig);
            let u = psi_b(&r).unwrap();
            assert_eq!(u.boundary_walk(), walk_of_signature(&sig));
            assert!(psi_b_inverse(&u, &sig).unwrap() == r);
            assert!(seen.insert((code(&u), sig)));
        }
    }
}

#[test]
fn signature_232_class() {
    // signatures are compositions of sums at most n - 2, so (2,3,2) first occurs at n = 9
    let sig = [2, 3, 2];
    let class: Vec<_> = brute_rooted(9).into_iter().filter(|r| r.base_signature() == sig).collect();
    assert!(!class.is_empty());
    let mut seen = HashSet::new();
    for r in &class {
        let u = psi_b(r).unwrap();
        assert_eq!(u.boundary_walk(), walk_of_signature(&sig));
        assert!(psi_b_inverse(&u, &sig).unwrap() == *r);
        assert!(seen.insert(code(&u)));
    }
}

#[test]
fn signatures_are_compositions() {
    for n in 3..=8 {
        let sigs: HashSet<Vec<usize>> = brute_rooted(n).iter().map(|r| r.base_signature()).collect();
        // every composition of every m <= n - 2 occurs
        assert_eq!(sigs.len(), (1 << (n - 2)) - 1);
        assert!(sigs.iter().all(|s| s.iter().sum::<usize>() <= n - 2));
    }
}

#[test]
fn walk_of_signature_shape() {
    assert_eq!(walk_of_signature(&[1]), vec![0, 1]);
    assert_eq!(walk_of_signature(&[2, 3, 2]), vec![0, 1, 0, 1, 2, 3, 2, 3, 2, 1, 2, 1, 2, 1]);
}

#[test]
fn psi_b_inverse_rejects_bad_input() {
    let r = &brute_rooted(5)[3];
    let u = psi_b(r).unwrap();
    assert!(psi_b_inverse(&u, &[]).is_err());
    assert!(psi_b_inverse(&u, &[1, 0]).is_err());
    let q = psi(r).unwrap();
    assert!(psi_b_inverse(&q, &r.base_signature()).is_err());
}

#[test]
fn square_small_cases() {
    let sq = &brute_rooted(3)[0];
    let asc = ascent_path(&psi(sq).unwrap()).unwrap();
    assert_eq!(asc.signature, vec![1]);
    assert_eq!(asc.terminal_label, 2);
    assert_eq!(classify_bc(sq), BcClass::C(1, 1));
    let e = expand(sq);
    assert!(rigidquad::explore_rigid(&e).unwrap().steps[0].is_l());
    assert!(zip(&psi_p(&e).unwrap()).unwrap() == psi(sq).unwrap());
}

#[test]
fn bc_classes_match_series() {
    // x marks the right side length q, y the base length p, t^(n-2) the size
    let (nmax, m) = (8, 3);
    let b = rigidquad::series::series_b(nmax - 2, m, m);
    let c = rigidquad::series::series_c(nmax - 2, m, m);
    for n in 3..=nmax {
        let mut nb = [[0i64; 4]; 4];
        let mut nc = [[0i64; 4]; 4];
        for r in brute_rooted(n) {
            match classify_bc(&r) {
                BcClass::B(p, q) if p <= m && q <= m => nb[p][q] += 1,
                BcClass::C(p, q) if p <= m && q <= m => {
                    nb[p][q] += 1;
                    nc[p][q] += 1;
                }
                _ => {}
            }
        }
        for p in 1..=m {
            for q in 1..=m {
                let int = |s: &rigidquad::series::TruncSeries| i64::try_from(s.coeff(&[n - 2, q, p]).to_integer()).unwrap();
                assert_eq!(nb[p][q], int(&b), "B n={n} p={p} q={q}");
                assert_eq!(nc[p][q], int(&c), "C n={n} p={p} q={q}");
            }
        }
    }
}
