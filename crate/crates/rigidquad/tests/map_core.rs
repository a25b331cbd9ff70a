use proptest::prelude::*;
use rigidquad::oracle::{brute_colorful, brute_quadrangulations, brute_rooted};
use rigidquad::{validate_colorful, validate_rigid, ColorfulQuad, Corner, Error, Kind, PlanarMap, RigidQuad};

/// Same map with darts renamed by `perm`.
fn relabel(m: &PlanarMap, perm: &[usize]) -> PlanarMap {
    let n = m.darts();
    let mut twin = vec![0; n];
    let mut next = vec![0; n];
    for d in 0..n {
        twin[perm[d]] = perm[m.twin[d]];
        next[perm[d]] = perm[m.next[d]];
    }
    PlanarMap::new(twin, next, perm[m.root]).unwrap()
}

fn square() -> RigidQuad {
    brute_rooted(3).pop().unwrap()
}

#[test]
fn planar_map_rejects_malformed_input() {
    assert!(matches!(PlanarMap::new(vec![1, 0], vec![0, 1], 0), Ok(_)));
    // twin with a fixed point
    assert!(matches!(PlanarMap::new(vec![0, 1], vec![0, 1], 0), Err(Error::Malformed(_))));
    // next not a permutation
    assert!(matches!(PlanarMap::new(vec![1, 0], vec![0, 0], 0), Err(Error::Malformed(_))));
    // two disjoint edges
    assert!(PlanarMap::new(vec![1, 0, 3, 2], vec![0, 1, 2, 3], 0).is_err());
    // root out of range
    assert!(PlanarMap::new(vec![1, 0], vec![0, 1], 5).is_err());
}

#[test]
fn single_edge_map_has_two_vertices_one_face() {
    let m = PlanarMap::new(vec![1, 0], vec![0, 1], 0).unwrap();
    assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (2, 1, 1));
}

#[test]
fn square_counts() {
    let s = square();
    let m = s.map();
    assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (4, 4, 2));
    assert_eq!(s.count(Corner::Convex), 4);
    assert_eq!(s.count(Corner::Concave), 0);
    assert_eq!(s.n(), 3);
    assert_eq!(s.base_signature(), vec![1]);
    assert!(validate_rigid(m, Some(s.orientation())).is_ok());
}

#[test]
fn rigid_invariants_exhaustive() {
    for n in 3..=6 {
        for r in brute_rooted(n) {
            let m = r.map();
            assert_eq!(r.count(Corner::Convex) - r.count(Corner::Concave), 4);
            assert_eq!(r.count(Corner::Convex), n + 1);
            assert_eq!(m.vertex_count() + m.face_count(), m.edge_count() + 2);
            let again = validate_rigid(m, Some(r.orientation())).unwrap();
            assert!(again == r);
            let mir = r.mirror();
            assert_eq!(mir.n(), r.n());
            assert!(mir.mirror() == r);
            for (_, f) in m.faces().1.iter().enumerate().filter(|(i, _)| *i != m.faces().0[m.root]) {
                assert_eq!(f.len(), 4);
            }
        }
    }
}

#[test]
fn rigid_validation_rejects_flipped_orientation() {
    let all = brute_rooted(5);
    let r = all.iter().find(|r| r.orientation().iter().any(|&o| o != 0)).unwrap();
    let mut o = r.orientation().to_vec();
    let d = o.iter().position(|&x| x != 0).unwrap();
    o[d] = -o[d];
    assert!(validate_rigid(r.map(), Some(&o)).is_err());
}

#[test]
fn rigid_validation_rejects_non_rigid_maps() {
    // the single-face square boundary with no inner face
    let m = PlanarMap::new(vec![1, 0], vec![0, 1], 0).unwrap();
    assert!(validate_rigid(&m, None).is_err());
    // among rooted two-face quadrangulations only the square is a rigid disk
    let ok: Vec<RigidQuad> = brute_quadrangulations(2).iter().filter_map(|q| validate_rigid(q, None).ok()).collect();
    assert_eq!(ok.len(), 1);
    assert!(ok[0] == square());
    for q in brute_quadrangulations(3) {
        if let Ok(r) = validate_rigid(&q, None) {
            assert!(brute_rooted(r.n()).contains(&r));
        }
    }
}

#[test]
fn rigid_validation_rejects_non_convex_root() {
    for r in brute_rooted(5) {
        let m = r.map();
        for d in 0..m.darts() {
            if d == m.root {
                continue;
            }
            let mut x = m.clone();
            x.root = d;
            if let Ok(v) = validate_rigid(&x, None) {
                // any accepted re-rooting must again sit at a convex corner
                assert_eq!(v.class(v.root_vertex()), Corner::Convex);
            }
        }
    }
}

#[test]
fn colorful_validation_and_relabel() {
    let all = brute_colorful(5);
    assert_eq!(all.len(), 33);
    for q in &all {
        let mut labels: Vec<i64> = q.vertex_labels();
        labels.sort();
        labels.dedup();
        // label sets are integer intervals
        assert_eq!(labels.len() as i64, labels.last().unwrap() - labels[0] + 1);
        let back = q.relabel().unwrap().relabel().unwrap();
        assert!(back == *q);
        assert!(all.contains(&q.relabel().unwrap()));
    }
}

#[test]
fn colorful_validation_rejects_bad_labels() {
    let q: ColorfulQuad = brute_colorful(4).pop().unwrap();
    let m = q.map();
    let mut l = q.labels().to_vec();
    let (vid, verts) = m.vertices();
    let v = vid[m.twin[m.root]];
    for &d in &verts[v] {
        l[d] += 2;
    }
    assert!(validate_colorful(m, l, Kind::Sphere).is_err());
    let shifted: Vec<i64> = q.labels().iter().map(|x| x + 1).collect();
    assert_eq!(validate_colorful(m, shifted, Kind::Sphere).unwrap_err(), Error::BadRootLabels);
}

#[test]
fn rooted_quadrangulation_counts() {
    // rooted planar quadrangulations with 1, 2, 3 faces
    let c: Vec<usize> = (1..=3).map(|f| brute_quadrangulations(f).len()).collect();
    assert_eq!(c, vec![2, 9, 54]);
}

proptest! {
    #[test]
    fn canonical_code_ignores_dart_names(idx in 0usize..33, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let r = &brute_rooted(5)[idx];
        let m = r.map();
        let mut perm: Vec<usize> = (0..m.darts()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let m2 = relabel(m, &perm);
        prop_assert_eq!(m2.canonical_code(), m.canonical_code());
        let r2 = validate_rigid(&m2, None).unwrap();
        prop_assert!(r2 == *r);
        prop_assert_eq!(r2.n(), r.n());
    }
}
