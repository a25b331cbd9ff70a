use rigidquad::bijection::psi;
use rigidquad::json::{MapJson, MapObject};
use rigidquad::oracle::{brute_quadrangulations, brute_rooted};
use rigidquad::Error;

#[test]
fn rigid_and_colorful_round_trip() {
    for r in brute_rooted(5) {
        let s = MapObject::from(r.clone()).to_string_pretty();
        match MapObject::parse(&s).unwrap() {
            MapObject::Rigid(back) => assert!(back == r),
            other => panic!("wrong kind {other:?}"),
        }
        let q = psi(&r).unwrap();
        let s = MapObject::from(q.clone()).to_string_pretty();
        assert!(s.contains("colorful-sphere"));
        match MapObject::parse(&s).unwrap() {
            MapObject::Colorful(back) => assert!(back == q),
            other => panic!("wrong kind {other:?}"),
        }
    }
}

#[test]
fn planar_round_trip() {
    let m = brute_quadrangulations(2).pop().unwrap();
    let j = MapObject::Planar(m.clone()).to_json();
    assert_eq!(j.kind, "planar");
    assert!(j.labels.is_none() && j.orientation.is_none());
    match MapObject::from_json(&j).unwrap() {
        MapObject::Planar(back) => assert_eq!(back.canonical_code(), m.canonical_code()),
        other => panic!("wrong kind {other:?}"),
    }
}

#[test]
fn invalid_documents_are_rejected() {
    assert!(matches!(MapObject::parse("{"), Err(Error::Parse(_))));
    let j = MapJson { darts: 2, twin: vec![1, 0], next: vec![0, 1], root: 0, labels: None, orientation: None, signature: None, kind: "colorful-sphere".into() };
    assert!(MapObject::from_json(&j).is_err());
    let j = MapJson { kind: "hexagonal".into(), ..j };
    assert!(MapObject::from_json(&j).is_err());
    let j = MapJson { darts: 3, kind: "planar".into(), ..j };
    assert!(MapObject::from_json(&j).is_err());
    // a colorful document whose labels break the edge rule
    let r = &brute_rooted(4)[0];
    let mut j = MapObject::from(psi(r).unwrap()).to_json();
    j.labels.as_mut().unwrap()[0] += 4;
    assert!(MapObject::from_json(&j).is_err());
}

#[test]
fn refined_disks_validate_as_colorful_disks() {
    for r in brute_rooted(6) {
        let u = rigidquad::bijection::psi_b(&r).unwrap();
        let s = MapObject::from(u.clone()).to_string_pretty();
        assert!(s.contains("colorful-disk"));
        match MapObject::parse(&s).unwrap() {
            MapObject::Colorful(back) => assert!(back == u),
            other => panic!("wrong kind {other:?}"),
        }
    }
}
