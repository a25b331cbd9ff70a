use num_bigint::BigInt;
use rigidquad::oracle::brute_rooted;
use rigidquad_py::helpers::*;

#[test]
fn widths_parse() {
    assert_eq!(parse_widths("unit"), Ok(Widths::Unit));
    assert_eq!(parse_widths("simplex:2.5"), Ok(Widths::Simplex(2.5)));
    assert!(parse_widths("simplex:0").is_err());
    assert!(parse_widths("simplex:abc").is_err());
    assert!(parse_widths("uniform").is_err());
}

#[test]
fn named_series_terms() {
    let z = series_terms(&named_series("Z", 5, 0, 0).unwrap());
    let coeffs: Vec<(usize, i64)> = z.iter().map(|(e, n, d)| (e[0], i64::try_from(n / d).unwrap())).collect();
    assert_eq!(coeffs, vec![(3, 1), (4, 5), (5, 33)]);
    assert!(z.iter().all(|t| t.2 == BigInt::from(1)));
    let e = series_terms(&named_series("e", 5, 1, 2).unwrap());
    assert!(e.contains(&(vec![5, 1, 2], BigInt::from(15), BigInt::from(1))));
    assert!(named_series("q", 5, 1, 1).is_err());
}

#[test]
fn svg_rendering() {
    let r = &brute_rooted(5)[7];
    let svg = svg_for(r, Widths::Unit, 0).unwrap();
    assert_eq!(svg.matches("<rect ").count(), r.cells().len());
    let a = svg_for(r, Widths::Simplex(3.0), 9).unwrap();
    let b = svg_for(r, Widths::Simplex(3.0), 9).unwrap();
    assert_eq!(a, b);
}
