use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rigidquad::geometry::*;
use rigidquad::oracle::brute_rooted;
use rigidquad::sampler::{seeded_rng, Sampler};
use rigidquad::series::series_z;
use rigidquad::statistics::rows_and_columns;
use rigidquad::Error;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn square_immersion() {
    let r = &brute_rooted(3)[0];
    let imm = immerse_f64(r, &unit_widths(r)).unwrap();
    let mut v = imm.vertices.clone();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(v, vec![[-1.0, 0.0], [-1.0, 1.0], [0.0, 0.0], [0.0, 1.0]]);
    assert_eq!(imm.vertices[imm.root_vertex], [0.0, 0.0]);
    assert_eq!(imm.bounding_box(), ([-1.0, 0.0], [0.0, 1.0]));
}

#[test]
fn strip_dimension_is_2n_minus_4() {
    for n in 3..=7 {
        for r in brute_rooted(n) {
            let s = strips(&r);
            assert_eq!(s.rows + s.cols, 2 * n - 4);
            assert_eq!((s.rows, s.cols), rows_and_columns(&r));
        }
    }
}

#[test]
fn immersion_is_path_independent() {
    let mut rng = seeded_rng(11);
    for n in 3..=6 {
        for r in brute_rooted(n) {
            let w = simplex_widths(&r, 10.0, &mut rng).unwrap();
            let a = immerse_f64(&r, &w).unwrap();
            let b = immerse(&r, &w, Traversal::DepthFirstReversed, |x, y| (x - y).abs() <= 1e-9).unwrap();
            assert!(max_deviation(&a, &b) < 1e-9);
            assert_eq!(a.vertices[a.root_vertex], [0.0, 0.0]);
            // the root cell sits in the top-left quadrant with its SE corner at the origin
            let ([x, y], [w, _]) = a.rects[r.root_cell()];
            assert!((x + w).abs() < 1e-12 && y == 0.0);
        }
    }
}

#[test]
fn exact_perimeter_is_twice_the_width_sum() {
    for n in 3..=6 {
        for (i, r) in brute_rooted(n).iter().enumerate() {
            let s = strips(r);
            let rows: Vec<BigRational> = (0..s.rows).map(|k| q((k + i) as i64 % 5 + 1, 3)).collect();
            let cols: Vec<BigRational> = (0..s.cols).map(|k| q(2 * k as i64 + 1, 7)).collect();
            let w = given_widths(r, rows, cols).unwrap();
            let imm = immerse_exact(r, &w).unwrap();
            let two = q(2, 1);
            assert_eq!(boundary_length(r, &imm), two * w.half_perimeter());
        }
    }
}

#[test]
fn simplex_widths_sum_to_l() {
    let mut rng = seeded_rng(3);
    for r in brute_rooted(6) {
        let w = simplex_widths(&r, 7.5, &mut rng).unwrap();
        assert!((w.half_perimeter() - 7.5).abs() < 1e-12);
        assert!(w.rows.iter().chain(&w.cols).all(|&x| x > 0.0));
    }
    assert!(simplex_widths(&brute_rooted(3)[0], 0.0, &mut rng).is_err());
}

#[test]
fn given_widths_are_checked() {
    let r = &brute_rooted(3)[0];
    assert_eq!(given_widths(r, vec![1.0], vec![0.0]).unwrap_err(), Error::NonPositiveWidth(1));
    assert!(given_widths(r, vec![1.0, 2.0], vec![1.0]).is_err());
}

#[test]
fn volume_coefficients_match_the_rigid_counts() {
    for n in 3..=6 {
        let rep = volume_check(n, &brute_rooted(n)).unwrap();
        assert!(rep.dimensions_ok);
        assert_eq!(rep.degree, 2 * n - 5);
        assert_eq!(rep.coefficient, series_z(n).coeff(&[n]));
    }
    assert!(volume_check(2, &[]).is_err());
    assert!(volume_check(4, &brute_rooted(3)).is_err());
}

#[test]
fn svg_has_one_rect_per_cell() {
    let r = Sampler::new(10).sample_rigid_rooted(10, &mut seeded_rng(4)).unwrap();
    let imm = immerse_f64(&r, &unit_widths(&r)).unwrap();
    let svg = render_svg(&imm, &Style::default());
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<rect ").count(), r.cells().len());
    assert_eq!(svg.matches("<circle ").count(), 1);
    assert!(svg.trim_end().ends_with("</svg>"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn sampled_immersions_agree(seed in any::<u64>(), n in 7usize..=14) {
        let mut rng = seeded_rng(seed);
        let r = Sampler::new(14).sample_rigid_rooted(n, &mut rng).unwrap();
        let w = simplex_widths(&r, 1.0, &mut rng).unwrap();
        let a = immerse_f64(&r, &w).unwrap();
        let b = immerse(&r, &w, Traversal::DepthFirstReversed, |x, y| (x - y).abs() <= 1e-9).unwrap();
        prop_assert!(max_deviation(&a, &b) < 1e-9);
        prop_assert!((boundary_length(&r, &a) - 2.0).abs() < 1e-9);
    }
}
