use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rigidquad::oracle::{brute_rigid, traces_exact};
use rigidquad::series::*;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ints(s: &TruncSeries) -> Vec<i64> {
    s.univariate().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
}

#[test]
fn r_starts_with_hand_inversion() {
    // t = R + 2R^2 + 12R^3 + O(R^4) inverts to R = t - 2t^2 - 4t^3
    let s = solve_r(3);
    assert_eq!(ints(&s), vec![0, 1, -2, -4]);
}

#[test]
fn r_residual_vanishes_to_order_30() {
    let n = 30;
    let rs = solve_r(n);
    let lhs = phi_series(n).compose(&rs);
    let t = TruncSeries::var(&[n], 0);
    assert_eq!(lhs, t);
}

#[test]
fn z_coefficients_and_integrality() {
    let z = series_z(12);
    let c = z.integer_coeffs().expect("integral");
    assert_eq!(&c[..6], &[0, 0, 0, 1, 5, 33].map(BigInt::from));
    assert!(z.is_nonnegative_integral());
}

#[test]
fn z_matches_trace_enumeration() {
    // rooted objects of size n correspond to base-1 traces with n-1 steps starting with L
    for n in 3..=7 {
        let count = traces_exact(1, n - 1).iter().filter(|t| t.steps[0].is_l()).count();
        assert_eq!(series_z(n).coeff(&[n]), r(count as i64), "n = {n}");
    }
}

#[test]
fn p_displayed_coefficients() {
    let p = series_p(5, 2);
    assert_eq!(ints(&p.extract_y(1))[2..5], [1, 2, 10]);
    assert_eq!(ints(&p.extract_y(2))[3..6], [2, 8, 50]);
    assert!(p.is_nonnegative_integral());
}

#[test]
fn b_c_e_displayed_coefficients() {
    let b = series_b(5, 2, 2);
    let c = series_c(5, 2, 2);
    let e = series_e(5, 2, 2);
    assert_eq!(ints(&b.extract_xy(1, 1)), vec![0, 1, 0, 0, 0, 0]);
    assert_eq!(ints(&b.extract_xy(1, 2))[2..5], [1, 2, 10]);
    assert_eq!(ints(&b.extract_xy(2, 1))[2..5], [1, 2, 10]);
    assert_eq!(ints(&c.extract_xy(1, 2))[2..5], [1, 2, 10]);
    assert_eq!(ints(&b.extract_xy(2, 2))[2..5], [1, 1, 5]);
    assert_eq!(ints(&c.extract_xy(2, 2))[2..5], [0, 1, 5]);
    assert_eq!(ints(&e.extract_xy(1, 1))[3..6], [1, 5, 33]);
    assert_eq!(ints(&e.extract_xy(1, 2))[4..6], [2, 15]);
    assert_eq!(ints(&e.extract_xy(2, 1))[4..6], [2, 15]);
    for s in [&b, &c, &e] {
        assert!(s.is_nonnegative_integral());
    }
}

#[test]
fn e_diagonal_is_z() {
    let e = series_e(8, 1, 1);
    assert_eq!(e.extract_xy(1, 1), series_z(8));
}

#[test]
fn catalytic_table_matches_series_and_traces() {
    let t = catalytic_counts(4, 9).unwrap();
    let p = series_p(9, 4);
    for pp in 1..=4 {
        for j in 0..=9 {
            let from_series = p.coeff(&[j, pp]);
            assert_eq!(BigRational::from_integer(t.get(pp, j).into()), from_series, "p={pp} j={j}");
            if j <= pp {
                assert!(t.get(pp, j).is_zero());
            }
        }
    }
    assert_eq!(t.get(1, 2), BigUint::one());
    for pp in 1..=4 {
        for j in 2..=7 {
            assert_eq!(t.get(pp, j), BigUint::from(traces_exact(pp, j - 1).len()), "p={pp} j={j}");
        }
    }
    assert_eq!(brute_rigid(1, 3).len(), 1 + 2 + 10);
}

#[test]
fn catalytic_rigid_counts_agree_with_z() {
    let t = catalytic_counts(1, 12).unwrap();
    let z = rigid_counts(12);
    for n in 3..=12 {
        assert_eq!(BigInt::from(t.rigid_count(n).unwrap()), z[n]);
    }
    assert_eq!(t.rigid_count(2), Err(rigidquad::Error::BoundsTooSmall));
    assert!(catalytic_counts(1, 0).is_err());
}

#[test]
fn half_cylinder_routes_agree() {
    for p in 1..=3 {
        for q in 1..=3 {
            let closed = series_h(p, q, 12);
            assert_eq!(closed, series_h_log(p, q, 12), "p={p} q={q}");
            // the lowest term sits at n = max(p,q) - 1, i.e. t-degree max(p,q)
            let lowest = closed.terms()[0].0[0];
            assert_eq!(lowest, p.max(q));
        }
    }
}

#[test]
fn half_cylinder_rooted_is_derivative() {
    for (p, q) in [(1, 1), (2, 3), (3, 3)] {
        let h = series_h(p, q, 12);
        let rooted = series_h_rooted(p, q, 11);
        assert_eq!(h.derivative(0).truncate(&[11]), rooted);
    }
}

#[test]
fn series_arithmetic_basics() {
    let o = [6usize];
    let t = TruncSeries::var(&o, 0);
    let one = TruncSeries::one(&o);
    // 1/(1-t) = sum t^k
    let g = one.sub(&t).inv();
    assert!(g.univariate().iter().all(|c| c.is_one()));
    // exp(t) has coefficients 1/k!
    let e = t.exp();
    assert_eq!(e.coeff(&[3]), BigRational::new(BigInt::from(1), BigInt::from(6)));
    // truncation never extends
    let short = t.truncate(&[3]);
    assert_eq!(short.add(&t).orders(), &[3]);
    assert_eq!(short.mul(&t).orders(), &[3]);
}

#[test]
fn numeric_r_at_critical_point() {
    let (lo, hi) = eval_r_bracket(tstar()).unwrap();
    assert!(lo <= 1.0 / 16.0 && 1.0 / 16.0 <= hi + 1e-15);
    assert!((eval_r_numeric(tstar()).unwrap() - 1.0 / 16.0).abs() < 1e-10);
    assert_eq!(eval_r_numeric(0.1), Err(rigidquad::Error::OutOfDomain));
    assert_eq!(eval_r_numeric(-1.0), Err(rigidquad::Error::OutOfDomain));
}

#[test]
fn numeric_r_matches_series_for_small_t() {
    let s = solve_r(20);
    let t: f64 = 0.01;
    let approx: f64 = s
        .univariate()
        .iter()
        .enumerate()
        .map(|(k, c)| num_traits::ToPrimitive::to_f64(c).unwrap() * t.powi(k as i32))
        .sum();
    assert!((eval_r_numeric(t).unwrap() - approx).abs() < 1e-12);
}

#[test]
fn critical_half_cylinder_ratio_trend() {
    let (lo, hi) = h_critical_ratio(12, 12, 200_000);
    assert!(hi - lo < 1e-3);
    assert!((lo - 1.0).abs() < 0.25 && (hi - 1.0).abs() < 0.25);
}

#[test]
fn laplace_limit_quadrature() {
    // 2 K_1(2) to 8 digits
    assert!((laplace_limit(1.0) - 0.279_731_76).abs() < 1e-7);
    assert!((laplace_limit(1e-9) - 1.0).abs() < 1e-3);
}

#[test]
fn normalized_trend_is_slowly_varying() {
    let v = normalized_trend(15, 30);
    let max = v.iter().map(|x| x.1).fold(f64::MIN, f64::max);
    let min = v.iter().map(|x| x.1).fold(f64::MAX, f64::min);
    assert!(max / min < 2.0);
}

fn small_series() -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(-5i64..=5, 5).prop_map(|v| {
        let c: Vec<BigRational> = v.into_iter().map(r).collect();
        TruncSeries::from_coeffs(4, &c)
    })
}

proptest! {
    #[test]
    fn mul_is_commutative_and_associative(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn inverse_and_log_exp(a in small_series()) {
        let one = TruncSeries::one(&[4]);
        let mut g = a.clone();
        g.set(&[0], BigRational::zero());
        prop_assert_eq!(g.log1p().exp(), one.add(&g));
        let unit = one.add(&g);
        prop_assert_eq!(unit.mul(&unit.inv()), one);
    }

    #[test]
    fn reversion_is_involutive(v in prop::collection::vec(-3i64..=3, 4)) {
        let mut c = vec![BigRational::zero(), BigRational::one()];
        c.extend(v.into_iter().map(r));
        let f = TruncSeries::from_coeffs(5, &c);
        let g = f.revert();
        prop_assert_eq!(f.compose(&g), TruncSeries::var(&[5], 0));
        prop_assert_eq!(g.revert(), f);
    }
}
