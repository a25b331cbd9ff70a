//! Exact truncated power series over the rationals, the generating functions of
//! rigid quadrangulations, the catalytic counting recursion and critical numerics.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::Error;

/// Dense truncated series in one to three variables (conventionally t, x, y).
/// Exponent `e[i]` ranges over `0..=orders[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    orders: Vec<usize>,
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

impl TruncSeries {
    pub fn zero(orders: &[usize]) -> Self {
        assert!((1..=3).contains(&orders.len()), "one to three variables");
        let len = orders.iter().map(|o| o + 1).product();
        TruncSeries { orders: orders.to_vec(), coeffs: vec![BigRational::zero(); len] }
    }

    pub fn constant(orders: &[usize], c: BigRational) -> Self {
        let mut s = Self::zero(orders);
        s.coeffs[0] = c;
        s
    }

    pub fn one(orders: &[usize]) -> Self {
        Self::constant(orders, BigRational::one())
    }

    /// The monomial given by an exponent tuple, or zero if it is truncated away.
    pub fn monomial(orders: &[usize], e: &[usize]) -> Self {
        let mut s = Self::zero(orders);
        if s.fits(e) {
            let i = s.index(e);
            s.coeffs[i] = BigRational::one();
        }
        s
    }

    /// The i-th variable.
    pub fn var(orders: &[usize], i: usize) -> Self {
        let mut e = vec![0; orders.len()];
        e[i] = 1;
        Self::monomial(orders, &e)
    }

    pub fn from_coeffs(order: usize, c: &[BigRational]) -> Self {
        let mut s = Self::zero(&[order]);
        for (i, v) in c.iter().enumerate().take(order + 1) {
            s.coeffs[i] = v.clone();
        }
        s
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn nvars(&self) -> usize {
        self.orders.len()
    }

    fn fits(&self, e: &[usize]) -> bool {
        e.len() == self.orders.len() && e.iter().zip(&self.orders).all(|(a, o)| a <= o)
    }

    fn index(&self, e: &[usize]) -> usize {
        e.iter().zip(&self.orders).fold(0, |acc, (a, o)| acc * (o + 1) + a)
    }

    fn exps(&self, mut i: usize) -> Vec<usize> {
        let mut e = vec![0; self.orders.len()];
        for k in (0..self.orders.len()).rev() {
            e[k] = i % (self.orders[k] + 1);
            i /= self.orders[k] + 1;
        }
        e
    }

    /// Coefficient of an exponent tuple; zero beyond truncation.
    pub fn coeff(&self, e: &[usize]) -> BigRational {
        if self.fits(e) {
            self.coeffs[self.index(e)].clone()
        } else {
            BigRational::zero()
        }
    }

    pub fn set(&mut self, e: &[usize], v: BigRational) {
        assert!(self.fits(e), "exponent beyond truncation");
        let i = self.index(e);
        self.coeffs[i] = v;
    }

    /// Nonzero terms as (exponents, coefficient).
    pub fn terms(&self) -> Vec<(Vec<usize>, BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exps(i), c.clone()))
            .collect()
    }

    /// Univariate coefficient list `[c_0, ..., c_order]`.
    pub fn univariate(&self) -> Vec<BigRational> {
        assert_eq!(self.nvars(), 1);
        self.coeffs.clone()
    }

    /// Coefficients of a one-variable series in the first variable, as integers.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.univariate().iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Restriction of the truncation orders; never extends them.
    pub fn truncate(&self, orders: &[usize]) -> Self {
        assert_eq!(orders.len(), self.nvars());
        let orders: Vec<usize> = orders.iter().zip(&self.orders).map(|(a, b)| *a.min(b)).collect();
        let mut s = Self::zero(&orders);
        for (e, c) in self.terms() {
            if s.fits(&e) {
                let i = s.index(&e);
                s.coeffs[i] = c;
            }
        }
        s
    }

    fn common(&self, o: &Self) -> Vec<usize> {
        assert_eq!(self.nvars(), o.nvars(), "variable count mismatch");
        self.orders.iter().zip(&o.orders).map(|(a, b)| *a.min(b)).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.truncate(&self.common(o));
        for (e, c) in o.terms() {
            if s.fits(&e) {
                let i = s.index(&e);
                s.coeffs[i] += c;
            }
        }
        s
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = -c.clone();
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c *= k;
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut s = Self::zero(&self.common(o));
        let a = self.terms();
        let b = o.terms();
        let mut e = vec![0; s.nvars()];
        for (ea, ca) in &a {
            if !s.fits(ea) {
                continue;
            }
            for (eb, cb) in &b {
                for k in 0..e.len() {
                    e[k] = ea[k] + eb[k];
                }
                if s.fits(&e) {
                    let i = s.index(&e);
                    s.coeffs[i] += ca * cb;
                }
            }
        }
        s
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut r = Self::one(&self.orders);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Sum of the orders; bounds the nilpotency index of a series without constant term.
    fn depth(&self) -> usize {
        self.orders.iter().sum()
    }

    fn has_constant(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Evaluates `sum_k f[k] g^k` for a series `g` without constant term.
    fn power_sum(g: &Self, f: impl Fn(usize) -> BigRational) -> Self {
        assert!(!g.has_constant(), "argument must have zero constant term");
        let mut r = Self::zero(&g.orders);
        let mut p = Self::one(&g.orders);
        for k in 0..=g.depth() {
            let c = f(k);
            if !c.is_zero() {
                r = r.add(&p.scale(&c));
            }
            p = p.mul(g);
        }
        r
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Self {
        let c0 = self.coeffs[0].clone();
        assert!(!c0.is_zero(), "series is not a unit");
        let c0inv = c0.recip();
        let mut g = self.scale(&c0inv);
        g.coeffs[0] = BigRational::zero();
        let s = Self::power_sum(&g, |k| if k % 2 == 0 { q(1) } else { q(-1) });
        s.scale(&c0inv)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Self {
        let mut fact = BigInt::one();
        let mut facts = vec![];
        for k in 0..=self.depth() {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            facts.push(fact.clone());
        }
        Self::power_sum(self, |k| BigRational::new(BigInt::one(), facts[k].clone()))
    }

    /// log(1 + g) for a series g with zero constant term.
    pub fn log1p(&self) -> Self {
        Self::power_sum(self, |k| {
            if k == 0 {
                BigRational::zero()
            } else {
                let s = if k % 2 == 1 { 1 } else { -1 };
                BigRational::new(BigInt::from(s), BigInt::from(k))
            }
        })
    }

    /// Composition f(g) for univariate f and g without constant term (same variable count as g).
    pub fn compose(&self, g: &Self) -> Self {
        assert_eq!(self.nvars(), 1);
        let f = self.univariate();
        Self::power_sum(g, |k| f.get(k).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Partial derivative in variable i; the order in that variable drops by one.
    pub fn derivative(&self, i: usize) -> Self {
        let mut orders = self.orders.clone();
        orders[i] = orders[i].saturating_sub(1);
        let mut s = Self::zero(&orders);
        for (mut e, c) in self.terms() {
            if e[i] == 0 {
                continue;
            }
            let k = e[i];
            e[i] -= 1;
            if s.fits(&e) {
                let j = s.index(&e);
                s.coeffs[j] = c * q(k as i64);
            }
        }
        s
    }

    /// Compositional inverse of a univariate series `a_1 t + ...` with `a_1 != 0`, by Newton iteration.
    pub fn revert(&self) -> Self {
        assert_eq!(self.nvars(), 1);
        let n = self.orders[0];
        assert!(self.coeffs[0].is_zero() && n >= 1 && !self.coeffs[1].is_zero(), "not revertible");
        let t = Self::var(&[n], 0);
        let df = self.derivative(0);
        let mut g = t.scale(&self.coeffs[1].recip());
        let mut prec = 1;
        while prec < n {
            prec *= 2;
            let resid = self.compose(&g).sub(&t);
            g = g.sub(&resid.div(&df.compose(&g)));
        }
        g
    }

    /// Extracts the coefficient of `x^a y^b` of a (t, x, y) series as a series in t.
    pub fn extract_xy(&self, a: usize, b: usize) -> Self {
        assert_eq!(self.nvars(), 3);
        let mut s = Self::zero(&[self.orders[0]]);
        for k in 0..=self.orders[0] {
            s.coeffs[k] = self.coeff(&[k, a, b]);
        }
        s
    }

    /// Extracts the coefficient of `y^a` of a (t, y) series as a series in t.
    pub fn extract_y(&self, a: usize) -> Self {
        assert_eq!(self.nvars(), 2);
        let mut s = Self::zero(&[self.orders[0]]);
        for k in 0..=self.orders[0] {
            s.coeffs[k] = self.coeff(&[k, a]);
        }
        s
    }

    /// Whether every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["t", "x", "y"];
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (k, &a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "{}", names[k])?,
                    _ => write!(f, "{}^{a}", names[k])?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(")?;
        for (k, o) in self.orders.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}^{}", names[k], o + 1)?;
        }
        write!(f, ")")
    }
}

/// The defining series `Phi(w) = sum_n C(2n,n)^2 w^(n+1) / (n+1)` truncated at order N.
pub fn phi_series(n: usize) -> TruncSeries {
    let mut c = vec![BigRational::zero(); n + 1];
    for k in 0..n {
        let b = binom(2 * k as i64, k as i64);
        c[k + 1] = BigRational::new(&b * &b, BigInt::from(k + 1));
    }
    TruncSeries::from_coeffs(n, &c)
}

/// R(t), the compositional inverse of Phi, to order N.
pub fn solve_r(n: usize) -> TruncSeries {
    phi_series(n.max(1)).revert()
}

/// Powers `R^0 .. R^n` truncated at order n.
fn r_powers(n: usize) -> Vec<TruncSeries> {
    let r = solve_r(n);
    let mut v = vec![TruncSeries::one(&[n])];
    for k in 1..=n {
        v.push(v[k - 1].mul(&r));
    }
    v
}

/// Z(t) = (t - 2t^2 - R(t)) / 4, the generating function of rigid quadrangulations.
pub fn series_z(n: usize) -> TruncSeries {
    let r = solve_r(n.max(2));
    let mut c = vec![BigRational::zero(); n.max(2) + 1];
    c[1] = q(1);
    c[2] = q(-2);
    let lin = TruncSeries::from_coeffs(n.max(2), &c);
    lin.sub(&r).scale(&BigRational::new(BigInt::one(), BigInt::from(4))).truncate(&[n])
}

/// P(t, y) with orders (N, pmax).
pub fn series_p(n: usize, pmax: usize) -> TruncSeries {
    let rp = r_powers(n);
    let mut s = TruncSeries::zero(&[n, pmax]);
    for p in 1..=pmax {
        let mut acc = TruncSeries::zero(&[n]);
        for m in p..n {
            let c = BigRational::new(binom(2 * m as i64, m as i64) * binom((2 * m - p) as i64, m as i64), BigInt::from(m + 1));
            acc = acc.add(&rp[m + 1].scale(&c));
        }
        for k in 0..=n {
            s.set(&[k, p], acc.coeff(&[k]));
        }
    }
    s
}

/// The exponent `sum_n sum_{i,j<=n} C(2n-i,n) C(2n-j,n) x^(i+1) y^(j+1) R^(n+1) / (n+1)`.
pub fn series_b_exponent(n: usize, xmax: usize, ymax: usize) -> TruncSeries {
    let rp = r_powers(n);
    let mut s = TruncSeries::zero(&[n, xmax, ymax]);
    for m in 0..n {
        for i in 0..=m.min(xmax.saturating_sub(1)) {
            for j in 0..=m.min(ymax.saturating_sub(1)) {
                if i + 1 > xmax || j + 1 > ymax {
                    continue;
                }
                let c = BigRational::new(binom((2 * m - i) as i64, m as i64) * binom((2 * m - j) as i64, m as i64), BigInt::from(m + 1));
                for k in 0..=n {
                    let v = rp[m + 1].coeff(&[k]);
                    if !v.is_zero() {
                        let e = [k, i + 1, j + 1];
                        let old = s.coeff(&e);
                        s.set(&e, old + v * &c);
                    }
                }
            }
        }
    }
    s
}

/// B(t, x, y) = exp(S) - 1.
pub fn series_b(n: usize, xmax: usize, ymax: usize) -> TruncSeries {
    let e = series_b_exponent(n, xmax, ymax).exp();
    e.sub(&TruncSeries::one(e.orders()))
}

/// C(t, x, y) = B / (1 + B).
pub fn series_c(n: usize, xmax: usize, ymax: usize) -> TruncSeries {
    let b = series_b(n, xmax, ymax);
    b.div(&b.add(&TruncSeries::one(b.orders())))
}

/// E(t, x, y) = C / (xy) - P(t, x) - P(t, y) - t.
pub fn series_e(n: usize, xmax: usize, ymax: usize) -> TruncSeries {
    let c = series_c(n, xmax + 1, ymax + 1);
    let mut e = TruncSeries::zero(&[n, xmax, ymax]);
    for (ex, v) in c.terms() {
        e.set(&[ex[0], ex[1] - 1, ex[2] - 1], v);
    }
    let pmax = xmax.max(ymax);
    let p = series_p(n, pmax);
    for (ex, v) in p.terms() {
        if ex[1] <= xmax {
            let old = e.coeff(&[ex[0], ex[1], 0]);
            e.set(&[ex[0], ex[1], 0], old - &v);
        }
        if ex[1] <= ymax {
            let old = e.coeff(&[ex[0], 0, ex[1]]);
            e.set(&[ex[0], 0, ex[1]], old - &v);
        }
    }
    if n >= 1 {
        let old = e.coeff(&[1, 0, 0]);
        e.set(&[1, 0, 0], old - q(1));
    }
    e
}

/// Smallest n with a nonzero term in the half-cylinder sum.
pub fn h_lowest_index(p: usize, q: usize) -> usize {
    p.max(q) - 1
}

fn h_coeff(m: usize, p: usize, q: usize) -> BigInt {
    binom(2 * m as i64 - p as i64 + 1, m as i64) * binom(2 * m as i64 - q as i64 + 1, m as i64)
}

/// H^(p,q)(t) in closed form: sum over all n of C(2n-p+1,n) C(2n-q+1,n) R^(n+1) / (n+1).
pub fn series_h(p: usize, q: usize, n: usize) -> TruncSeries {
    assert!(p >= 1 && q >= 1);
    let rp = r_powers(n);
    let mut acc = TruncSeries::zero(&[n]);
    for m in h_lowest_index(p, q)..n {
        let c = BigRational::new(h_coeff(m, p, q), BigInt::from(m + 1));
        acc = acc.add(&rp[m + 1].scale(&c));
    }
    acc
}

/// H^(p,q)(t) as the coefficient of x^p y^q in log(1 + B).
pub fn series_h_log(p: usize, q: usize, n: usize) -> TruncSeries {
    series_b(n, p, q).log1p().extract_xy(p, q)
}

/// Rooted half-cylinder series: sum C(2n-p+1,n) C(2n-q+1,n) R^n R'.
pub fn series_h_rooted(p: usize, q: usize, n: usize) -> TruncSeries {
    let rp = r_powers(n + 1);
    let dr = rp[1].derivative(0);
    let mut acc = TruncSeries::zero(&[n]);
    for m in h_lowest_index(p, q)..=n {
        acc = acc.add(&rp[m].truncate(&[n]).scale(&BigRational::from_integer(h_coeff(m, p, q))));
    }
    acc.mul(&dr)
}

/// c[p][j] = [t^j] P^(p)(t) with the convention P^(0)(t) = t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub pmax: usize,
    pub jmax: usize,
    pub c: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn get(&self, p: usize, j: usize) -> BigUint {
        self.c.get(p).and_then(|r| r.get(j)).cloned().unwrap_or_default()
    }

    /// |R_n| = [t^n] P^(1) / 2 for n >= 3: half of the base-1 traces start with an L step.
    pub fn rigid_count(&self, n: usize) -> Result<BigUint, Error> {
        if n < 3 || n > self.jmax || self.pmax < 1 {
            return Err(Error::BoundsTooSmall);
        }
        Ok(self.get(1, n) / BigUint::from(2u32))
    }
}

/// Fills the catalytic recursion by increasing t-degree.
pub fn catalytic_counts(pmax: usize, jmax: usize) -> Result<CountTable, Error> {
    if jmax < 1 {
        return Err(Error::BoundsTooSmall);
    }
    // P^(p) has no terms below t^(p+1), so indices up to jmax suffice internally
    let pm = pmax.max(jmax);
    let mut c = vec![vec![BigUint::zero(); jmax + 1]; pm + 1];
    c[0][1] = BigUint::one();
    let binoms: Vec<Vec<BigUint>> = (0..=2 * jmax)
        .map(|n| (0..=n).map(|k| binom(n as i64, k as i64).to_biguint().unwrap()).collect())
        .collect();
    for j in 2..=jmax {
        for p in 1..=pm {
            let mut v = BigUint::zero();
            for l in 0..p {
                for j1 in 1..j {
                    let a = &c[l][j1];
                    let b = &c[p - l - 1][j - j1];
                    if !a.is_zero() && !b.is_zero() {
                        v += a * b;
                    }
                }
            }
            let mut w = BigUint::zero();
            for k in 0..=jmax {
                for l in 0..=jmax {
                    if p + l > pm {
                        break;
                    }
                    for j1 in 1..j {
                        let a = &c[p + l][j1];
                        let b = &c[k][j - j1];
                        if !a.is_zero() && !b.is_zero() {
                            w += &binoms[k + l][l] * a * b;
                        }
                    }
                }
            }
            c[p][j] = v + w * BigUint::from(2u32);
        }
    }
    c.truncate(pmax + 1);
    Ok(CountTable { pmax, jmax, c })
}

/// |R_n| for n = 0..=nmax from the Z series.
pub fn rigid_counts(nmax: usize) -> Vec<BigInt> {
    series_z(nmax).integer_coeffs().expect("Z has integral coefficients")
}

/// Sum of `1/((n+1)(n+a))` over `n > big_n`.
fn tail_sum(big_n: usize, a: f64) -> f64 {
    use statrs::function::gamma::digamma;
    let n = big_n as f64;
    (digamma(n + 2.0) - digamma(n + 1.0 + a)) / (1.0 - a)
}

/// Truncated Phi(w) with a rigorous bracket `[lo, hi]` for the full sum, valid for 0 <= 16w <= 1.
/// Uses 4^n/sqrt(pi(n+1/2)) <= C(2n,n) <= 4^n/sqrt(pi(n+1/4)).
pub fn phi_bracket(w: f64, nmax: usize) -> (f64, f64) {
    let z = 16.0 * w;
    let mut term = w;
    let mut sum = 0.0;
    for n in 0..=nmax {
        sum += term;
        let nf = n as f64;
        term *= 4.0 * (2.0 * nf + 1.0).powi(2) * w / ((nf + 1.0) * (nf + 2.0));
    }
    let hi = sum + z.powi(nmax as i32 + 1) * tail_sum(nmax, 0.25) / (16.0 * PI);
    let mut lo = sum;
    let mut m = nmax;
    let full = tail_sum(nmax, 0.5);
    for _ in 0..40 {
        m = m.saturating_mul(2);
        let part = full - tail_sum(m, 0.5);
        lo = lo.max(sum + z.powf(m as f64 + 1.0) * part / (16.0 * PI));
    }
    (lo, hi)
}

/// Number of Phi terms used by the numeric evaluators.
pub const PHI_TERMS: usize = 200_000;

/// Rigorous bracket for R(t), 0 < t <= 1/(4 pi), by monotone bisection.
pub fn eval_r_bracket(t: f64) -> Result<(f64, f64), Error> {
    let ts = tstar();
    if !(t > 0.0 && t <= ts * (1.0 + 1e-15)) {
        return Err(Error::OutOfDomain);
    }
    // lower end: largest w with hi(w) <= t; upper end: smallest w with lo(w) >= t
    let bisect = |pick_hi: bool| {
        let (mut a, mut b) = (0.0f64, 1.0 / 16.0);
        for _ in 0..80 {
            let m = 0.5 * (a + b);
            let (lo, hi) = phi_bracket(m, PHI_TERMS);
            let below = if pick_hi { lo < t } else { hi <= t };
            if below {
                a = m;
            } else {
                b = m;
            }
        }
        if pick_hi {
            b
        } else {
            a
        }
    };
    Ok((bisect(false), bisect(true)))
}

/// R(t) for 0 < t <= 1/(4 pi): midpoint of the rigorous bracket.
pub fn eval_r_numeric(t: f64) -> Result<f64, Error> {
    let (a, b) = eval_r_bracket(t)?;
    Ok(0.5 * (a + b))
}

/// A partial sum together with an upper bound on the omitted tail.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub tail_bound: f64,
}

/// Terms `C(2n-p+1,n) C(2n-q+1,n) w^(n+1) / (n+1)` for n from the lowest index to nmax.
fn h_terms(p: usize, q: usize, w: f64, nmax: usize, mut f: impl FnMut(usize, f64)) {
    use statrs::function::gamma::ln_gamma;
    let n0 = h_lowest_index(p, q);
    let lnb = |n: usize, s: usize| {
        let top = (2 * n + 1 - s) as f64;
        ln_gamma(top + 1.0) - ln_gamma(n as f64 + 1.0) - ln_gamma(top - n as f64 + 1.0)
    };
    let mut term = (lnb(n0, p) + lnb(n0, q) + (n0 as f64 + 1.0) * w.ln() - (n0 as f64 + 1.0).ln()).exp();
    for n in n0..=nmax {
        f(n, term);
        let nf = n as f64;
        let ratio = |s: usize| {
            let s = s as f64;
            (2.0 * nf - s + 3.0) * (2.0 * nf - s + 2.0) / ((nf + 1.0) * (nf - s + 2.0))
        };
        term *= ratio(p) * ratio(q) * w * (nf + 1.0) / (nf + 2.0);
    }
}

/// H^(p,q)(t*) = sum at R = 1/16, with tail bound 2^(2-p-q) / (16 pi (nmax+1)).
pub fn eval_h_critical(p: usize, q: usize, nmax: usize) -> Estimate {
    let mut value = 0.0;
    h_terms(p, q, 1.0 / 16.0, nmax, |_, x| value += x);
    let tail_bound = 2f64.powi(2 - p as i32 - q as i32) / (16.0 * PI * (nmax as f64 + 1.0));
    Estimate { value, tail_bound }
}

/// Ratio of H^(p,q)(t*) to its predicted asymptotic 2^(-p-q) / (pi (p^2+q^2)), as a bracket.
pub fn h_critical_ratio(p: usize, q: usize, nmax: usize) -> (f64, f64) {
    let e = eval_h_critical(p, q, nmax);
    let scale = PI * ((p * p + q * q) as f64) * 2f64.powi((p + q) as i32);
    (e.value * scale, (e.value + e.tail_bound) * scale)
}

/// Outcome of the Laplace-transform comparison for the critical half-cylinder law.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LaplaceCheck {
    /// E[exp(-mu_pq n)] with mu_pq = mu log(r^2) / r^2.
    pub expectation: f64,
    /// mu' with R(t* exp(-mu_pq)) = exp(-4 mu' / r^2) / 16.
    pub mu_effective: f64,
    pub limit_at_mu: f64,
    pub limit_at_effective_mu: f64,
}

/// Compares the critical Laplace transform of n with `integral exp(-t - mu/t) dt`.
pub fn laplace_check(p: usize, q: usize, mu: f64, nmax: usize) -> Result<LaplaceCheck, Error> {
    let r2 = (p * p + q * q) as f64;
    let mu_pq = mu * r2.ln() / r2;
    let w = eval_r_numeric(tstar() * (-mu_pq).exp())?;
    let mut num = 0.0;
    h_terms(p, q, w, nmax, |_, x| num += x);
    let den = eval_h_critical(p, q, nmax);
    let mu_effective = -r2 * (16.0 * w).ln() / 4.0;
    Ok(LaplaceCheck {
        expectation: num / (den.value + 0.5 * den.tail_bound),
        mu_effective,
        limit_at_mu: laplace_limit(mu),
        limit_at_effective_mu: laplace_limit(mu_effective),
    })
}

/// The critical point 1/(4 pi).
pub fn tstar() -> f64 {
    1.0 / (4.0 * PI)
}

/// The limit `integral_0^inf exp(-t - mu/t) dt` by Simpson quadrature in log scale.
pub fn laplace_limit(mu: f64) -> f64 {
    let (a, b) = (-40.0f64, 6.0f64);
    let n = 20_000;
    let h = (b - a) / n as f64;
    let f = |u: f64| {
        let t = u.exp();
        (-t - mu / t).exp() * t
    };
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// The sequence |R_n| 16 n^2 log^2 n / (4 pi)^n for n in `lo..=hi`.
pub fn normalized_trend(lo: usize, hi: usize) -> Vec<(usize, f64)> {
    let z = rigid_counts(hi);
    (lo.max(2)..=hi)
        .map(|n| {
            let c = z[n].to_f64().unwrap_or(f64::NAN);
            let nf = n as f64;
            (n, c * 16.0 * nf * nf * nf.ln().powi(2) / (4.0 * PI).powi(n as i32))
        })
        .collect()
}
