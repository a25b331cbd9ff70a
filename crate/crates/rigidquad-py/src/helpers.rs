//! Plain Rust glue behind the Python functions.

use num_bigint::BigInt;

use rigidquad::geometry::{immerse_f64, render_svg, simplex_widths, unit_widths, Style};
use rigidquad::sampler::seeded_rng;
use rigidquad::series::*;
use rigidquad::{Error, RigidQuad};

/// Width choice for rendering.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Widths {
    Unit,
    Simplex(f64),
}

/// Parses `unit` or `simplex:L`.
pub fn parse_widths(s: &str) -> Result<Widths, String> {
    match s.split_once(':') {
        None if s == "unit" => Ok(Widths::Unit),
        Some(("simplex", l)) => match l.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(Widths::Simplex(v)),
            _ => Err(format!("simplex length must be a positive number, got {l:?}")),
        },
        _ => Err(format!("expected unit or simplex:L, got {s:?}")),
    }
}

/// Series by name (r, z, p, b, c, e, h); `p`, `q` bound the x, y powers or index H.
pub fn named_series(name: &str, order: usize, p: usize, q: usize) -> Result<TruncSeries, String> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "r" => solve_r(order),
        "z" => series_z(order),
        "p" => series_p(order, p),
        "b" => series_b(order, p, q),
        "c" => series_c(order, p, q),
        "e" => series_e(order, p, q),
        "h" => series_h(p.max(1), q.max(1), order),
        other => return Err(format!("unknown series {other:?}")),
    })
}

/// Nonzero terms as (exponents, numerator, denominator).
pub fn series_terms(s: &TruncSeries) -> Vec<(Vec<usize>, BigInt, BigInt)> {
    s.terms().into_iter().map(|(e, c)| (e, c.numer().clone(), c.denom().clone())).collect()
}

/// SVG of the immersion under the chosen widths.
pub fn svg_for(r: &RigidQuad, widths: Widths, seed: u64) -> Result<String, Error> {
    let w = match widths {
        Widths::Unit => unit_widths(r),
        Widths::Simplex(l) => simplex_widths(r, l, &mut seeded_rng(seed))?,
    };
    Ok(render_svg(&immerse_f64(r, &w)?, &Style::default()))
}
