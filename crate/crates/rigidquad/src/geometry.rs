//! Rectilinear realization: row and column widths, the immersion in the plane,
//! perimeter and volume identities, and SVG output.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::error::Error;
use crate::rigid::{RigidQuad, E, N, NONE, S, W};

/// Row (maximal horizontal strip) and column (maximal vertical strip) of every cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strips {
    pub row_of: Vec<usize>,
    pub col_of: Vec<usize>,
    pub rows: usize,
    pub cols: usize,
}

/// Strips indexed in order of first appearance among the cells.
pub fn strips(r: &RigidQuad) -> Strips {
    let c = r.cells();
    let label = |dir: usize| {
        let mut id = vec![NONE; c.len()];
        let mut end_id = vec![NONE; c.len()];
        let mut count = 0;
        for i in 0..c.len() {
            let mut e = i;
            while c[e][dir] != NONE {
                e = c[e][dir];
            }
            if end_id[e] == NONE {
                end_id[e] = count;
                count += 1;
            }
            id[i] = end_id[e];
        }
        (id, count)
    };
    let (row_of, rows) = label(E);
    let (col_of, cols) = label(S);
    Strips { row_of, col_of, rows, cols }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum WidthMode {
    Unit,
    SimplexUniform(f64),
    Given,
}

/// Row heights and column widths; the half-perimeter equals their sum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WidthAssignment<T> {
    pub rows: Vec<T>,
    pub cols: Vec<T>,
    pub mode: WidthMode,
}

impl<T: Clone + Add<Output = T> + Zero> WidthAssignment<T> {
    pub fn half_perimeter(&self) -> T {
        self.rows.iter().chain(&self.cols).cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn len(&self) -> usize {
        self.rows.len() + self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Unit widths.
pub fn unit_widths(r: &RigidQuad) -> WidthAssignment<f64> {
    let s = strips(r);
    WidthAssignment { rows: vec![1.0; s.rows], cols: vec![1.0; s.cols], mode: WidthMode::Unit }
}

/// Exact unit widths.
pub fn unit_widths_exact(r: &RigidQuad) -> WidthAssignment<BigRational> {
    let s = strips(r);
    WidthAssignment { rows: vec![BigRational::one(); s.rows], cols: vec![BigRational::one(); s.cols], mode: WidthMode::Unit }
}

/// Uniform point of the simplex of widths summing to `l`, as normalized exponential spacings.
pub fn simplex_widths<R: Rng + ?Sized>(r: &RigidQuad, l: f64, rng: &mut R) -> Result<WidthAssignment<f64>, Error> {
    if !(l > 0.0) {
        return Err(Error::NonPositiveWidth(0));
    }
    let s = strips(r);
    let raw: Vec<f64> = (0..s.rows + s.cols).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let tot: f64 = raw.iter().sum();
    let w: Vec<f64> = raw.iter().map(|x| x / tot * l).collect();
    Ok(WidthAssignment { rows: w[..s.rows].to_vec(), cols: w[s.rows..].to_vec(), mode: WidthMode::SimplexUniform(l) })
}

/// Checks given widths for shape and positivity.
pub fn given_widths<T: PartialOrd + Zero + Clone>(r: &RigidQuad, rows: Vec<T>, cols: Vec<T>) -> Result<WidthAssignment<T>, Error> {
    let s = strips(r);
    if rows.len() != s.rows || cols.len() != s.cols {
        return Err(Error::Malformed(format!("expected {} row and {} column widths", s.rows, s.cols)));
    }
    if let Some(i) = rows.iter().chain(&cols).position(|w| !(*w > T::zero())) {
        return Err(Error::NonPositiveWidth(i));
    }
    Ok(WidthAssignment { rows, cols, mode: WidthMode::Given })
}

/// Placement of every cell and vertex in the plane.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Immersion<T> {
    /// Lower-left corner and (width, height) of each cell.
    pub rects: Vec<([T; 2], [T; 2])>,
    /// Coordinates of each vertex of the map.
    pub vertices: Vec<[T; 2]>,
    /// Origin vertex of the root dart.
    pub root_vertex: usize,
}

impl Immersion<f64> {
    pub fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for ([x, y], [w, h]) in &self.rects {
            lo[0] = lo[0].min(*x);
            lo[1] = lo[1].min(*y);
            hi[0] = hi[0].max(x + w);
            hi[1] = hi[1].max(y + h);
        }
        (lo, hi)
    }
}

/// Traversal order for the developing map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirstReversed,
}

/// Develops the disk in the plane with the root corner at the origin and the disk in the
/// top-left quadrant. Every vertex must receive the same coordinates from each incident cell.
pub fn immerse<T>(
    r: &RigidQuad,
    w: &WidthAssignment<T>,
    order: Traversal,
    same: impl Fn(&T, &T) -> bool,
) -> Result<Immersion<T>, Error>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Zero,
{
    let s = strips(r);
    let c = r.cells();
    if w.rows.len() != s.rows || w.cols.len() != s.cols {
        return Err(Error::Malformed("width vector does not match the strips".into()));
    }
    let dims = |i: usize| (w.cols[s.col_of[i]].clone(), w.rows[s.row_of[i]].clone());
    let mut pos: Vec<Option<[T; 2]>> = vec![None; c.len()];
    let root = r.root_cell();
    let (rw, _) = dims(root);
    pos[root] = Some([T::zero() - rw, T::zero()]);
    let mut work = VecDeque::from([root]);
    while let Some(i) = match order {
        Traversal::BreadthFirst => work.pop_front(),
        Traversal::DepthFirstReversed => work.pop_back(),
    } {
        let [x, y] = pos[i].clone().expect("placed");
        let (wi, hi) = dims(i);
        let dirs: Vec<usize> = match order {
            Traversal::BreadthFirst => vec![E, N, W, S],
            Traversal::DepthFirstReversed => vec![S, W, N, E],
        };
        for d in dirs {
            let j = c[i][d];
            if j == NONE || pos[j].is_some() {
                continue;
            }
            let (wj, hj) = dims(j);
            let p = match d {
                E => [x.clone() + wi.clone(), y.clone()],
                N => [x.clone(), y.clone() + hi.clone()],
                W => [x.clone() - wj, y.clone()],
                _ => [x.clone(), y.clone() - hj],
            };
            pos[j] = Some(p);
            work.push_back(j);
        }
    }
    let mut rects = Vec::with_capacity(c.len());
    let mut vertices: Vec<Option<[T; 2]>> = vec![None; r.vertex_count()];
    for i in 0..c.len() {
        let [x, y] = pos[i].clone().ok_or(Error::Malformed("disconnected cells".into()))?;
        let (wi, hi) = dims(i);
        // corners at the origins of darts 4i+0..4i+3: SW, SE, NE, NW
        let corners = [
            [x.clone(), y.clone()],
            [x.clone() + wi.clone(), y.clone()],
            [x.clone() + wi.clone(), y.clone() + hi.clone()],
            [x.clone(), y.clone() + hi.clone()],
        ];
        for (k, p) in corners.into_iter().enumerate() {
            let v = r.vertex_of(4 * i + k);
            match &vertices[v] {
                None => vertices[v] = Some(p),
                Some(q) => {
                    if !(same(&q[0], &p[0]) && same(&q[1], &p[1])) {
                        return Err(Error::InconsistentPlacement(v));
                    }
                }
            }
        }
        rects.push(([x, y], [wi, hi]));
    }
    let vertices: Vec<[T; 2]> = vertices.into_iter().map(|v| v.expect("every vertex lies on a cell")).collect();
    Ok(Immersion { rects, vertices, root_vertex: r.root_vertex() })
}

/// Floating-point immersion with breadth-first traversal and tolerance 1e-9.
pub fn immerse_f64(r: &RigidQuad, w: &WidthAssignment<f64>) -> Result<Immersion<f64>, Error> {
    immerse(r, w, Traversal::BreadthFirst, |a, b| (a - b).abs() <= 1e-9)
}

/// Exact immersion.
pub fn immerse_exact(r: &RigidQuad, w: &WidthAssignment<BigRational>) -> Result<Immersion<BigRational>, Error> {
    immerse(r, w, Traversal::BreadthFirst, |a, b| a == b)
}

/// Largest coordinate difference between two immersions.
pub fn max_deviation(a: &Immersion<f64>, b: &Immersion<f64>) -> f64 {
    a.vertices
        .iter()
        .zip(&b.vertices)
        .map(|(p, q)| (p[0] - q[0]).abs().max((p[1] - q[1]).abs()))
        .fold(0.0, f64::max)
}

/// Length of the boundary contour of an immersion, summing the lengths of the outer darts.
pub fn boundary_length<T>(r: &RigidQuad, imm: &Immersion<T>) -> T
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Zero + PartialOrd,
{
    let m = r.map();
    let abs = |x: T| if x < T::zero() { T::zero() - x } else { x };
    r.boundary().iter().fold(T::zero(), |acc, &d| {
        let a = &imm.vertices[r.vertex_of(d)];
        let b = &imm.vertices[r.vertex_of(m.twin[d])];
        acc + abs(b[0].clone() - a[0].clone()) + abs(b[1].clone() - a[1].clone())
    })
}

/// Volume of the moduli space of rectilinear disks with n + 1 convex corners, as the
/// coefficient of L^(2n-5) and the list of width dimensions found per combinatorial type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub n: usize,
    pub degree: usize,
    pub coefficient: BigRational,
    pub types: usize,
    pub dimensions_ok: bool,
}

/// Sums over the given types the push-forward of (2n-5)! dw on the width cone under w -> sum(w),
/// whose density at L is (2n-5)! L^(k-1) / (k-1)! for k widths.
pub fn volume_check(n: usize, types: &[RigidQuad]) -> Result<VolumeReport, Error> {
    if n < 3 {
        return Err(Error::OutOfDomain);
    }
    let fact = |m: usize| (1..=m).fold(BigInt::one(), |a, b| a * BigInt::from(b));
    let degree = 2 * n - 5;
    let mut coefficient = BigRational::zero();
    let mut dimensions_ok = true;
    for r in types {
        if r.n() != n {
            return Err(Error::NotInClass(format!("type with n = {} in volume for n = {n}", r.n())));
        }
        let s = strips(r);
        let k = s.rows + s.cols;
        dimensions_ok &= k == 2 * n - 4;
        if k >= 1 && k - 1 == degree {
            coefficient += BigRational::new(fact(degree), fact(k - 1));
        }
    }
    Ok(VolumeReport { n, degree, coefficient, types: types.len(), dimensions_ok })
}

/// SVG style.
#[derive(Clone, Debug)]
pub struct Style {
    pub scale: f64,
    pub fill: String,
    pub opacity: f64,
    pub stroke: String,
    pub margin: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style { scale: 20.0, fill: "#3a6ea5".into(), opacity: 0.35, stroke: "#1b1b1b".into(), margin: 10.0 }
    }
}

/// One translucent rectangle per cell, so overlapping sheets darken; the root corner is a red dot.
pub fn render_svg(imm: &Immersion<f64>, style: &Style) -> String {
    let (lo, hi) = imm.bounding_box();
    let k = style.scale;
    let m = style.margin;
    let width = (hi[0] - lo[0]) * k + 2.0 * m;
    let height = (hi[1] - lo[1]) * k + 2.0 * m;
    // y axis flipped so that the disk sits above the root
    let tx = |x: f64| (x - lo[0]) * k + m;
    let ty = |y: f64| (hi[1] - y) * k + m;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(
        s,
        r#"<g fill="{}" fill-opacity="{}" stroke="{}" stroke-width="0.5">"#,
        style.fill, style.opacity, style.stroke
    );
    for ([x, y], [w, h]) in &imm.rects {
        let _ = writeln!(s, r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#, tx(*x), ty(y + h), w * k, h * k);
    }
    let _ = writeln!(s, "</g>");
    let rv = imm.vertices[imm.root_vertex];
    let _ = writeln!(s, r##"<circle cx="{:.3}" cy="{:.3}" r="3" fill="#d62728"/>"##, tx(rv[0]), ty(rv[1]));
    let _ = writeln!(s, "</svg>");
    s
}
