use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::colorful::{from_parts, ColorfulQuad, Kind};
use crate::error::Error;
use crate::planar::PlanarMap;
use crate::rigid::{Cell, RigidQuad, NONE, S, W};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    G { left: usize, right: usize },
    R(Vec<Letter>),
    L(Vec<Letter>),
}

impl Step {
    pub fn downs(w: &[Letter]) -> usize {
        w.iter().filter(|&&l| l == Letter::Down).count()
    }

    pub fn ups(w: &[Letter]) -> usize {
        w.iter().filter(|&&l| l == Letter::Up).count()
    }

    /// Sizes of the open sides created when applied to a side of size `s`, in frontier order.
    pub fn children(&self, s: usize) -> Option<Vec<usize>> {
        let v = match self {
            Step::G { left, right } => {
                if left + right + 1 != s {
                    return None;
                }
                vec![*right, *left]
            }
            Step::R(w) => vec![Self::ups(w), s + Self::downs(w)],
            Step::L(w) => vec![s + Self::downs(w), Self::ups(w)],
        };
        Some(v.into_iter().filter(|&x| x > 0).collect())
    }

    pub fn is_l(&self) -> bool {
        matches!(self, Step::L(_))
    }
}

fn word_str(w: &[Letter]) -> String {
    w.iter().map(|l| if *l == Letter::Up { 'u' } else { 'd' }).collect()
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::G { left, right } => write!(f, "G({left},{right})"),
            Step::R(w) => write!(f, "R({})", word_str(w)),
            Step::L(w) => write!(f, "L({})", word_str(w)),
        }
    }
}

/// Exploration sequence of a base-p object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Trace {
    pub p: usize,
    pub steps: Vec<Step>,
}

impl Trace {
    /// Frontier sizes after each prefix; errors on a mismatch or an incomplete trace.
    pub fn check(&self) -> Result<(), Error> {
        let mut front = vec![self.p];
        for (i, st) in self.steps.iter().enumerate() {
            if front.is_empty() {
                return Err(Error::FrontierMismatch(i));
            }
            let s = front.remove(0);
            let ch = st.children(s).ok_or(Error::FrontierMismatch(i))?;
            front.splice(0..0, ch);
        }
        if !front.is_empty() || self.p == 0 {
            return Err(Error::IncompleteTrace);
        }
        Ok(())
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={};", self.p)?;
        for s in &self.steps {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

impl FromStr for Trace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let (head, rest) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let p = head
            .trim()
            .strip_prefix("p=")
            .ok_or_else(|| bad("missing p="))?
            .trim()
            .parse()
            .map_err(|_| bad("bad p"))?;
        let mut steps = Vec::new();
        for tok in rest.split_whitespace() {
            let (kind, arg) = tok.split_once('(').ok_or_else(|| bad(tok))?;
            let arg = arg.strip_suffix(')').ok_or_else(|| bad(tok))?;
            let word = || -> Result<Vec<Letter>, Error> {
                arg.chars()
                    .map(|c| match c {
                        'u' => Ok(Letter::Up),
                        'd' => Ok(Letter::Down),
                        _ => Err(bad(tok)),
                    })
                    .collect()
            };
            steps.push(match kind {
                "G" => {
                    let (a, b) = arg.split_once(',').ok_or_else(|| bad(tok))?;
                    Step::G {
                        left: a.trim().parse().map_err(|_| bad(tok))?,
                        right: b.trim().parse().map_err(|_| bad(tok))?,
                    }
                }
                "R" => Step::R(word()?),
                "L" => Step::L(word()?),
                _ => return Err(bad(tok)),
            });
        }
        Ok(Trace { p, steps })
    }
}

/// Open side of a partial rigid quadrangulation: stub cells from local left to right,
/// local up direction, and ray ports between consecutive stubs (true = ray pointing down).
#[derive(Clone, Debug)]
struct OpenSide {
    cells: Vec<usize>,
    up: usize,
    ports: Vec<bool>,
}

impl OpenSide {
    fn right(&self) -> usize {
        (self.up + 3) % 4
    }

    fn down(&self) -> usize {
        (self.up + 2) % 4
    }

    fn segments(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, &d) in self.ports.iter().enumerate() {
            if d {
                out.push((start, i + 1));
                start = i + 1;
            }
        }
        out.push((start, self.cells.len()));
        out
    }
}

struct Builder {
    cells: Vec<Cell>,
}

impl Builder {
    fn new_cell(&mut self) -> usize {
        self.cells.push([NONE; 4]);
        self.cells.len() - 1
    }

    fn link(&mut self, a: usize, dir: usize, b: usize) {
        self.cells[a][dir] = b;
        self.cells[b][(dir + 2) % 4] = a;
    }

    fn row(&mut self, n: usize, rt: usize) -> Vec<usize> {
        let v: Vec<usize> = (0..n).map(|_| self.new_cell()).collect();
        for i in 1..n {
            self.link(v[i - 1], rt, v[i]);
        }
        v
    }

    fn glue(&mut self, s: &OpenSide, st: &Step, idx: usize) -> Result<Vec<OpenSide>, Error> {
        let u = s.up;
        let rt = s.right();
        let dn = s.down();
        let w = s.cells.len();
        let segs = s.segments();
        match st {
            Step::G { left, right } => {
                if left + right + 1 != segs.len() {
                    return Err(Error::FrontierMismatch(idx));
                }
                let mut res = Vec::new();
                if *right > 0 {
                    let lo = segs[left + 1].0;
                    let row = self.row(w - lo, rt);
                    for (i, &c) in row.iter().enumerate() {
                        self.link(s.cells[lo + i], u, c);
                    }
                    res.push(OpenSide { cells: row, up: u, ports: s.ports[lo..w - 1].to_vec() });
                }
                if *left > 0 {
                    let hi = segs[left - 1].1;
                    let row = self.row(hi, rt);
                    for (i, &c) in row.iter().enumerate() {
                        self.link(s.cells[i], u, c);
                    }
                    res.push(OpenSide { cells: row, up: u, ports: s.ports[..hi - 1].to_vec() });
                }
                Ok(res)
            }
            Step::R(word) => {
                let m = word.len();
                let y = self.row(w + m + 1, rt);
                for x in 0..w {
                    self.link(s.cells[x], u, y[x]);
                }
                let mut top = s.ports.clone();
                top.push(false);
                top.extend(word.iter().map(|&l| l == Letter::Down));
                let mut res = Vec::new();
                if let Some(j) = word.iter().position(|&l| l == Letter::Up) {
                    let xs: Vec<usize> = (w + j + 1..=w + m).rev().collect();
                    let h = self.row(xs.len(), (rt + 2) % 4);
                    for (i, &x) in xs.iter().enumerate() {
                        self.link(y[x], dn, h[i]);
                    }
                    let ports = (j + 1..m).rev().map(|i| word[i] == Letter::Up).collect();
                    res.push(OpenSide { cells: h, up: dn, ports });
                }
                res.push(OpenSide { cells: y, up: u, ports: top });
                Ok(res)
            }
            Step::L(word) => {
                let m = word.len();
                // y[i] sits at local x = i - m - 1
                let y = self.row(w + m + 1, rt);
                for x in 0..w {
                    self.link(s.cells[x], u, y[x + m + 1]);
                }
                let mut top: Vec<bool> = word.iter().map(|&l| l == Letter::Down).collect();
                top.push(false);
                top.extend(s.ports.iter().copied());
                let mut res = vec![OpenSide { cells: y.clone(), up: u, ports: top }];
                if let Some(tc) = word.iter().rposition(|&l| l == Letter::Up) {
                    let xs: Vec<usize> = (0..=tc).rev().collect();
                    let h = self.row(xs.len(), (rt + 2) % 4);
                    for (i, &x) in xs.iter().enumerate() {
                        self.link(y[x], dn, h[i]);
                    }
                    let ports = (0..tc).rev().map(|t| word[t] == Letter::Up).collect();
                    res.push(OpenSide { cells: h, up: dn, ports });
                }
                Ok(res)
            }
        }
    }
}

/// Builds the rigid quadrangulation with the given row-by-row exploration.
pub fn assemble_rigid(t: &Trace) -> Result<RigidQuad, Error> {
    t.check()?;
    let mut b = Builder { cells: Vec::new() };
    let base = b.row(t.p, 0);
    let mut front = vec![OpenSide { cells: base.clone(), up: 1, ports: vec![true; t.p - 1] }];
    for (i, st) in t.steps.iter().enumerate() {
        let s = front.remove(0);
        let new = b.glue(&s, st, i)?;
        front.splice(0..0, new);
    }
    RigidQuad::from_cells(b.cells, base[t.p - 1])
}

/// Row-by-row exploration of a base-p rigid quadrangulation. Also returns, per step,
/// the boundary side it reveals as (cell, facing direction).
pub fn explore_rigid_detailed(r: &RigidQuad) -> Result<(Trace, Vec<(usize, usize)>), Error> {
    let cells = r.cells();
    let mut base = vec![r.root_cell()];
    loop {
        let c = *base.last().unwrap();
        let nx = cells[c][W];
        if nx == NONE {
            break;
        }
        if cells[nx][S] != NONE {
            return Err(Error::NotInClass("base is not a single side".into()));
        }
        base.push(nx);
    }
    base.reverse();
    let p = base.len();
    let port = |c: usize, rt: usize| r.orientation()[RigidQuad::side_dart(c, rt)] < 0;
    let up = |c: usize, d: usize| cells[c][d];
    let mut front = vec![OpenSide { cells: base, up: 1, ports: vec![true; p - 1] }];
    let mut steps = Vec::new();
    let mut revealed = Vec::new();
    let bad = |m: &str| Error::MalformedState(m.to_string());
    while !front.is_empty() {
        let s = front.remove(0);
        let (u, rt, dn) = (s.up, s.right(), s.down());
        let w = s.cells.len();
        for i in 0..w - 1 {
            if port(s.cells[i], rt) != s.ports[i] {
                return Err(bad("port orientation mismatch"));
            }
        }
        let segs = s.segments();
        let gaps: Vec<usize> = (0..segs.len()).filter(|&i| up(s.cells[segs[i].0], u) == NONE).collect();
        let mut new = Vec::new();
        if let Some(&a) = gaps.first() {
            if gaps.len() > 1 {
                return Err(bad("several gaps"));
            }
            let b = segs.len() - 1 - a;
            revealed.push((s.cells[segs[a].0], u));
            steps.push(Step::G { left: a, right: b });
            for i in 0..w {
                let inside = i >= segs[a].0 && i < segs[a].1;
                if inside != (up(s.cells[i], u) == NONE) {
                    return Err(bad("gap is not a segment"));
                }
            }
            if b > 0 {
                let lo = segs[a + 1].0;
                let row = s.cells[lo..].iter().map(|&c| up(c, u)).collect();
                new.push(OpenSide { cells: row, up: u, ports: s.ports[lo..w - 1].to_vec() });
            }
            if a > 0 {
                let hi = segs[a - 1].1;
                let row = s.cells[..hi].iter().map(|&c| up(c, u)).collect();
                new.push(OpenSide { cells: row, up: u, ports: s.ports[..hi - 1].to_vec() });
            }
        } else {
            let ys: Vec<usize> = s.cells.iter().map(|&c| up(c, u)).collect();
            for i in 1..w {
                if cells[ys[i - 1]][rt] != ys[i] {
                    return Err(bad("row above the side is broken"));
                }
            }
            let is_r = cells[ys[w - 1]][rt] != NONE;
            let side = if is_r { rt } else { (rt + 2) % 4 };
            let mut ext = Vec::new();
            let mut c = cells[if is_r { ys[w - 1] } else { ys[0] }][side];
            while c != NONE {
                ext.push(c);
                c = cells[c][side];
            }
            if ext.is_empty() {
                return Err(bad("no row extension"));
            }
            let m = ext.len() - 1;
            if cells[ext[0]][dn] != NONE {
                return Err(bad("cell below the first extension cell"));
            }
            revealed.push((ext[0], dn));
            if is_r {
                let row: Vec<usize> = ys.iter().copied().chain(ext.iter().copied()).collect();
                let word: Vec<Letter> = (0..m)
                    .map(|i| if port(row[w + i], rt) { Letter::Down } else { Letter::Up })
                    .collect();
                let mut top = s.ports.clone();
                top.push(false);
                top.extend(word.iter().map(|&l| l == Letter::Down));
                if let Some(j) = word.iter().position(|&l| l == Letter::Up) {
                    for x in w..=w + m {
                        if (cells[row[x]][dn] == NONE) != (x <= w + j) {
                            return Err(bad("bottom row mismatch"));
                        }
                    }
                    let h = (w + j + 1..=w + m).rev().map(|x| cells[row[x]][dn]).collect();
                    let ports = (j + 1..m).rev().map(|i| word[i] == Letter::Up).collect();
                    new.push(OpenSide { cells: h, up: dn, ports });
                } else if ext.iter().any(|&c| cells[c][dn] != NONE) {
                    return Err(bad("unexpected bottom row"));
                }
                new.push(OpenSide { cells: row, up: u, ports: top });
                steps.push(Step::R(word));
            } else {
                let row: Vec<usize> = ext.iter().rev().copied().chain(ys.iter().copied()).collect();
                let word: Vec<Letter> = (0..m)
                    .map(|t| if port(row[t], rt) { Letter::Down } else { Letter::Up })
                    .collect();
                let mut top: Vec<bool> = word.iter().map(|&l| l == Letter::Down).collect();
                top.push(false);
                top.extend(s.ports.iter().copied());
                new.push(OpenSide { cells: row.clone(), up: u, ports: top });
                if let Some(tc) = word.iter().rposition(|&l| l == Letter::Up) {
                    for (x, &c) in row.iter().enumerate().take(m + 1) {
                        if (cells[c][dn] == NONE) != (x > tc) {
                            return Err(bad("bottom row mismatch"));
                        }
                    }
                    let h = (0..=tc).rev().map(|x| cells[row[x]][dn]).collect();
                    let ports = (0..tc).rev().map(|t| word[t] == Letter::Up).collect();
                    new.push(OpenSide { cells: h, up: dn, ports });
                } else if ext.iter().any(|&c| cells[c][dn] != NONE) {
                    return Err(bad("unexpected bottom row"));
                }
                steps.push(Step::L(word));
            }
        }
        front.splice(0..0, new);
    }
    Ok((Trace { p, steps }, revealed))
}

pub fn explore_rigid(r: &RigidQuad) -> Result<Trace, Error> {
    Ok(explore_rigid_detailed(r)?.0)
}

/// First step of the row-by-row exploration.
pub fn detect_step_rigid(r: &RigidQuad) -> Result<Step, Error> {
    explore_rigid(r)?.steps.into_iter().next().ok_or(Error::MalformedState("empty".into()))
}

/// Colorful polygon complex under construction: faces as dart cycles, holes as clockwise
/// dart lists (hole on the right) whose first dart is the marked edge.
struct Polygons {
    twin: Vec<usize>,
    label: Vec<i64>,
    faces: Vec<Vec<usize>>,
}

impl Polygons {
    fn face(&mut self, labels: &[i64]) -> Vec<usize> {
        let start = self.twin.len();
        let ds: Vec<usize> = (start..start + labels.len()).collect();
        self.twin.extend(std::iter::repeat_n(NONE, labels.len()));
        self.label.extend_from_slice(labels);
        self.faces.push(ds.clone());
        ds
    }

    fn pair(&mut self, a: usize, b: usize, idx: usize) -> Result<(), Error> {
        let end = |d: usize, p: &Polygons| {
            let f = p.faces.iter().find(|f| f.contains(&d)).unwrap();
            let i = f.iter().position(|&x| x == d).unwrap();
            p.label[f[(i + 1) % f.len()]]
        };
        if self.label[a] != end(b, self) || self.label[b] != end(a, self) {
            return Err(Error::LabelClash(idx));
        }
        self.twin[a] = b;
        self.twin[b] = a;
        Ok(())
    }
}

/// Colorful twin of a rigid exploration: glues the submaps of each step into the first hole.
pub fn assemble_colorful(t: &Trace) -> Result<ColorfulQuad, Error> {
    t.check()?;
    let p = t.p;
    let mut g = Polygons { twin: Vec::new(), label: Vec::new(), faces: Vec::new() };
    let labels: Vec<i64> = (0..2 * p).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect();
    let e0 = g.face(&labels);
    let mut holes: Vec<Vec<usize>> = vec![e0.clone()];
    for (idx, st) in t.steps.iter().enumerate() {
        let h = holes.remove(0);
        let c0 = h[0];
        let r = g.label[c0] - 1;
        let mut new = Vec::new();
        match st {
            Step::G { left, .. } => {
                let s = h.len() / 2;
                let j = 2 * s - 2 * left - 1;
                g.pair(c0, h[j], idx)?;
                let mut h1 = Vec::new();
                if j >= 2 {
                    h1.push(h[j - 1]);
                    h1.extend_from_slice(&h[1..j - 1]);
                }
                new.push(h1);
                new.push(h[j + 1..].to_vec());
            }
            Step::R(word) => {
                let f = g.face(&[r, r + 1, r, r - 1]);
                g.pair(f[0], c0, idx)?;
                let mut exit = f[3];
                let mut inner = Vec::new();
                let mut zside = Vec::new();
                for &l in word {
                    let q = match l {
                        Letter::Down => g.face(&[r, r - 1, r, r + 1]),
                        Letter::Up => g.face(&[r, r - 1, r - 2, r - 1]),
                    };
                    g.pair(q[0], exit, idx)?;
                    match l {
                        Letter::Down => {
                            exit = q[1];
                            zside.push((q[2], q[3]));
                        }
                        Letter::Up => {
                            exit = q[3];
                            inner.push(q[1]);
                            inner.push(q[2]);
                        }
                    }
                }
                g.pair(exit, f[2], idx)?;
                let mut h2 = vec![f[1]];
                for &(a, b) in zside.iter().rev() {
                    h2.push(a);
                    h2.push(b);
                }
                h2.extend_from_slice(&h[1..]);
                new.push(inner);
                new.push(h2);
            }
            Step::L(word) => {
                let f = g.face(&[r, r + 1, r + 2, r + 1]);
                g.pair(f[0], c0, idx)?;
                let mut exit = f[2];
                let mut inner = Vec::new();
                let mut oside = Vec::new();
                for &l in word {
                    let q = match l {
                        Letter::Down => g.face(&[r + 1, r + 2, r + 1, r]),
                        Letter::Up => g.face(&[r + 1, r + 2, r + 3, r + 2]),
                    };
                    g.pair(q[0], exit, idx)?;
                    match l {
                        Letter::Down => {
                            exit = q[1];
                            oside.push((q[2], q[3]));
                        }
                        Letter::Up => {
                            exit = q[3];
                            inner.push(q[1]);
                            inner.push(q[2]);
                        }
                    }
                }
                g.pair(exit, f[1], idx)?;
                let mut h1 = vec![f[3]];
                h1.extend_from_slice(&h[1..]);
                for &(a, b) in oside.iter().rev() {
                    h1.push(a);
                    h1.push(b);
                }
                if let Some(last) = inner.pop() {
                    inner.insert(0, last);
                }
                new.push(h1);
                new.push(inner);
            }
        }
        let new: Vec<Vec<usize>> = new.into_iter().filter(|h| !h.is_empty()).collect();
        holes.splice(0..0, new);
    }
    if !holes.is_empty() {
        return Err(Error::IncompleteTrace);
    }
    let map = PlanarMap::from_faces(g.twin, &g.faces, e0[0])?;
    Ok(from_parts(map, g.label, Kind::Disk))
}

/// Peeling exploration of a colorful disk whose boundary reads 1,0,1,0,... from the root.
pub fn peel(q: &ColorfulQuad) -> Result<Trace, Error> {
    let m = q.map();
    let lab = |d: usize| q.label(d);
    let b = m.face_of(m.root);
    let p = b.len() / 2;
    for (i, &d) in b.iter().enumerate() {
        if lab(d) != if i % 2 == 0 { 1 } else { 0 } {
            return Err(Error::NotInClass("boundary labels are not 1,0,1,0,...".into()));
        }
    }
    let (fid, _) = m.faces();
    let mut explored = vec![false; fid.iter().max().unwrap() + 1];
    explored[fid[m.root]] = true;
    let mut holes = vec![b];
    let mut steps = Vec::new();
    let bad = |s: &str| Error::MalformedState(s.to_string());
    let fnx = |d: usize| m.face_next(d);
    while !holes.is_empty() {
        let h = holes.remove(0);
        let c0 = h[0];
        let r = lab(c0) - 1;
        let t = m.twin[c0];
        let mut new = Vec::new();
        if let Some(j) = h.iter().position(|&x| x == t) {
            let s = h.len() / 2;
            if j % 2 == 0 {
                return Err(bad("G gluing with even offset"));
            }
            let left = (2 * s - 1 - j) / 2;
            steps.push(Step::G { left, right: s - 1 - left });
            let mut h1 = Vec::new();
            if j >= 2 {
                h1.push(h[j - 1]);
                h1.extend_from_slice(&h[1..j - 1]);
            }
            new.push(h1);
            new.push(h[j + 1..].to_vec());
        } else {
            let mark = |d: usize, ex: &mut Vec<bool>| -> Result<(), Error> {
                let f = fid[d];
                if ex[f] {
                    return Err(Error::MalformedState("face explored twice".into()));
                }
                ex[f] = true;
                Ok(())
            };
            let s0 = t;
            let s1 = fnx(s0);
            let s2 = fnx(s1);
            let s3 = fnx(s2);
            mark(s0, &mut explored)?;
            match lab(s2) - r {
                0 => {
                    let mut exit = s3;
                    let mut word = Vec::new();
                    let mut inner = Vec::new();
                    let mut zside = Vec::new();
                    loop {
                        let tt = m.twin[exit];
                        if tt == s2 {
                            break;
                        }
                        mark(tt, &mut explored)?;
                        let (t1, t2) = (fnx(tt), fnx(fnx(tt)));
                        let t3 = fnx(t2);
                        match lab(t2) - r {
                            0 => {
                                word.push(Letter::Down);
                                exit = t1;
                                zside.push((t2, t3));
                            }
                            -2 => {
                                word.push(Letter::Up);
                                exit = t3;
                                inner.push(t1);
                                inner.push(t2);
                            }
                            _ => return Err(bad("strip quad labels")),
                        }
                    }
                    let mut h2 = vec![s1];
                    for &(a, b) in zside.iter().rev() {
                        h2.push(a);
                        h2.push(b);
                    }
                    h2.extend_from_slice(&h[1..]);
                    new.push(inner);
                    new.push(h2);
                    steps.push(Step::R(word));
                }
                2 => {
                    let mut exit = s2;
                    let mut word = Vec::new();
                    let mut inner = Vec::new();
                    let mut oside = Vec::new();
                    loop {
                        let tt = m.twin[exit];
                        if tt == s1 {
                            break;
                        }
                        mark(tt, &mut explored)?;
                        let (t1, t2) = (fnx(tt), fnx(fnx(tt)));
                        let t3 = fnx(t2);
                        match lab(t2) - r {
                            1 => {
                                word.push(Letter::Down);
                                exit = t1;
                                oside.push((t2, t3));
                            }
                            3 => {
                                word.push(Letter::Up);
                                exit = t3;
                                inner.push(t1);
                                inner.push(t2);
                            }
                            _ => return Err(bad("strip quad labels")),
                        }
                    }
                    let mut h1 = vec![s3];
                    h1.extend_from_slice(&h[1..]);
                    for &(a, b) in oside.iter().rev() {
                        h1.push(a);
                        h1.push(b);
                    }
                    if let Some(last) = inner.pop() {
                        inner.insert(0, last);
                    }
                    new.push(h1);
                    new.push(inner);
                    steps.push(Step::L(word));
                }
                _ => return Err(bad("first face labels")),
            }
        }
        let new: Vec<Vec<usize>> = new.into_iter().filter(|h| !h.is_empty()).collect();
        holes.splice(0..0, new);
    }
    if explored.iter().any(|&e| !e) {
        return Err(bad("unexplored faces remain"));
    }
    Ok(Trace { p, steps })
}

/// First step of the peeling exploration.
pub fn detect_step_colorful(q: &ColorfulQuad) -> Result<Step, Error> {
    peel(q)?.steps.into_iter().next().ok_or(Error::MalformedState("empty".into()))
}
