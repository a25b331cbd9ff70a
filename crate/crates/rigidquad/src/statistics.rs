use std::collections::VecDeque;

use serde::Serialize;

use crate::bijection::{expand_with_map, psi};
use crate::colorful::ColorfulQuad;
use crate::error::Error;
use crate::exploration::{explore_rigid_detailed, Step};
use crate::rigid::{Corner, RigidQuad, E, NONE, S};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tangency {
    NonTangential,
    LeftTangential,
    RightTangential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelLine {
    /// Crossed darts, each with the face being left on its left.
    pub darts: Vec<usize>,
    /// Lower label of the crossed edges.
    pub low: i64,
    pub direction: Direction,
    pub length: usize,
    pub nesting_depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Extremum {
    Min(usize),
    Max(usize),
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideClassification {
    /// Per side, in the order of `RigidQuad::sides`.
    pub sides: Vec<Tangency>,
    /// Per non-root convex corner: vertex, tag, degree (0 for non-tangential corners).
    pub corners: Vec<(usize, Tangency, usize)>,
}

fn tag_of(st: &Step) -> Tangency {
    match st {
        Step::G { .. } => Tangency::NonTangential,
        Step::R(_) => Tangency::RightTangential,
        Step::L(_) => Tangency::LeftTangential,
    }
}

fn swap(t: Tangency) -> Tangency {
    match t {
        Tangency::LeftTangential => Tangency::RightTangential,
        Tangency::RightTangential => Tangency::LeftTangential,
        x => x,
    }
}

/// Tags of the horizontal sides: (cell, facing) of the revealed side and its tag.
fn horizontal_tags(r: &RigidQuad) -> Result<Vec<(usize, usize, Tangency)>, Error> {
    let (x, back) = expand_with_map(r);
    let (t, rev) = explore_rigid_detailed(&x)?;
    let mut out = Vec::new();
    for (st, &(c, f)) in t.steps.iter().zip(&rev) {
        let c0 = back[c];
        if c0 == NONE {
            return Err(Error::MalformedState("revealed side on the added cell".into()));
        }
        out.push((c0, f, tag_of(st)));
    }
    Ok(out)
}

/// Tangency of every side (horizontal ones from the exploration of the expansion,
/// vertical ones from the mirror image) and of every non-root convex corner.
pub fn classify_sides(r: &RigidQuad) -> Result<SideClassification, Error> {
    let sides = r.sides();
    let idx = r.side_index();
    let mut tags: Vec<Option<Tangency>> = vec![None; sides.len()];
    let mut set = |c: usize, f: usize, t: Tangency| -> Result<(), Error> {
        let o = r.map().twin[RigidQuad::side_dart(c, f)];
        let i = idx[o];
        if i == NONE || tags[i].is_some() {
            return Err(Error::MalformedState("side revealed twice or not a boundary side".into()));
        }
        tags[i] = Some(t);
        Ok(())
    };
    for (c, f, t) in horizontal_tags(r)? {
        set(c, f, t)?;
    }
    for (c, f, t) in horizontal_tags(&r.mirror())? {
        set(c, 3 - f, swap(t))?;
    }
    let sides_t: Vec<Tangency> = tags
        .into_iter()
        .map(|t| t.ok_or(Error::MalformedState("unclassified side".into())))
        .collect::<Result<_, _>>()?;
    let m = r.map();
    let mut corners = Vec::new();
    let ns = sides.len();
    for i in 0..ns {
        // corner at the clockwise end of side i, between sides i and i+1
        let d = *sides[i].darts.last().unwrap();
        let v = r.vertex_of(m.twin[d]);
        if v == r.root_vertex() || r.class(v) != Corner::Convex {
            continue;
        }
        let j = (i + 1) % ns;
        let mut tag = Tangency::NonTangential;
        let mut deg = 0;
        for k in [i, j] {
            if sides_t[k] != Tangency::NonTangential {
                if tag != Tangency::NonTangential && tag != sides_t[k] {
                    return Err(Error::DictionaryViolation("corner adjacent to both chiralities".into()));
                }
                if tag == sides_t[k] {
                    return Err(Error::DictionaryViolation("corner adjacent to two tangential sides".into()));
                }
                tag = sides_t[k];
                deg = sides[k].darts.len();
            }
        }
        corners.push((v, tag, deg));
    }
    Ok(SideClassification { sides: sides_t, corners })
}

/// Extension of a tangential side: its darts followed by the ray continuing it from its far
/// endpoint when that endpoint is concave. Returns (ray darts, total length).
pub fn side_extension(r: &RigidQuad, side: usize, tag: Tangency) -> Result<(Vec<usize>, usize), Error> {
    let s = &r.sides()[side];
    let m = r.map();
    let start = match tag {
        Tangency::NonTangential => return Err(Error::NotTangential),
        Tangency::RightTangential => {
            let d0 = s.darts[0];
            (r.class(r.vertex_of(d0)) == Corner::Concave).then(|| r.straight(d0))
        }
        Tangency::LeftTangential => {
            let dl = m.twin[*s.darts.last().unwrap()];
            (r.class(r.vertex_of(dl)) == Corner::Concave).then(|| r.straight(dl))
        }
    };
    let mut ray = Vec::new();
    if let Some(mut x) = start {
        ray.push(x);
        while r.class(r.vertex_of(m.twin[x])) == Corner::Inner {
            x = r.straight(m.twin[x]);
            ray.push(x);
        }
    }
    let len = s.darts.len() + ray.len();
    Ok((ray, len))
}

/// Cells reachable from the root cell without crossing the given darts.
fn reachable_cells(r: &RigidQuad, cut: &[usize]) -> Vec<bool> {
    let mut blocked = vec![false; r.map().darts()];
    for &d in cut {
        blocked[d] = true;
        blocked[r.map().twin[d]] = true;
    }
    let c = r.cells();
    let mut seen = vec![false; c.len()];
    seen[r.root_cell()] = true;
    let mut q = VecDeque::from([r.root_cell()]);
    while let Some(x) = q.pop_front() {
        for f in 0..4 {
            let y = c[x][f];
            if y != NONE && !seen[y] && !blocked[RigidQuad::side_dart(x, f)] {
                seen[y] = true;
                q.push_back(y);
            }
        }
    }
    seen
}

/// Tangential sides with (tag, extension length, nesting depth): the number of other
/// tangential sides whose extension separates this side from the root corner.
pub fn tangential_spectrum(r: &RigidQuad, cls: &SideClassification) -> Result<Vec<(Tangency, usize, usize)>, Error> {
    let sides = r.sides();
    let m = r.map();
    let tang: Vec<usize> = (0..sides.len()).filter(|&i| cls.sides[i] != Tangency::NonTangential).collect();
    let ext: Vec<(Vec<usize>, usize)> =
        tang.iter().map(|&i| side_extension(r, i, cls.sides[i])).collect::<Result<_, _>>()?;
    let side_cells = |i: usize| -> Vec<usize> { sides[i].darts.iter().map(|&d| m.twin[d] / 4).collect() };
    let mut depth = vec![0; tang.len()];
    for (a, (ray, _)) in ext.iter().enumerate() {
        if ray.is_empty() {
            continue;
        }
        let seen = reachable_cells(r, ray);
        for (b, &sb) in tang.iter().enumerate() {
            if a == b {
                continue;
            }
            let cs = side_cells(sb);
            let k = cs.iter().filter(|&&c| seen[c]).count();
            if k == 0 {
                depth[b] += 1;
            } else if k != cs.len() {
                return Err(Error::DictionaryViolation("extension cuts through a tangential side".into()));
            }
        }
    }
    Ok(tang.iter().enumerate().map(|(k, &i)| (cls.sides[i], ext[k].1, depth[k])).collect())
}

fn vertices_reachable(q: &ColorfulQuad, from: usize, blocked: &[bool]) -> Vec<bool> {
    let m = q.map();
    let (vid, verts) = m.vertices();
    let mut seen = vec![false; verts.len()];
    let s = vid[from];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &d in &verts[v] {
            if blocked[d] {
                continue;
            }
            let w = vid[m.twin[d]];
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Level lines of a colorful sphere with direction and nesting depth relative to the root face.
pub fn level_lines(q: &ColorfulQuad) -> Vec<LevelLine> {
    let m = q.map();
    let nd = m.darts();
    let (vid, _) = m.vertices();
    let low = |d: usize| q.label(d).min(q.label(m.twin[d]));
    let mut used = vec![false; nd];
    let mut raw: Vec<(Vec<usize>, i64)> = Vec::new();
    for d0 in 0..nd {
        if used[d0] {
            continue;
        }
        let lo = low(d0);
        let mut darts = Vec::new();
        let mut x = d0;
        loop {
            used[x] = true;
            let f = m.face_of(x);
            let y = *f.iter().find(|&&y| y != x && low(y) == lo).expect("colorful face");
            used[y] = true;
            darts.push(y);
            x = m.twin[y];
            if x == d0 {
                break;
            }
        }
        raw.push((darts, lo));
    }
    let blocked_of = |ds: &[usize]| {
        let mut b = vec![false; nd];
        for &d in ds {
            b[d] = true;
            b[m.twin[d]] = true;
        }
        b
    };
    let reach: Vec<Vec<bool>> = raw.iter().map(|(ds, _)| vertices_reachable(q, m.root, &blocked_of(ds))).collect();
    let low_end = |d: usize| if q.label(d) < q.label(m.twin[d]) { d } else { m.twin[d] };
    raw.iter()
        .enumerate()
        .map(|(i, (ds, lo))| {
            let direction = if reach[i][vid[low_end(ds[0])]] { Direction::Increasing } else { Direction::Decreasing };
            let probe = vid[ds[0]];
            let nesting_depth = (0..raw.len()).filter(|&j| j != i && !reach[j][probe]).count();
            LevelLine { darts: ds.clone(), low: *lo, direction, length: ds.len(), nesting_depth }
        })
        .collect()
}

/// Local extremum status of every vertex (indexed as in `PlanarMap::vertices`).
pub fn local_extrema(q: &ColorfulQuad) -> Vec<Extremum> {
    let m = q.map();
    m.vertices()
        .1
        .iter()
        .map(|ds| {
            let l = q.label(ds[0]);
            if ds.iter().all(|&d| q.label(m.twin[d]) < l) {
                Extremum::Max(ds.len())
            } else if ds.iter().all(|&d| q.label(m.twin[d]) > l) {
                Extremum::Min(ds.len())
            } else {
                Extremum::Neither
            }
        })
        .collect()
}

pub fn is_fighting_fish(r: &RigidQuad) -> bool {
    r.turning_numbers().iter().all(|&(_, t)| (0..=2).contains(&t))
}

/// Maximal horizontal and vertical strips of cells.
pub fn rows_and_columns(r: &RigidQuad) -> (usize, usize) {
    let c = r.cells();
    let count = |dir: usize| {
        // a strip is counted at its cell with no neighbour in `dir`
        c.iter().filter(|x| x[dir] == NONE).count()
    };
    (count(E), count(S))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DictionaryReport {
    pub convex_corners: usize,
    pub vertices: usize,
    pub rows: usize,
    pub even_edges: usize,
    pub columns: usize,
    pub odd_edges: usize,
    pub concave_corners: usize,
    pub faces: usize,
    pub right_corner_degrees: Vec<usize>,
    pub minima_degrees: Vec<usize>,
    pub left_corner_degrees: Vec<usize>,
    pub maxima_degrees: Vec<usize>,
    /// (extension length, nesting depth) of right-tangential sides.
    pub right_sides: Vec<(usize, usize)>,
    /// (length, nesting depth) of decreasing level lines.
    pub decreasing_lines: Vec<(usize, usize)>,
    pub left_sides: Vec<(usize, usize)>,
    pub increasing_lines: Vec<(usize, usize)>,
}

impl DictionaryReport {
    /// Returns the first failing row.
    pub fn check(&self) -> Result<(), Error> {
        let rows = [
            ("i", self.convex_corners == self.vertices),
            ("ii", self.rows == self.even_edges),
            ("iii", self.columns == self.odd_edges),
            ("iv", self.faces == self.concave_corners + 1),
            ("v", self.right_corner_degrees == self.minima_degrees),
            ("vi", self.left_corner_degrees == self.maxima_degrees),
            ("vii", self.right_sides == self.decreasing_lines),
            ("viii", self.left_sides == self.increasing_lines),
        ];
        for (name, ok) in rows {
            if !ok {
                return Err(Error::DictionaryViolation(name.into()));
            }
        }
        Ok(())
    }
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// All quantities of the dictionary on both sides of the bijection.
pub fn dictionary_report(r: &RigidQuad) -> Result<DictionaryReport, Error> {
    let q = psi(r)?;
    dictionary_report_with(r, &q)
}

pub fn dictionary_report_with(r: &RigidQuad, q: &ColorfulQuad) -> Result<DictionaryReport, Error> {
    let m = q.map();
    let (rows, columns) = rows_and_columns(r);
    let mut even = 0;
    for d in 0..m.darts() {
        if q.label(d) < q.label(m.twin[d]) && q.label(d).rem_euclid(2) == 0 {
            even += 1;
        }
    }
    let cls = classify_sides(r)?;
    let spec = tangential_spectrum(r, &cls)?;
    let ext = local_extrema(q);
    let lines = level_lines(q);
    let corner_deg = |t: Tangency| sorted(cls.corners.iter().filter(|c| c.1 == t).map(|c| c.2).collect());
    let side_pairs = |t: Tangency| sorted(spec.iter().filter(|s| s.0 == t).map(|s| (s.1, s.2)).collect());
    let line_pairs =
        |d: Direction| sorted(lines.iter().filter(|l| l.direction == d).map(|l| (l.length, l.nesting_depth)).collect());
    Ok(DictionaryReport {
        convex_corners: r.n(),
        vertices: q.n(),
        rows,
        even_edges: even,
        columns,
        odd_edges: m.edge_count() - even,
        concave_corners: r.count(Corner::Concave),
        faces: m.face_count(),
        right_corner_degrees: corner_deg(Tangency::RightTangential),
        minima_degrees: sorted(ext.iter().filter_map(|e| if let Extremum::Min(k) = e { Some(*k) } else { None }).collect()),
        left_corner_degrees: corner_deg(Tangency::LeftTangential),
        maxima_degrees: sorted(ext.iter().filter_map(|e| if let Extremum::Max(k) = e { Some(*k) } else { None }).collect()),
        right_sides: side_pairs(Tangency::RightTangential),
        decreasing_lines: line_pairs(Direction::Decreasing),
        left_sides: side_pairs(Tangency::LeftTangential),
        increasing_lines: line_pairs(Direction::Increasing),
    })
}
