use crate::colorful::{from_parts, ColorfulQuad, Kind};
use crate::error::Error;
use crate::exploration::{assemble_colorful, assemble_rigid, explore_rigid, peel, Step, Trace};
use crate::planar::PlanarMap;
use crate::rigid::{RigidQuad, E, N, NONE, S, W};

/// Base-p bijection: the colorful disk with the same exploration.
pub fn psi_p(r: &RigidQuad) -> Result<ColorfulQuad, Error> {
    assemble_colorful(&explore_rigid(r)?)
}

pub fn psi_p_inverse(q: &ColorfulQuad) -> Result<RigidQuad, Error> {
    assemble_rigid(&peel(q)?)
}

/// Splits the column of the root cell and attaches a new base cell below its right half.
/// Also returns, for every cell of the result, the cell of `r` it comes from (`NONE` for the new cell).
pub fn expand_with_map(r: &RigidQuad) -> (RigidQuad, Vec<usize>) {
    let old = r.cells();
    let mut col = vec![r.root_cell()];
    while old[*col.last().unwrap()][N] != NONE {
        let c = old[*col.last().unwrap()][N];
        col.push(c);
    }
    let mut cells: Vec<[usize; 4]> = old.to_vec();
    let mut back: Vec<usize> = (0..old.len()).collect();
    // the left half keeps the old index, the right half is new
    let mut right = vec![NONE; old.len()];
    for &c in &col {
        right[c] = cells.len();
        cells.push([NONE; 4]);
        back.push(c);
    }
    for &c in &col {
        let (l, rr) = (c, right[c]);
        let east = old[c][E];
        cells[rr][E] = east;
        if east != NONE {
            cells[east][W] = rr;
        }
        cells[l][E] = rr;
        cells[rr][W] = l;
        let up = old[c][N];
        if up != NONE {
            cells[rr][N] = right[up];
            cells[right[up]][S] = rr;
        }
    }
    let base = cells.len();
    cells.push([NONE; 4]);
    back.push(NONE);
    let rr = right[r.root_cell()];
    cells[base][N] = rr;
    cells[rr][S] = base;
    let out = RigidQuad::from_cells(cells, base).expect("expand keeps rigidity");
    (out, back)
}

pub fn expand(r: &RigidQuad) -> RigidQuad {
    expand_with_map(r).0
}

/// Inverse of `expand` on base-1 objects whose exploration starts with an L step.
pub fn unexpand(r: &RigidQuad) -> Result<RigidQuad, Error> {
    let c = r.cells();
    let base = r.root_cell();
    let bad = || Error::NotInClass("not an expanded quadrangulation".into());
    if c[base][W] != NONE || c[base][E] != NONE || c[base][N] == NONE {
        return Err(bad());
    }
    let mut rights = vec![c[base][N]];
    loop {
        let x = c[*rights.last().unwrap()][N];
        if x == NONE {
            break;
        }
        rights.push(x);
    }
    let lefts: Vec<usize> = rights.iter().map(|&x| c[x][W]).collect();
    if lefts.iter().any(|&x| x == NONE) {
        return Err(bad());
    }
    for i in 1..rights.len() {
        if c[lefts[i - 1]][N] != lefts[i] {
            return Err(bad());
        }
    }
    if c[*lefts.last().unwrap()][N] != NONE || c[lefts[0]][S] != NONE {
        return Err(bad());
    }
    let mut cells = c.to_vec();
    for (&l, &rr) in lefts.iter().zip(&rights) {
        let east = c[rr][E];
        cells[l][E] = east;
        if east != NONE {
            cells[east][W] = l;
        }
    }
    let mut dead = vec![false; cells.len()];
    dead[base] = true;
    for &x in &rights {
        dead[x] = true;
    }
    let mut idx = vec![NONE; cells.len()];
    let mut k = 0;
    for i in 0..cells.len() {
        if !dead[i] {
            idx[i] = k;
            k += 1;
        }
    }
    let out: Vec<[usize; 4]> = (0..cells.len())
        .filter(|&i| !dead[i])
        .map(|i| {
            let mut m = [NONE; 4];
            for d in 0..4 {
                let x = cells[i][d];
                m[d] = if x == NONE || dead[x] { NONE } else { idx[x] };
            }
            m
        })
        .collect();
    RigidQuad::from_cells(out, idx[lefts[0]]).map_err(|_| bad())
}

/// Merges the two boundary edges of a perimeter-2 disk into a single root edge.
pub fn zip(q: &ColorfulQuad) -> Result<ColorfulQuad, Error> {
    let m = q.map();
    let b = m.face_of(m.root);
    if q.kind() != Kind::Disk || b.len() != 2 {
        return Err(Error::NotInClass("not a perimeter-2 disk".into()));
    }
    let (r0, r1) = (b[0], b[1]);
    let (a, bb) = (m.twin[r0], m.twin[r1]);
    let right: Vec<i64> = m.face_of(a).iter().map(|&d| q.label(d)).collect();
    if right != [0, 1, 2, 1] {
        return Err(Error::NotInClass("face right of the root is not (0,1,2,1)".into()));
    }
    let nd = m.darts();
    let keep: Vec<usize> = (0..nd).filter(|&d| d != r0 && d != r1).collect();
    let mut idx = vec![NONE; nd];
    for (i, &d) in keep.iter().enumerate() {
        idx[d] = i;
    }
    let fnext = m.face_next_table();
    let mut twin = Vec::new();
    let mut fn_new = Vec::new();
    for &d in &keep {
        let t = if d == a {
            bb
        } else if d == bb {
            a
        } else {
            m.twin[d]
        };
        twin.push(idx[t]);
        fn_new.push(idx[fnext[d]]);
    }
    let map = PlanarMap::from_face_next(twin, &fn_new, idx[bb])?;
    let label = keep.iter().map(|&d| q.label(d)).collect();
    Ok(from_parts(map, label, Kind::Sphere))
}

/// Cuts the root edge of a sphere open into a perimeter-2 boundary face.
pub fn unzip(q: &ColorfulQuad) -> Result<ColorfulQuad, Error> {
    if q.kind() != Kind::Sphere {
        return Err(Error::NotInClass("not a sphere".into()));
    }
    q.check_root_face().map_err(|_| Error::NotInClass("face right of the root".into()))?;
    let m = q.map();
    let nd = m.darts();
    let bb = m.root;
    let a = m.twin[bb];
    let (r0, r1) = (nd, nd + 1);
    let mut twin = m.twin.clone();
    twin.push(a);
    twin.push(bb);
    twin[a] = r0;
    twin[bb] = r1;
    let mut fnext = m.face_next_table();
    fnext.push(r1);
    fnext.push(r0);
    let map = PlanarMap::from_face_next(twin, &fnext, r0)?;
    let mut label = q.labels().to_vec();
    label.push(1);
    label.push(0);
    Ok(from_parts(map, label, Kind::Disk))
}

/// The bijection from rooted rigid quadrangulations to colorful spheres.
pub fn psi(r: &RigidQuad) -> Result<ColorfulQuad, Error> {
    zip(&psi_p(&expand(r))?)
}

pub fn psi_inverse(q: &ColorfulQuad) -> Result<RigidQuad, Error> {
    let d = unzip(q)?;
    let t = peel(&d)?;
    if t.p != 1 || !t.steps.first().is_some_and(Step::is_l) {
        return Err(Error::NotInClass("first peeling step is not L".into()));
    }
    unexpand(&assemble_rigid(&t)?)
}

/// Rooted rigid quadrangulations with n non-root convex corners, via traces of their expansions.
pub fn rooted_from_trace(t: &Trace) -> Result<RigidQuad, Error> {
    unexpand(&assemble_rigid(t)?)
}

/// Ascent path of a colorful sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AscentResult {
    /// Crossed darts, each oriented with the face left behind on its left.
    pub crossed: Vec<usize>,
    pub signature: Vec<usize>,
    /// A dart leaving the terminal vertex.
    pub terminal: usize,
    pub terminal_label: i64,
}

pub fn ascent_path(q: &ColorfulQuad) -> Result<AscentResult, Error> {
    let m = q.map();
    let (vid, verts) = m.vertices();
    let mut cur = m.twin[m.root];
    let mut crossed = Vec::new();
    let mut last_v = NONE;
    let mut turn = 0;
    for _ in 0..=2 * m.darts() {
        let f = m.face_of(cur);
        let dv = *f.iter().max_by_key(|&&d| q.label(d)).unwrap();
        let v = vid[dv];
        let x = if q.label(dv) % 2 == 0 { m.face_prev(dv) } else { dv };
        crossed.push(x);
        turn = if v == last_v { turn + 1 } else { 1 };
        last_v = v;
        if turn == verts[v].len() {
            let mut signature = Vec::new();
            let mut prev = i64::MIN;
            for &d in &crossed {
                let lo = q.label(d).min(q.label(m.twin[d]));
                if lo != prev {
                    signature.push(0);
                    prev = lo;
                }
                *signature.last_mut().unwrap() += 1;
            }
            return Ok(AscentResult { crossed, signature, terminal: dv, terminal_label: q.label(dv) });
        }
        cur = m.twin[x];
    }
    Err(Error::NonTermination)
}

/// Refined bijection: removes the ascent submap from the image sphere, leaving a disk whose
/// boundary reads the walk of the base signature.
pub fn psi_b(r: &RigidQuad) -> Result<ColorfulQuad, Error> {
    let q = psi(r)?;
    let asc = ascent_path(&q)?;
    let m = q.map();
    let mut removed = vec![false; m.darts()];
    for &d in &asc.crossed {
        removed[d] = true;
        removed[m.twin[d]] = true;
    }
    let (mut u, idx) = m.delete_edges(&removed, m.root)?;
    u.root = u.face_prev(u.twin[idx[m.root]]);
    let mut label = vec![0; u.darts()];
    for d in 0..m.darts() {
        if idx[d] != NONE {
            label[idx[d]] = q.label(d);
        }
    }
    Ok(from_parts(u, label, Kind::Disk))
}

/// Inverse of `psi_b`: glues the ascent submap of `sig` around the disk and inverts `psi`.
pub fn psi_b_inverse(u: &ColorfulQuad, sig: &[usize]) -> Result<RigidQuad, Error> {
    let bad = |s: &str| Error::NotInClass(s.to_string());
    if u.kind() != Kind::Disk || sig.is_empty() || sig.contains(&0) {
        return Err(bad("not a disk with a valid signature"));
    }
    // submap quads: dart 4t+i, labels (i-1, i, i+1, i) for block i
    let mut block = Vec::new();
    for (i, &l) in sig.iter().enumerate() {
        block.extend(std::iter::repeat_n(i as i64 + 1, l));
    }
    let nq = block.len();
    let mut twin = vec![NONE; 4 * nq];
    let mut label = Vec::with_capacity(4 * nq);
    for &i in &block {
        label.extend_from_slice(&[i - 1, i, i + 1, i]);
    }
    let cross = |t: usize| if (block[t] + 1) % 2 == 0 { 4 * t + 1 } else { 4 * t + 2 };
    let k = sig.len();
    let first_last = block.iter().position(|&b| b == k as i64).unwrap();
    for t in 0..nq {
        let x = cross(t);
        let next = if t + 1 < nq { t + 1 } else { first_last };
        let same = block[next] == block[t];
        let y = match (x % 4, same) {
            (1, true) => 4 * next + 2,
            (1, false) => 4 * next + 3,
            (2, true) => 4 * next + 1,
            _ => 4 * next,
        };
        if twin[x] != NONE || twin[y] != NONE {
            return Err(bad("ascent submap gluing"));
        }
        twin[x] = y;
        twin[y] = x;
    }
    let fnext = |d: usize| 4 * (d / 4) + (d % 4 + 1) % 4;
    let contour_next = |d: usize| {
        let mut x = fnext(d);
        while twin[x] != NONE {
            x = fnext(twin[x]);
        }
        x
    };
    let start = 0usize;
    let mut hole = vec![start];
    loop {
        let x = contour_next(*hole.last().unwrap());
        if x == start {
            break;
        }
        hole.push(x);
        if hole.len() > 4 * nq {
            return Err(bad("ascent submap contour"));
        }
    }
    hole.rotate_right(1);
    let um = u.map();
    let rho = um.face_of(um.root);
    if rho.len() != hole.len() {
        return Err(bad("perimeter does not match the signature"));
    }
    let (ufid, ufaces) = um.faces();
    let rf = ufid[um.root];
    let mut pos = vec![NONE; um.darts()];
    for (i, &d) in rho.iter().enumerate() {
        pos[d] = i;
    }
    let off = 4 * nq;
    let mut uidx = vec![NONE; um.darts()];
    let mut n = off;
    for d in 0..um.darts() {
        if ufid[d] != rf {
            uidx[d] = n;
            n += 1;
        }
    }
    twin.resize(n, NONE);
    label.resize(n, 0);
    for d in 0..um.darts() {
        if uidx[d] != NONE {
            label[uidx[d]] = u.label(d);
            let t = um.twin[d];
            twin[uidx[d]] = if ufid[t] == rf { hole[pos[t]] } else { uidx[t] };
        }
    }
    for (i, &h) in hole.iter().enumerate() {
        if u.label(rho[i]) != label[h] {
            return Err(bad("boundary labels do not match the walk"));
        }
        let t = um.twin[rho[i]];
        twin[h] = if ufid[t] == rf { hole[pos[t]] } else { uidx[t] };
    }
    let mut faces: Vec<Vec<usize>> = (0..nq).map(|t| (4 * t..4 * t + 4).collect()).collect();
    for (i, f) in ufaces.iter().enumerate() {
        if i != rf {
            faces.push(f.iter().map(|&d| uidx[d]).collect());
        }
    }
    let map = PlanarMap::from_faces(twin.clone(), &faces, twin[start])?;
    let q = crate::colorful::validate_sphere(&map, label)?;
    psi_inverse(&q)
}

/// Class of a rigid quadrangulation with respect to its two root sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BcClass {
    General,
    /// Both root sides end at convex corners; base length p, vertical length q.
    B(usize, usize),
    /// B type that also contains the p x q rectangle at the root.
    C(usize, usize),
}

pub fn classify_bc(r: &RigidQuad) -> BcClass {
    let sides = r.sides();
    let m = r.map();
    let base = &sides[0];
    let right = sides.last().unwrap();
    let base_end = r.vertex_of(m.twin[*base.darts.last().unwrap()]);
    let right_end = r.vertex_of(right.darts[0]);
    if r.class(base_end) != crate::rigid::Corner::Convex || r.class(right_end) != crate::rigid::Corner::Convex {
        return BcClass::General;
    }
    let (p, q) = (base.darts.len(), right.darts.len());
    let c = r.cells();
    let mut col = r.root_cell();
    let mut prev_row: Vec<usize> = Vec::new();
    for j in 0..q {
        if j > 0 {
            col = c[col][N];
            if col == NONE {
                return BcClass::B(p, q);
            }
        }
        let mut row = vec![col];
        for _ in 1..p {
            let x = c[*row.last().unwrap()][W];
            if x == NONE {
                return BcClass::B(p, q);
            }
            row.push(x);
        }
        if j > 0 && (0..p).any(|i| c[prev_row[i]][N] != row[i]) {
            return BcClass::B(p, q);
        }
        prev_row = row;
    }
    BcClass::C(p, q)
}
