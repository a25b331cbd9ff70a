use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::planar::PlanarMap;

pub const NONE: usize = usize::MAX;
pub const E: usize = 0;
pub const N: usize = 1;
pub const W: usize = 2;
pub const S: usize = 3;

/// Cell neighbours indexed by compass direction E, N, W, S.
pub type Cell = [usize; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    Inner,
    Convex,
    Straight,
    Concave,
}

/// Rigid quadrangulation of the disk.
///
/// Stored both as a cell complex with consistent compass frames and as a planar map.
/// Dart `4c+k` of the map is the side of cell `c` travelling in direction `k`
/// (0 bottom eastward, 1 right northward, 2 top westward, 3 left southward); the
/// remaining darts are outer darts of the root face. The root dart is the outer dart
/// leaving the root corner westward along the base.
#[derive(Clone, Debug)]
pub struct RigidQuad {
    cells: Vec<Cell>,
    root: usize,
    map: PlanarMap,
    ray: Vec<i8>,
    boundary: Vec<usize>,
    vertex: Vec<usize>,
    class: Vec<Corner>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    /// Outer darts in clockwise order.
    pub darts: Vec<usize>,
    pub horizontal: bool,
}

impl RigidQuad {
    pub fn from_cells(cells: Vec<Cell>, root: usize) -> Result<Self, Error> {
        let map = cells_to_map(&cells, root)?;
        let r = validate_rigid(&map, None)?;
        debug_assert_eq!(r.cells, cells);
        Ok(r)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn root_cell(&self) -> usize {
        self.root
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    /// Ray orientation per dart: +1 along its ray, -1 against, 0 on boundary edges.
    pub fn orientation(&self) -> &[i8] {
        &self.ray
    }

    /// Outer darts in clockwise order around the disk, starting at the root dart.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn vertex_of(&self, dart: usize) -> usize {
        self.vertex[dart]
    }

    pub fn class(&self, v: usize) -> Corner {
        self.class[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.class.len()
    }

    pub fn root_vertex(&self) -> usize {
        self.vertex[self.map.root]
    }

    pub fn count(&self, c: Corner) -> usize {
        self.class.iter().filter(|&&x| x == c).count()
    }

    /// Number of non-root convex corners.
    pub fn n(&self) -> usize {
        self.count(Corner::Convex) - 1
    }

    /// Cell and facing direction of a cell dart.
    pub fn dart_side(&self, d: usize) -> Option<(usize, usize)> {
        if d < 4 * self.cells.len() {
            Some((d / 4, (d % 4 + 3) % 4))
        } else {
            None
        }
    }

    pub fn side_dart(cell: usize, facing: usize) -> usize {
        4 * cell + (facing + 1) % 4
    }

    /// Travel direction of any dart.
    pub fn dart_dir(&self, d: usize) -> usize {
        if d < 4 * self.cells.len() {
            d % 4
        } else {
            (self.map.twin[d] % 4 + 2) % 4
        }
    }

    pub fn canonical_code(&self) -> Vec<usize> {
        self.map.canonical_code()
    }

    /// Boundary sides in clockwise order starting with the base.
    pub fn sides(&self) -> Vec<Side> {
        let b = &self.boundary;
        let mut out: Vec<Side> = Vec::new();
        for (i, &d) in b.iter().enumerate() {
            let v = self.vertex[d];
            if i == 0 || self.class[v] != Corner::Straight {
                let dir = self.dart_dir(d);
                out.push(Side { darts: vec![d], horizontal: dir % 2 == 0 });
            } else {
                out.last_mut().unwrap().darts.push(d);
            }
        }
        out
    }

    /// Side index of every outer dart.
    pub fn side_index(&self) -> Vec<usize> {
        let mut idx = vec![NONE; self.map.darts()];
        for (i, s) in self.sides().iter().enumerate() {
            for &d in &s.darts {
                idx[d] = i;
            }
        }
        idx
    }

    /// Base signature: side lengths clockwise from the root to the next convex corner.
    pub fn base_signature(&self) -> Vec<usize> {
        let mut sig = vec![0];
        for &d in &self.boundary {
            *sig.last_mut().unwrap() += 1;
            let end = self.vertex[self.map.twin[d]];
            match self.class[end] {
                Corner::Convex => break,
                Corner::Concave => sig.push(0),
                _ => {}
            }
        }
        sig
    }

    /// Mirror image with the same root corner (reflection swapping the two root sides).
    pub fn mirror(&self) -> RigidQuad {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let mut m = [NONE; 4];
                for d in 0..4 {
                    m[3 - d] = c[d];
                }
                m
            })
            .collect();
        RigidQuad::from_cells(cells, self.root).expect("mirror of a rigid quadrangulation")
    }

    /// Ray through an inner dart: the darts of the ray in its own orientation, with endpoints.
    pub fn ray_through(&self, d: usize) -> Vec<usize> {
        let d = if self.ray[d] < 0 { self.map.twin[d] } else { d };
        let mut back = Vec::new();
        let mut x = d;
        while self.class[self.vertex[x]] == Corner::Inner {
            x = self.map.twin[self.straight(x)];
            back.push(x);
        }
        back.reverse();
        let mut out = back;
        let mut x = d;
        out.push(x);
        loop {
            let v = self.vertex[self.map.twin[x]];
            if self.class[v] != Corner::Inner {
                break;
            }
            x = self.straight(self.map.twin[x]);
            out.push(x);
        }
        out
    }

    /// Dart opposite to `d` around its degree-4 origin.
    pub fn straight(&self, d: usize) -> usize {
        self.map.next[self.map.next[d]]
    }

    /// Turning number of each boundary vertex (counterclockwise from the root corner,
    /// counting convex minus concave corners strictly between).
    pub fn turning_numbers(&self) -> Vec<(usize, i64)> {
        let b = &self.boundary;
        let mut out = Vec::new();
        let mut acc = 0i64;
        for i in (1..b.len()).rev() {
            let v = self.vertex[b[i]];
            match self.class[v] {
                Corner::Convex => {
                    out.push((v, acc));
                    acc += 1;
                }
                Corner::Concave => acc -= 1,
                _ => {}
            }
        }
        out
    }

    /// Canonical cell relabelling by breadth-first search from the root cell.
    pub fn canonical_cells(&self) -> Vec<Cell> {
        let n = self.cells.len();
        let mut idx = vec![NONE; n];
        let mut order = vec![self.root];
        idx[self.root] = 0;
        let mut h = 0;
        while h < order.len() {
            let c = order[h];
            h += 1;
            for d in 0..4 {
                let x = self.cells[c][d];
                if x != NONE && idx[x] == NONE {
                    idx[x] = order.len();
                    order.push(x);
                }
            }
        }
        order
            .iter()
            .map(|&c| {
                let mut m = [NONE; 4];
                for d in 0..4 {
                    let x = self.cells[c][d];
                    m[d] = if x == NONE { NONE } else { idx[x] };
                }
                m
            })
            .collect()
    }
}

impl PartialEq for RigidQuad {
    fn eq(&self, o: &Self) -> bool {
        self.canonical_cells() == o.canonical_cells()
    }
}

impl Eq for RigidQuad {}

fn cells_to_map(cells: &[Cell], root: usize) -> Result<PlanarMap, Error> {
    let nc = cells.len();
    if root >= nc {
        return Err(Error::Malformed("root cell out of range".into()));
    }
    let mut twin = vec![NONE; 4 * nc];
    for c in 0..nc {
        for k in 0..4 {
            let f = (k + 3) % 4;
            let nb = cells[c][f];
            if nb == NONE {
                continue;
            }
            if nb >= nc || cells[nb][(f + 2) % 4] != c {
                return Err(Error::Malformed(format!("cell {c} neighbour mismatch")));
            }
            twin[4 * c + k] = 4 * nb + (k + 2) % 4;
        }
    }
    let inner_prev = |d: usize| 4 * (d / 4) + (d % 4 + 3) % 4;
    let mut outer_of = vec![NONE; 4 * nc];
    for d in 0..4 * nc {
        if twin[d] == NONE {
            outer_of[d] = twin.len();
            twin.push(d);
        }
    }
    for d in 0..4 * nc {
        if outer_of[d] != NONE {
            twin[d] = outer_of[d];
        }
    }
    let total = twin.len();
    let mut fnext = vec![NONE; total];
    for d in 0..4 * nc {
        fnext[d] = 4 * (d / 4) + (d % 4 + 1) % 4;
    }
    for o in 4 * nc..total {
        let d = twin[o];
        let mut x = inner_prev(d);
        let mut guard = 0;
        while twin[x] < 4 * nc {
            x = inner_prev(twin[x]);
            guard += 1;
            if guard > 4 * nc {
                return Err(Error::Malformed("boundary walk does not close".into()));
            }
        }
        fnext[o] = twin[x];
    }
    let mut seen = vec![false; total];
    for o in 4 * nc..total {
        if seen[fnext[o]] {
            return Err(Error::NonSimpleBoundary(0));
        }
        seen[fnext[o]] = true;
    }
    let rd = twin[4 * root];
    if rd < 4 * nc {
        return Err(Error::RootNotConvex);
    }
    PlanarMap::from_face_next(twin, &fnext, rd)
}

/// Validates a planar map as a rigid quadrangulation. `orientation`, if given, holds
/// +1/-1 per inner dart (along/against its ray) and is checked against the geometry.
pub fn validate_rigid(map: &PlanarMap, orientation: Option<&[i8]>) -> Result<RigidQuad, Error> {
    let nd = map.darts();
    let (fid, faces) = map.faces();
    let rf = fid[map.root];
    for (i, f) in faces.iter().enumerate() {
        if i != rf && f.len() != 4 {
            return Err(Error::NonQuadFace(i));
        }
    }
    let (vid, verts) = map.vertices();
    let outer = |d: usize| fid[d] == rf;
    for d in 0..nd {
        if outer(d) && outer(map.twin[d]) {
            return Err(Error::NonSimpleBoundary(vid[d]));
        }
    }
    // compass directions
    let mut dir = vec![NONE; nd];
    dir[map.root] = W;
    let mut q = VecDeque::from([map.root]);
    let fnext = map.face_next_table();
    while let Some(d) = q.pop_front() {
        let push = |x: usize, v: usize, dir: &mut Vec<usize>, q: &mut VecDeque<usize>| {
            if dir[x] == NONE {
                dir[x] = v;
                q.push_back(x);
                Ok(())
            } else if dir[x] != v {
                Err(Error::BadVertexPattern(vid[x]))
            } else {
                Ok(())
            }
        };
        push(map.twin[d], (dir[d] + 2) % 4, &mut dir, &mut q)?;
        if !outer(d) {
            push(fnext[d], (dir[d] + 1) % 4, &mut dir, &mut q)?;
        }
    }
    // vertices
    let mut class = vec![Corner::Inner; verts.len()];
    for (v, ds) in verts.iter().enumerate() {
        let nout = ds.iter().filter(|&&d| outer(d)).count();
        class[v] = match (nout, ds.len()) {
            (0, 4) => Corner::Inner,
            (1, 2) => Corner::Convex,
            (1, 3) => Corner::Straight,
            (1, 4) => Corner::Concave,
            (n, _) if n > 1 => return Err(Error::NonSimpleBoundary(v)),
            _ => return Err(Error::BadVertexPattern(v)),
        };
    }
    if class[vid[map.root]] != Corner::Convex || dir[map.root] != W {
        return Err(Error::RootNotConvex);
    }
    // cells
    let mut cell_of_face = vec![NONE; faces.len()];
    let mut cell_darts: Vec<[usize; 4]> = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        if i == rf {
            continue;
        }
        let mut ds = [NONE; 4];
        for &d in f {
            ds[dir[d]] = d;
        }
        if ds.iter().any(|&d| d == NONE) {
            return Err(Error::BadVertexPattern(vid[f[0]]));
        }
        cell_of_face[i] = cell_darts.len();
        cell_darts.push(ds);
    }
    let cells: Vec<Cell> = cell_darts
        .iter()
        .map(|ds| {
            let mut c = [NONE; 4];
            for k in 0..4 {
                let t = map.twin[ds[k]];
                if !outer(t) {
                    c[(k + 3) % 4] = cell_of_face[fid[t]];
                }
            }
            c
        })
        .collect();
    let root_cell = cell_of_face[fid[map.twin[map.root]]];
    // rays
    let mut ray = vec![0i8; nd];
    let straight = |d: usize| map.next[map.next[d]];
    for d0 in 0..nd {
        if outer(d0) || outer(map.twin[d0]) || ray[d0] != 0 {
            continue;
        }
        let mut path = vec![d0];
        let mut x = d0;
        while class[vid[map.twin[x]]] == Corner::Inner {
            x = straight(map.twin[x]);
            path.push(x);
        }
        let mut x = d0;
        while class[vid[x]] == Corner::Inner {
            x = map.twin[straight(x)];
            path.insert(0, x);
        }
        let a = vid[path[0]];
        let b = vid[map.twin[*path.last().unwrap()]];
        let s = match (class[a], class[b]) {
            (Corner::Concave, Corner::Straight) => 1,
            (Corner::Straight, Corner::Concave) => -1,
            _ => return Err(Error::BadRay(a, b)),
        };
        for &p in &path {
            ray[p] = s;
            ray[map.twin[p]] = -s;
        }
    }
    if let Some(o) = orientation {
        if o.len() != nd {
            return Err(Error::Malformed("orientation length".into()));
        }
        for d in 0..nd {
            if ray[d] != 0 && o[d] != ray[d] {
                return Err(Error::BadRay(vid[d], vid[map.twin[d]]));
            }
        }
    }
    let boundary = map.face_of(map.root);
    let nconvex = class.iter().filter(|&&c| c == Corner::Convex).count();
    let nconcave = class.iter().filter(|&&c| c == Corner::Concave).count();
    if nconvex != nconcave + 4 {
        return Err(Error::Malformed("convex minus concave is not 4".into()));
    }
    Ok(RigidQuad { cells, root: root_cell, map: map.clone(), ray, boundary, vertex: vid, class })
}
