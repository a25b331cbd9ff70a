use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Rooted planar map on darts. `next` rotates counterclockwise around the origin vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarMap {
    pub twin: Vec<usize>,
    pub next: Vec<usize>,
    pub root: usize,
}

impl PlanarMap {
    pub fn new(twin: Vec<usize>, next: Vec<usize>, root: usize) -> Result<Self, Error> {
        let m = PlanarMap { twin, next, root };
        m.check()?;
        Ok(m)
    }

    /// Builds a map from its face permutation (face on the left of each dart).
    pub fn from_face_next(twin: Vec<usize>, face_next: &[usize], root: usize) -> Result<Self, Error> {
        let n = twin.len();
        let mut prev = vec![0; n];
        for d in 0..n {
            prev[face_next[d]] = d;
        }
        let next = (0..n).map(|d| twin[prev[d]]).collect();
        Self::new(twin, next, root)
    }

    /// Builds a map from dart cycles of faces.
    pub fn from_faces(twin: Vec<usize>, faces: &[Vec<usize>], root: usize) -> Result<Self, Error> {
        let mut fnext = vec![usize::MAX; twin.len()];
        for f in faces {
            for i in 0..f.len() {
                fnext[f[i]] = f[(i + 1) % f.len()];
            }
        }
        if fnext.iter().any(|&x| x == usize::MAX) {
            return Err(Error::Malformed("dart missing from faces".into()));
        }
        Self::from_face_next(twin, &fnext, root)
    }

    fn check(&self) -> Result<(), Error> {
        let n = self.twin.len();
        if n == 0 || n % 2 == 1 || self.next.len() != n || self.root >= n {
            return Err(Error::Malformed("bad dart count or root".into()));
        }
        for d in 0..n {
            let t = self.twin[d];
            if t >= n || t == d || self.twin[t] != d {
                return Err(Error::Malformed(format!("twin is not an involution at dart {d}")));
            }
        }
        let mut seen = vec![false; n];
        for d in 0..n {
            let x = self.next[d];
            if x >= n || seen[x] {
                return Err(Error::Malformed(format!("next is not a permutation at dart {d}")));
            }
            seen[x] = true;
        }
        let mut vis = vec![false; n];
        let mut q = VecDeque::from([self.root]);
        vis[self.root] = true;
        let mut cnt = 1;
        while let Some(d) = q.pop_front() {
            for e in [self.twin[d], self.next[d]] {
                if !vis[e] {
                    vis[e] = true;
                    cnt += 1;
                    q.push_back(e);
                }
            }
        }
        if cnt != n {
            return Err(Error::Malformed("map is not connected".into()));
        }
        if self.vertex_count() + self.face_count() != self.edge_count() + 2 {
            return Err(Error::Malformed("Euler relation fails".into()));
        }
        Ok(())
    }

    pub fn darts(&self) -> usize {
        self.twin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn prev(&self, d: usize) -> usize {
        let mut x = d;
        loop {
            let y = self.next[x];
            if y == d {
                return x;
            }
            x = y;
        }
    }

    pub fn face_next(&self, d: usize) -> usize {
        self.prev(self.twin[d])
    }

    pub fn face_prev(&self, d: usize) -> usize {
        self.twin[self.next[d]]
    }

    /// Dart orbits of a permutation, in order of smallest element.
    fn orbits(&self, f: impl Fn(usize) -> usize) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.darts();
        let mut id = vec![usize::MAX; n];
        let mut out = Vec::new();
        for d in 0..n {
            if id[d] != usize::MAX {
                continue;
            }
            let k = out.len();
            let mut orb = Vec::new();
            let mut x = d;
            while id[x] == usize::MAX {
                id[x] = k;
                orb.push(x);
                x = f(x);
            }
            out.push(orb);
        }
        (id, out)
    }

    /// Vertex index of each dart's origin, and vertex dart lists (counterclockwise).
    pub fn vertices(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        self.orbits(|d| self.next[d])
    }

    /// Face index of each dart (face on its left), and face dart cycles.
    pub fn faces(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let fnext = self.face_next_table();
        self.orbits(|d| fnext[d])
    }

    pub fn face_next_table(&self) -> Vec<usize> {
        let n = self.darts();
        let mut inv = vec![0; n];
        for d in 0..n {
            inv[self.next[d]] = d;
        }
        (0..n).map(|d| inv[self.twin[d]]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().1.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces().1.len()
    }

    /// Contour of the face on the left of `d`, starting at `d`.
    pub fn face_of(&self, d: usize) -> Vec<usize> {
        let mut out = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            out.push(x);
            x = self.face_next(x);
        }
        out
    }

    /// Canonical dart order by breadth-first search from the root.
    pub fn canonical_order(&self) -> Vec<usize> {
        let n = self.darts();
        let mut idx = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        idx[self.root] = 0;
        order.push(self.root);
        let mut h = 0;
        while h < order.len() {
            let d = order[h];
            h += 1;
            for e in [self.twin[d], self.next[d]] {
                if idx[e] == usize::MAX {
                    idx[e] = order.len();
                    order.push(e);
                }
            }
        }
        order
    }

    /// Code invariant under root-preserving isomorphism.
    pub fn canonical_code(&self) -> Vec<usize> {
        let order = self.canonical_order();
        let mut idx = vec![0; order.len()];
        for (i, &d) in order.iter().enumerate() {
            idx[d] = i;
        }
        let mut code = Vec::with_capacity(2 * order.len());
        for &d in &order {
            code.push(idx[self.twin[d]]);
            code.push(idx[self.next[d]]);
        }
        code
    }

    /// Relabels darts in canonical order. Returns the map and the old-to-new dart table.
    pub fn canonical(&self) -> (PlanarMap, Vec<usize>) {
        let order = self.canonical_order();
        let mut idx = vec![0; order.len()];
        for (i, &d) in order.iter().enumerate() {
            idx[d] = i;
        }
        let twin = order.iter().map(|&d| idx[self.twin[d]]).collect();
        let next = order.iter().map(|&d| idx[self.next[d]]).collect();
        (PlanarMap { twin, next, root: 0 }, idx)
    }

    /// Removes the given darts (closed under twin), keeping the rotation of the remaining darts.
    /// Returns the new map and the old-to-new table (`usize::MAX` for removed darts).
    pub fn delete_edges(&self, removed: &[bool], root: usize) -> Result<(PlanarMap, Vec<usize>), Error> {
        let n = self.darts();
        let mut idx = vec![usize::MAX; n];
        let mut keep = Vec::new();
        for d in 0..n {
            if !removed[d] {
                idx[d] = keep.len();
                keep.push(d);
            }
        }
        let twin = keep.iter().map(|&d| idx[self.twin[d]]).collect();
        let next = keep
            .iter()
            .map(|&d| {
                let mut x = self.next[d];
                while removed[x] {
                    x = self.next[x];
                }
                idx[x]
            })
            .collect();
        Ok((PlanarMap::new(twin, next, idx[root])?, idx))
    }

    /// Reverses orientation; the new root is `root`.
    pub fn reversed(&self, root: usize) -> PlanarMap {
        let n = self.darts();
        let mut inv = vec![0; n];
        for d in 0..n {
            inv[self.next[d]] = d;
        }
        PlanarMap { twin: self.twin.clone(), next: inv, root }
    }
}
