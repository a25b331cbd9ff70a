use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::planar::PlanarMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Sphere,
    Disk,
}

/// Labelled quadrangulation. Labels are stored per dart (label of its origin vertex).
/// For disks the boundary face is the face on the left of the root dart.
#[derive(Clone, Debug)]
pub struct ColorfulQuad {
    map: PlanarMap,
    label: Vec<i64>,
    kind: Kind,
}

impl ColorfulQuad {
    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Label of the origin of a dart.
    pub fn label(&self, d: usize) -> i64 {
        self.label[d]
    }

    pub fn labels(&self) -> &[i64] {
        &self.label
    }

    pub fn root(&self) -> usize {
        self.map.root
    }

    /// One label per vertex, indexed as in `PlanarMap::vertices`.
    pub fn vertex_labels(&self) -> Vec<i64> {
        self.map.vertices().1.iter().map(|ds| self.label[ds[0]]).collect()
    }

    /// Contour labels of the boundary face, starting at the root origin (disks).
    pub fn boundary_labels(&self) -> Vec<i64> {
        self.map.face_of(self.map.root).iter().map(|&d| self.label[d]).collect()
    }

    /// Contour labels of the boundary face read from the head of the root, so a disk rooted
    /// on a 1 -> 0 edge starts at label 0.
    pub fn boundary_walk(&self) -> Vec<i64> {
        let mut l = self.boundary_labels();
        l.rotate_left(1);
        l
    }

    pub fn canonical_code(&self) -> (Vec<usize>, Vec<i64>) {
        let order = self.map.canonical_order();
        (self.map.canonical_code(), order.iter().map(|&d| self.label[d]).collect())
    }

    /// Labels j -> 2-j, root moved to the unique 1 -> 0 edge with the same face on its right.
    pub fn relabel(&self) -> Result<ColorfulQuad, Error> {
        self.check_root_face()?;
        let label: Vec<i64> = self.label.iter().map(|&l| 2 - l).collect();
        let f = self.map.face_of(self.map.twin[self.map.root]);
        let d = f
            .iter()
            .copied()
            .find(|&d| label[d] == 0 && label[self.map.face_next(d)] == 1)
            .ok_or(Error::WrongRootFace)?;
        let mut map = self.map.clone();
        map.root = map.twin[d];
        Ok(ColorfulQuad { map, label, kind: self.kind })
    }

    /// Checks that the face right of the root reads (0,1,2,1).
    pub fn check_root_face(&self) -> Result<(), Error> {
        let f = self.map.face_of(self.map.twin[self.map.root]);
        let l: Vec<i64> = f.iter().map(|&d| self.label[d]).collect();
        if l != [0, 1, 2, 1] {
            return Err(Error::WrongRootFace);
        }
        Ok(())
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.map.vertex_count()
    }
}

impl PartialEq for ColorfulQuad {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind && self.canonical_code() == o.canonical_code()
    }
}

impl Eq for ColorfulQuad {}

/// Checks the colorful conditions. For disks only inner faces are checked.
pub fn validate_colorful(map: &PlanarMap, label: Vec<i64>, kind: Kind) -> Result<ColorfulQuad, Error> {
    let nd = map.darts();
    if label.len() != nd {
        return Err(Error::Malformed("label length".into()));
    }
    for d in 0..nd {
        if label[map.next[d]] != label[d] {
            return Err(Error::Malformed(format!("labels disagree around the origin of dart {d}")));
        }
        if (label[d] - label[map.twin[d]]).abs() != 1 {
            return Err(Error::BadEdgeLabels(d.min(map.twin[d])));
        }
    }
    if label[map.root] != 1 || label[map.twin[map.root]] != 0 {
        return Err(Error::BadRootLabels);
    }
    let (fid, faces) = map.faces();
    let rf = fid[map.root];
    for (i, f) in faces.iter().enumerate() {
        if kind == Kind::Disk && i == rf {
            continue;
        }
        if !is_colorful_face(&f.iter().map(|&d| label[d]).collect::<Vec<_>>()) {
            return Err(Error::BadFace(i));
        }
    }
    Ok(ColorfulQuad { map: map.clone(), label, kind })
}

pub fn is_colorful_face(l: &[i64]) -> bool {
    if l.len() != 4 {
        return false;
    }
    (0..4).any(|s| {
        let r = l[(s + 1) % 4];
        l[s] == r - 1 && l[(s + 2) % 4] == r + 1 && l[(s + 3) % 4] == r
    })
}

/// Sphere object of the class counted by Z: colorful sphere with (0,1,2,1) right of the root.
pub fn validate_sphere(map: &PlanarMap, label: Vec<i64>) -> Result<ColorfulQuad, Error> {
    let q = validate_colorful(map, label, Kind::Sphere)?;
    q.check_root_face()?;
    Ok(q)
}

/// Labels of the boundary walk of a base signature: odd blocks ascend, even blocks descend.
pub fn walk_of_signature(sig: &[usize]) -> Vec<i64> {
    let k = sig.len();
    let mut out = Vec::new();
    for i in (1..=k).step_by(2) {
        for _ in 0..sig[i - 1] {
            out.push(i as i64 - 1);
            out.push(i as i64);
        }
    }
    let last_even = if k % 2 == 0 { k } else { k - 1 };
    for i in (2..=last_even).rev().step_by(2) {
        for _ in 0..sig[i - 1] {
            out.push(i as i64);
            out.push(i as i64 - 1);
        }
    }
    out
}

pub(crate) fn from_parts(map: PlanarMap, label: Vec<i64>, kind: Kind) -> ColorfulQuad {
    ColorfulQuad { map, label, kind }
}
