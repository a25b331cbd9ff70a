//! JSON interchange for maps: `{"darts", "twin", "next", "root", "labels"?, "orientation"?, "kind"}`.
//! Labels and orientation are per-dart arrays; `signature` accompanies refined-bijection disks.

use serde::{Deserialize, Serialize};

use crate::colorful::{validate_colorful, ColorfulQuad, Kind};
use crate::error::Error;
use crate::planar::PlanarMap;
use crate::rigid::{validate_rigid, RigidQuad};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub darts: usize,
    pub twin: Vec<usize>,
    pub next: Vec<usize>,
    pub root: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<usize>>,
    pub kind: String,
}

/// A decoded map of any supported kind.
#[derive(Clone, Debug)]
pub enum MapObject {
    Planar(PlanarMap),
    Rigid(RigidQuad),
    Colorful(ColorfulQuad),
}

fn base(m: &PlanarMap, kind: &str) -> MapJson {
    MapJson {
        darts: m.darts(),
        twin: m.twin.clone(),
        next: m.next.clone(),
        root: m.root,
        labels: None,
        orientation: None,
        signature: None,
        kind: kind.into(),
    }
}

impl MapObject {
    pub fn to_json(&self) -> MapJson {
        match self {
            MapObject::Planar(m) => base(m, "planar"),
            MapObject::Rigid(r) => MapJson { orientation: Some(r.orientation().to_vec()), ..base(r.map(), "rigid") },
            MapObject::Colorful(q) => {
                let kind = match q.kind() {
                    Kind::Sphere => "colorful-sphere",
                    Kind::Disk => "colorful-disk",
                };
                MapJson { labels: Some(q.labels().to_vec()), ..base(q.map(), kind) }
            }
        }
    }

    /// Validates the JSON form against its declared kind.
    pub fn from_json(j: &MapJson) -> Result<MapObject, Error> {
        if j.twin.len() != j.darts || j.next.len() != j.darts {
            return Err(Error::Malformed("array lengths differ from the dart count".into()));
        }
        let m = PlanarMap::new(j.twin.clone(), j.next.clone(), j.root)?;
        match j.kind.as_str() {
            "planar" => Ok(MapObject::Planar(m)),
            "rigid" => Ok(MapObject::Rigid(validate_rigid(&m, j.orientation.as_deref())?)),
            "colorful-sphere" | "colorful-disk" => {
                let labels = j.labels.clone().ok_or_else(|| Error::Malformed("labels missing".into()))?;
                let kind = if j.kind == "colorful-sphere" { Kind::Sphere } else { Kind::Disk };
                Ok(MapObject::Colorful(validate_colorful(&m, labels, kind)?))
            }
            k => Err(Error::Malformed(format!("unknown kind {k}"))),
        }
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data serializes")
    }

    pub fn parse(s: &str) -> Result<MapObject, Error> {
        let j: MapJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

impl From<RigidQuad> for MapObject {
    fn from(r: RigidQuad) -> Self {
        MapObject::Rigid(r)
    }
}

impl From<ColorfulQuad> for MapObject {
    fn from(q: ColorfulQuad) -> Self {
        MapObject::Colorful(q)
    }
}
