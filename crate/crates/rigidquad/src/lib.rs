//! Rigid quadrangulations of the disk and colorful labelled quadrangulations.

pub mod bijection;
pub mod colorful;
pub mod error;
pub mod exploration;
pub mod geometry;
pub mod json;
pub mod oracle;
pub mod planar;
pub mod rigid;
pub mod sampler;
pub mod series;
pub mod statistics;
pub mod verify;

pub use colorful::{validate_colorful, walk_of_signature, ColorfulQuad, Kind};
pub use error::Error;
pub use exploration::{assemble_colorful, assemble_rigid, explore_rigid, peel, Letter, Step, Trace};
pub use planar::PlanarMap;
pub use rigid::{validate_rigid, Corner, RigidQuad};
