//! O_β-hulls of planar point sets: staircases, overlap regions, the angular
//! sweep over β, area and perimeter optimization, and (2,β)-chain fitting.

pub mod error;
pub mod events;
pub mod fitting;
pub mod fixtures;
pub mod geom;
pub mod hull;
pub mod io;
pub mod objectives;
pub mod oracle;
mod rankset;
pub mod sweep;

pub use error::{Error, Result};
pub use geom::{shear, slope_angle, unshear, Angle, Point, SkewPoint};
pub use hull::{
    area_of, hull_fixed, perimeter_of, staircase, HullSnapshot, OverlapRegion, PairKind,
    PointSet, Staircase, StaircaseKind,
};
