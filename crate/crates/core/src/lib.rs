//! Schubert unions in Grassmannians `G(l,m)`: order ideals of the Plücker
//! index grid, their point counts over `F_q`, duality, the `l = 2` optimizer
//! for maximal unions, and the associated Grassmann and Schubert-union codes.

pub mod duality;
pub mod error;
pub mod experiments;
pub mod gf;
pub mod grid;
pub mod optimizer;
pub mod pluecker;
pub mod poly;
pub mod tables;
pub mod twodim;
pub mod weights;

pub use error::{Error, Result};
pub use grid::{GrassParams, GridPoint, SchubertUnion};
pub use poly::PointCountPoly;
