//! Stokes flow around two equal rigid cylinders, solved semi-analytically
//! in bipolar coordinates.

pub mod assembly;
pub mod cli;
pub mod error;
pub mod field;
pub mod geometry;
pub mod noslip;
pub mod numeric;
pub mod singular;
pub mod stream;
pub mod validation;

pub use error::{Error, Result};
pub use field::FieldSample;
pub use geometry::{BipolarPoint, Frame, Geometry, Side, Sym2};
