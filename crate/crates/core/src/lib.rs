//! Spherical fusion categories from skeletal data: a string-diagram engine,
//! the tube category and tube algebra, and Drinfeld centre objects realized
//! as tube idempotents.

pub mod centre;
pub mod checks;
pub mod diagram;
pub mod error;
pub mod fusion_data;
pub mod linalg;
pub mod semisimple;
pub mod tube;

pub use diagram::{Crossing, Morphism};
pub use error::{ConsistencyKind, Error, Result};
pub use fusion_data::{load_category, CategorySpec, TensorWord};
pub use tube::{tube_hom_dim, TubeAlgebra, TubeMorphism};
