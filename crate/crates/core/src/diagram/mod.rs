//! Graphical calculus on tensor words in a canonical fusion-tree basis.

mod braid;
mod fmove;
mod lemmas;
mod morphism;
mod rigid;
pub mod tree;

pub use braid::Crossing;
pub use fmove::{f_move, shaped_distance, ShapedMorphism};
pub use lemmas::{dual_basis, ResolutionPair};
pub use morphism::{tensor, Morphism};
pub use rigid::RigidData;
pub use tree::{ChannelBasis, FusionTree, LTree, Move, Shape, Side};
