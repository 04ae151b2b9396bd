//! Finite rooted plane trees: arena storage, Dyck codes, exact uniform
//! sampling and enumeration, and the one-step re-rooting move.

pub mod canonical;
mod code;
mod sample;
mod tree;

pub use code::{
    catalan_numbers, enumerate_plane_trees, parse, preorder_index, serialize, DyckCode, MAX_ENUMERATION_EDGES,
};
pub use sample::{reroot_one_step, reroot_to, sample_uniform_plane_tree};
pub use tree::{Children, NodeId, PlaneTree, NIL};

use crate::error::Result;

/// Number of incident edges of `v`.
pub fn degree(tree: &PlaneTree, v: NodeId) -> Result<u32> {
    tree.degree(v)
}

/// Vertices within graph distance `r` of `v`.
pub fn ball_vertices(tree: &PlaneTree, v: NodeId, r: u32) -> Result<Vec<NodeId>> {
    tree.ball_vertices(v, r)
}
