//! Random plane trees, Kesten's tree (the critical Galton-Watson tree
//! conditioned to survive), tree-indexed simple random walks on `Z^d`, and
//! the Monte Carlo machinery used to measure them.

pub mod error;
pub mod estimators;
pub mod kesten;
pub mod plane_tree;
pub mod rng;
pub mod snake;

pub use error::{Error, Result};
pub use plane_tree::{DyckCode, NodeId, PlaneTree};
pub use rng::{derive_stream, OffspringLaw, RngStream};
