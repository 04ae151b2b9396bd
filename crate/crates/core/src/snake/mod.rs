//! Tree-indexed simple random walks ("snakes") on `Z^d` and their observables.

mod embed;
mod intersection;
mod lattice;
mod reduced;
mod walk;

pub use embed::{
    assign_and_embed, boundary_hit_zero, max_displacement, prefix_cut, prefix_excluded_scope, range_size, return_count,
    SnakeEmbedding, SnakeIndex, NO_INCREMENT,
};
pub use intersection::{first_intersection_radius, two_snake_intersection};
pub use lattice::{Lattice, LatticePoint, Packed, MAX_DIM, MAX_RADIUS};
pub use reduced::{reduced_boundary, reduced_boundary_hit};
pub use walk::{walk_kesten_snake, SnakeVertex};
