//! Exact polyhedral geometry: LP, V-polytopes, simplicial fans and type cones.

pub mod fan;
pub mod fm;
pub mod io;
pub mod lp;
pub mod polytope;

pub use fan::{polytope_from_heights, support_heights, type_cone_simplicial_check, Fan, HeightVector, TypeConeReport};
pub use polytope::{hull_vertices, hull_vertices_fm, is_edge, minkowski_sum, minkowski_sum_all, VPolytope};
