//! Decides whether a triangulated closed 3-manifold is the 3-sphere using
//! normal and almost normal surfaces, with an exact integer enumeration core
//! and a companion module for normal curves on triangulated surfaces.

pub mod cutting;
pub mod enumeration;
pub mod examples;
pub mod homology;
pub mod matrix;
pub mod normal_coords;
pub mod perm;
pub mod snf;
pub mod surface;
pub mod surface_builder;
pub mod triangulation;
