//! Representation conversion, face lattices and polyhedral complexes.

pub mod blocking;
pub mod dd;
pub mod export;
pub mod lattice;
pub mod polar;
pub mod refine;
pub mod rep;

pub use blocking::{blocking_polyhedron, conjugate_face, BlockingPolyhedron};
pub use lattice::{
    affine_dim, bounded_subcomplex, deletion, face_lattice, face_lattice_of, skeleton, Complex,
    Face, Skeleton,
};
pub use polar::{polar_s, LinearChart, SymmetricPolar};
pub use refine::{check_complex_axioms, common_refinement};
pub use rep::{dd_convert, dd_convert_back, dd_convert_back_in, HRep, VRep};
