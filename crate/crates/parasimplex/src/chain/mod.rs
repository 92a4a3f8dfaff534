//! Exact linear algebra over `F_p` and bounded chain complexes.

mod complex;
mod linsys;
mod matrix;
mod random;

pub use complex::{
    cocone, cocone_functorial, cocone_inclusion, cocone_projection, cone, cone_functorial,
    cone_inclusion, cone_projection, ChainComplex, ChainMap, GradedDims, GradedMap,
    HomologyBasis,
};
pub use linsys::{BlockSystem, Term};
pub use matrix::{inv_mod, is_prime, reduce, Echelon, FpMatrix};
pub use random::{random_complex, random_map, random_matrix};

/// Homology dimensions of a complex.
pub fn homology(c: &ChainComplex) -> GradedDims {
    c.homology()
}

/// True iff `f` induces an isomorphism on homology.
pub fn qiso_test(f: &ChainMap) -> bool {
    f.is_qiso()
}
