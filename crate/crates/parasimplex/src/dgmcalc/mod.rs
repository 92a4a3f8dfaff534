//! The diagram calculus: strictly commutative diagrams of chain complexes
//! over finite posets, homotopy Kan extensions, and cofibers and fibers of
//! cubes.
//!
//! Over a field every complex is both cofibrant and fibrant, so strict
//! diagrams with homotopy-correct Kan extensions model the derivator of the
//! field. Isomorphism claims are checked at one of three levels: exact
//! equality, acyclic cone of an explicit comparison map, or agreement of
//! [`HomologyProfile`]s.

mod cube;
mod diagram;
mod kan;
mod support;
mod transfer;

pub use cube::{
    cocone_pt, cof, cof1, cof_coord, cof_seq, concat_check, cone_pt, fib, fib1, fib_cof_unit,
    fib_cof_unit_coord, fib_coord, fib_coord_map, fib_seq, is_bicartesian, iterated, iterated_on,
    loop_, susp, tcof, tfib, ConcatVerdict, IteratedOp,
};
pub(crate) use diagram::rank_entries;
pub use diagram::{random_arrows, random_diagram, Diagram, HomologyProfile, NatMap};
pub use kan::{
    left_kan_any, lkan, lkan_unit_witness, rkan, rkan_counit_witness, right_kan_any, Resolution,
};
pub use support::{collapse_support, extend_by_zero, Collapse};
pub use transfer::{corner_comparison, total_complex, TotalLayout};

/// Pullback `u*X`.
pub fn restrict(x: &Diagram, u: &crate::homposet::PosetMap) -> crate::Result<Diagram> {
    x.restrict(u)
}
