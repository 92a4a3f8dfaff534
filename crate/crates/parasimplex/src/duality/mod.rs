//! Duality between slice models, functorial Toda brackets and filtered
//! objects.

mod square;

pub use square::{
    chain_length, kappa_check, on_path, prefix_left, prefix_right, psi_square, psi_square_ex,
    psi_square_check, psi_square_raw, psi_square_vee, PathDiagram,
};

mod phi;

pub use phi::{
    d34_check, d34_formulas, dv_dh_check, phi, phi_checks, psi_nk, psi_nk_raw, round_trip_check,
    s3_commutes_check, vertex_oracle, xi_check, VertexFormula,
};

mod homclass;
mod toda;

pub use homclass::{homology_projection, HomClass};
pub use toda::{
    in_indeterminacy, indeterminacy_coset, outside_indeterminacy, random_toda_data, toda,
    toda_alt, toda_path_point, random_toda_data_homotopic, toda_routes_agree, TodaData, TodaMorphism,
};

mod filtered;

pub use filtered::{
    extract_triangle, filtered_object, filtration_checks, Filtration, TriangleData,
};
