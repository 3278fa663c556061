//! Voronoi polytopes `Σ_ℓ(0)`, their lattice points and integrality, the
//! closest-vector decomposition behind `D_ℓ`, and the periodic complexes
//! `Vor_ℓ` and `Del_B`.

pub mod alcove;
mod cell;
mod complex;
mod cvp;

pub use cell::{
    coset_relevant_vectors, find_basis, in_sigma, in_sigma_q, is_integral, minimal_level,
    relevant_vectors, sigma_points, squared_circumradius, unit_vertex_representatives,
    unit_vertices_complete, vertex_denominator, voronoi_inequalities, voronoi_polytope,
    Integrality, IntegralityWitness, SIGMA_POINT_BUDGET,
};
pub use complex::{
    box_points, canonical_key, delaunay_complex, lattice_voronoi_cell, vor_complex, CellRep,
    ComplexKind, FaceClass, FaceComplex, Incidence,
};
pub use cvp::{cvp_all, cvp_all_q, cvp_decompose, d_value, decomposition_valuation, Decomposition};
