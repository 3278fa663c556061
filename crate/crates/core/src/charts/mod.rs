//! Chart algebras as weight semigroups in `X̃`: finite generating sets,
//! `I`-adic bounds, normalizations through Hilbert bases, closed-fiber
//! monomial presentations and invariance under change of level.

mod chart;
mod hilbert;

pub use chart::{
    chart_generators, chart_ring, coordinates, fiber_presentation, generation_constant,
    generation_delta, iadic_bound, interior_points, scaling_check, weight_lattice_index,
    ChartGenerators, FiberProduct, FiberTable, IadicBound, MonomialChart, ScalingReport,
    DELTA_BOX_BUDGET,
};
pub use hilbert::{
    hilbert_basis, hilbert_basis_with, in_semigroup, semigroup_generators, SemigroupGenerators,
    HILBERT_POINT_BUDGET,
};
