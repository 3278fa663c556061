//! End-to-end runs on the standard fixtures: the Tate curve, the `A_2`
//! Delaunay decomposition and the hexagonal datum at level `1/2`.

use neron_toric::arith::rational::{to_i, IVec};
use neron_toric::charts::{chart_ring, fiber_presentation};
use neron_toric::datum::Level;
use neron_toric::fan::{build_fan, check_fan_over_s};
use neron_toric::fixtures::{hexagon, tate};
use neron_toric::strata::{
    checked_stratification, component_group, component_polygon_report, delaunay_stratification,
};
use neron_toric::voronoi::{delaunay_complex, vor_complex, voronoi_polytope};

#[test]
fn tate_curve_pipeline() {
    let datum = tate();
    let level = Level::new(1).unwrap();
    let group = component_group(&datum);
    assert_eq!(group.invariant_factors, vec![2]);
    assert_eq!(group.to_string(), "Z/2");

    let (report, checks) = checked_stratification(&datum, level).unwrap();
    assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    assert_eq!(report.components.len(), 2);
    assert_eq!(report.orbit_counts, vec![2, 2]);

    let complex = vor_complex(&datum, level).unwrap();
    let mut degree = vec![0usize; complex.faces().len()];
    for inc in complex.incidences() {
        degree[inc.face] += 1;
    }
    for (i, f) in complex.faces().iter().enumerate() {
        if f.dim == 0 {
            assert_eq!(degree[i], 2, "each point lies on two components");
        }
    }

    assert!(check_fan_over_s(&build_fan(&datum, level).unwrap())
        .unwrap()
        .passed());

    let chart = chart_ring(&datum, level, &[vec![1]], &[0]).unwrap();
    assert_eq!(chart.semigroup.hilbert, vec![vec![0, -1], vec![1, 1]]);
    assert!(chart.semigroup.lineality.is_empty());
    assert!(chart.unimodular);
    let m0 = vec![1, 0];
    let sum: IVec = chart.semigroup.hilbert[0]
        .iter()
        .zip(&chart.semigroup.hilbert[1])
        .map(|(a, b)| a + b)
        .collect();
    assert_eq!(sum, m0);
    let fiber = fiber_presentation(&chart);
    assert_eq!(fiber.minimal_zero_monomials.len(), 1);
    assert_eq!(fiber.minimal_zero_monomials[0].len(), 2);
}

#[test]
fn a2_delaunay_has_two_triangles() {
    let datum = hexagon();
    let complex = delaunay_complex(&datum).unwrap();
    assert_eq!(complex.cells().len(), 2);
    for cell in complex.cells() {
        assert_eq!(cell.polytope.vertices().len(), 3);
    }
    let report = delaunay_stratification(&datum).unwrap();
    assert_eq!(report.components.len(), 2);
    assert_eq!(report.orbit_counts, vec![1, 3, 2]);
    assert_eq!(report.euler_characteristic, 0);
}

#[test]
fn hexagon_at_half_level() {
    let datum = hexagon();
    let level = Level::half();
    let (report, checks) = checked_stratification(&datum, level).unwrap();
    assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    assert_eq!(report.components.len(), 3);
    for p in component_polygon_report(&datum, level).unwrap() {
        assert_eq!((p.vertices, p.edges), (6, 6));
    }
    let cell = voronoi_polytope(&datum, level).unwrap();
    assert_eq!(cell.vertices().len(), 6);
    for v in cell.vertices() {
        let v = to_i(v).unwrap();
        let chart = chart_ring(&datum, level, std::slice::from_ref(&v), &[0, 0]).unwrap();
        assert_eq!(chart.semigroup.hilbert.len(), 3, "at {v:?}");
        assert!(chart.unimodular && chart.well_defined, "at {v:?}");
        let fiber = fiber_presentation(&chart);
        assert_eq!(fiber.minimal_zero_monomials, vec![vec![0, 1, 2]]);
    }
}

#[test]
fn torus_chart_at_a_cell_center() {
    let datum = hexagon();
    let level = Level::half();
    let cell = voronoi_polytope(&datum, level).unwrap();
    let face: Vec<IVec> = cell.vertices().iter().map(|v| to_i(v).unwrap()).collect();
    let chart = chart_ring(&datum, level, &face, &[0, 0]).unwrap();
    assert!(chart.torus);
    assert_eq!(chart.semigroup.lineality.len(), 2);
    assert!(chart.semigroup.lineality.iter().all(|l| l[0] == 0));
    assert_eq!(chart.semigroup.hilbert, vec![vec![1, 0, 0]]);
    assert!(chart.unimodular);
}
