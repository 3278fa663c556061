//! The hexagonal datum at level `1/2`: three hexagonal components and a
//! regular chart at every vertex.

use neron_toric::arith::rational::{fmt_ivec, to_i};
use neron_toric::charts::chart_ring;
use neron_toric::datum::Level;
use neron_toric::fixtures::hexagon;
use neron_toric::strata::{component_polygon_report, stratification};
use neron_toric::voronoi::voronoi_polytope;

fn main() -> neron_toric::error::Result<()> {
    let datum = hexagon();
    let level = Level::half();
    let report = stratification(&datum, level)?;
    println!(
        "{} components, orbit counts {:?}",
        report.components.len(),
        report.orbit_counts
    );
    for p in component_polygon_report(&datum, level)? {
        println!(
            "component {}: {} vertices, {} edges",
            p.label.join(","),
            p.vertices,
            p.edges
        );
    }
    let cell = voronoi_polytope(&datum, level)?;
    for v in cell.vertices() {
        let v = to_i(v).expect("integral cell");
        let chart = chart_ring(&datum, level, std::slice::from_ref(&v), &[0, 0])?;
        let hb: Vec<String> = chart
            .semigroup
            .hilbert
            .iter()
            .map(|h| fmt_ivec(h))
            .collect();
        println!(
            "vertex {}: {} (unimodular: {})",
            fmt_ivec(&v),
            hb.join(" "),
            chart.unimodular
        );
    }
    Ok(())
}
