//! The Delaunay decomposition of the `A_2` form and the stratification it
//! induces: two triangles modulo `X`.

use neron_toric::arith::rational::fmt_qvec;
use neron_toric::fixtures::hexagon;
use neron_toric::strata::{delaunay_polygon_report, delaunay_stratification};
use neron_toric::voronoi::delaunay_complex;

fn main() -> neron_toric::error::Result<()> {
    let datum = hexagon();
    let complex = delaunay_complex(&datum)?;
    for (i, cell) in complex.cells().iter().enumerate() {
        let verts: Vec<String> = cell
            .polytope
            .vertices()
            .iter()
            .map(|v| fmt_qvec(v))
            .collect();
        println!("cell {i}: {}", verts.join(" "));
    }
    let report = delaunay_stratification(&datum)?;
    println!(
        "orbit counts {:?}, Euler characteristic {}",
        report.orbit_counts, report.euler_characteristic
    );
    for p in delaunay_polygon_report(&datum)? {
        println!(
            "component {}: {} vertices, {}",
            p.label.join(","),
            p.vertices,
            p.annotation
        );
    }
    Ok(())
}
