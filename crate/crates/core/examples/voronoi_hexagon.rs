//! The Voronoi polytope of the hexagonal datum and of the rank-two family
//! `B = ((p+r, -r), (-r, q+r))`, with its integrality and the complex `Vor_1`.

use neron_toric::arith::rational::fmt_qvec;
use neron_toric::datum::Level;
use neron_toric::fixtures::{hexagon, rank_two};
use neron_toric::voronoi::{minimal_level, relevant_vectors, vor_complex, voronoi_polytope};

fn main() -> neron_toric::error::Result<()> {
    let datum = hexagon();
    let level = Level::new(1)?;
    let cell = voronoi_polytope(&datum, level)?;
    println!("hexagon: Σ_1(0) has {} vertices", cell.vertices().len());
    for v in cell.vertices() {
        println!("  {}", fmt_qvec(v));
    }
    println!(
        "relevant vectors of 2φ(X^∨): {:?}",
        relevant_vectors(&datum, level)?
    );
    println!("minimal integral level: {}", minimal_level(&datum, 10)?);
    let complex = vor_complex(&datum, level)?;
    println!(
        "Vor_1: face classes {:?}, orbits {:?}",
        complex.counts_mod_translation(),
        complex.counts_mod_quotient()
    );

    for (p, q, r) in [(1, 1, 0), (2, 1, 1), (3, 2, 2)] {
        let cell = voronoi_polytope(&rank_two(p, q, r), level)?;
        let verts: Vec<String> = cell.vertices().iter().map(|v| fmt_qvec(v)).collect();
        println!("(p, q, r) = ({p}, {q}, {r}): {}", verts.join(" "));
    }
    Ok(())
}
