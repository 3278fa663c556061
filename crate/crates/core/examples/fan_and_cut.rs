//! The fan over `S` of the hexagonal datum, its `Cut` bijection with the
//! faces of `Vor_1`, the polytope `Σ*_1` and the fan `Fan(ξ)`.

use neron_toric::arith::rational::fmt_qvec;
use neron_toric::datum::Level;
use neron_toric::fan::{
    build_fan, check_fan_over_s, cut_bijection_report, mumford_fan, sigma_star,
};
use neron_toric::fixtures::hexagon;

fn main() -> neron_toric::error::Result<()> {
    let datum = hexagon();
    let level = Level::new(1)?;
    let fan = build_fan(&datum, level)?;
    println!(
        "{} maximal cone classes, {} cone classes",
        fan.maximal().len(),
        fan.cones().len()
    );
    for c in check_fan_over_s(&fan)?.checks {
        println!("  {c}");
    }
    let bij = cut_bijection_report(&datum, level)?;
    println!("(dim Cut, dim face) pairs: {:?}", bij.dim_pairs);
    let star = sigma_star(&datum, level)?;
    let verts: Vec<String> = star.vertices().iter().map(|v| fmt_qvec(v)).collect();
    println!("Σ*_1: {}", verts.join(" "));
    println!("Fan(ξ): {:?}", mumford_fan(&datum)?.summary());
    Ok(())
}
