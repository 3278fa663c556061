//! Integrality of the Voronoi polytopes of the `E_8` datum: the vertex
//! denominators, the smallest integral level and a non-integral witness.

use neron_toric::datum::Level;
use neron_toric::fixtures::e8;
use neron_toric::voronoi::{is_integral, minimal_level, relevant_vectors, vertex_denominator};

fn main() -> neron_toric::error::Result<()> {
    let datum = e8();
    let level = Level::new(1)?;
    println!(
        "relevant vectors at level 1: {}",
        relevant_vectors(&datum, level)?.len()
    );
    println!(
        "vertex denominator of the unit cell: {}",
        vertex_denominator(&datum)?
    );
    println!(
        "minimal integral level up to 100: {}",
        minimal_level(&datum, 100)?
    );
    for l in [1, 3, 15, 30] {
        let r = is_integral(&datum, Level::new(l)?)?;
        match r.witness {
            None => println!("ℓ = {l}: integral"),
            Some(w) => println!("ℓ = {l}: not integral, {w}"),
        }
    }
    Ok(())
}
