//! Hilbert bases of cones, the finite generating set of a chart algebra and
//! the `I`-adic bound on the Tate curve.

use neron_toric::arith::rational::{fmt_q, to_q};
use neron_toric::charts::{chart_generators, hilbert_basis, iadic_bound};
use neron_toric::datum::Level;
use neron_toric::fixtures::tate;
use neron_toric::polyhedra::Cone;

fn main() -> neron_toric::error::Result<()> {
    let cone = Cone::from_generators(2, &[to_q(&[1, 0]), to_q(&[1, 3])], &[])?;
    println!(
        "Hilbert basis of Cone((1,0),(1,3)): {:?}",
        hilbert_basis(&cone)?
    );

    let datum = tate();
    let level = Level::new(1)?;
    let gens = chart_generators(&datum, level, &[1], &[0])?;
    println!("M = {}, Δ = {:?}", fmt_q(&gens.m), gens.delta);
    println!("weights: {:?}", gens.weights);
    for x in [16, 17, 24] {
        let b = iadic_bound(&datum, level, &[1], &[0], &[x])?;
        println!(
            "x = {x}: M* = {}, C(x) = {}, t = {}",
            fmt_q(&b.m_star),
            fmt_q(&b.c_x),
            b.t
        );
    }
    Ok(())
}
