//! Monomials recorded by their valuations, the actions `δ_u` and `S_y`, and
//! the sampled valuation identities.

use neron_toric::datum::Level;
use neron_toric::fixtures::{hexagon, tate};
use neron_toric::monomial::{
    delta_action, fourier_rank, monomial_identities, s_action, valuation_identities, xi_monomial,
};

fn main() -> neron_toric::error::Result<()> {
    let datum = tate();
    let level = Level::new(1)?;
    let xi = xi_monomial(&datum, level, &[0], &[1])?;
    println!("ξ_(1,0,1)θ = {xi}");
    println!("δ_1 of it: {}", delta_action(&datum, &[1], &xi));
    println!("S_1 of it: {}", s_action(&datum, &[1], &xi)?);
    println!(
        "Fourier ranks for m = 1, 2, 3: {:?}",
        [1, 2, 3].map(|m| fourier_rank(&datum, m))
    );

    let hex = hexagon();
    for c in valuation_identities(&hex, 20, 7).checks {
        println!("  {c}");
    }
    for c in monomial_identities(&hex, level, 20, 7)?.checks {
        println!("  {c}");
    }
    Ok(())
}
