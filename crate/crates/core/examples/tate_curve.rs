//! The whole pipeline on the Tate curve `g = 1`, `B = (2)`: component group,
//! the cycle of components, the boundary chart and its fiber relation.

use neron_toric::arith::rational::fmt_ivec;
use neron_toric::charts::{chart_ring, fiber_presentation};
use neron_toric::datum::Level;
use neron_toric::fan::{build_fan, check_fan_over_s};
use neron_toric::fixtures::tate;
use neron_toric::strata::{checked_stratification, component_group};

fn main() -> neron_toric::error::Result<()> {
    let datum = tate();
    let level = Level::new(1)?;
    println!("component group: {}", component_group(&datum));
    let (report, checks) = checked_stratification(&datum, level)?;
    println!(
        "{} components, orbit counts {:?}",
        report.components.len(),
        report.orbit_counts
    );
    for c in &checks {
        println!("  {c}");
    }
    let fan = build_fan(&datum, level)?;
    println!(
        "fan over S passes its clauses: {}",
        check_fan_over_s(&fan)?.passed()
    );
    let chart = chart_ring(&datum, level, &[vec![1]], &[0])?;
    let hb: Vec<String> = chart
        .semigroup
        .hilbert
        .iter()
        .map(|h| fmt_ivec(h))
        .collect();
    println!("boundary chart at 1: Hilbert basis {}", hb.join(" "));
    let fiber = fiber_presentation(&chart);
    for m in &fiber.minimal_zero_monomials {
        let f: Vec<String> = m.iter().map(|&i| fmt_ivec(&fiber.generators[i])).collect();
        println!("  fiber relation {} = 0", f.join("·"));
    }
    Ok(())
}
