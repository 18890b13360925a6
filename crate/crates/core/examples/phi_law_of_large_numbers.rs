//! Φ, the limit law of the free multiplicative law of large numbers.
//! Φ(mp(λ)) has CDF clamp(x + 1 - λ, 0, 1), so mp(1) goes to the uniform law.

use freeconv::maps::phi;
use freeconv::Measure;

fn main() -> freeconv::Result<()> {
    for lambda in [0.5, 1.0, 2.0, 4.0] {
        let p = phi(&Measure::mp(lambda)?)?;
        let row: Vec<String> = [0.25, 1.0, 2.0, 3.5]
            .iter()
            .map(|&x| p.cdf(x).map(|f| format!("{f:.10}")))
            .collect::<freeconv::Result<_>>()?;
        println!("Φ(mp({lambda})) at 0.25, 1, 2, 3.5: {}", row.join("  "));
    }
    let p = phi(&Measure::free_stable(0.5)?)?;
    println!("Φ(f_1/2) against pareto(1): F(4) = {:.12}, 1 - 1/4 = 0.75", p.cdf(4.0)?);
    Ok(())
}
