//! Stable homomorphisms intertwine with powers: Ω̃∘C_α = P_1/α∘Ω̃,
//! Θ∘F_α = P_1/α∘Θ and Ξ∘B_α = P_1/α∘Ξ, where P_c(μ) is the law of X^c.

use freeconv::maps::{hom_boolean_stable, hom_classical_stable, hom_free_stable, omega_tilde, theta, xi};
use freeconv::Measure;

fn main() -> freeconv::Result<()> {
    let alpha = 0.5;
    let nu = Measure::exponential();
    let mp = Measure::mp(2.0)?;
    let pairs = [
        ("Ω̃ C_α", omega_tilde(&hom_classical_stable(&nu, alpha)?)?, omega_tilde(&nu)?.power(1.0 / alpha)?),
        ("Θ F_α", theta(&hom_free_stable(&mp, alpha)?)?, theta(&mp)?.power(1.0 / alpha)?),
        ("Ξ B_α", xi(&hom_boolean_stable(&nu, alpha)?)?, xi(&nu)?.power(1.0 / alpha)?),
    ];
    for (name, lhs, rhs) in &pairs {
        let worst = [0.1, 0.5, 1.0, 2.0, 10.0, 100.0]
            .iter()
            .map(|&t| Ok((lhs.cdf(t)? - rhs.cdf(t)?).abs()))
            .collect::<freeconv::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("{name}: sup |lhs - rhs| = {worst:.2e}");
    }
    Ok(())
}
