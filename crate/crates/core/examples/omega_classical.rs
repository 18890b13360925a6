//! Ω and Ω̃ on classical convolution: Ω(μ ∗ ν) = Ωμ · Ων with μ ∗ ν computed
//! on a grid, plus the stable-law examples.

use freeconv::convolutions::conv_classical_add;
use freeconv::maps::{omega, omega_tilde};
use freeconv::Measure;

fn main() -> freeconv::Result<()> {
    let e = Measure::exponential();
    let p = Measure::poisson(1.0)?;
    let sum = conv_classical_add(&e, &p)?;
    let (lhs, oe, op) = (omega(&sum)?, omega(&e)?, omega(&p)?);
    println!("Ω(exp ∗ poisson(1)) against Ω(exp)·Ω(poisson(1))");
    for t in [0.5, 1.0, 3.0, 10.0] {
        println!("  t = {t:>5}: {:.10}  {:.10}", lhs.cdf(t)?, oe.cdf(t)? * op.cdf(t)?);
    }

    let alpha = 0.5;
    let s = Measure::classical_stable(alpha)?;
    let (o, ot, fr) = (omega(&s)?, omega_tilde(&s)?, Measure::frechet(alpha)?);
    let g = statrs::function::gamma::gamma(1.0 + alpha);
    println!("stable law s_1/2: Ω against exp(-Γ(1+α)t^-α), Ω̃ against Fréchet");
    for t in [0.5, 1.0, 4.0] {
        println!(
            "  t = {t:>5}: {:.12}  {:.12}   {:.12}  {:.12}",
            o.cdf(t)?,
            (-g * t.powf(-alpha)).exp(),
            ot.cdf(t)?,
            fr.cdf(t)?
        );
    }
    Ok(())
}
