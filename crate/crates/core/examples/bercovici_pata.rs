//! Bercovici-Pata bijections: Λ maps Poisson to Marchenko-Pastur, its atom at
//! zero is max(1-λ, 0), and Λ^∨∘Ω = Θ∘Λ. The boolean-to-free Λ_bf takes b_α
//! to f_α.

use freeconv::maps::{bp_lambda, bp_lambda_bf, bp_lambda_max, omega, theta};
use freeconv::Measure;

fn main() -> freeconv::Result<()> {
    for lambda in [0.5, 2.0] {
        let p = Measure::poisson(lambda)?;
        let l = bp_lambda(&p)?;
        let mp = Measure::mp(lambda)?;
        println!("Λ(poisson({lambda})): atom0 = {}, A = {}", l.atom0(), l.neg_moment()?);
        println!("  R(-0.3) = {:.12}, mp R(-0.3) = {:.12}", l.r_transform(-0.3)?, mp.r_transform(-0.3)?);
        let (lhs, rhs) = (bp_lambda_max(&omega(&p)?)?, theta(&l)?);
        for t in [1.0, 3.0, 10.0] {
            println!("  t = {t:>4}: Λ^∨Ω = {:.12}  ΘΛ = {:.12}", lhs.cdf(t)?, rhs.cdf(t)?);
        }
    }

    let b = Measure::boolean_stable(0.5)?;
    let f = Measure::free_stable(0.5)?;
    let lb = bp_lambda_bf(&b)?;
    println!("Λ_bf(b_1/2) against f_1/2");
    for t in [-0.9, -0.5, -0.1] {
        println!("  R({t}) = {:.12}  {:.12}", lb.r_transform(t)?, f.r_transform(t)?);
    }
    Ok(())
}
