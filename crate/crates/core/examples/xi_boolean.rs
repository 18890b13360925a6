//! Ξ and boolean convolution: the Dagum example, the homomorphism
//! 1/Ξ(μ⊎ν) = 1/Ξμ + 1/Ξν - 1, and the four routes to Ξ.

use freeconv::convolutions::conv_boolean_add;
use freeconv::maps::{xi, xi_via_exponentials, xi_via_phi, xi_via_theta};
use freeconv::Measure;

fn main() -> freeconv::Result<()> {
    let b = Measure::boolean_stable(0.5)?;
    let dagum = Measure::dagum(0.5)?;
    let xb = xi(&b)?;
    println!("Ξ(b_1/2) against Dagum(1/2)");
    for t in [0.25, 1.0, 4.0, 16.0] {
        println!("  t = {t:>5}: {:.12}  {:.12}", xb.cdf(t)?, dagum.cdf(t)?);
    }

    let mu = Measure::mp(1.0)?;
    let sum = xi(&conv_boolean_add(&b, &mu)?)?;
    let xm = xi(&mu)?;
    println!("1/Ξ(b ⊎ mp) against 1/Ξb + 1/Ξmp - 1");
    for t in [0.5, 1.0, 2.0, 8.0] {
        let rhs = 1.0 / xb.cdf(t)? + 1.0 / xm.cdf(t)? - 1.0;
        println!("  t = {t:>5}: {:.12}  {:.12}", 1.0 / sum.cdf(t)?, rhs);
    }

    let e = Measure::exponential();
    let routes = [xi(&e)?, xi_via_theta(&e)?, xi_via_phi(&e)?, xi_via_exponentials(&e)?];
    println!("Ξ(exponential) by transform, Θ(MP ⊠ ·), Φ(b_1/2 ⊠ ·), e ⊛ e⁻¹ ⊛ ·");
    for t in [0.1, 1.0, 10.0] {
        let row: Vec<String> = routes.iter().map(|r| r.cdf(t).map(|v| format!("{v:.12}"))).collect::<Result<_, _>>()?;
        println!("  t = {t:>5}: {}", row.join("  "));
    }
    Ok(())
}
