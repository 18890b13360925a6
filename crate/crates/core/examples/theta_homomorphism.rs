//! Θ turns free additive convolution into free max-convolution. The sum
//! mp(1) ⊞ mp(1) comes from the subordination oracle, so nothing here relies
//! on R-additivity.

use freeconv::convolutions::conv_free_max;
use freeconv::maps::theta;
use freeconv::oracle::{linspace, subordination_free_add};
use freeconv::Measure;

fn main() -> freeconv::Result<()> {
    let mp = Measure::mp(1.0)?;
    let sum = Measure::from_grid(subordination_free_add(&mp, &mp, &linspace(0.0, 6.0, 1201))?);
    let lhs = theta(&sum)?;
    let rhs = conv_free_max(&theta(&mp)?, &theta(&mp)?)?;
    let exact = theta(&Measure::mp(2.0)?)?;
    println!("{:>6} {:>12} {:>12} {:>12}", "t", "Θ(oracle)", "Θμ □∨ Θν", "Θ(mp(2))");
    let mut worst: f64 = 0.0;
    for t in linspace(0.0, 10.0, 21) {
        let (l, r) = (lhs.cdf(t)?, rhs.cdf(t)?);
        worst = worst.max((l - r).abs());
        println!("{t:>6.2} {l:>12.8} {r:>12.8} {:>12.8}", exact.cdf(t)?);
    }
    println!("sup |difference| = {worst:.2e}");
    Ok(())
}
