//! Free additive convolution by subordination, checked against closed forms:
//! semicircle(2,1) ⊞ semicircle(2,1) = semicircle(4,2).

use freeconv::oracle::{linspace, subordination_density};
use freeconv::Measure;

fn main() -> freeconv::Result<()> {
    let s = Measure::semicircle(2.0, 1.0)?;
    let target = Measure::semicircle(4.0, 2.0)?;
    println!("{:>6} {:>14} {:>14}", "x", "oracle", "closed form");
    for x in linspace(1.5, 6.5, 11) {
        println!("{x:>6.2} {:>14.10} {:>14.10}", subordination_density(&s, &s, x)?, target.density(x)?);
    }
    let mp = Measure::mp(1.0)?;
    let d = subordination_density(&mp, &mp, 2.0)?;
    println!("mp(1) ⊞ mp(1) at 2: {d:.10} (√7/4π = {:.10})", 7f64.sqrt() / (4.0 * std::f64::consts::PI));
    Ok(())
}
