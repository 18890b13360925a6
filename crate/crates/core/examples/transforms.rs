//! The transform family of one measure, evaluated on the negative axis.
//! Marchenko-Pastur makes a good test case: R(t) = λt/(1-t) and S(u) = 1/(λ+u).

use freeconv::Measure;

fn main() -> freeconv::Result<()> {
    let lambda = 2.0;
    let mp = Measure::mp(lambda)?;
    println!("{}: A = {}", mp.label(), mp.neg_moment()?);
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>12}", "t", "G(t)", "psi(t)", "eta(t)", "R(t)", "closed R");
    for t in [-4.0, -2.0, -1.0, -0.5, -0.25] {
        println!(
            "{t:>6} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            mp.cauchy(t)?,
            mp.psi(t)?,
            mp.eta(t)?,
            mp.r_transform(t)?,
            lambda * t / (1.0 - t)
        );
    }
    println!("{:>6} {:>12} {:>12}", "u", "S(u)", "1/(λ+u)");
    for u in [-0.9, -0.5, -0.1] {
        println!("{u:>6} {:>12.8} {:>12.8}", mp.s_transform(u)?, 1.0 / (lambda + u));
    }

    let s = Measure::classical_stable(0.5)?;
    println!("{}: C(t) = -(-t)^α, M(t) = Γ(1-t/α)/Γ(1-t)", s.label());
    for t in [-1.0, -0.25] {
        println!("  C({t}) = {:.10}", s.cumulant(t)?);
    }
    for t in [-0.25, 0.25] {
        println!("  M({t}) = {:.10}", s.mellin(t)?);
    }
    Ok(())
}
