//! Every catalog family: parameters, atom at zero, A, and a few quantiles.

use freeconv::measures::parse::parse_measure;
use freeconv::Family;

fn main() -> freeconv::Result<()> {
    let defaults = [("a", 1.0), ("lambda", 2.0), ("m", 2.0), ("v", 1.0), ("alpha", 0.5)];
    println!("{:<28} {:>8} {:>10} {:>10} {:>10}", "measure", "atom0", "A", "median", "q(0.9)");
    for (name, keys) in Family::registry() {
        let params: Vec<String> = keys
            .iter()
            .map(|k| format!("{k}={}", defaults.iter().find(|d| d.0 == *k).map_or(1.0, |d| d.1)))
            .collect();
        let text = if params.is_empty() { name.to_string() } else { format!("{name}:{}", params.join(",")) };
        let mu = parse_measure(&text)?;
        // transform-only families have no quantile function
        let q = |p: f64| mu.quantile(p).map_or("-".to_string(), |x| format!("{x:.4}"));
        println!(
            "{:<28} {:>8.4} {:>10.4} {:>10} {:>10}",
            mu.label(),
            mu.atom0(),
            mu.neg_moment()?,
            q(0.5),
            q(0.9)
        );
    }
    Ok(())
}
