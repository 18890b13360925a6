//! The nine convolutions on two concrete inputs. Lazy results are reported
//! through a transform; grid and CDF results through their CDF.

use freeconv::convolutions::{convolve, Op, Theory};
use freeconv::{Kind, Measure};

fn main() -> freeconv::Result<()> {
    let mu = Measure::mp(1.0)?;
    let nu = Measure::exponential();
    for theory in [Theory::Classical, Theory::Free, Theory::Boolean] {
        for op in [Op::Add, Op::Mul, Op::Max] {
            let name = format!("{theory:?} {op:?}");
            match convolve(op, theory, &mu, &nu) {
                Ok(out) => match out.kind() {
                    Kind::TransformDefined => {
                        println!("{name:<16} {:?}  psi(-1) = {:.8}", out.kind(), out.psi(-1.0)?)
                    }
                    _ => println!("{name:<16} {:?}  F(1) = {:.8}", out.kind(), out.cdf(1.0)?),
                },
                Err(e) => println!("{name:<16} {e}"),
            }
        }
    }
    Ok(())
}
