// Apply the divided-difference and mean operators to a polynomial and
// compare against direct evaluation at the two ordinates.

use snul::diffop::{pointwise_values, DifferenceOperator};
use snul::lattice::Conic;
use snul::polynomial::Polynomial;

fn main() -> snul::Result<()> {
    let conic = Conic::new(1.0, -0.4, 0.8, 0.1, -0.3, -0.6)?;
    let op = DifferenceOperator::new(&conic)?;
    let f = Polynomial::new(vec![1.0, -2.0, 0.5, 3.0, 0.25]);

    let dd = op.divided_difference(&f);
    let mean = op.mean(&f);
    println!("f     = {f}");
    println!("D f   = {dd}");
    println!("M f   = {mean}");

    for x in [-0.8, 0.1, 0.9] {
        let direct = pointwise_values(&conic, &f, x)?;
        println!(
            "x = {x:>5}: D f {:+.15e} vs {:+.15e}, M f {:+.15e} vs {:+.15e}",
            dd.eval(x),
            direct.dd_direct.unwrap_or(f64::NAN),
            mean.eval(x),
            direct.mean_direct,
        );
    }

    // the product rule D(fg) = Df Mg + Mf Dg
    let g = Polynomial::new(vec![0.0, 1.0, -1.0]);
    let lhs = op.divided_difference(&(&f * &g));
    let rhs = &(&dd * &op.mean(&g)) + &(&mean * &op.divided_difference(&g));
    println!("product rule gap at 0.3: {:.1e}", (lhs.eval(0.3) - rhs.eval(0.3)).abs());
    Ok(())
}
