// A finitely supported measure from the Pearson relation on the Chebyshev
// lattice, and the Stieltjes function equation it satisfies.

use snul::diophantine::Rho;
use snul::lattice::Conic;
use snul::moments::DiscreteMeasure;
use snul::polynomial::Polynomial;
use snul::semiclassical::{
    arcsine_discrepancy, pearson_masses, stieltjes_residual, stieltjes_residual_two_point, DifferenceEquationData,
};

fn main() -> snul::Result<()> {
    let (theta, n) = (0.3f64, 8i64);
    let x = |k: i64| (k as f64 * theta).cos();
    let ratio = |k: i64| match k {
        0 => f64::INFINITY,
        k if k == n => 0.0,
        k => (x(k + 1) - x(k)) / (x(k) - x(k - 1)),
    };
    let seed = x(0) - x(1);
    let masses = pearson_masses(ratio, 1, n, seed)?;
    println!("finite support: {}", masses.is_finite_support());
    for (k, m) in masses.indexed() {
        println!("  k = {k}  mass {m:.12}");
    }

    let nodes = (1..=n).map(|j| ((j as f64 - 0.5) * theta).cos()).collect();
    let measure = DiscreteMeasure::new(nodes, masses.masses.clone())?;
    let w = &Polynomial::new(vec![-x(0), 1.0]) * &Polynomial::new(vec![-x(n), 1.0]);
    let u = Polynomial::constant(x(n) - x(0));
    let data = DifferenceEquationData::new(w, Polynomial::zero(), u)?;
    let conic = Conic::chebyshev(theta);
    for t in [-1.7, 0.35, 1.9] {
        println!(
            "residual at {t:>5}: {:+.2e} (two-point route {:+.2e})",
            stieltjes_residual(&conic, &data, &measure, t)?,
            stieltjes_residual_two_point(&conic, &data, &measure, t)?,
        );
    }

    for count in [100, 1_000, 10_000] {
        println!(
            "arcsine discrepancy, {count} points: {:.2e}",
            arcsine_discrepancy(Rho::golden().theta(), count, 400)
        );
    }
    Ok(())
}
