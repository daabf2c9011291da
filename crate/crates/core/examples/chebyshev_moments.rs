// Closed-form moments against the truncated series, and the discrete
// measure built from the same angle.

use snul::diophantine::Rho;
use snul::moments::{build_measure, tau_closed, tau_series};

fn main() -> snul::Result<()> {
    let rho = Rho::golden();
    let theta = rho.theta();
    for p in [0u64, 1, 2, 5, 13, 100, 10_000] {
        let closed = tau_closed(rho, p);
        let series = tau_series(theta, p, 20_000);
        println!("tau_{p:<6} closed {closed:+.12}  series {series:+.12}");
    }

    let measure = build_measure(theta, 20_000);
    let pi2 = std::f64::consts::PI.powi(2);
    println!(
        "{} nodes, mass {:.12} (pi^2 - 2/K = {:.12})",
        measure.len(),
        measure.total_mass(),
        pi2 - 2.0 / 20_000.0
    );
    let t3 = measure.integrate(|t| t.powi(3));
    println!("third moment from nodes {t3:+.3e}");
    Ok(())
}
