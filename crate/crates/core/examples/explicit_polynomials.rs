// Closed-form orthonormal polynomials in the Chebyshev basis, checked
// against the Stieltjes recurrence and by their Gram matrix.

use snul::diophantine::Rho;
use snul::moments::build_measure;
use snul::orthopoly::{explicit_pn, gram_by_moments, second_kind, stieltjes_recurrence};

fn main() -> snul::Result<()> {
    let rho = Rho::sqrt2();
    for n in 0..=4 {
        let p = explicit_pn(rho, n)?;
        println!("p_{n} = {:?}", p.terms);
    }

    let measure = build_measure(rho.theta(), 20_000);
    let coeffs = stieltjes_recurrence(&measure, 6)?;
    for x in [-0.9, 0.2, 0.7] {
        let closed = explicit_pn(rho, 5)?.eval(x);
        println!("p_5({x}) closed {closed:+.6} recurrence {:+.6}", coeffs.eval(5, x));
    }

    let gram = gram_by_moments(rho, 8)?;
    let off = (0..=8)
        .flat_map(|n| (0..=8).map(move |m| (n, m)))
        .map(|(n, m)| (gram[n][m] - if n == m { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    println!("max |G - I| for n, m <= 8: {off:.2e}");

    // Wronskian of first and second kind solutions
    let x = 3.0;
    let (p, q) = (
        coeffs.eval_all(5, x),
        (0..=5)
            .map(|n| second_kind(&measure, &coeffs, n, x))
            .collect::<Result<Vec<_>, _>>()?,
    );
    for n in 1..=5 {
        println!(
            "n = {n}: p_n q_(n-1) - p_(n-1) q_n = {:.15}, 1/a_n = {:.15}",
            p[n] * q[n - 1] - p[n - 1] * q[n],
            1.0 / coeffs.a_n(n)
        );
    }
    Ok(())
}
