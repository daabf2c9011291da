// Recurrence coefficients of the golden-ratio measure and the leading
// coefficient law.

use snul::diophantine::Rho;
use snul::orthopoly::verify_table;

fn main() -> snul::Result<()> {
    let report = verify_table(Rho::golden(), 20_000, 30)?;
    println!(
        "{:>3} {:>8} {:>8} {:>9} {:>9} {:>10}",
        "n", "a_n", "b_n", "computed", "predicted", "rel_err"
    );
    for row in &report.rows[1..] {
        println!(
            "{:>3} {:>8.4} {:>8.4} {:>9.4} {:>9.4} {:>10.2e}",
            row.n,
            row.a.unwrap(),
            row.b,
            row.computed.unwrap(),
            row.predicted.unwrap(),
            row.rel_err.unwrap(),
        );
    }
    println!("max relative error {:.2e}", report.max_rel_err());
    Ok(())
}
