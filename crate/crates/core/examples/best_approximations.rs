// Best one-sided approximations of j * rho by integers.

use snul::diophantine::{approx_init, approx_sequence, Rho};

fn main() -> snul::Result<()> {
    let golden = Rho::golden();
    let first = approx_init(golden)?;
    println!("golden: j = 1  eps = {}  iota = {}", first.eps, first.iota);
    for s in approx_sequence(golden, 60)? {
        if let Some(kind) = s.event() {
            let value = if kind.as_str() == "xi" { s.eps } else { s.iota };
            println!("  j = {:>3}  new {:<3} {}", s.j, kind.as_str(), value);
        }
    }

    let e = Rho::from_decimal("2.7182818284590452353602874713527")?;
    let far = approx_init(e)?.advance_to(1_000_000)?;
    println!(
        "e: at j = 10^6, xi = {} eta = {} eps = {:.3e}",
        far.xi,
        far.eta,
        far.eps_f64()
    );
    Ok(())
}
