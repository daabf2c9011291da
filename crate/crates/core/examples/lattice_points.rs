// Classify a few conics and walk the lattice points on each.

use snul::lattice::{classify, lattice_points, Conic, Orientation};

fn main() -> snul::Result<()> {
    let theta: f64 = 0.7;
    let conics = [
        ("chebyshev", Conic::chebyshev(theta)),
        ("hyperbolic", Conic::new(1.0, -1.25, 1.0, 0.0, 0.0, 0.5)?),
        ("parabolic", Conic::new(1.0, -1.0, 1.0, 0.3, -0.2, 0.0)?),
    ];
    for (name, conic) in conics {
        let spec = classify(&conic)?;
        println!("{name}: {:?}, q = {:?}", spec.kind, spec.q);
        for p in lattice_points(&spec, 0.0, 4)? {
            println!("  s = {:>4}  x = {:>22.17}  y = {:>22.17}", p.s, p.x, p.y);
        }
    }

    // the plus orientation takes the ordinate half a step ahead
    let spec = classify(&Conic::chebyshev(theta))?.with_orientation(Orientation::Plus);
    let p = spec.point(2.0)?;
    println!(
        "plus orientation at s = 2: y = {:.17} (cos 2.5 theta = {:.17})",
        p.y,
        (2.5 * theta).cos()
    );
    Ok(())
}
