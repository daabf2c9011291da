use proptest::prelude::*;
use snul::lattice::{classify, companion_roots, lattice_points, q_from_conic, Conic, LatticeKind, Orientation};

/// Centered conic with the requested discriminant sign and a real `zeta`.
fn centered_conic(a: f64, c: f64, b_frac: f64, d: f64, e: f64, gap: f64, elliptic: bool) -> Conic {
    let root = (a * c).sqrt();
    // elliptic: |B| < sqrt(AC); hyperbolic: B < -sqrt(AC) so that sqrt(q) > 0
    let b = if elliptic {
        b_frac * root
    } else {
        -(1.0 + b_frac.abs()) * root
    };
    let disc = b * b - a * c;
    let xc = (a * e - b * d) / disc;
    let yc = (c * d - b * e) / disc;
    // F~ has the sign of the discriminant so that zeta^2 > 0
    let f_tilde = gap * disc.signum();
    let f = f_tilde - d * yc - e * xc;
    Conic::new(a, b, c, d, e, f).unwrap()
}

fn check_points(conic: &Conic, orientation: Orientation, s1: f64, count: usize) {
    let spec = classify(conic).unwrap().with_orientation(orientation);
    let step = orientation.partner_step();
    for p in lattice_points(&spec, s1, count).unwrap() {
        let partner = spec.point(p.s + step).unwrap();
        let r0 = conic.eval(p.x, p.y).abs() / conic.monomial_scale(p.x, p.y);
        let r1 = conic.eval(p.x, partner.y).abs() / conic.monomial_scale(p.x, partner.y);
        assert!(
            r0 <= 1e-10 && r1 <= 1e-10,
            "{:?} at s = {}: {r0:e}, {r1:e}",
            spec.kind,
            p.s
        );
        if (p.y - partner.y).abs() > 1e-6 * (1.0 + p.y.abs()) {
            let (phi1, phi2) = companion_roots(conic, p.x).unwrap();
            let (lo, hi) = if p.y <= partner.y {
                (p.y, partner.y)
            } else {
                (partner.y, p.y)
            };
            let tol = 1e-10 * (1.0 + lo.abs().max(hi.abs()));
            assert!(phi1.im.abs() <= tol && phi2.im.abs() <= tol);
            assert!(
                (phi1.re - lo).abs() <= tol && (phi2.re - hi).abs() <= tol,
                "{phi1} {phi2} vs {lo} {hi}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trigonometric_points_lie_on_conic(
        a in 0.5..2.0f64, c in 0.5..2.0f64, b_frac in -0.95..0.95f64,
        d in -1.0..1.0f64, e in -1.0..1.0f64, gap in 0.1..2.0f64,
        s1 in -5.0..5.0f64, plus in any::<bool>(),
    ) {
        let conic = centered_conic(a, c, b_frac, d, e, gap, true);
        let spec = classify(&conic).unwrap();
        prop_assert_eq!(spec.kind, LatticeKind::Trigonometric);
        let orientation = if plus { Orientation::Plus } else { Orientation::Minus };
        check_points(&conic, orientation, s1, 12);
    }

    #[test]
    fn trigonometric_abscissa_is_even(
        a in 0.5..2.0f64, c in 0.5..2.0f64, b_frac in -0.95..0.95f64,
        d in -1.0..1.0f64, e in -1.0..1.0f64, gap in 0.1..2.0f64, s in -20.0..20.0f64,
    ) {
        let spec = classify(&centered_conic(a, c, b_frac, d, e, gap, true)).unwrap();
        let (x_plus, x_minus) = (spec.point(s).unwrap().x, spec.point(-s).unwrap().x);
        prop_assert!((x_plus - x_minus).abs() <= 1e-12 * (1.0 + x_plus.abs()));
    }

    #[test]
    fn hyperbolic_points_lie_on_conic(
        a in 0.5..2.0f64, c in 0.5..2.0f64, b_frac in 0.05..0.8f64,
        d in -1.0..1.0f64, e in -1.0..1.0f64, gap in 0.1..2.0f64, s1 in -3.0..3.0f64,
    ) {
        let conic = centered_conic(a, c, b_frac, d, e, gap, false);
        let spec = classify(&conic).unwrap();
        prop_assert_eq!(spec.kind, LatticeKind::Hyperbolic);
        check_points(&conic, Orientation::Minus, s1.round(), 8);
    }

    #[test]
    fn parabolic_points_lie_on_conic(
        a in 0.5..2.0f64, c in 0.5..2.0f64, d in -1.0..1.0f64, e in 0.2..1.0f64,
        f in -1.0..1.0f64, s1 in -4.0..4.0f64,
    ) {
        // B^2 = AC with sqrt(A) sqrt(C) = -B; G = sqrt(C) D + sqrt(A) E kept away from 0
        let b = -(a * c).sqrt();
        let d = d.abs() + 0.1;
        let conic = Conic::new(a, b, c, d, e, f).unwrap();
        let spec = classify(&conic).unwrap();
        prop_assert_eq!(spec.kind, LatticeKind::Parabolic);
        check_points(&conic, Orientation::Minus, s1, 10);
    }

    #[test]
    fn q_roots_are_reciprocal(
        a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64,
    ) {
        prop_assume!(a.abs() > 0.05 && c.abs() > 0.05);
        let conic = Conic::new(a, b, c, 0.1, 0.2, 0.3).unwrap();
        let q = q_from_conic(&conic).unwrap();
        let t = 4.0 * b * b / (a * c) - 2.0;
        let other = t - q;
        prop_assert!((q * other - 1.0).norm() <= 1e-12 * (1.0 + t.abs()), "{q} {other}");
        prop_assert!((q * q.inv() - 1.0).norm() <= 1e-14);
        prop_assert!(q.norm() >= 1.0 - 1e-12);
    }
}

#[test]
fn uniform_points_lie_on_conic() {
    // (y - x)^2 + 2(y + x) + ... : D = -E keeps G = 0
    let conic = Conic::new(1.0, -1.0, 1.0, 1.0, -1.0, -3.0).unwrap();
    assert_eq!(classify(&conic).unwrap().kind, LatticeKind::Uniform);
    check_points(&conic, Orientation::Minus, -3.0, 10);
    check_points(&conic, Orientation::Plus, 0.5, 10);
}
