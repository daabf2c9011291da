use std::f64::consts::PI;

use proptest::prelude::*;
use snul::diophantine::Rho;
use snul::moments::{build_measure, tau_closed, tau_closed_ceil, tau_series};

const PI2: f64 = PI * PI;

#[test]
fn moments_do_not_decay() {
    let rho = Rho::golden();
    let max = (10_000..=10_100).map(|p| tau_closed(rho, p).abs()).fold(0.0, f64::max);
    assert!(max >= PI2 / 10.0, "max |tau_p| = {max}");
}

#[test]
fn series_error_is_order_one_over_terms() {
    // the tail of 8 sum cos(..)/(2m+1)^2 beyond M terms is at most 2/M
    let rho = Rho::golden();
    let theta = rho.theta();
    for terms in [1_000usize, 4_000, 16_000] {
        for p in 0..=50u64 {
            let err = (tau_series(theta, p, terms) - tau_closed(rho, p)).abs();
            assert!(err * terms as f64 <= 2.0 + 1e-6, "p = {p}, terms = {terms}: {err:e}");
        }
    }
}

#[test]
fn truncated_measure_has_expected_mass() {
    let m = build_measure(Rho::sqrt2().theta(), 20_000);
    // both tails sum_{k > K} 1/(k - 1/2)^2 = 1/K + O(1/K^3) (midpoint rule)
    let tail = 2.0 / 20_000.0;
    assert!((m.total_mass() + tail - PI2).abs() < 1e-10);
}

proptest! {
    #[test]
    fn bounded_by_pi_squared(p in 1u64..1_000_000, pick in 0usize..3) {
        let rho = [Rho::golden(), Rho::sqrt2(), Rho::from_decimal("2.7182818284590452353602874713527").unwrap()][pick];
        let t = tau_closed(rho, p);
        prop_assert!(t.abs() < PI2);
    }

    #[test]
    fn floor_and_ceil_forms_agree(p in 0u64..1_000_000, digits in "[1-9][0-9]{29}") {
        let rho = Rho::from_decimal(&format!("0.{digits}")).unwrap();
        let (a, b) = (tau_closed(rho, p), tau_closed_ceil(rho, p));
        prop_assert!((a - b).abs() <= 1e-12 * PI2, "{} vs {}", a, b);
    }
}
