//! Chebyshev moments `tau_p = sum_k mu(y_k) T_p(y_k)` of the dense discrete
//! measure with masses `1/(k - 1/2)^2` at `y_k = cos((k - 1/2) theta)`, and
//! the truncated version of that measure.

use std::f64::consts::PI;

use crate::diophantine::Rho;
use crate::numeric::CompensatedSum;

const PI_SQUARED: f64 = PI * PI;

/// Number of terms used when a truncation is not specified.
pub const DEFAULT_TERMS: usize = 20_000;

/// Node/weight list of a discrete measure.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub theta: Option<f64>,
    /// Lattice index window `(k_min, k_max)` the nodes came from.
    pub k_range: Option<(i64, i64)>,
}

impl DiscreteMeasure {
    /// User-supplied nodes and weights; weights must be positive.
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> crate::Result<Self> {
        if nodes.len() != weights.len() {
            return Err(crate::Error::InvalidInput(format!(
                "{} nodes but {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(crate::Error::InvalidInput(format!("weight {w} is not positive")));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(crate::Error::InvalidInput("nodes must be finite".into()));
        }
        Ok(Self {
            nodes,
            weights,
            theta: None,
            k_range: None,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.integrate(|_| 1.0)
    }

    /// `sum_i w_i f(x_i)`, compensated, in node order.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn distinct_nodes(&self) -> usize {
        let mut sorted = self.nodes.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        sorted.len()
    }
}

/// `tau_p = 2 pi^2 (-1)^floor(p rho) (floor(p rho) + 1/2 - p rho)`; `tau_0 = pi^2`.
pub fn tau_closed(rho: Rho, p: u64) -> f64 {
    if p == 0 {
        return PI_SQUARED;
    }
    let p_rho = rho.times(p as i64);
    let floor = p_rho.floor_i64();
    let sign = if floor.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let frac = p_rho.fract().to_f64();
    2.0 * PI_SQUARED * sign * (0.5 - frac)
}

/// The ceiling form `-2 pi^2 (-1)^ceil(p rho) (ceil(p rho) - 1/2 - p rho)`.
/// Agrees with [`tau_closed`] whenever `p rho` is not an integer.
pub fn tau_closed_ceil(rho: Rho, p: u64) -> f64 {
    if p == 0 {
        return PI_SQUARED;
    }
    let p_rho = rho.times(p as i64);
    let ceil = p_rho.ceil_i64();
    let sign = if ceil.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let gap = (crate::numeric::DoubleDouble::from_i128(ceil as i128) - p_rho).to_f64();
    -2.0 * PI_SQUARED * sign * (gap - 0.5)
}

/// `8 sum_{m < terms} cos((2m+1) p theta / 2) / (2m+1)^2`, compensated,
/// ascending in `m`.
pub fn tau_series(theta: f64, p: u64, terms: usize) -> f64 {
    let half = 0.5 * p as f64 * theta;
    let sum: CompensatedSum = (0..terms)
        .map(|m| {
            let odd = (2 * m + 1) as f64;
            (odd * half).cos() / (odd * odd)
        })
        .collect();
    8.0 * sum.value()
}

/// The measure truncated to `k = -K+1 ..= K`.
///
/// `k` and `1 - k` land on the same point `cos((k - 1/2) theta)`, so each
/// node `k = 1..=K` carries the merged mass `2/(k - 1/2)^2`.
pub fn build_measure(theta: f64, k_max: usize) -> DiscreteMeasure {
    let (nodes, weights) = (1..=k_max)
        .map(|k| {
            let h = k as f64 - 0.5;
            ((h * theta).cos(), 2.0 / (h * h))
        })
        .unzip();
    DiscreteMeasure {
        nodes,
        weights,
        theta: Some(theta),
        k_range: Some((1 - k_max as i64, k_max as i64)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tau_zero_is_pi_squared() {
        assert_eq!(tau_closed(Rho::golden(), 0), PI_SQUARED);
        assert!((tau_series(1.0, 0, 2_000_000) - PI_SQUARED).abs() < 1e-5);
    }

    #[test]
    fn golden_first_moment() {
        let t1 = tau_closed(Rho::golden(), 1);
        let expected = 2.0 * PI_SQUARED * (1.5 - 1.618_033_988_749_895);
        assert_relative_eq!(t1, -expected, max_relative = 1e-14);
        assert!((t1 / PI_SQUARED - 0.2361).abs() < 5e-5);
    }

    #[test]
    fn floor_and_ceil_forms_agree() {
        for rho in [Rho::golden(), Rho::sqrt2()] {
            for p in 0..500 {
                assert_relative_eq!(
                    tau_closed(rho, p),
                    tau_closed_ceil(rho, p),
                    max_relative = 1e-13,
                    epsilon = 1e-13
                );
            }
        }
    }

    #[test]
    fn series_against_closed_form() {
        let rho = Rho::golden();
        let theta = rho.theta();
        let t = tau_closed(rho, 1);
        assert_relative_eq!(tau_series(theta, 1, 20_000), t, max_relative = 1e-3);
        let t3 = tau_closed(rho, 3);
        assert_relative_eq!(tau_series(theta, 3, 1_000_000), t3, max_relative = 1e-5);
    }

    #[test]
    fn measure_k_one_has_doubled_node() {
        let theta = 2.0;
        let m = build_measure(theta, 1);
        assert_eq!(m.nodes, vec![(0.5 * theta).cos()]);
        assert_eq!(m.weights, vec![8.0]);
        assert_eq!(m.k_range, Some((0, 1)));
    }

    #[test]
    fn measure_moments_equal_truncated_series() {
        let theta = Rho::golden().theta();
        let k = 5_000;
        let m = build_measure(theta, k);
        for p in [0_u64, 1, 2, 7, 30] {
            let by_nodes = m.integrate(|y| chebyshev_t(p as usize, y));
            let series = tau_series(theta, p, k);
            assert!((by_nodes - series).abs() < 1e-12 * (1.0 + series.abs()), "p = {p}");
        }
    }

    fn chebyshev_t(n: usize, x: f64) -> f64 {
        let (mut prev, mut cur) = (1.0, x);
        if n == 0 {
            return prev;
        }
        for _ in 1..n {
            (prev, cur) = (cur, 2.0 * x * cur - prev);
        }
        cur
    }

    #[test]
    fn measure_validation() {
        assert!(DiscreteMeasure::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![0.0], vec![-1.0]).is_err());
        let m = DiscreteMeasure::new(vec![0.0, 0.0, 1.0], vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(m.distinct_nodes(), 2);
        assert_eq!(m.total_mass(), 3.0);
    }
}
