//! Semi-classical machinery on a lattice.
//!
//! * The difference equation `W (D S) = 2 V (M S) + U` for the Stieltjes
//!   function `S(x) = sum_k mu_k / (x - t_k)`.
//! * The Pearson-type mass recursion `beta mu(y_{k+1}) + gamma mu(y_k) = 0`.
//! * The `Upsilon / chi / Theta` recurrences, which are exactly those of the
//!   products `xi_n eta_{n-1}`, `xi_{n-1} eta_n`, `xi_n eta_n` of two
//!   solutions of the three-term recurrence at `y_1` and `y_2`.

use num_complex::Complex64;

use crate::diffop::two_point;
use crate::error::{Error, Result};
use crate::lattice::{companion_roots, Conic};
use crate::moments::DiscreteMeasure;
use crate::numeric::CompensatedSum;
use crate::polynomial::Polynomial;

/// Polynomial data `(W, V, U)` of `W (D S) = 2 V (M S) + U`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceEquationData {
    pub w: Polynomial,
    pub v: Polynomial,
    pub u: Polynomial,
}

impl DifferenceEquationData {
    pub fn new(w: Polynomial, v: Polynomial, u: Polynomial) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::InvalidInput("W must not vanish identically".into()));
        }
        Ok(Self { w, v, u })
    }
}

/// Masses produced by [`pearson_masses`].
#[derive(Clone, Debug, PartialEq)]
pub struct PearsonMasses {
    /// First lattice index carrying a mass.
    pub k_start: i64,
    /// `mu(y_k)` for `k = k_start..=k_end`.
    pub masses: Vec<f64>,
    /// `beta` vanishes just below the range (the ratio is infinite at `k_start - 1`).
    pub starts_at_boundary: bool,
    /// `gamma` vanishes at the last index (the ratio is zero at `k_end`).
    pub stops_at_boundary: bool,
}

impl PearsonMasses {
    pub fn is_finite_support(&self) -> bool {
        self.starts_at_boundary && self.stops_at_boundary
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .map(move |(i, &m)| (self.k_start + i as i64, m))
    }
}

/// `mu(y_{k+1}) = ratio(k) mu(y_k)` from `mu(y_{k_start}) = seed`, where
/// `ratio(k) = -gamma(x_k, y_k) / beta(x_k, y_k)`. No sign checks.
pub fn propagate_masses<F>(ratio: F, k_start: i64, k_end: i64, seed: f64) -> Result<Vec<f64>>
where
    F: Fn(i64) -> f64,
{
    if k_start >= k_end {
        return Err(Error::InvalidInput(format!("empty range {k_start}:{k_end}")));
    }
    let mut masses = Vec::with_capacity((k_end - k_start + 1) as usize);
    let mut mu = seed;
    masses.push(mu);
    for k in k_start..k_end {
        let r = ratio(k);
        if !r.is_finite() {
            return Err(Error::ZeroDivision { k });
        }
        mu *= r;
        masses.push(mu);
    }
    Ok(masses)
}

/// Positive masses from the Pearson-type recursion; see [`propagate_masses`].
pub fn pearson_masses<F>(ratio: F, k_start: i64, k_end: i64, seed: f64) -> Result<PearsonMasses>
where
    F: Fn(i64) -> f64,
{
    if seed.is_nan() || seed <= 0.0 {
        return Err(Error::SignViolation { k: k_start, mass: seed });
    }
    let masses = propagate_masses(&ratio, k_start, k_end, seed)?;
    if let Some((i, &mass)) = masses.iter().enumerate().find(|(_, m)| m.is_nan() || **m <= 0.0) {
        return Err(Error::SignViolation {
            k: k_start + i as i64,
            mass,
        });
    }
    let below = ratio(k_start - 1);
    Ok(PearsonMasses {
        k_start,
        masses,
        starts_at_boundary: below.is_infinite(),
        stops_at_boundary: ratio(k_end) == 0.0,
    })
}

/// `(D S, M S)` at the ordinate pair `(phi1, phi2)`, applying both operators
/// to each `mu / (y - t)` separately:
/// `D [1/(y - t)] = -1/((phi1 - t)(phi2 - t))`,
/// `M [1/(y - t)] = (phi1 + phi2 - 2t) / (2 (phi1 - t)(phi2 - t))`.
/// By linearity this equals the two-point formulas applied to `S(phi1)`,
/// `S(phi2)`, without their cancellation when nodes crowd the ordinates.
fn stieltjes_pair(measure: &DiscreteMeasure, phi: (Complex64, Complex64)) -> Result<(Complex64, Complex64)> {
    let (phi1, phi2) = phi;
    let mut acc = [
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
    ];
    for (&t, &w) in measure.nodes.iter().zip(&measure.weights) {
        let (d1, d2) = (phi1 - t, phi2 - t);
        for (d, z) in [(d1, phi1), (d2, phi2)] {
            if d.norm() <= 1e-14 * (1.0 + z.norm()) {
                return Err(Error::PoleAtNode { x: z.re });
            }
        }
        let inv = w / (d1 * d2);
        let dd = -inv;
        let mean = inv * (d1 + d2) * 0.5;
        acc[0].add(dd.re);
        acc[1].add(dd.im);
        acc[2].add(mean.re);
        acc[3].add(mean.im);
    }
    Ok((
        Complex64::new(acc[0].value(), acc[1].value()),
        Complex64::new(acc[2].value(), acc[3].value()),
    ))
}

/// `W(x) (D S)(x) - 2 V(x) (M S)(x) - U(x)` for `S(y) = sum_k mu_k / (y - t_k)`
/// at the two ordinates over `x`.
pub fn stieltjes_residual(
    conic: &Conic,
    data: &DifferenceEquationData,
    measure: &DiscreteMeasure,
    x: f64,
) -> Result<f64> {
    let (phi1, phi2) = companion_roots(conic, x)?;
    if phi1 == phi2 {
        return Err(Error::CoincidentRoots { x });
    }
    let (ds, ms) = stieltjes_pair(measure, (phi1, phi2))?;
    Ok(data.w.eval(x) * ds.re - 2.0 * data.v.eval(x) * ms.re - data.u.eval(x))
}

/// `S(z)` at a complex point.
pub fn stieltjes_function(measure: &DiscreteMeasure, z: Complex64) -> Result<Complex64> {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (&t, &w) in measure.nodes.iter().zip(&measure.weights) {
        let diff = z - t;
        if diff.norm() <= 1e-14 * (1.0 + z.norm()) {
            return Err(Error::PoleAtNode { x: z.re });
        }
        let term = w / diff;
        re.add(term.re);
        im.add(term.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// The residual with `D S`, `M S` formed from the two values `S(phi1)`,
/// `S(phi2)`; agrees with [`stieltjes_residual`] up to cancellation.
pub fn stieltjes_residual_two_point(
    conic: &Conic,
    data: &DifferenceEquationData,
    measure: &DiscreteMeasure,
    x: f64,
) -> Result<f64> {
    let (phi1, phi2) = companion_roots(conic, x)?;
    if phi1 == phi2 {
        return Err(Error::CoincidentRoots { x });
    }
    let s = (stieltjes_function(measure, phi1)?, stieltjes_function(measure, phi2)?);
    let (ds, ms) = two_point((phi1, phi2), s);
    Ok(data.w.eval(x) * ds.re - 2.0 * data.v.eval(x) * ms.re - data.u.eval(x))
}

/// `[Upsilon_n, chi_n, Theta_n, Theta_{n-1}]`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ThetaTriple {
    pub upsilon: f64,
    pub chi: f64,
    pub theta_big: f64,
    pub theta_prev: f64,
}

impl ThetaTriple {
    /// The four products of two recurrence solutions
    /// (`xi` at `y_1`, `eta` at `y_2`) at steps `n` and `n - 1`.
    pub fn from_solutions(xi: (f64, f64), eta: (f64, f64)) -> Self {
        let (xi_n, xi_prev) = xi;
        let (eta_n, eta_prev) = eta;
        Self {
            upsilon: xi_n * eta_prev,
            chi: xi_prev * eta_n,
            theta_big: xi_n * eta_n,
            theta_prev: xi_prev * eta_prev,
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.upsilon, self.chi, self.theta_big, self.theta_prev]
    }

    pub fn max_abs(&self) -> f64 {
        self.as_array().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            upsilon: self.upsilon * factor,
            chi: self.chi * factor,
            theta_big: self.theta_big * factor,
            theta_prev: self.theta_prev * factor,
        }
    }
}

/// One step `n -> n + 1` of
///
/// ```text
/// a_{n+1} Upsilon_{n+1}   = (y1 - b_n) Theta_n - a_n chi_n
/// a_{n+1} chi_{n+1}       = (y2 - b_n) Theta_n - a_n Upsilon_n
/// a_{n+1}^2 Theta_{n+1}   = (y1 - b_n)(y2 - b_n) Theta_n
///                           - a_n [(y1 - b_n) Upsilon_n + (y2 - b_n) chi_n]
///                           + a_n^2 Theta_{n-1}
/// ```
pub fn theta_advance(triple: &ThetaTriple, a_n: f64, a_next: f64, b_n: f64, y1: f64, y2: f64) -> ThetaTriple {
    let u1 = y1 - b_n;
    let u2 = y2 - b_n;
    let ThetaTriple {
        upsilon,
        chi,
        theta_big,
        theta_prev,
    } = *triple;
    ThetaTriple {
        upsilon: (u1 * theta_big - a_n * chi) / a_next,
        chi: (u2 * theta_big - a_n * upsilon) / a_next,
        theta_big: (u1 * u2 * theta_big - a_n * (u1 * upsilon + u2 * chi) + a_n * a_n * theta_prev) / (a_next * a_next),
        theta_prev: theta_big,
    }
}

/// `W_n(x) (D p_n)(x) - Omega_n(x) (M p_n)(x) + a_n Theta_n(x) (M p_{n-1})(x)`
/// from the values of `p_n`, `p_{n-1}` at the two (real) ordinates over `x`.
#[allow(clippy::too_many_arguments)]
pub fn difference_relation_residual(
    conic: &Conic,
    w_n: &Polynomial,
    omega_n: &Polynomial,
    theta_n: &Polynomial,
    a_n: f64,
    pn_vals: (f64, f64),
    pn1_vals: (f64, f64),
    x: f64,
) -> Result<f64> {
    let (phi1, phi2) = companion_roots(conic, x)?;
    if phi1.im != 0.0 || phi2.im != 0.0 {
        return Err(Error::InvalidInput(format!("ordinates over x = {x} are not real")));
    }
    let (phi1, phi2) = (phi1.re, phi2.re);
    if phi1 == phi2 {
        return Err(Error::CoincidentRoots { x });
    }
    let d_pn = (pn_vals.1 - pn_vals.0) / (phi2 - phi1);
    let m_pn = 0.5 * (pn_vals.0 + pn_vals.1);
    let m_pn1 = 0.5 * (pn1_vals.0 + pn1_vals.1);
    Ok(w_n.eval(x) * d_pn - omega_n.eval(x) * m_pn + a_n * theta_n.eval(x) * m_pn1)
}

/// Sup over a uniform grid of `count`-point interior abscissae of the gap
/// between the empirical distribution of `cos((k - 1/2) theta)`,
/// `k = 1..=n_points`, and the arcsine law `1 - arccos(t)/pi`.
pub fn arcsine_discrepancy(theta: f64, n_points: usize, grid: usize) -> f64 {
    let mut ys: Vec<f64> = (1..=n_points).map(|k| ((k as f64 - 0.5) * theta).cos()).collect();
    ys.sort_by(f64::total_cmp);
    (1..=grid)
        .map(|i| {
            let t = -1.0 + 2.0 * i as f64 / (grid + 1) as f64;
            let below = ys.partition_point(|&y| y <= t) as f64 / n_points as f64;
            let law = 1.0 - t.acos() / std::f64::consts::PI;
            (below - law).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn equal_masses_when_v_vanishes() {
        let m = pearson_masses(|_| 1.0, 0, 9, 0.25).unwrap();
        assert_eq!(m.masses, vec![0.25; 10]);
        assert!(!m.is_finite_support());
    }

    #[test]
    fn boundary_zeros_truncate() {
        let ratio = |k: i64| match k {
            -1 => f64::INFINITY,
            5 => 0.0,
            _ => 1.0 + 0.1 * k as f64,
        };
        let m = pearson_masses(ratio, 0, 5, 1.0).unwrap();
        assert!(m.is_finite_support());
        assert_eq!(m.masses.len(), 6);
        assert!(m.masses.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn squared_ratio_with_sign_flip() {
        // -((k - 1/2)/(k + 1/2))^2 from mu(y_1) = 4
        let ratio = |k: i64| {
            let k = k as f64;
            -((k - 0.5) / (k + 0.5)).powi(2)
        };
        let raw = propagate_masses(ratio, 1, 8, 4.0).unwrap();
        for (i, mu) in raw.iter().enumerate() {
            let k = (i + 1) as f64;
            assert_abs_diff_eq!(mu.abs(), 1.0 / (k - 0.5).powi(2), epsilon = 1e-14);
        }
        assert!(matches!(
            pearson_masses(ratio, 1, 8, 4.0),
            Err(Error::SignViolation { k: 2, .. })
        ));
    }

    #[test]
    fn zero_beta_inside_range() {
        let ratio = |k: i64| if k == 3 { f64::INFINITY } else { 1.0 };
        assert_eq!(pearson_masses(ratio, 0, 6, 1.0), Err(Error::ZeroDivision { k: 3 }));
        assert!(pearson_masses(|_| 1.0, 3, 3, 1.0).is_err());
    }

    #[test]
    fn symmetric_degeneration() {
        // y1 = y2 and xi = eta: Upsilon = chi, Theta = xi^2
        let t = ThetaTriple::from_solutions((0.4, 0.9), (0.4, 0.9));
        let next = theta_advance(&t, 0.5, 0.5, 0.1, 0.3, 0.3);
        assert_abs_diff_eq!(next.upsilon, next.chi, epsilon = 1e-15);
        let xi_next = ((0.3 - 0.1) * 0.4 - 0.5 * 0.9) / 0.5;
        assert_abs_diff_eq!(next.theta_big, xi_next * xi_next, epsilon = 1e-14);
        assert_abs_diff_eq!(next.theta_prev, 0.16, epsilon = 1e-15);
    }

    #[test]
    fn difference_relation_zero_data() {
        let conic = Conic::chebyshev(0.7);
        let zero = Polynomial::zero();
        let r = difference_relation_residual(&conic, &zero, &zero, &zero, 0.5, (1.0, 2.0), (3.0, 4.0), 0.2).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn residual_offset_in_u() {
        let conic = Conic::chebyshev(0.9);
        let m = DiscreteMeasure::new(vec![0.1, -0.4], vec![1.0, 2.0]).unwrap();
        let base = DifferenceEquationData::new(
            Polynomial::new(vec![0.3, 1.0]),
            Polynomial::constant(0.5),
            Polynomial::new(vec![0.2, -0.1]),
        )
        .unwrap();
        let shifted = DifferenceEquationData {
            u: &base.u + &Polynomial::constant(1.0),
            ..base.clone()
        };
        for x in [0.05, 0.33, 0.71] {
            let r0 = stieltjes_residual(&conic, &base, &m, x).unwrap();
            let r1 = stieltjes_residual(&conic, &shifted, &m, x).unwrap();
            assert_abs_diff_eq!(r1 - r0, -1.0, epsilon = 1e-12);
            assert!(r0.abs() > 1e-6);
        }
    }

    #[test]
    fn arcsine_law_for_dense_lattice() {
        let theta = 2.0 * std::f64::consts::PI * 1.618_033_988_749_895;
        assert!(arcsine_discrepancy(theta, 100_000, 100) < 1e-2);
    }
}
