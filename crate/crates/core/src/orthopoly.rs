//! Orthonormal polynomials of discrete measures.
//!
//! Recurrence convention throughout:
//!
//! ```text
//! a_{n+1} p_{n+1}(x) = (x - b_n) p_n(x) - a_n p_{n-1}(x),   p_{-1} = 0
//! ```
//!
//! with `a_n > 0`. For the dense measure on lattice VI the polynomials are
//! also known in closed form as three-term combinations of Chebyshev
//! polynomials, see [`explicit_pn`].

use std::f64::consts::PI;

use crate::diophantine::{approx_init, ApproxState, Rho};
use crate::error::{Error, Result};
use crate::moments::{build_measure, tau_closed, DiscreteMeasure};
use crate::numeric::CompensatedSum;

/// Orthonormal three-term recurrence data.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceCoeffs {
    /// `a_1..=a_N` (`a[0]` is `a_1`).
    pub a: Vec<f64>,
    /// `b_0..b_{N-1}`.
    pub b: Vec<f64>,
    /// `1/(2^n a_1 ... a_n)` for `n = 0..=N`.
    pub gamma_ratio: Vec<f64>,
    /// `mu_0`, fixing `p_0 = 1/sqrt(mu_0)`.
    pub mass: f64,
}

impl RecurrenceCoeffs {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `a_n` for `n >= 1`.
    pub fn a_n(&self, n: usize) -> f64 {
        self.a[n - 1]
    }

    /// `p_0(x), ..., p_{n}(x)` by forward recurrence; needs `n <= N`.
    pub fn eval_all(&self, n: usize, x: f64) -> Vec<f64> {
        assert!(n <= self.a.len(), "degree {n} beyond recurrence length");
        let mut values = Vec::with_capacity(n + 1);
        let mut prev = 0.0;
        let mut cur = 1.0 / self.mass.sqrt();
        values.push(cur);
        for k in 0..n {
            let a_prev = if k == 0 { 0.0 } else { self.a[k - 1] };
            let next = ((x - self.b[k]) * cur - a_prev * prev) / self.a[k];
            prev = cur;
            cur = next;
            values.push(cur);
        }
        values
    }

    pub fn eval(&self, n: usize, x: f64) -> f64 {
        self.eval_all(n, x)[n]
    }
}

/// Discretized Stieltjes procedure: `N` steps produce `a_1..a_N`, `b_0..b_{N-1}`.
pub fn stieltjes_recurrence(measure: &DiscreteMeasure, n_steps: usize) -> Result<RecurrenceCoeffs> {
    if n_steps == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let distinct = measure.distinct_nodes();
    if distinct <= n_steps {
        return Err(Error::MeasureTooSmall {
            distinct,
            needed: n_steps,
        });
    }
    let nodes = &measure.nodes;
    let weights = &measure.weights;
    let weighted_sum = |f: &dyn Fn(usize) -> f64| -> f64 {
        (0..nodes.len())
            .map(|i| weights[i] * f(i))
            .collect::<CompensatedSum>()
            .value()
    };

    let mass = measure.total_mass();
    let mut prev = vec![0.0; nodes.len()];
    let mut cur = vec![1.0 / mass.sqrt(); nodes.len()];
    let mut a = Vec::with_capacity(n_steps);
    let mut b = Vec::with_capacity(n_steps);
    let mut gamma_ratio = Vec::with_capacity(n_steps + 1);
    gamma_ratio.push(1.0);
    let mut a_prev = 0.0;
    for n in 0..n_steps {
        let b_n = weighted_sum(&|i| nodes[i] * cur[i] * cur[i]);
        let residual: Vec<f64> = (0..nodes.len())
            .map(|i| (nodes[i] - b_n) * cur[i] - a_prev * prev[i])
            .collect();
        let norm_sq = weighted_sum(&|i| residual[i] * residual[i]);
        let a_next = norm_sq.sqrt();
        if a_next.is_nan() || a_next <= 0.0 || a_next.is_infinite() {
            return Err(Error::LossOfOrthogonality {
                n: n + 1,
                value: a_next,
            });
        }
        b.push(b_n);
        a.push(a_next);
        gamma_ratio.push(gamma_ratio[n] / (2.0 * a_next));
        prev = std::mem::take(&mut cur);
        cur = residual.into_iter().map(|r| r / a_next).collect();
        a_prev = a_next;
    }
    Ok(RecurrenceCoeffs {
        a,
        b,
        gamma_ratio,
        mass,
    })
}

/// Second-kind function `q_n(x) = sum_k w_k p_n(t_k) / (x - t_k)`.
///
/// Outside the node hull the sum is evaluated as
/// `sum_k w_k p_n(t_k)^2 / (x - t_k) / p_n(x)`, which is the same quantity
/// (the difference is `<p_n, (p_n(x) - p_n(t))/(x - t)> = 0`) but free of the
/// cancellation that makes the direct sum useless for large `n`.
pub fn second_kind(measure: &DiscreteMeasure, coeffs: &RecurrenceCoeffs, n: usize, x: f64) -> Result<f64> {
    if measure.nodes.iter().any(|&t| (x - t).abs() <= 1e-14 * (1.0 + x.abs())) {
        return Err(Error::PoleAtNode { x });
    }
    let (lo, hi) = measure
        .nodes
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| {
            (lo.min(t), hi.max(t))
        });
    let node_values = node_values(measure, coeffs, n);
    if x > hi || x < lo {
        let p_x = coeffs.eval(n, x);
        let s: CompensatedSum = node_values
            .iter()
            .zip(measure.nodes.iter().zip(&measure.weights))
            .map(|(p, (t, w))| w * p * p / (x - t))
            .collect();
        Ok(s.value() / p_x)
    } else {
        Ok(second_kind_direct_from(measure, &node_values, x))
    }
}

/// The defining sum, evaluated term by term.
pub fn second_kind_direct(measure: &DiscreteMeasure, coeffs: &RecurrenceCoeffs, n: usize, x: f64) -> f64 {
    second_kind_direct_from(measure, &node_values(measure, coeffs, n), x)
}

fn second_kind_direct_from(measure: &DiscreteMeasure, p: &[f64], x: f64) -> f64 {
    p.iter()
        .zip(measure.nodes.iter().zip(&measure.weights))
        .map(|(p, (t, w))| w * p / (x - t))
        .collect::<CompensatedSum>()
        .value()
}

fn node_values(measure: &DiscreteMeasure, coeffs: &RecurrenceCoeffs, n: usize) -> Vec<f64> {
    measure.nodes.iter().map(|&t| coeffs.eval(n, t)).collect()
}

/// A finite combination `sum c_d T_d` of Chebyshev polynomials of the first kind.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevCombo {
    /// `(degree, coefficient)`, distinct degrees in ascending order.
    pub terms: Vec<(usize, f64)>,
}

impl ChebyshevCombo {
    /// Collects terms, merging equal degrees.
    pub fn from_terms<I: IntoIterator<Item = (usize, f64)>>(terms: I) -> Self {
        let mut merged: Vec<(usize, f64)> = Vec::new();
        for (d, c) in terms {
            match merged.iter_mut().find(|(md, _)| *md == d) {
                Some(entry) => entry.1 += c,
                None => merged.push((d, c)),
            }
        }
        merged.sort_by_key(|(d, _)| *d);
        Self { terms: merged }
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(d, _)| *d).max().unwrap_or(0)
    }

    pub fn coefficient(&self, degree: usize) -> f64 {
        self.terms.iter().find(|(d, _)| *d == degree).map_or(0.0, |(_, c)| *c)
    }

    /// Clenshaw evaluation in the monomial variable `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.degree();
        let mut dense = vec![0.0; n + 1];
        for &(d, c) in &self.terms {
            dense[d] += c;
        }
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in dense.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        dense[0] + x * b1 - b2
    }

    /// Evaluation at `x = cos(phi)` through `T_d(cos phi) = cos(d phi)`.
    pub fn eval_angle(&self, phi: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(d, c)| c * (d as f64 * phi).cos())
            .collect::<CompensatedSum>()
            .value()
    }

    /// `<self, other>` against a measure whose Chebyshev moments are `tau(p)`,
    /// via `T_a T_b = (T_{a+b} + T_{|a-b|}) / 2`.
    pub fn inner_product_by_moments<F: Fn(usize) -> f64>(&self, other: &Self, tau: F) -> f64 {
        let mut acc = CompensatedSum::new();
        for &(da, ca) in &self.terms {
            for &(db, cb) in &other.terms {
                acc.add(0.5 * ca * cb * (tau(da + db) + tau(da.abs_diff(db))));
            }
        }
        acc.value()
    }
}

/// The pair of best-approximation states at `2n - 1` and `2n`.
fn approx_pair(rho: Rho, n: usize) -> Result<(ApproxState, ApproxState)> {
    let odd = approx_init(rho)?.advance_to(2 * n as u64 - 1)?;
    let even = odd.advance()?;
    Ok((odd, even))
}

fn parity_sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Closed-form orthonormal `p_n` for masses `1/(k - 1/2)^2` at
/// `cos((k - 1/2) 2 pi rho)`, as a Chebyshev combination.
pub fn explicit_pn(rho: Rho, n: usize) -> Result<ChebyshevCombo> {
    if n == 0 {
        return Ok(ChebyshevCombo::from_terms([(0, 1.0 / PI)]));
    }
    let (odd, even) = approx_pair(rho, n)?;
    let (eps, iota) = (odd.eps_f64(), odd.iota_f64());
    let (eps2, iota2) = (even.eps_f64(), even.iota_f64());
    let norm = (2.0 * PI * PI * eps2 * iota2 * (eps + iota)).sqrt();
    let xi_sign = parity_sign(rho.floor_times(odd.xi as i64));
    let eta_sign = parity_sign(rho.floor_times(odd.eta as i64));
    Ok(ChebyshevCombo::from_terms([
        (n, (eps + iota) / norm),
        (n.abs_diff(odd.xi as usize), -xi_sign * iota / norm),
        (n.abs_diff(odd.eta as usize), eta_sign * eps / norm),
    ]))
}

/// Predicted `1/(2^n a_1 ... a_n) = sqrt((eps_{2n-1} + iota_{2n-1}) / (8 eps_{2n} iota_{2n}))`.
pub fn leading_coeff_formula(rho: Rho, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let (odd, even) = approx_pair(rho, n)?;
    Ok(((odd.eps_f64() + odd.iota_f64()) / (8.0 * even.eps_f64() * even.iota_f64())).sqrt())
}

/// Gram matrix of `explicit_pn(0..=n_max)` using exact moments.
pub fn gram_by_moments(rho: Rho, n_max: usize) -> Result<Vec<Vec<f64>>> {
    let polys: Vec<ChebyshevCombo> = (0..=n_max).map(|n| explicit_pn(rho, n)).collect::<Result<_>>()?;
    let tau = |p: usize| tau_closed(rho, p as u64);
    Ok(polys
        .iter()
        .map(|p| polys.iter().map(|q| p.inner_product_by_moments(q, tau)).collect())
        .collect())
}

/// Gram matrix of `explicit_pn(0..=n_max)` by summing over the nodes of the
/// truncated measure (`k = -K+1..=K`).
pub fn gram_by_nodes(rho: Rho, k_max: usize, n_max: usize) -> Result<Vec<Vec<f64>>> {
    let polys: Vec<ChebyshevCombo> = (0..=n_max).map(|n| explicit_pn(rho, n)).collect::<Result<_>>()?;
    let theta = rho.theta();
    let measure = build_measure(theta, k_max);
    let angles: Vec<f64> = (1..=k_max).map(|k| (k as f64 - 0.5) * theta).collect();
    let values: Vec<Vec<f64>> = polys
        .iter()
        .map(|p| angles.iter().map(|&phi| p.eval_angle(phi)).collect())
        .collect();
    Ok((0..=n_max)
        .map(|i| {
            (0..=n_max)
                .map(|j| {
                    measure
                        .weights
                        .iter()
                        .enumerate()
                        .map(|(k, w)| w * values[i][k] * values[j][k])
                        .collect::<CompensatedSum>()
                        .value()
                })
                .collect()
        })
        .collect())
}

/// One row of the comparison table. Fields that do not exist for `n = 0`
/// are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub n: usize,
    pub a: Option<f64>,
    pub b: f64,
    pub eps_odd: Option<f64>,
    pub iota_odd: Option<f64>,
    pub eps_even: Option<f64>,
    pub iota_even: Option<f64>,
    /// `1/(2^n a_1 ... a_n)` from the Stieltjes coefficients.
    pub computed: Option<f64>,
    /// [`leading_coeff_formula`].
    pub predicted: Option<f64>,
    /// `(computed - predicted) / predicted`.
    pub rel_err: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableReport {
    pub rho: Rho,
    pub k_max: usize,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn row(&self, n: usize) -> Option<&TableRow> {
        self.rows.get(n)
    }

    pub fn max_rel_err(&self) -> f64 {
        self.rows
            .iter()
            .filter_map(|r| r.rel_err)
            .fold(0.0, |m, e| m.max(e.abs()))
    }
}

/// Recurrence coefficients of the truncated measure next to the closed-form
/// prediction of the leading coefficients, for `n = 0..=N`.
pub fn verify_table(rho: Rho, k_max: usize, n_max: usize) -> Result<TableReport> {
    let measure = build_measure(rho.theta(), k_max);
    let coeffs = stieltjes_recurrence(&measure, n_max + 1)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    rows.push(TableRow {
        n: 0,
        a: None,
        b: coeffs.b[0],
        eps_odd: None,
        iota_odd: None,
        eps_even: None,
        iota_even: None,
        computed: None,
        predicted: None,
        rel_err: None,
    });
    let mut state = approx_init(rho)?;
    for n in 1..=n_max {
        state = state.advance_to(2 * n as u64 - 1)?;
        let odd = state;
        state = state.advance()?;
        let even = state;
        let computed = coeffs.gamma_ratio[n];
        let predicted = ((odd.eps_f64() + odd.iota_f64()) / (8.0 * even.eps_f64() * even.iota_f64())).sqrt();
        rows.push(TableRow {
            n,
            a: Some(coeffs.a_n(n)),
            b: coeffs.b[n],
            eps_odd: Some(odd.eps_f64()),
            iota_odd: Some(odd.iota_f64()),
            eps_even: Some(even.eps_f64()),
            iota_even: Some(even.iota_f64()),
            computed: Some(computed),
            predicted: Some(predicted),
            rel_err: Some((computed - predicted) / predicted),
        });
    }
    Ok(TableReport { rho, k_max, rows })
}
