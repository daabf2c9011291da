//! The divided-difference operator `D` and the mean operator `M` attached to
//! a conic:
//!
//! ```text
//! (D f)(x) = (f(phi2) - f(phi1)) / (phi2 - phi1)
//! (M f)(x) = (f(phi1) + f(phi2)) / 2
//! ```
//!
//! where `phi1(x)`, `phi2(x)` are the two ordinates of the conic over `x`.
//! Both are symmetric in the ordinates, so on polynomials they reduce to
//! polynomials in `sigma = phi1 + phi2` (degree 1) and `pi = phi1 phi2`
//! (degree 2): `D x^k = h_{k-1}` (complete homogeneous symmetric
//! polynomial) and `M x^k = p_k / 2` (power sum).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{companion_roots, Conic};
use crate::polynomial::Polynomial;

/// Cached `sigma` and `pi` of a conic.
#[derive(Clone, Debug)]
pub struct DifferenceOperator {
    conic: Conic,
    sigma: Polynomial,
    pi: Polynomial,
}

impl DifferenceOperator {
    pub fn new(conic: &Conic) -> Result<Self> {
        let (sigma, pi) = conic.symmetric_functions()?;
        Ok(Self {
            conic: *conic,
            sigma: Polynomial::new(sigma.to_vec()),
            pi: Polynomial::new(pi.to_vec()),
        })
    }

    pub fn conic(&self) -> &Conic {
        &self.conic
    }

    /// Runs `t_j = sigma t_{j-1} - pi t_{j-2}` from `(t_0, t_1)` and returns
    /// `t_0..=t_n`.
    fn symmetric_sequence(&self, t0: Polynomial, t1: Polynomial, n: usize) -> Vec<Polynomial> {
        let mut seq = Vec::with_capacity(n + 1);
        seq.push(t0);
        if n == 0 {
            return seq;
        }
        seq.push(t1);
        for j in 2..=n {
            let next = &(&self.sigma * &seq[j - 1]) - &(&self.pi * &seq[j - 2]);
            seq.push(next);
        }
        seq
    }

    pub fn divided_difference(&self, f: &Polynomial) -> Polynomial {
        let Some(deg) = f.degree() else {
            return Polynomial::zero();
        };
        if deg == 0 {
            return Polynomial::zero();
        }
        // h_0 = 1, h_1 = sigma
        let h = self.symmetric_sequence(Polynomial::constant(1.0), self.sigma.clone(), deg - 1);
        f.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .fold(Polynomial::zero(), |acc, (k, &c)| acc.add_scaled(&h[k - 1], c))
    }

    pub fn mean(&self, f: &Polynomial) -> Polynomial {
        let Some(deg) = f.degree() else {
            return Polynomial::zero();
        };
        // p_0 = 2, p_1 = sigma
        let p = self.symmetric_sequence(Polynomial::constant(2.0), self.sigma.clone(), deg);
        f.coeffs()
            .iter()
            .enumerate()
            .fold(Polynomial::zero(), |acc, (k, &c)| acc.add_scaled(&p[k], 0.5 * c))
    }
}

pub fn divided_difference(conic: &Conic, f: &Polynomial) -> Result<Polynomial> {
    Ok(DifferenceOperator::new(conic)?.divided_difference(f))
}

pub fn mean(conic: &Conic, f: &Polynomial) -> Result<Polynomial> {
    Ok(DifferenceOperator::new(conic)?.mean(f))
}

/// Direct numerical evaluation of `D f` and `M f` at `x` from the companion
/// roots. Independent of the symbolic reduction, so it serves as its oracle.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PointwiseValues {
    /// `None` when the two ordinates coincide.
    pub dd_direct: Option<f64>,
    pub mean_direct: f64,
}

pub fn pointwise_values(conic: &Conic, f: &Polynomial, x: f64) -> Result<PointwiseValues> {
    let (phi1, phi2) = companion_roots(conic, x)?;
    let (f1, f2) = (f.eval_complex(phi1), f.eval_complex(phi2));
    let mean_direct = (0.5 * (f1 + f2)).re;
    let dd_direct = (phi1 != phi2).then(|| ((f2 - f1) / (phi2 - phi1)).re);
    Ok(PointwiseValues { dd_direct, mean_direct })
}

/// Both direct values; fails with `CoincidentRoots` when the divided
/// difference is undefined (use [`pointwise_values`] to still get the mean).
pub fn pointwise_check(conic: &Conic, f: &Polynomial, x: f64) -> Result<(f64, f64)> {
    let values = pointwise_values(conic, f, x)?;
    match values.dd_direct {
        Some(dd) => Ok((dd, values.mean_direct)),
        None => Err(Error::CoincidentRoots { x }),
    }
}

/// Divided difference and mean of a function given by its values at the two
/// ordinates.
pub(crate) fn two_point(phi: (Complex64, Complex64), values: (Complex64, Complex64)) -> (Complex64, Complex64) {
    let (phi1, phi2) = phi;
    let (f1, f2) = values;
    ((f2 - f1) / (phi2 - phi1), (f1 + f2) * 0.5)
}
