//! One-sided best approximations of `rho`.
//!
//! `xi_j` is the `p` in `1..=j` minimizing `frac(p rho)` and `eta_j` the one
//! minimizing `1 - frac(p rho)`; `eps_j`, `iota_j` are the minima. A new
//! minimizer can only appear at `j = xi + eta`, and it replaces whichever of
//! the two residuals is larger.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::DoubleDouble;

/// A real number held in double-double precision.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Rho(DoubleDouble);

impl Rho {
    pub fn new(value: DoubleDouble) -> Self {
        Self(value)
    }

    /// `(sqrt(5) + 1) / 2`.
    pub fn golden() -> Self {
        let s5 = DoubleDouble::from_f64(5.0).sqrt();
        Self((s5 + DoubleDouble::ONE).mul_f64(0.5))
    }

    pub fn sqrt2() -> Self {
        Self(DoubleDouble::from_f64(2.0).sqrt())
    }

    pub fn from_decimal(s: &str) -> Result<Self> {
        DoubleDouble::parse_decimal(s)
            .map(Self)
            .ok_or_else(|| Error::InvalidInput(format!("not a decimal number: {s:?}")))
    }

    pub fn value(self) -> DoubleDouble {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64()
    }

    /// `theta = 2 pi rho`, rounded to f64.
    pub fn theta(self) -> f64 {
        (DoubleDouble::PI.mul_f64(2.0) * self.0).to_f64()
    }

    /// `n * rho` in double-double.
    pub fn times(self, n: i64) -> DoubleDouble {
        self.0 * DoubleDouble::from_i128(n as i128)
    }

    pub fn floor_times(self, n: i64) -> i64 {
        self.times(n).floor_i64()
    }

    pub fn ceil_times(self, n: i64) -> i64 {
        self.times(n).ceil_i64()
    }

    /// `frac(n rho)`.
    pub fn frac_times(self, n: i64) -> DoubleDouble {
        self.times(n).fract()
    }
}

impl FromStr for Rho {
    type Err = Error;

    /// Accepts `golden`, `sqrt2` or a decimal literal.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "golden" => Ok(Self::golden()),
            "sqrt2" => Ok(Self::sqrt2()),
            other => Self::from_decimal(other),
        }
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EventKind {
    Xi,
    Eta,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Xi => "xi",
            EventKind::Eta => "eta",
        }
    }
}

/// `(xi_j, eta_j, eps_j, iota_j)` at index `j`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ApproxState {
    pub rho: Rho,
    pub j: u64,
    pub xi: u64,
    pub eta: u64,
    pub eps: DoubleDouble,
    pub iota: DoubleDouble,
    /// Largest gap seen so far between the subtractive update and the
    /// directly recomputed residuals.
    pub recurrence_drift: f64,
}

impl ApproxState {
    pub fn eps_f64(&self) -> f64 {
        self.eps.to_f64()
    }

    pub fn iota_f64(&self) -> f64 {
        self.iota.to_f64()
    }

    /// Which denominator changed on arrival at `j`. At `j = 1` both are new;
    /// this reports `Xi` and callers wanting both should check `j == 1`.
    pub fn event(&self) -> Option<EventKind> {
        if self.j == self.xi {
            Some(EventKind::Xi)
        } else if self.j == self.eta {
            Some(EventKind::Eta)
        } else {
            None
        }
    }

    pub fn advance(&self) -> Result<Self> {
        approx_advance(self)
    }

    /// Advance until index `j` (no-op if already there or past it).
    pub fn advance_to(&self, j: u64) -> Result<Self> {
        let mut state = *self;
        while state.j < j {
            state = state.advance()?;
        }
        Ok(state)
    }
}

pub fn approx_init(rho: Rho) -> Result<ApproxState> {
    let eps = rho.value().fract();
    if eps == DoubleDouble::ZERO {
        return Err(Error::IntegerRho);
    }
    Ok(ApproxState {
        rho,
        j: 1,
        xi: 1,
        eta: 1,
        eps,
        iota: DoubleDouble::ONE - eps,
        recurrence_drift: 0.0,
    })
}

/// Move from index `j` to `j + 1`.
pub fn approx_advance(state: &ApproxState) -> Result<ApproxState> {
    let next_j = state.j + 1;
    let mut next = ApproxState { j: next_j, ..*state };
    if next_j != state.xi + state.eta {
        return Ok(next);
    }
    let rho = state.rho;
    let (sub_eps, sub_iota);
    if state.eps > state.iota {
        next.xi = next_j;
        sub_eps = state.eps - state.iota;
        sub_iota = state.iota;
        next.eps = rho.frac_times(next_j as i64);
    } else if state.eps < state.iota {
        next.eta = next_j;
        sub_eps = state.eps;
        sub_iota = state.iota - state.eps;
        next.iota = DoubleDouble::ONE - rho.frac_times(next_j as i64);
    } else {
        return Err(Error::TieBreak { j: state.j });
    }
    if next.eps == DoubleDouble::ZERO || next.iota == DoubleDouble::ZERO {
        return Err(Error::TieBreak { j: state.j });
    }
    let drift = (sub_eps - next.eps)
        .abs()
        .to_f64()
        .max((sub_iota - next.iota).abs().to_f64());
    next.recurrence_drift = state.recurrence_drift.max(drift);
    Ok(next)
}

/// Residuals and minimizers found by scanning `p = 1..=j`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct BruteForceApprox {
    pub xi: u64,
    pub eta: u64,
    pub eps: DoubleDouble,
    pub iota: DoubleDouble,
}

pub fn approx_bruteforce(rho: Rho, j: u64) -> Result<BruteForceApprox> {
    if !(1..=1_000_000).contains(&j) {
        return Err(Error::InvalidInput(format!("j = {j} outside 1..=1e6")));
    }
    let mut best = BruteForceApprox {
        xi: 0,
        eta: 0,
        eps: DoubleDouble::from_f64(f64::INFINITY),
        iota: DoubleDouble::from_f64(f64::INFINITY),
    };
    for p in 1..=j {
        let frac = rho.frac_times(p as i64);
        let comp = DoubleDouble::ONE - frac;
        if frac < best.eps {
            best.eps = frac;
            best.xi = p;
        }
        if comp < best.iota {
            best.iota = comp;
            best.eta = p;
        }
    }
    Ok(best)
}

/// Checks, for `N = 1..=2n-1`,
/// `floor(N rho) - floor(xi rho) = floor((N - xi) rho)` and
/// `floor(N rho) - floor(eta rho) = ceil((N - eta) rho)`
/// with `xi = xi_{2n-1}`, `eta = eta_{2n-1}`.
pub fn floor_identities_check(rho: Rho, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let state = approx_init(rho)?.advance_to(2 * n - 1)?;
    let (xi, eta) = (state.xi as i64, state.eta as i64);
    let floor_xi = rho.floor_times(xi);
    let floor_eta = rho.floor_times(eta);
    Ok((1..=(2 * n - 1) as i64).all(|big_n| {
        let floor_n = rho.floor_times(big_n);
        floor_n - floor_xi == rho.floor_times(big_n - xi) && floor_n - floor_eta == rho.ceil_times(big_n - eta)
    }))
}

/// All states `1..=upto`.
pub fn approx_sequence(rho: Rho, upto: u64) -> Result<Vec<ApproxState>> {
    let mut state = approx_init(rho)?;
    let mut out = Vec::with_capacity(upto as usize);
    if upto == 0 {
        return Ok(out);
    }
    out.push(state);
    while state.j < upto {
        state = state.advance()?;
        out.push(state);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_initial_state() {
        let s = approx_init(Rho::golden()).unwrap();
        assert_eq!((s.j, s.xi, s.eta), (1, 1, 1));
        assert_eq!(s.eps.format_significant(19), "0.6180339887498948482");
        assert_eq!(s.iota.format_significant(19), "0.3819660112501051518");
    }

    #[test]
    fn sqrt2_initial_state() {
        let s = approx_init(Rho::sqrt2()).unwrap();
        assert!((s.eps_f64() - 0.414_213_562_373_095_05).abs() < 1e-16);
        assert!((s.iota_f64() - 0.585_786_437_626_905).abs() < 1e-16);
    }

    #[test]
    fn near_half_is_balanced() {
        let s = approx_init(Rho::from_decimal("0.5000000000001").unwrap()).unwrap();
        assert!((s.eps_f64() - 0.5).abs() < 1e-12);
        assert!((s.iota_f64() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn integer_rho_rejected() {
        assert_eq!(approx_init(Rho::from_decimal("3").unwrap()), Err(Error::IntegerRho));
    }

    #[test]
    fn rational_rho_ties() {
        let s = approx_init(Rho::from_decimal("0.5").unwrap()).unwrap();
        assert_eq!(s.advance(), Err(Error::TieBreak { j: 1 }));
    }

    #[test]
    fn one_step_from_eps_greater() {
        let s = approx_init(Rho::golden()).unwrap();
        assert!(s.eps > s.iota);
        let t = s.advance().unwrap();
        assert_eq!(t.xi, 2);
        assert_eq!(t.eta, 1);
        assert_eq!(t.iota, s.iota);
        assert_eq!(t.event(), Some(EventKind::Xi));
    }

    #[test]
    fn bruteforce_trivial_index() {
        let b = approx_bruteforce(Rho::sqrt2(), 1).unwrap();
        assert_eq!((b.xi, b.eta), (1, 1));
        assert!(approx_bruteforce(Rho::sqrt2(), 0).is_err());
    }

    #[test]
    fn floor_identities_hold() {
        assert!(floor_identities_check(Rho::golden(), 5).unwrap());
        assert!(floor_identities_check(Rho::sqrt2(), 10).unwrap());
        assert!(floor_identities_check(Rho::from_decimal("3.14159265358979323846264338327950").unwrap(), 40).unwrap());
    }

    #[test]
    fn named_constants_parse() {
        assert_eq!("golden".parse::<Rho>().unwrap(), Rho::golden());
        assert_eq!("sqrt2".parse::<Rho>().unwrap(), Rho::sqrt2());
        assert!("x1.2".parse::<Rho>().is_err());
    }
}
