//! Extended-precision helpers: a double-double scalar and a compensated
//! summation accumulator.
//!
//! The double-double type carries roughly 31 significant decimal digits,
//! which is what the best-approximation sequences need once the
//! denominators reach the thousands.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact conversion for |n| < 2^104.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let lo = (n - hi as i128) as f64;
        Self::new(hi, lo)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(self.hi.sqrt());
        }
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let r = (self - Self { hi: p, lo: e }).to_f64();
        Self::new(s, r / (2.0 * s))
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (hi, lo) = quick_two_sum(hi, self.lo.floor());
            Self { hi, lo }
        } else {
            Self { hi, lo: 0.0 }
        }
    }

    /// `floor(self)` as an integer; panics if it does not fit in i64.
    pub fn floor_i64(self) -> i64 {
        let f = self.floor();
        let v = f.hi as i128 + f.lo as i128;
        i64::try_from(v).expect("floor out of i64 range")
    }

    pub fn ceil_i64(self) -> i64 {
        -(-self).floor_i64()
    }

    /// Fractional part in [0, 1).
    pub fn fract(self) -> Self {
        self - self.floor()
    }

    pub fn powi10(k: i32) -> Self {
        let mut result = Self::ONE;
        let ten = Self::from_f64(10.0);
        for _ in 0..k.unsigned_abs() {
            result = result * ten;
        }
        if k < 0 {
            Self::ONE / result
        } else {
            result
        }
    }

    /// Parse a plain decimal literal such as `-1.6180339887498948482045868343656`.
    /// Digits beyond the 31st are folded in with diminishing effect.
    pub fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let ten = Self::from_f64(10.0);
        let mut acc = Self::ZERO;
        for c in int_part.chars().chain(frac_part.chars()) {
            let d = c.to_digit(10)?;
            acc = acc * ten + Self::from_f64(d as f64);
        }
        let scale = exp - frac_part.len() as i32;
        let value = if scale < 0 {
            acc / Self::powi10(-scale)
        } else {
            acc * Self::powi10(scale)
        };
        Some(if neg { -value } else { value })
    }

    /// Plain decimal rendering with `sig` significant digits (round half up).
    pub fn format_significant(self, sig: usize) -> String {
        if !self.is_finite() {
            return format!("{}", self.to_f64());
        }
        if self.hi == 0.0 {
            return "0".to_string();
        }
        let neg = self.hi < 0.0;
        let x = self.abs();
        let mut exp = x.hi.log10().floor() as i32;
        let mut y = x / Self::powi10(exp);
        if y.hi >= 10.0 {
            exp += 1;
            y = y / Self::from_f64(10.0);
        } else if y.hi < 1.0 {
            exp -= 1;
            y = y * Self::from_f64(10.0);
        }
        let mut digits = Vec::with_capacity(sig + 1);
        for _ in 0..=sig {
            let d = y.hi.floor().clamp(0.0, 9.0);
            digits.push(d as u8);
            y = (y - Self::from_f64(d)) * Self::from_f64(10.0);
        }
        let round_up = digits.pop().unwrap_or(0) >= 5;
        if round_up {
            let mut i = digits.len();
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.pop();
                    exp += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let ds: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
        if exp < 0 {
            out.push_str("0.");
            for _ in 0..(-exp - 1) {
                out.push('0');
            }
            out.push_str(&ds);
        } else {
            let int_len = exp as usize + 1;
            if int_len >= ds.len() {
                out.push_str(&ds);
                for _ in ds.len()..int_len {
                    out.push('0');
                }
            } else {
                out.push_str(&ds[..int_len]);
                out.push('.');
                out.push_str(&ds[int_len..]);
            }
        }
        out
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_significant(f.precision().unwrap_or(32)))
    }
}

/// Neumaier's variant of Kahan summation. Terms are absorbed in call order,
/// so the result is reproducible for a fixed term sequence.
#[derive(Copy, Clone, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Plain decimal rendering of an f64 with `sig` significant digits.
pub fn format_f64(x: f64, sig: usize) -> String {
    DoubleDouble::from_f64(x).format_significant(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt5_matches_reference_digits() {
        let s = DoubleDouble::from_f64(5.0).sqrt();
        assert_eq!(s.format_significant(30), "2.23606797749978969640917366873");
    }

    #[test]
    fn parse_and_format_round_trip() {
        let x = DoubleDouble::parse_decimal("1.6180339887498948482045868343656").unwrap();
        assert_eq!(x.format_significant(31), "1.618033988749894848204586834366");
        let y = DoubleDouble::parse_decimal("-0.00123").unwrap();
        assert_eq!(y.format_significant(3), "-0.00123");
        assert_eq!(DoubleDouble::parse_decimal("2.5e3").unwrap().to_f64(), 2500.0);
        assert!(DoubleDouble::parse_decimal("abc").is_none());
        assert!(DoubleDouble::parse_decimal(".").is_none());
    }

    #[test]
    fn formatting_carries_on_round_up() {
        assert_eq!(format_f64(0.99999, 3), "1.00");
        assert_eq!(format_f64(123.0, 5), "123.00");
        assert_eq!(format_f64(1234567.0, 3), "1230000");
    }

    #[test]
    fn floor_handles_lo_part() {
        let x = DoubleDouble::new(3.0, -1e-20);
        assert_eq!(x.floor_i64(), 2);
        assert_eq!(x.ceil_i64(), 3);
        assert!(x.fract().to_f64() > 0.99);
        let y = DoubleDouble::from_f64(-2.5);
        assert_eq!(y.floor_i64(), -3);
        assert_eq!(y.ceil_i64(), -2);
    }

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(terms), 2.0);
    }
}
