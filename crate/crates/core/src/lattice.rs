//! Conics `A y^2 + 2B xy + C x^2 + 2D y + 2E x + F = 0` and the lattices
//! they generate.
//!
//! Over each abscissa `x(s)` the conic has two ordinates, `y(s)` and
//! `y(s+1)`. Stepping `s` by one walks both the x-lattice and the
//! y-lattice. Five kinds are distinguished: centered conics give the
//! hyperbolic (`|q| != 1`), trigonometric (`|q| = 1`) and q-linear
//! (`F~ = 0`) lattices; conics without center give the parabolic and the
//! uniform lattices.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative threshold under which `B^2 - AC` (and friends) count as zero.
const ZERO_REL_TOL: f64 = 1e-12;
/// Imaginary residue tolerated before a lattice is declared non-real.
const REAL_TOL: f64 = 1e-10;

fn negligible(value: f64, scale: f64) -> bool {
    value == 0.0 || value.abs() <= ZERO_REL_TOL * scale
}

/// The six coefficients of a plane conic, stored exactly as given.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Conic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Conic {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self> {
        if [a, b, c, d, e, f].iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("conic coefficients must be finite".into()));
        }
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(Error::DegenerateConic("A, B and C are all zero".into()));
        }
        Ok(Self { a, b, c, d, e, f })
    }

    /// Coefficients in the order `A, B, C, D, E, F`.
    pub fn from_slice(coeffs: &[f64]) -> Result<Self> {
        match *coeffs {
            [a, b, c, d, e, f] => Self::new(a, b, c, d, e, f),
            _ => Err(Error::InvalidInput(format!(
                "a conic needs 6 coefficients, got {}",
                coeffs.len()
            ))),
        }
    }

    /// The conic carrying lattice VI: `x = cos(s theta)`, `y = cos((s - 1/2) theta)`.
    pub fn chebyshev(theta: f64) -> Self {
        let half = 0.5 * theta;
        Self {
            a: 1.0,
            b: -half.cos(),
            c: 1.0,
            d: 0.0,
            e: 0.0,
            f: -half.sin().powi(2),
        }
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.a * y * y + 2.0 * self.b * x * y + self.c * x * x + 2.0 * self.d * y + 2.0 * self.e * x + self.f
    }

    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        y * y * self.a + x * y * (2.0 * self.b) + x * x * self.c + y * (2.0 * self.d) + x * (2.0 * self.e) + self.f
    }

    /// Largest absolute monomial of the conic at `(x, y)`, the natural
    /// yardstick for residuals of [`Conic::eval`].
    pub fn monomial_scale(&self, x: f64, y: f64) -> f64 {
        [
            self.a * y * y,
            2.0 * self.b * x * y,
            self.c * x * x,
            2.0 * self.d * y,
            2.0 * self.e * x,
            self.f,
        ]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `B^2 - AC`; zero exactly when the conic has no center.
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - self.a * self.c
    }

    fn has_center(&self) -> bool {
        let disc = self.discriminant();
        !negligible(disc, (self.b * self.b).max((self.a * self.c).abs()))
    }

    /// Sum and product of the two ordinates over `x`, as polynomials in `x`:
    /// `sigma(x) = -2(Bx + D)/A`, `pi(x) = (Cx^2 + 2Ex + F)/A`.
    pub(crate) fn symmetric_functions(&self) -> Result<([f64; 2], [f64; 3])> {
        if self.a == 0.0 {
            return Err(Error::LinearInY);
        }
        let sigma = [-2.0 * self.d / self.a, -2.0 * self.b / self.a];
        let pi = [self.f / self.a, 2.0 * self.e / self.a, self.c / self.a];
        Ok((sigma, pi))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    Hyperbolic,
    Trigonometric,
    QLinear,
    Parabolic,
    Uniform,
}

/// Which half-step the ordinate formula uses. With `Minus` the ordinates over
/// `x(s)` are `y(s)` and `y(s+1)`; with `Plus` they are `y(s)` and `y(s-1)`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    #[default]
    Minus,
    Plus,
}

impl Orientation {
    fn half(self) -> f64 {
        match self {
            Orientation::Minus => -0.5,
            Orientation::Plus => 0.5,
        }
    }

    /// Offset `t` such that `(x(s), y(s + t))` is the second point over `x(s)`.
    pub fn partner_step(self) -> f64 {
        match self {
            Orientation::Minus => 1.0,
            Orientation::Plus => -1.0,
        }
    }
}

/// A classified conic together with everything its parametrization needs.
///
/// For centered kinds `zeta_sqrt_a`, `zeta_sqrt_c` are the products
/// `zeta*sqrt(A)`, `zeta*sqrt(C)`; for the centerless kinds they hold
/// `sqrt(A)` and `sqrt(C)` themselves, with branches fixed so that
/// `sqrt(A) sqrt(C) = -B`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub conic: Conic,
    pub center: Option<(f64, f64)>,
    pub f_tilde: Option<f64>,
    pub zeta_sqrt_a: Complex64,
    pub zeta_sqrt_c: Complex64,
    /// Canonical root of `q + 1/q = 4B^2/(AC) - 2`.
    pub q: Option<Complex64>,
    /// Square root of `q` (or of `1/q`) satisfying `r + 1/r = -2B/sqrt(AC)`;
    /// this is the one the parametrization uses.
    pub sqrt_q: Option<Complex64>,
    /// `2 arg(sqrt_q)` for the trigonometric kind, so that `q^s = e^{i s theta}`.
    pub theta: Option<f64>,
    pub orientation: Orientation,
    /// Free scale `X` of the q-linear lattice.
    pub scale: f64,
}

impl LatticeSpec {
    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// False for the boundary cases `q = +-1` of a centered conic.
    pub fn is_generic(&self) -> bool {
        match self.q {
            Some(q) => (q - 1.0).norm() > 1e-12 && (q + 1.0).norm() > 1e-12,
            None => true,
        }
    }

    /// Point of the lattice at parameter `s`.
    pub fn point(&self, s: f64) -> Result<LatticePoint> {
        let (x, y) = match self.kind {
            LatticeKind::Trigonometric => self.trigonometric_point(s)?,
            _ => {
                let (x, y) = self.complex_point(s)?;
                (real_part(x, "abscissa")?, real_part(y, "ordinate")?)
            }
        };
        Ok(LatticePoint { s, x, y })
    }

    fn trigonometric_point(&self, s: f64) -> Result<(f64, f64)> {
        let theta = self.theta.expect("trigonometric spec carries theta");
        let (xc, yc) = self.center.expect("trigonometric spec has a center");
        let za = real_part(self.zeta_sqrt_a, "zeta*sqrt(A)")?;
        let zc = real_part(self.zeta_sqrt_c, "zeta*sqrt(C)")?;
        let x = xc + 2.0 * za * (s * theta).cos();
        let y = yc + 2.0 * zc * ((s + self.orientation.half()) * theta).cos();
        Ok((x, y))
    }

    fn complex_point(&self, s: f64) -> Result<(Complex64, Complex64)> {
        let half = self.orientation.half();
        let conic = &self.conic;
        match self.kind {
            LatticeKind::Hyperbolic | LatticeKind::QLinear | LatticeKind::Trigonometric => {
                let (xc, yc) = self.center.expect("centered spec");
                let r = self.sqrt_q.expect("centered spec carries sqrt(q)");
                let log_r = r.ln();
                let u = (log_r * (2.0 * s)).exp();
                let v = (log_r * (2.0 * (s + half))).exp();
                if self.kind == LatticeKind::QLinear {
                    let x = self.zeta_sqrt_a * self.scale * u + xc;
                    let y = self.zeta_sqrt_c * self.scale * v + yc;
                    Ok((x, y))
                } else {
                    let x = self.zeta_sqrt_a * (u + u.inv()) + xc;
                    let y = self.zeta_sqrt_c * (v + v.inv()) + yc;
                    Ok((x, y))
                }
            }
            LatticeKind::Parabolic => {
                let (sa, sc) = (self.zeta_sqrt_a, self.zeta_sqrt_c);
                let (a, c) = (conic.a, conic.c);
                let (d, e, f) = (conic.d, conic.e, conic.f);
                let g = sc * d + sa * e;
                let ac = a * c;
                let x = sa * ((d * d - a * f) / (g * (2.0 * a)) - g * (2.0 * s * s / ac));
                let t = s + half;
                let y = sc * ((e * e - c * f) / (g * (2.0 * c)) - g * (2.0 * t * t / ac));
                Ok((x, y))
            }
            LatticeKind::Uniform => {
                let (sa, sc) = (self.zeta_sqrt_a, self.zeta_sqrt_c);
                let (a, d, e, f) = (conic.a, conic.d, conic.e, conic.f);
                let root = Complex64::new(d * d - a * f, 0.0).sqrt();
                let ac_root = sa * sc;
                let x = -(root * 2.0 * s) / ac_root;
                let y = e / ac_root - root * (2.0 * (s + half) / a);
                Ok((x, y))
            }
        }
    }
}

fn real_part(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() <= REAL_TOL * (1.0 + z.re.abs()) {
        Ok(z.re)
    } else {
        Err(Error::ComplexLattice(format!("{what} = {z} is not real")))
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LatticePoint {
    pub s: f64,
    pub x: f64,
    pub y: f64,
}

/// Canonical root of `q + 1/q = 4B^2/(AC) - 2`: the one with `|q| >= 1`,
/// and `Im q >= 0` when both have modulus one.
pub fn q_from_conic(conic: &Conic) -> Result<Complex64> {
    let ac = conic.a * conic.c;
    if ac == 0.0 {
        return Err(Error::DegenerateConic("AC = 0".into()));
    }
    let t = 4.0 * conic.b * conic.b / ac - 2.0;
    if t.abs() >= 2.0 {
        let root = (t * t - 4.0).sqrt();
        Ok(Complex64::new(0.5 * (t + t.signum() * root), 0.0))
    } else {
        Ok(Complex64::new(0.5 * t, 0.5 * (4.0 - t * t).sqrt()))
    }
}

/// Classify a conic and derive the data of its lattice parametrization.
pub fn classify(conic: &Conic) -> Result<LatticeSpec> {
    let Conic { a, b, c, d, e, f } = *conic;
    if conic.has_center() {
        if a * c == 0.0 {
            return Err(Error::DegenerateConic(
                "AC = 0 with a center: horizontal or vertical lines miss the conic".into(),
            ));
        }
        let disc = conic.discriminant();
        let xc = (a * e - b * d) / disc;
        let yc = (c * d - b * e) / disc;
        let f_tilde = f + d * yc + e * xc;
        let zeta = Complex64::new(f_tilde / (4.0 * disc), 0.0).sqrt();
        let sqrt_a = Complex64::new(a, 0.0).sqrt();
        let sqrt_c = Complex64::new(c, 0.0).sqrt();
        let q = q_from_conic(conic)?;
        // r + 1/r = w fixes which square root of q (or 1/q) the formulas use.
        let w = -2.0 * b / (sqrt_a * sqrt_c);
        let disc_w = (w * w - 4.0).sqrt();
        let r1 = (w + disc_w) * 0.5;
        let r2 = (w - disc_w) * 0.5;
        let r = if (r1 * r1 - q).norm() <= (r2 * r2 - q).norm() {
            r1
        } else {
            r2
        };
        let f_scale = f.abs().max((d * yc).abs()).max((e * xc).abs());
        let kind = if negligible(f_tilde, f_scale) {
            LatticeKind::QLinear
        } else if a * c > 0.0 && disc < 0.0 {
            LatticeKind::Trigonometric
        } else {
            LatticeKind::Hyperbolic
        };
        let (zeta_sqrt_a, zeta_sqrt_c) = if kind == LatticeKind::QLinear {
            (sqrt_a, sqrt_c)
        } else {
            (zeta * sqrt_a, zeta * sqrt_c)
        };
        let theta = (kind == LatticeKind::Trigonometric).then(|| 2.0 * r.arg());
        Ok(LatticeSpec {
            kind,
            conic: *conic,
            center: Some((xc, yc)),
            f_tilde: Some(f_tilde),
            zeta_sqrt_a,
            zeta_sqrt_c,
            q: Some(q),
            sqrt_q: Some(r),
            theta,
            orientation: Orientation::Minus,
            scale: 1.0,
        })
    } else {
        // B^2 = AC: pick sqrt(A), sqrt(C) with sqrt(A) sqrt(C) = -B so that the
        // quadratic part is (sqrt(A) y - sqrt(C) x)^2.
        let (sqrt_a, sqrt_c) = if a != 0.0 {
            let sa = Complex64::new(a, 0.0).sqrt();
            (sa, -b / sa)
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(c, 0.0).sqrt())
        };
        let g = sqrt_c * d + sqrt_a * e;
        let g_scale = (sqrt_c * d).norm().max((sqrt_a * e).norm());
        let kind = if negligible(g.norm(), g_scale) {
            LatticeKind::Uniform
        } else {
            LatticeKind::Parabolic
        };
        Ok(LatticeSpec {
            kind,
            conic: *conic,
            center: None,
            f_tilde: None,
            zeta_sqrt_a: sqrt_a,
            zeta_sqrt_c: sqrt_c,
            q: None,
            sqrt_q: None,
            theta: None,
            orientation: Orientation::Minus,
            scale: 1.0,
        })
    }
}

/// Points at `s = s1, s1 + 1, ..., s1 + count - 1`.
pub fn lattice_points(spec: &LatticeSpec, s1: f64, count: usize) -> Result<Vec<LatticePoint>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    if !s1.is_finite() {
        return Err(Error::InvalidInput("s1 must be finite".into()));
    }
    if spec.conic.a * spec.conic.c == 0.0 {
        return Err(Error::DegenerateConic(
            "AC = 0: the two-ordinate parametrization does not apply".into(),
        ));
    }
    (0..count).map(|k| spec.point(s1 + k as f64)).collect()
}

/// The two roots in `y` of the conic over abscissa `x`, ordered by real part.
pub fn companion_roots(conic: &Conic, x: f64) -> Result<(Complex64, Complex64)> {
    if conic.a == 0.0 {
        return Err(Error::LinearInY);
    }
    let half_b = conic.b * x + conic.d;
    let c0 = conic.c * x * x + 2.0 * conic.e * x + conic.f;
    let disc = half_b * half_b - conic.a * c0;
    let (r1, r2) = if disc >= 0.0 {
        let t = -(half_b + half_b.signum() * disc.sqrt());
        let t = if half_b == 0.0 { disc.sqrt() } else { t };
        if t == 0.0 {
            (0.0, 0.0)
        } else {
            (t / conic.a, c0 / t)
        }
    } else {
        let re = -half_b / conic.a;
        let im = (-disc).sqrt() / conic.a.abs();
        return Ok((Complex64::new(re, -im), Complex64::new(re, im)));
    };
    let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    Ok((Complex64::new(lo, 0.0), Complex64::new(hi, 0.0)))
}
