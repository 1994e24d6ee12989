//! Contour families for the deformed Bromwich integral.
//!
//! Two Hankel-shaped families are supported, both parameterized over
//! `theta` in `[-pi, pi]` and scaled by `N/t` when nodes are generated:
//!
//! * cotangent: `zeta(theta) = -sigma + mu * theta * cot(alpha * theta) + i * nu * theta`
//! * rational:  `zeta(theta) = a + b * theta^2 / (theta^2 - d * pi^2) + i * e * theta`
//!
//! With `0 < alpha < 1` the cotangent contour is truncated: its endpoints
//! stay finite instead of running to `Re z = -inf`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Below this value of `|alpha * theta|` the product `theta * cot(alpha * theta)`
/// is evaluated by its Taylor series to avoid 0/0 cancellation; midpoint nodes
/// approach `theta = 0` as N grows.
const COT_SERIES_THRESHOLD: f64 = 1e-2;

/// Contour coefficients at the `zeta` level. The `N/t` scaling is applied
/// only when generating nodes, so one parameter set describes the contour
/// shape for every `(N, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourParams {
    /// Truncated cotangent contour.
    Cotangent {
        sigma: f64,
        mu: f64,
        nu: f64,
        alpha: f64,
    },
    /// Rational contour; the pole of the rational term sits at
    /// `theta = +/- sqrt(d) * pi`, outside `[-pi, pi]` for `d > 1`.
    Rational { a: f64, b: f64, d: f64, e: f64 },
}

/// Which contour family a parameter set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourKind {
    Cotangent,
    Rational,
}

impl ContourParams {
    /// Validated cotangent parameter set: `0 < alpha <= 1`, `mu > 0`, `nu > 0`.
    pub fn cotangent(sigma: f64, mu: f64, nu: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "cotangent contour needs 0 < alpha <= 1, got {alpha}"
            )));
        }
        if !(mu > 0.0 && nu > 0.0) {
            return Err(Error::InvalidInput(format!(
                "cotangent contour needs mu > 0 and nu > 0, got mu = {mu}, nu = {nu}"
            )));
        }
        Ok(Self::Cotangent {
            sigma,
            mu,
            nu,
            alpha,
        })
    }

    /// Validated rational parameter set: `d > 1` keeps the pole off `[-pi, pi]`.
    pub fn rational(a: f64, b: f64, d: f64, e: f64) -> Result<Self> {
        if !(d.is_finite() && d > 1.0) {
            return Err(Error::InvalidInput(format!(
                "rational contour needs d > 1, got {d}"
            )));
        }
        Ok(Self::Rational { a, b, d, e })
    }

    pub fn kind(&self) -> ContourKind {
        match self {
            Self::Cotangent { .. } => ContourKind::Cotangent,
            Self::Rational { .. } => ContourKind::Rational,
        }
    }

    /// Contour point `zeta(theta)`. At `theta = 0` this is the removable
    /// limit: `-sigma + mu/alpha` (cotangent) or `a` (rational).
    pub fn zeta(&self, theta: Complex64) -> Result<Complex64> {
        match *self {
            Self::Cotangent {
                sigma,
                mu,
                nu,
                alpha,
            } => {
                let tcot = theta_cot(theta, alpha)?;
                Ok(-sigma + mu * tcot + Complex64::I * nu * theta)
            }
            Self::Rational { a, b, d, e } => {
                let den = theta * theta - d * PI * PI;
                if den.norm() <= 1e-14 * (theta.norm_sqr() + d * PI * PI) {
                    return Err(Error::ContourPole { theta });
                }
                Ok(a + b * theta * theta / den + Complex64::I * e * theta)
            }
        }
    }

    /// Analytic derivative `zeta'(theta)`; the `theta -> 0` limit is `i*nu`
    /// (cotangent) or `i*e` (rational).
    pub fn zeta_prime(&self, theta: Complex64) -> Result<Complex64> {
        match *self {
            Self::Cotangent {
                sigma: _,
                mu,
                nu,
                alpha,
            } => {
                let dtcot = theta_cot_derivative(theta, alpha)?;
                Ok(mu * dtcot + Complex64::I * nu)
            }
            Self::Rational { a: _, b, d, e } => {
                let den = theta * theta - d * PI * PI;
                if den.norm() <= 1e-14 * (theta.norm_sqr() + d * PI * PI) {
                    return Err(Error::ContourPole { theta });
                }
                Ok(-2.0 * b * d * PI * PI * theta / (den * den) + Complex64::I * e)
            }
        }
    }

    /// The contour apex `zeta(0)` as a real number.
    pub fn zeta_at_origin(&self) -> f64 {
        match *self {
            Self::Cotangent {
                sigma, mu, alpha, ..
            } => -sigma + mu / alpha,
            Self::Rational { a, .. } => a,
        }
    }

    /// Midpoint node set for the `N`-panel rule at time `t`, with
    /// `z = (N/t) * zeta(theta_k)` and `dz = (N/t) * zeta'(theta_k)`.
    pub fn nodes(&self, n: usize, t: f64) -> Result<NodeSet> {
        if n < 1 {
            return Err(Error::InvalidInput(format!("need N >= 1, got {n}")));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidInput(format!("need finite t > 0, got {t}")));
        }
        let scale = n as f64 / t;
        let n_i = n as i64;
        // theta_k = -pi + (k - 1/2) * 2pi/N = pi * (2k - 1 - N) / N for k = 1..N.
        // The integer numerator makes the set exactly antisymmetric and puts the
        // odd-N middle node at exactly 0.0, so conjugate pairing is bit-exact.
        let thetas: Vec<f64> = (0..n_i)
            .map(|k| PI * ((2 * k + 1 - n_i) as f64) / n as f64)
            .collect();
        let mut z = vec![Complex64::ZERO; n];
        let mut dz = vec![Complex64::ZERO; n];
        for k in 0..n {
            let numer = 2 * k as i64 + 1 - n_i;
            if numer < 0 {
                continue; // filled by conjugation from the mirror node
            }
            let theta = Complex64::new(thetas[k], 0.0);
            z[k] = scale * self.zeta(theta)?;
            dz[k] = scale * self.zeta_prime(theta)?;
            if numer > 0 {
                let m = n - 1 - k;
                z[m] = z[k].conj();
                dz[m] = -dz[k].conj();
            }
        }
        Ok(NodeSet {
            n,
            t,
            thetas,
            z,
            dz,
        })
    }
}

/// `theta * cot(alpha * theta)` with a series switch near the removable
/// singularity at 0: `1/alpha - alpha theta^2/3 - alpha^3 theta^4/45 - ...`.
fn theta_cot(theta: Complex64, alpha: f64) -> Result<Complex64> {
    let u = alpha * theta;
    if u.norm() < COT_SERIES_THRESHOLD {
        let u2 = u * u;
        Ok((1.0 - u2 / 3.0 - u2 * u2 / 45.0 - 2.0 * u2 * u2 * u2 / 945.0) / alpha)
    } else {
        let s = u.sin();
        if s.norm() <= 1e-14 * u.norm() {
            return Err(Error::ContourPole { theta });
        }
        Ok(theta * u.cos() / s)
    }
}

/// `d/dtheta [theta * cot(alpha * theta)] = cot(alpha theta) - alpha theta / sin^2(alpha theta)`,
/// series `-2 alpha theta/3 - 4 alpha^3 theta^3/45 - 4 alpha^5 theta^5/315 - ...` near 0.
fn theta_cot_derivative(theta: Complex64, alpha: f64) -> Result<Complex64> {
    let u = alpha * theta;
    if u.norm() < COT_SERIES_THRESHOLD {
        let t2 = theta * theta;
        let a2 = alpha * alpha;
        Ok(-2.0 * alpha * theta / 3.0
            - 4.0 * a2 * alpha * t2 * theta / 45.0
            - 4.0 * a2 * a2 * alpha * t2 * t2 * theta / 315.0)
    } else {
        let s = u.sin();
        if s.norm() <= 1e-14 * u.norm() {
            return Err(Error::ContourPole { theta });
        }
        Ok(u.cos() / s - u / (s * s))
    }
}

/// Midpoint nodes of one contour at a given `(N, t)`, immutable after
/// construction. Mirror nodes satisfy `z[N-1-k] = conj(z[k])` and
/// `dz[N-1-k] = -conj(dz[k])` exactly, by construction.
#[derive(Debug, Clone)]
pub struct NodeSet {
    pub n: usize,
    pub t: f64,
    pub thetas: Vec<f64>,
    pub z: Vec<Complex64>,
    pub dz: Vec<Complex64>,
}
