//! Roundoff error control for large node counts.
//!
//! With the optimized contour fixed, the midpoint sum loses accuracy once
//! N is large enough that the apex term `exp(z(0) t) = exp(N zeta(0))`
//! amplifies unit roundoff past the truncation error. The two error
//! scales meet where
//!
//! ```text
//! c + zeta(0) + log(eps / k0) / N = 0,
//! ```
//!
//! `k0` being the ratio of the two implied constants. Beyond the critical
//! node count `N*` this module re-derives the contour per N: `alpha` stays
//! frozen at its optimal value and `c` is solved from the balance equation,
//! which pulls the apex back toward the origin and keeps errors at the
//! roundoff floor.

use crate::contour::ContourParams;
use crate::error::{Error, Result};
use crate::params::{self, OPTIMAL_ALPHA, OPTIMAL_DECAY_RATE, RATIONAL_D, RATIONAL_DECAY_RATE};
use crate::quadrature::ParamSource;

/// Unit roundoff of binary64 as used throughout the roundoff model.
pub const UNIT_ROUNDOFF: f64 = 2.2e-16;

/// Roundoff model: precision, implied-constant ratio, critical node count,
/// and the frozen contour shape parameter.
#[derive(Debug, Clone, Copy)]
pub struct RoundoffModel {
    pub epsilon: f64,
    pub k0: f64,
    pub n_star: usize,
    pub alpha: f64,
}

impl Default for RoundoffModel {
    /// The default policy: `k0 = 1`, stabilized parameters from `N = 24` on.
    fn default() -> Self {
        Self::with_k0(1.0)
    }
}

impl RoundoffModel {
    /// Model for a given `k0`, with `N*` from the balance equation at the
    /// optimal contour constants (for `k0 = 1` this gives `N* = 24`).
    pub fn with_k0(k0: f64) -> Self {
        let n = critical_n(UNIT_ROUNDOFF, k0);
        Self {
            epsilon: UNIT_ROUNDOFF,
            k0,
            n_star: n.round().max(4.0) as usize,
            alpha: OPTIMAL_ALPHA,
        }
    }

    /// Model with an explicitly measured `N*` (see [`detect_n_star`]) and
    /// the `k0` estimated from it.
    pub fn from_detected(n_star: usize, params: &ContourParams, c: f64) -> Self {
        Self {
            epsilon: UNIT_ROUNDOFF,
            k0: estimate_k0(n_star, params, c, UNIT_ROUNDOFF),
            n_star,
            alpha: OPTIMAL_ALPHA,
        }
    }

    /// Stabilized cotangent parameters for `n >= n_star`: solves the
    /// balance equation for `c` (with `zeta(0) = -sigma + mu/alpha` itself
    /// a function of `c` through the closed form) and rebuilds the contour
    /// at the frozen `alpha`.
    pub fn stabilized_params(&self, n: usize) -> Result<(ContourParams, f64)> {
        if n < self.n_star {
            return Err(Error::InvalidInput(format!(
                "stabilized parameters are for N >= N* = {}, got N = {n}",
                self.n_star
            )));
        }
        let log_term = (self.epsilon / self.k0).ln() / n as f64;
        let zeta0 = |c: f64| -> Result<f64> {
            let (sigma, mu, _) = params::closed_form_smn(self.alpha, c)?;
            Ok(-sigma + mu / self.alpha)
        };
        let c = solve_balance(
            |c| Ok(c + zeta0(c)? + log_term),
            OPTIMAL_DECAY_RATE,
            "stabilized cotangent decay rate",
        )?;
        Ok((params::closed_form_params(self.alpha, c)?, c))
    }

    /// Stabilized rational parameters for `n >= n_star`, the same balance
    /// solve with `d` frozen and `zeta(0) = a(d, c)` from the linear
    /// constraint system.
    pub fn stabilized_rational(&self, n: usize) -> Result<(ContourParams, f64)> {
        if n < self.n_star {
            return Err(Error::InvalidInput(format!(
                "stabilized parameters are for N >= N* = {}, got N = {n}",
                self.n_star
            )));
        }
        let log_term = (self.epsilon / self.k0).ln() / n as f64;
        let c = solve_balance(
            |c| {
                let p = params::rational_from_constraints(RATIONAL_D, c)?;
                Ok(c + p.zeta_at_origin() + log_term)
            },
            RATIONAL_DECAY_RATE,
            "stabilized rational decay rate",
        )?;
        Ok((params::rational_from_constraints(RATIONAL_D, c)?, c))
    }

    /// The sweep policy used in practice: the optimized contour below
    /// `N*`, stabilized parameters from `N*` on. A missing bracket means
    /// truncation still dominates at that N for this family (the two
    /// critical counts differ by about one), so the unmodified contour is
    /// kept rather than reporting a failure.
    pub fn cotangent_source(self) -> impl ParamSource {
        move |n: usize| {
            if n >= self.n_star {
                match self.stabilized_params(n) {
                    Err(Error::RootFindFailed { .. }) => Ok(params::optimized_cotangent()),
                    other => other,
                }
            } else {
                Ok(params::optimized_cotangent())
            }
        }
    }

    /// Rational-contour version of [`Self::cotangent_source`].
    pub fn rational_source(self) -> impl ParamSource {
        move |n: usize| {
            if n >= self.n_star {
                match self.stabilized_rational(n) {
                    Err(Error::RootFindFailed { .. }) => Ok(params::optimized_rational()),
                    other => other,
                }
            } else {
                Ok(params::optimized_rational())
            }
        }
    }
}

/// Real solution N of the balance equation at the optimal contour
/// constants for a given `(epsilon, k0)`.
fn critical_n(epsilon: f64, k0: f64) -> f64 {
    let (p, c) = params::optimized_cotangent();
    -(epsilon / k0).ln() / (c + p.zeta_at_origin())
}

/// Critical node count for `d` decimal digits of working precision:
/// solves the balance equation with `epsilon = 10^-d`. The result is
/// close to `1.5 d`.
pub fn critical_n_for_precision(digits: f64, k0: f64) -> Result<f64> {
    if !(digits.is_finite() && digits >= 4.0) {
        return Err(Error::InvalidInput(format!(
            "need at least 4 digits, got {digits}"
        )));
    }
    if !(k0.is_finite() && k0 > 0.0) {
        return Err(Error::InvalidInput(format!("need k0 > 0, got {k0}")));
    }
    Ok(critical_n(10f64.powf(-digits), k0))
}

/// Estimate `k0` from a measured critical node count: at `N = N*` the
/// truncation and roundoff estimates balance, so
/// `k0 = eps * exp(N* (c + zeta(0)))`.
pub fn estimate_k0(n_star: usize, params: &ContourParams, c: f64, epsilon: f64) -> f64 {
    epsilon * ((n_star as f64) * (c + params.zeta_at_origin())).exp()
}

/// Locate the convergence turn in a measured error curve.
///
/// The curve is smoothed with a 3-point running median (raw floors
/// oscillate), and the turn is confirmed when at least two samples follow
/// the smoothed minimum and the tail rises strictly above it; a monotone
/// decreasing curve is reported as [`Error::NoTurnDetected`]. Because
/// curves that hit the roundoff floor stay flat to within quantized
/// noise, `N*` is taken as the first N whose smoothed error is within a
/// small factor of the minimum (the knee), not the literal argmin of the
/// flat tail.
pub fn detect_n_star(errors: &[(usize, f64)]) -> Result<usize> {
    // Floors are quantized at the ulp of the inverted value, so a small
    // factor sits razor-edge between adjacent quantization levels; 5 keeps
    // a ~2x margin on measured curves while staying inside one knee step.
    const KNEE_FACTOR: f64 = 5.0;
    if errors.len() < 6 {
        return Err(Error::InvalidInput(format!(
            "need at least 6 sweep points, got {}",
            errors.len()
        )));
    }
    if errors.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::InvalidInput(
            "sweep points must be sorted by N".into(),
        ));
    }
    if errors.iter().any(|e| !e.1.is_finite() || e.1 < 0.0) {
        return Err(Error::InvalidInput(
            "error curve must be finite and non-negative".into(),
        ));
    }
    let n = errors.len();
    let smoothed: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                errors[i].1
            } else {
                median3(errors[i - 1].1, errors[i].1, errors[i + 1].1)
            }
        })
        .collect();
    let i_min = smoothed
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    let tail_max = smoothed[i_min + 1..].iter().fold(0.0f64, |m, &v| m.max(v));
    if i_min + 2 >= n || tail_max <= smoothed[i_min] {
        return Err(Error::NoTurnDetected);
    }
    // an isolated exact zero survives neither the median nor this scale
    let scale = if smoothed[i_min] > 0.0 {
        smoothed[i_min]
    } else {
        smoothed
            .iter()
            .copied()
            .filter(|&v| v > 0.0)
            .fold(f64::INFINITY, f64::min)
    };
    let knee = (0..=i_min)
        .find(|&i| smoothed[i] <= KNEE_FACTOR * scale)
        .unwrap_or(i_min);
    Ok(errors[knee].0)
}

fn median3(a: f64, b: f64, c: f64) -> f64 {
    a.max(b).min(a.max(c)).min(b.max(c))
}

/// Bracketed bisection on `g(c) = 0` over `(0, c_max]`, then a Newton
/// polish. `g` is monotone increasing in `c` on this range.
fn solve_balance(g: impl Fn(f64) -> Result<f64>, c_max: f64, what: &'static str) -> Result<f64> {
    let mut lo = 1e-10;
    let mut hi = c_max;
    let g_hi = g(hi)?;
    if !(g_hi.is_finite() && g_hi > 0.0) {
        return Err(Error::RootFindFailed { what, lo, hi });
    }
    if g(lo)? >= 0.0 {
        return Err(Error::RootFindFailed { what, lo, hi });
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut c = 0.5 * (lo + hi);
    // Newton polish with a central-difference derivative
    for _ in 0..4 {
        let h = 1e-7 * c.max(1e-3);
        let gc = g(c)?;
        let dg = (g(c + h)? - g(c - h)?) / (2.0 * h);
        if dg <= 0.0 {
            break;
        }
        let next = c - gc / dg;
        if next > lo && next < hi {
            c = next;
        } else {
            break;
        }
    }
    Ok(c)
}
