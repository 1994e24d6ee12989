//! Test transform suite with independent reference inverses.
//!
//! * `f1`: `1/(z + lambda)`, the model transform (inverse `exp(-lambda t)`),
//!   and its matrix analogue in [`heat`].
//! * `f2`: `(100 z - 1) sinh(sqrt(z)/2) / (z (z sinh(sqrt z) + sqrt(z) cosh(sqrt z)))`,
//!   a transform with infinitely many poles on the negative real axis. Its
//!   reference inverse is an independent residue series.
//! * `f3`: `(1/z) exp(-r sqrt(z (1 + z) / (1 + c z)))`, with a pole, branch
//!   points, and an essential singularity, all on the negative real axis.
//!   Its reference is certified by cross-checking two unrelated contours.

pub mod heat;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params;
use crate::quadrature::{invert, Transform};
use crate::roundoff::RoundoffModel;

/// Agreement required between two independent contour evaluations before a
/// computed reference value is accepted.
const CERTIFY_LIMIT: f64 = 1e-10;

/// `F1(z; lambda) = 1/(z + lambda)`.
pub fn eval_f1(z: Complex64, lambda: f64) -> Result<Complex64> {
    let den = z + lambda;
    if den == Complex64::ZERO {
        return Err(Error::InvalidInput(format!("pole of F1 at z = {z}")));
    }
    Ok(1.0 / den)
}

/// Exact inverse of `f1`: `exp(-lambda t)`.
pub fn reference_f1(t: f64, lambda: f64) -> f64 {
    (-lambda * t).exp()
}

/// `F2(z) = (100 z - 1) sinh(sqrt(z)/2) / (z (z sinh(sqrt z) + sqrt z cosh(sqrt z)))`.
///
/// The square roots cancel structurally, so the value does not depend on
/// the branch chosen. Near the origin the hyperbolic functions are
/// replaced by their series in `z`, which removes the apparent `sqrt`
/// singularity and the cancellation next to the `z = 0` pole.
pub fn eval_f2(z: Complex64) -> Result<Complex64> {
    if z == Complex64::ZERO {
        return Err(Error::InvalidInput("pole of F2 at z = 0".into()));
    }
    if z.norm() < 1e-4 {
        // sinh(sqrt(z)/2)/sqrt(z) and (z sinh(sqrt z) + sqrt z cosh(sqrt z))/sqrt(z)
        // expanded in z; truncation error is far below binary64 resolution here
        let s = 0.5 + z / 48.0 + z * z / 3840.0 + z * z * z / 645_120.0;
        let d = 1.0
            + 1.5 * z
            + 5.0 / 24.0 * z * z
            + 7.0 / 720.0 * z * z * z
            + 9.0 / 40_320.0 * z * z * z * z;
        return Ok((100.0 * z - 1.0) * s / (z * d));
    }
    let w = z.sqrt();
    let den = z * (z * w.sinh() + w * w.cosh());
    if den == Complex64::ZERO {
        return Err(Error::InvalidInput(format!("pole of F2 at z = {z}")));
    }
    Ok((100.0 * z - 1.0) * (0.5 * w).sinh() / den)
}

/// `F3(z; c, r) = (1/z) exp(-r sqrt(z (1 + z) / (1 + c z)))`.
///
/// The root is evaluated as `sqrt(z) * sqrt(1 + z) / sqrt(1 + c z)` with
/// principal branches; each factor's cut lies in `(-inf, 0]`, so the
/// product is analytic off the negative real axis and positive for real
/// positive `z`.
pub fn eval_f3(z: Complex64, c: f64, r: f64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "F3 is evaluated off the cut (-inf, 0], got z = {z}"
        )));
    }
    let root = z.sqrt() * (1.0 + z).sqrt() / (1.0 + c * z).sqrt();
    Ok((-r * root).exp() / z)
}

pub fn f1_transform(lambda: f64) -> Transform<'static> {
    Transform::scalar(move |z| eval_f1(z, lambda))
}

pub fn f2_transform() -> Transform<'static> {
    Transform::scalar(eval_f2)
}

pub fn f3_transform(c: f64, r: f64) -> Transform<'static> {
    Transform::scalar(move |z| eval_f3(z, c, r))
}

/// Positive root `x_n` of `cos x = x sin x` in `(n pi, n pi + pi/2)`;
/// `z_n = -x_n^2` are the nonzero poles of `f2`.
fn f2_pole_root(n: usize) -> f64 {
    let g = |x: f64| x.cos() - x * x.sin();
    let mut lo = n as f64 * PI + if n == 0 { 1e-9 } else { 1e-12 };
    let mut hi = n as f64 * PI + PI / 2.0 - 1e-12;
    debug_assert!(g(lo) * g(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(lo) * g(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Residue of `exp(z t) F2(z)` at a simple pole `z0`, computed by
/// averaging over a small circle: `(1/M) sum_m f(z0 + rho e^{i phi_m}) rho e^{i phi_m}`
/// (the trapezoidal rule applied to the Cauchy integral).
fn f2_residue(z0: f64, rho: f64, t: f64) -> Result<f64> {
    const M: usize = 64;
    let mut sum = Complex64::ZERO;
    for m in 0..M {
        let phi = 2.0 * PI * (m as f64 + 0.5) / M as f64;
        let dir = Complex64::from_polar(rho, phi);
        let z = z0 + dir;
        sum += (z * t).exp() * eval_f2(z)? * dir;
    }
    Ok((sum / M as f64).re)
}

/// Independent residue-series inverse of `f2`, truncated after `n_poles`
/// nonzero poles (plus the pole at the origin).
pub fn reference_f2_truncated(t: f64, n_poles: usize) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidInput(format!("need t > 0, got {t}")));
    }
    // the exponential factor must not vary wildly over a residue circle
    let rho_cap = 2.0 / t.max(1.0);
    let mut total = f2_residue(0.0, 0.2f64.min(rho_cap), t)?;
    for n in 0..n_poles {
        let x = f2_pole_root(n);
        let base = if n == 0 { 0.3 } else { (0.4 * x).min(2.0) };
        total += f2_residue(-x * x, base.min(rho_cap), t)?;
    }
    Ok(total)
}

/// Reference inverse of `f2` as a residue series over the poles on the
/// negative real axis, truncated once the terms fall below the series
/// floor. Rapidly convergent for `t` of order `0.1` and larger.
pub fn reference_f2(t: f64) -> Result<f64> {
    const MAX_POLES: usize = 400;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidInput(format!("need t > 0, got {t}")));
    }
    let rho_cap = 2.0 / t.max(1.0);
    let mut total = f2_residue(0.0, 0.2f64.min(rho_cap), t)?;
    for n in 0..MAX_POLES {
        let x = f2_pole_root(n);
        let base = if n == 0 { 0.3 } else { (0.4 * x).min(2.0) };
        let term = f2_residue(-x * x, base.min(rho_cap), t)?;
        total += term;
        if n >= 3 && term.abs() < 1e-16 * total.abs().max(1.0) {
            return Ok(total);
        }
    }
    // terms decay like exp(-x_n^2 t); estimate the smallest workable t
    let x_cap = MAX_POLES as f64 * PI;
    Err(Error::SeriesDiverged {
        t,
        t_min: 37.0 / (x_cap * x_cap),
    })
}

/// Reference inverse of `f3`, certified by agreement between two
/// independent contour families.
///
/// The primary construction inverts on the stabilized rational contour at
/// N = 36 and cross-checks the cotangent contour at N = 30. For transforms
/// with a strongly inflated truncation constant (large `r`) that pair can
/// fall short of certification; the fallback then locates each family's
/// own convergence plateau from successive differences (no reference
/// needed) and certifies the two plateau values against each other.
pub fn reference_f3(t: f64, c: f64, r: f64) -> Result<f64> {
    let transform = f3_transform(c, r);
    let model = RoundoffModel::default();

    let (rat, _) = model.stabilized_rational(36)?;
    let v_rat = invert(&transform, &rat, 36, t)?
        .value
        .as_scalar()
        .expect("scalar transform");
    let (cot, _) = params::optimized_cotangent();
    let v_cot = invert(&transform, &cot, 30, t)?
        .value
        .as_scalar()
        .expect("scalar transform");
    let rel = (v_rat - v_cot).abs() / v_rat.abs().max(f64::MIN_POSITIVE);
    if rel <= CERTIFY_LIMIT {
        return Ok(v_rat);
    }

    let plateau = |params: &crate::contour::ContourParams| -> Result<f64> {
        let values: Vec<f64> = (3..=30)
            .map(|half| {
                invert(&transform, params, 2 * half, t)
                    .map(|r| r.value.as_scalar().expect("scalar transform"))
            })
            .collect::<Result<_>>()?;
        let best = values
            .windows(2)
            .enumerate()
            .min_by(|a, b| (a.1[1] - a.1[0]).abs().total_cmp(&(b.1[1] - b.1[0]).abs()))
            .map(|(i, _)| i + 1)
            .expect("at least two sweep values");
        Ok(values[best])
    };
    let p_cot = plateau(&cot)?;
    let (rat_fixed, _) = params::optimized_rational();
    let p_rat = plateau(&rat_fixed)?;
    let rel = (p_cot - p_rat).abs() / p_cot.abs().max(f64::MIN_POSITIVE);
    if rel <= CERTIFY_LIMIT {
        // the mean keeps the reference from coinciding bit-for-bit with a
        // single family's sweep value, which would pin one error at zero
        Ok(0.5 * (p_cot + p_rat))
    } else {
        Err(Error::CertificationFailed {
            rel,
            limit: CERTIFY_LIMIT,
        })
    }
}
