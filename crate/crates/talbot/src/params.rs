//! Contour parameter derivation from first principles.
//!
//! For the cotangent family the three upper-half-plane analyticity
//! conditions
//!
//! ```text
//! zeta(i c) = 0,    zeta'(i c) = 0,    Re zeta(pi) = -c
//! ```
//!
//! admit a closed form for `(sigma, mu, nu)` in terms of `(alpha, c)`.
//! The remaining freedom is fixed by forcing the lower error contour
//! through its two saddle points `theta = +/- x_s + i y_s`:
//!
//! ```text
//! Re zeta'(theta_s) = 0,    Im zeta'(theta_s) = 1,    Re zeta(theta_s) + y_s = -c
//! ```
//!
//! which is solved by damped Newton iteration, and `c` is maximized over
//! `alpha` by golden-section search. The same strategy applied to the
//! rational family `a + b theta^2/(theta^2 - d pi^2) + i e theta` (whose
//! analyticity conditions are linear in `(a, b, e)` once `(d, c)` are
//! fixed) yields the rational contour constants.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::contour::ContourParams;
use crate::error::{Error, Result};

/// Shape parameter of the optimized cotangent contour.
pub const OPTIMAL_ALPHA: f64 = 0.6407;
/// Quadrature decay rate of the optimized cotangent contour:
/// the error behaves like `O(exp(-c N))` with this `c`.
pub const OPTIMAL_DECAY_RATE: f64 = 1.3580;
/// Pole placement parameter of the optimized rational contour.
pub const RATIONAL_D: f64 = 3.0767;
/// Decay rate of the optimized rational contour.
pub const RATIONAL_DECAY_RATE: f64 = 1.311;

/// Saddle locations are sought only for `alpha` in this window; outside it
/// the Newton iteration is known (by direct probing) to diverge or to land
/// on spurious branches, and solutions are only proven to exist on a
/// narrower inner interval.
pub const ALPHA_SOLVABLE: (f64, f64) = (0.45, 0.90);
/// Inner interval scanned by the `c`-maximization.
pub const ALPHA_SEARCH: (f64, f64) = (0.51, 0.82);

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;
const JACOBIAN_STEP: f64 = 1e-7;
const GOLDEN_TOL: f64 = 1e-6;
const DEFAULT_GUESS: [f64; 3] = [3.4, -2.3, 1.3];

/// One solution of the saddle system: the induced contour, its decay rate
/// `c`, and the `x_s > 0` saddle location.
#[derive(Debug, Clone, Copy)]
pub struct SaddleSolution {
    pub params: ContourParams,
    pub c: f64,
    pub saddle: Complex64,
}

/// The optimized cotangent contour and its decay rate, reconstructed from
/// the closed form at the published `(alpha, c)` so that the analyticity
/// constraints hold to machine precision.
pub fn optimized_cotangent() -> (ContourParams, f64) {
    let params = closed_form_params(OPTIMAL_ALPHA, OPTIMAL_DECAY_RATE)
        .expect("optimal (alpha, c) is a regular configuration");
    (params, OPTIMAL_DECAY_RATE)
}

/// The optimized rational contour and its decay rate, reconstructed from
/// the linear constraint solve at the published `(d, c)`.
pub fn optimized_rational() -> (ContourParams, f64) {
    let params = rational_from_constraints(RATIONAL_D, RATIONAL_DECAY_RATE)
        .expect("optimal (d, c) is a regular configuration");
    (params, RATIONAL_DECAY_RATE)
}

/// Closed-form `(sigma, mu, nu)` for the cotangent family at `(alpha, c)`:
///
/// ```text
/// sigma = 2 alpha c^2 B,   mu = 2 sinh^2(alpha c) B,   nu = (sinh(2 alpha c) - 2 alpha c) B,
/// B = c sin^2(alpha pi) / (2 alpha c^2 sin^2(alpha pi) - pi sin(2 alpha pi) sinh^2(alpha c))
/// ```
pub fn closed_form_smn(alpha: f64, c: f64) -> Result<(f64, f64, f64)> {
    if !(alpha > 0.0 && alpha < 1.0 && c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "closed form needs 0 < alpha < 1 and c > 0, got ({alpha}, {c})"
        )));
    }
    let sin_api = (alpha * PI).sin();
    let sinh_ac = (alpha * c).sinh();
    let lhs = 2.0 * alpha * c * c * sin_api * sin_api;
    let rhs = PI * (2.0 * alpha * PI).sin() * sinh_ac * sinh_ac;
    let den = lhs - rhs;
    if den.abs() <= 1e-13 * (lhs.abs() + rhs.abs()) {
        return Err(Error::SingularConfiguration { alpha, c });
    }
    let b = c * sin_api * sin_api / den;
    let sigma = 2.0 * alpha * c * c * b;
    let mu = 2.0 * sinh_ac * sinh_ac * b;
    let nu = ((2.0 * alpha * c).sinh() - 2.0 * alpha * c) * b;
    Ok((sigma, mu, nu))
}

/// Closed-form coefficients packaged as a validated contour.
pub fn closed_form_params(alpha: f64, c: f64) -> Result<ContourParams> {
    let (sigma, mu, nu) = closed_form_smn(alpha, c)?;
    ContourParams::cotangent(sigma, mu, nu, alpha)
}

/// Rational-family `(a, b, e)` from the three analyticity conditions at
/// `(d, c)`. With `theta = i c`:
///
/// ```text
/// a + b c^2/(c^2 + d pi^2) - e c          = 0      (zeta(ic) = 0)
/// e - 2 b d pi^2 c/(c^2 + d pi^2)^2       = 0      (zeta'(ic) = 0)
/// a + b/(1 - d)                           = -c     (Re zeta(pi) = -c)
/// ```
pub fn rational_from_constraints(d: f64, c: f64) -> Result<ContourParams> {
    if !(d > 1.0 && c > 0.0) {
        return Err(Error::InvalidInput(format!(
            "rational constraints need d > 1 and c > 0, got ({d}, {c})"
        )));
    }
    let p2 = PI * PI;
    let m = Matrix3::new(
        1.0,
        c * c / (c * c + d * p2),
        -c,
        0.0,
        -2.0 * d * p2 * c / ((c * c + d * p2) * (c * c + d * p2)),
        1.0,
        1.0,
        1.0 / (1.0 - d),
        0.0,
    );
    let rhs = Vector3::new(0.0, 0.0, -c);
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularConfiguration { alpha: d, c })?;
    ContourParams::rational(sol[0], sol[1], d, sol[2])
}

/// Residuals of the saddle system at `(x_s, y_s)` for the cotangent contour
/// induced by `(alpha, c)`:
/// `r1 = Re zeta'(theta_s)`, `r2 = Im zeta'(theta_s) - 1`,
/// `r3 = Re zeta(theta_s) + y_s + c`.
pub fn saddle_residual(alpha: f64, c: f64, x_s: f64, y_s: f64) -> Result<[f64; 3]> {
    let params = closed_form_params(alpha, c)?;
    residual_for(&params, c, x_s, y_s)
}

fn residual_for(params: &ContourParams, c: f64, x_s: f64, y_s: f64) -> Result<[f64; 3]> {
    let theta = Complex64::new(x_s, y_s);
    let dz = params.zeta_prime(theta)?;
    let z = params.zeta(theta)?;
    Ok([dz.re, dz.im - 1.0, z.re + y_s + c])
}

/// The family being solved by the shared Newton driver.
#[derive(Clone, Copy)]
enum Family {
    Cotangent { alpha: f64 },
    Rational { d: f64 },
}

impl Family {
    fn build(&self, c: f64) -> Result<ContourParams> {
        match *self {
            Family::Cotangent { alpha } => closed_form_params(alpha, c),
            Family::Rational { d } => rational_from_constraints(d, c),
        }
    }

    fn residual(&self, x: &[f64; 3]) -> Result<[f64; 3]> {
        let [x_s, y_s, c] = *x;
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::OutOfRange {
                what: "saddle iterate",
                detail: format!("c = {c} left (0, inf)"),
            });
        }
        let params = self.build(c)?;
        residual_for(&params, c, x_s, y_s)
    }

    /// Bound on |x_s|: the nearest real pole of the contour formula.
    fn strip_limit(&self) -> f64 {
        match *self {
            Family::Cotangent { alpha } => PI / alpha,
            Family::Rational { d } => d.sqrt() * PI,
        }
    }
}

fn norm_inf(r: &[f64; 3]) -> f64 {
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Damped Newton iteration with a central-difference Jacobian on the
/// three-equation saddle system. Unknowns are `(x_s, y_s, c)`.
fn newton_saddle(family: Family, guess: [f64; 3]) -> Result<[f64; 3]> {
    let mut x = guess;
    let mut r = family.residual(&x)?;
    for _ in 0..NEWTON_MAX_ITER {
        if norm_inf(&r) < NEWTON_TOL {
            // take the x_s > 0 saddle; the mirrored one is equivalent
            if x[0] < 0.0 {
                x[0] = -x[0];
            }
            return Ok(x);
        }
        let mut jac = Matrix3::zeros();
        for j in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[j] += JACOBIAN_STEP;
            xm[j] -= JACOBIAN_STEP;
            let rp = family.residual(&xp)?;
            let rm = family.residual(&xm)?;
            for i in 0..3 {
                jac[(i, j)] = (rp[i] - rm[i]) / (2.0 * JACOBIAN_STEP);
            }
        }
        let rhs = Vector3::new(-r[0], -r[1], -r[2]);
        let step = jac.lu().solve(&rhs).ok_or(Error::NoConvergence {
            what: "saddle Newton (singular Jacobian)",
            iterations: NEWTON_MAX_ITER,
            residual: norm_inf(&r),
        })?;
        let mut damping = 1.0;
        loop {
            let trial = [
                x[0] + damping * step[0],
                x[1] + damping * step[1],
                x[2] + damping * step[2],
            ];
            match family.residual(&trial) {
                Ok(rt) if norm_inf(&rt) < norm_inf(&r) || damping < 1e-4 => {
                    x = trial;
                    r = rt;
                    break;
                }
                Ok(_) => damping *= 0.5,
                Err(_) if damping >= 1e-4 => damping *= 0.5,
                Err(e) => return Err(e),
            }
        }
        if x[1] >= 0.0 || x[0].abs() >= family.strip_limit() {
            return Err(Error::OutOfRange {
                what: "saddle iterate",
                detail: format!(
                    "(x_s, y_s) = ({}, {}) left the admissible strip",
                    x[0], x[1]
                ),
            });
        }
    }
    Err(Error::NoConvergence {
        what: "saddle Newton",
        iterations: NEWTON_MAX_ITER,
        residual: norm_inf(&r),
    })
}

/// Reject converged iterates that are not the genuine `x_s > 0` branch
/// (a spurious purely-imaginary-axis root exists for small `alpha`) and
/// package the solution.
fn validated_solution(family: Family, x: [f64; 3]) -> Result<SaddleSolution> {
    let [x_s, y_s, c] = x;
    if x_s <= 1.0 {
        return Err(Error::OutOfRange {
            what: "saddle branch",
            detail: format!("converged to x_s = {x_s}, not the off-axis saddle"),
        });
    }
    let params = family.build(c)?;
    Ok(SaddleSolution {
        params,
        c,
        saddle: Complex64::new(x_s, y_s),
    })
}

fn solve_cotangent_at(alpha: f64, guess: [f64; 3]) -> Result<SaddleSolution> {
    let x = newton_saddle(Family::Cotangent { alpha }, guess)?;
    validated_solution(Family::Cotangent { alpha }, x)
}

/// Solve the saddle system for a fixed `alpha`.
///
/// Newton starts from `(3.4, -2.3, 1.3)`; if that diverges (it does near
/// the ends of the admissible window), the solver walks `alpha` from the
/// optimum outward in small steps, reusing each solution as the next
/// initial guess.
pub fn solve_saddle(alpha: f64) -> Result<SaddleSolution> {
    let (lo, hi) = ALPHA_SOLVABLE;
    if !(alpha >= lo && alpha <= hi) {
        return Err(Error::OutOfRange {
            what: "alpha",
            detail: format!("{alpha} outside the solvable window [{lo}, {hi}]"),
        });
    }
    if let Ok(sol) = solve_cotangent_at(alpha, DEFAULT_GUESS) {
        return Ok(sol);
    }
    // continuation walk from the optimum
    let mut guess = DEFAULT_GUESS;
    let start = OPTIMAL_ALPHA;
    let steps = ((alpha - start).abs() / 0.02).ceil().max(1.0) as usize;
    let mut sol = None;
    for k in 1..=steps {
        let a = start + (alpha - start) * k as f64 / steps as f64;
        let s = solve_cotangent_at(a, guess)?;
        guess = [s.saddle.re, s.saddle.im, s.c];
        sol = Some(s);
    }
    Ok(sol.expect("continuation took at least one step"))
}

/// Golden-section maximization with a final three-point parabolic
/// refinement. `f` must be unimodal on `[lo, hi]`.
fn golden_max(
    mut f: impl FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = f(x2)?;
        }
    }
    let xm = 0.5 * (a + b);
    let fm = f(xm)?;
    // parabolic refinement through (xm - h, xm, xm + h)
    let h = 2e-4;
    let (fp, fmn) = (f(xm + h)?, f(xm - h)?);
    let denom = fp - 2.0 * fm + fmn;
    if denom < 0.0 {
        let shift = 0.5 * h * (fmn - fp) / denom;
        if shift.abs() < h {
            let xr = xm + shift;
            let fr = f(xr)?;
            if fr > fm {
                return Ok((xr, fr));
            }
        }
    }
    Ok((xm, fm))
}

/// Maximize the decay rate `c(alpha)` over the search interval and return
/// the optimal cotangent solution (`alpha = 0.6407`, `c = 1.3580`).
pub fn optimize_alpha() -> Result<SaddleSolution> {
    let (lo, hi) = ALPHA_SEARCH;
    // continuation cache: nearest previously solved alpha seeds the next solve
    let mut cache: Vec<(f64, [f64; 3])> = vec![(OPTIMAL_ALPHA, DEFAULT_GUESS)];
    let mut c_of = |alpha: f64| -> Result<f64> {
        let nearest = cache
            .iter()
            .min_by(|p, q| (p.0 - alpha).abs().total_cmp(&(q.0 - alpha).abs()))
            .expect("cache is never empty")
            .1;
        let sol = solve_cotangent_at(alpha, nearest).or_else(|_| solve_saddle(alpha))?;
        cache.push((alpha, [sol.saddle.re, sol.saddle.im, sol.c]));
        Ok(sol.c)
    };
    let (alpha_star, _) = golden_max(&mut c_of, lo, hi, GOLDEN_TOL)?;
    solve_saddle(alpha_star)
}

fn solve_rational_at(d: f64, guess: [f64; 3]) -> Result<SaddleSolution> {
    let x = newton_saddle(Family::Rational { d }, guess)?;
    validated_solution(Family::Rational { d }, x)
}

/// Apply the cotangent strategy to the rational family: solve `(a, b, e)`
/// from the analyticity conditions given `(d, c)`, drive `(x_s, y_s, c)`
/// through the saddle conditions, and maximize `c` over `d`. Reproduces
/// the rational contour constants `(a, b, d, e) = (0.1446, 3.0232, 3.0767, 0.2339)`
/// with `c = 1.311`.
pub fn derive_rational() -> Result<SaddleSolution> {
    let mut cache: Vec<(f64, [f64; 3])> = vec![(3.0, DEFAULT_GUESS)];
    let mut c_of = |d: f64| -> Result<f64> {
        let nearest = cache
            .iter()
            .min_by(|p, q| (p.0 - d).abs().total_cmp(&(q.0 - d).abs()))
            .expect("cache is never empty")
            .1;
        let sol = solve_rational_at(d, nearest)?;
        cache.push((d, [sol.saddle.re, sol.saddle.im, sol.c]));
        Ok(sol.c)
    };
    // c(d) is unimodal on this bracket (checked by scanning; the optimum
    // sits near d = 3.08, far from both ends)
    let (d_star, _) = golden_max(&mut c_of, 2.0, 6.0, GOLDEN_TOL)?;
    let nearest = cache
        .iter()
        .min_by(|p, q| (p.0 - d_star).abs().total_cmp(&(q.0 - d_star).abs()))
        .expect("cache is never empty")
        .1;
    solve_rational_at(d_star, nearest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn closed_form_reproduces_published_coefficients() {
        let (sigma, mu, nu) = closed_form_smn(0.6407, 1.3580).unwrap();
        assert_abs_diff_eq!(sigma, 0.6122, epsilon = 1e-4);
        assert_abs_diff_eq!(mu, 0.5017, epsilon = 1e-4);
        assert_abs_diff_eq!(nu, 0.2645, epsilon = 1e-4);
    }

    #[test]
    fn closed_form_satisfies_its_constraints() {
        for (alpha, c) in [(0.6407, 1.3580), (0.55, 1.0), (0.7, 1.25), (0.62, 0.4)] {
            let p = closed_form_params(alpha, c).unwrap();
            let ic = Complex64::new(0.0, c);
            let z = p.zeta(ic).unwrap();
            let dz = p.zeta_prime(ic).unwrap();
            let zpi = p.zeta(Complex64::new(PI, 0.0)).unwrap();
            assert!(z.norm() <= 1e-12, "zeta(ic) = {z} at ({alpha}, {c})");
            assert!(dz.norm() <= 1e-12, "zeta'(ic) = {dz} at ({alpha}, {c})");
            assert!(
                (zpi.re + c).abs() <= 1e-12,
                "Re zeta(pi) + c = {} at ({alpha}, {c})",
                zpi.re + c
            );
        }
    }

    #[test]
    fn singular_denominator_is_reported() {
        // locate a root of the closed-form denominator at alpha = 0.3
        let alpha = 0.3;
        let den = |c: f64| {
            let s = (alpha * PI).sin();
            2.0 * alpha * c * c * s * s - PI * (2.0 * alpha * PI).sin() * (alpha * c).sinh().powi(2)
        };
        let (mut lo, mut hi) = (3.0, 4.0);
        assert!(den(lo) > 0.0 && den(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if den(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let c_root = 0.5 * (lo + hi);
        match closed_form_smn(alpha, c_root) {
            Err(Error::SingularConfiguration { alpha: a, c }) => {
                assert_eq!(a, alpha);
                assert_abs_diff_eq!(c, c_root);
            }
            other => panic!("expected singular configuration, got {other:?}"),
        }
    }

    #[test]
    fn residuals_vanish_at_published_saddle() {
        let r = saddle_residual(0.6407, 1.3580, 3.4208, -2.3438).unwrap();
        for (i, v) in r.iter().enumerate() {
            assert!(v.abs() <= 1e-3, "r{} = {v}", i + 1);
        }
    }

    #[test]
    fn mirrored_saddle_negates_first_residual_only() {
        let r = saddle_residual(0.6407, 1.3580, 3.4208, -2.3438).unwrap();
        let m = saddle_residual(0.6407, 1.3580, -3.4208, -2.3438).unwrap();
        assert_abs_diff_eq!(m[0], -r[0], epsilon = 1e-12);
        assert_abs_diff_eq!(m[1], r[1], epsilon = 1e-12);
        assert_abs_diff_eq!(m[2], r[2], epsilon = 1e-12);
    }

    #[test]
    fn saddle_system_is_not_degenerate_in_c() {
        let r = saddle_residual(0.6407, 1.3580 + 0.1, 3.4208, -2.3438).unwrap();
        assert!(r[2].abs() >= 0.05, "r3 = {}", r[2]);
    }

    #[test]
    fn saddle_solve_reproduces_published_values() {
        let sol = solve_saddle(0.6407).unwrap();
        assert_abs_diff_eq!(sol.saddle.re, 3.4208, epsilon = 1e-3);
        assert_abs_diff_eq!(sol.saddle.im, -2.3438, epsilon = 1e-3);
        assert_abs_diff_eq!(sol.c, 1.3580, epsilon = 1e-3);
        let r = saddle_residual(0.6407, sol.c, sol.saddle.re, sol.saddle.im).unwrap();
        assert!(r.iter().all(|v| v.abs() <= 1e-10));
    }

    #[test]
    fn saddle_solve_converges_at_interval_ends() {
        for alpha in [0.51, 0.82] {
            let sol = solve_saddle(alpha).unwrap_or_else(|e| panic!("alpha = {alpha}: {e}"));
            assert!(sol.c > 0.0 && sol.c < 1.3580, "c = {} at {alpha}", sol.c);
            match sol.params {
                ContourParams::Cotangent { mu, nu, .. } => {
                    assert!(mu > 0.0 && nu > 0.0);
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn saddle_solve_rejects_out_of_window_alpha() {
        assert!(solve_saddle(0.40).is_err());
        assert!(solve_saddle(0.95).is_err());
    }

    #[test]
    fn decay_rate_is_unimodal_over_the_search_window() {
        let (lo, hi) = ALPHA_SEARCH;
        let mut values = Vec::new();
        for k in 0..20 {
            let alpha = lo + (hi - lo) * k as f64 / 19.0;
            values.push(solve_saddle(alpha).unwrap().c);
        }
        let mut sign_changes = 0;
        let mut prev = values[1] - values[0];
        for w in values.windows(2).skip(1) {
            let diff = w[1] - w[0];
            if diff * prev < 0.0 {
                sign_changes += 1;
            }
            prev = diff;
        }
        assert_eq!(sign_changes, 1, "c(alpha) scan: {values:?}");
    }

    #[test]
    fn alpha_optimization_reproduces_published_optimum() {
        let sol = optimize_alpha().unwrap();
        let alpha = match sol.params {
            ContourParams::Cotangent { alpha, .. } => alpha,
            _ => unreachable!(),
        };
        assert_abs_diff_eq!(alpha, 0.6407, epsilon = 5e-4);
        assert_abs_diff_eq!(sol.c, 1.3580, epsilon = 5e-4);
        match sol.params {
            ContourParams::Cotangent { sigma, mu, nu, .. } => {
                assert_abs_diff_eq!(sigma, 0.6122, epsilon = 1e-3);
                assert_abs_diff_eq!(mu, 0.5017, epsilon = 1e-3);
                assert_abs_diff_eq!(nu, 0.2645, epsilon = 1e-3);
            }
            _ => unreachable!(),
        }
        // resolving at the optimal alpha is a fixed point
        let again = solve_saddle(alpha).unwrap();
        assert_abs_diff_eq!(again.c, sol.c, epsilon = 1e-10);
        // and the optimum beats nearby probes
        assert!(sol.c > solve_saddle(0.60).unwrap().c);
        assert!(sol.c > solve_saddle(0.70).unwrap().c);
    }

    #[test]
    fn rational_derivation_reproduces_published_constants() {
        let sol = derive_rational().unwrap();
        match sol.params {
            ContourParams::Rational { a, b, d, e } => {
                assert_abs_diff_eq!(a, 0.1446, epsilon = 5e-3);
                assert_abs_diff_eq!(b, 3.0232, epsilon = 5e-3);
                assert_abs_diff_eq!(d, 3.0767, epsilon = 5e-3);
                assert_abs_diff_eq!(e, 0.2339, epsilon = 5e-3);
            }
            _ => unreachable!(),
        }
        assert_abs_diff_eq!(sol.c, 1.311, epsilon = 5e-3);
        // slightly below the cotangent rate, as expected
        assert!(sol.c < 1.3580);
        let ic = Complex64::new(0.0, sol.c);
        assert!(sol.params.zeta(ic).unwrap().norm() <= 1e-8);
    }

    #[test]
    fn solved_ends_produce_positive_coefficients() {
        for alpha in [0.51, 0.82] {
            let sol = solve_saddle(alpha).unwrap();
            match sol.params {
                ContourParams::Cotangent { mu, nu, .. } => {
                    assert!(mu.is_finite() && mu > 0.0);
                    assert!(nu.is_finite() && nu > 0.0);
                }
                _ => unreachable!(),
            }
        }
    }
}
