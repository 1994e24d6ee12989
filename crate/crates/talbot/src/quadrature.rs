//! Midpoint-rule evaluation of the deformed Bromwich integral.
//!
//! The N-panel midpoint sum
//!
//! ```text
//! f(t) ~ (1/(N i)) * sum_k exp(z_k t) F(z_k) z'_k
//! ```
//!
//! is evaluated in its half-sum form: conjugate node pairs contribute
//! `2 Im(exp(z t) F(z) z')` each (because `z'(-theta) = -conj(z'(theta))`),
//! so only nodes with `theta_k >= 0` require transform evaluations. For odd
//! N the single real-axis node at `theta = 0` enters with weight one. The
//! full sum over all N nodes is kept alongside as an algebraic cross-check.
//!
//! Terms are accumulated in ascending `|Re z|` order with Neumaier
//! compensation; near the roundoff limit the terms span many orders of
//! magnitude and the summation order is part of the reproducibility
//! contract.

use num_complex::Complex64;

use crate::contour::ContourParams;
use crate::error::{Error, Result};

/// Largest allowed `Re(z t)`: beyond this `exp` overflows binary64.
const MAX_EXP_ARG: f64 = 709.0;

/// A Laplace transform presented to the quadrature engine.
///
/// `Scalar` wraps a pointwise evaluator `z -> F(z)`. `Vector` wraps an
/// evaluator producing one complex vector per node, e.g. the solution of a
/// shifted linear system, with its dimension fixed up front.
pub enum Transform<'a> {
    Scalar(Box<dyn Fn(Complex64) -> Result<Complex64> + Sync + 'a>),
    Vector {
        dim: usize,
        eval: Box<dyn Fn(Complex64) -> Result<Vec<Complex64>> + Sync + 'a>,
    },
}

impl<'a> Transform<'a> {
    pub fn scalar(f: impl Fn(Complex64) -> Result<Complex64> + Sync + 'a) -> Self {
        Self::Scalar(Box::new(f))
    }

    pub fn vector(dim: usize, f: impl Fn(Complex64) -> Result<Vec<Complex64>> + Sync + 'a) -> Self {
        Self::Vector {
            dim,
            eval: Box::new(f),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Scalar(_) => 1,
            Self::Vector { dim, .. } => *dim,
        }
    }
}

/// A real inversion output: scalar or vector-valued.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl Value {
    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            Self::Scalar(v) => Some(*v),
            Self::Vector(_) => None,
        }
    }

    pub fn components(&self) -> &[f64] {
        match self {
            Self::Scalar(v) => std::slice::from_ref(v),
            Self::Vector(v) => v,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|v| v.is_finite())
    }

    /// Relative error against a reference, in the infinity norm for
    /// vectors: `max_i |v_i - r_i| / max_i |r_i|`.
    pub fn relative_error(&self, reference: &Value) -> Result<f64> {
        let v = self.components();
        let r = reference.components();
        if v.len() != r.len() {
            return Err(Error::InvalidInput(format!(
                "dimension mismatch: value has {}, reference has {}",
                v.len(),
                r.len()
            )));
        }
        let num = v
            .iter()
            .zip(r)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let den = r.iter().map(|b| b.abs()).fold(0.0, f64::max);
        if den == 0.0 {
            return Err(Error::InvalidInput(
                "relative error undefined for a zero reference".into(),
            ));
        }
        Ok(num / den)
    }
}

/// Result of one inversion.
#[derive(Debug, Clone)]
pub struct InversionResult {
    pub value: Value,
    pub n: usize,
    pub t: f64,
    pub params: ContourParams,
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Node visit order: ascending `|Re z|`, resolved deterministically.
fn summation_order(z: &[Complex64], keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..z.len()).filter(|&k| keep(k)).collect();
    idx.sort_by(|&i, &j| z[i].re.abs().total_cmp(&z[j].re.abs()).then(i.cmp(&j)));
    idx
}

fn eval_at(transform: &Transform, index: usize, z: Complex64) -> Result<Vec<Complex64>> {
    let wrap = |e: Error| Error::TransformEval {
        index,
        z,
        reason: e.to_string(),
    };
    match transform {
        Transform::Scalar(f) => Ok(vec![f(z).map_err(wrap)?]),
        Transform::Vector { dim, eval } => {
            let v = eval(z).map_err(wrap)?;
            if v.len() != *dim {
                return Err(Error::TransformEval {
                    index,
                    z,
                    reason: format!("evaluator returned {} components, expected {dim}", v.len()),
                });
            }
            Ok(v)
        }
    }
}

fn finish(
    acc: Vec<Compensated>,
    n: usize,
    t: f64,
    params: &ContourParams,
    scalar: bool,
) -> Result<InversionResult> {
    let vals: Vec<f64> = acc.iter().map(|a| a.total() / n as f64).collect();
    let value = if scalar {
        Value::Scalar(vals[0])
    } else {
        Value::Vector(vals)
    };
    if !value.is_finite() {
        return Err(Error::NonFinite { n });
    }
    Ok(InversionResult {
        value,
        n,
        t,
        params: *params,
    })
}

/// Invert `transform` at time `t` with the `N`-panel midpoint rule on the
/// given contour, using the conjugate-symmetry half sum:
///
/// ```text
/// f(t) ~ (1/N) * [ 2 * sum_{theta_k > 0} Im g_k  +  (odd N) Im g_0 ],
/// g_k = exp(z_k t) F(z_k) z'_k
/// ```
///
/// This equals the full sum exactly (in exact arithmetic) whenever the
/// transform satisfies the Schwarz reflection `F(conj z) = conj F(z)`.
pub fn invert(
    transform: &Transform,
    params: &ContourParams,
    n: usize,
    t: f64,
) -> Result<InversionResult> {
    let nodes = params.nodes(n, t)?;
    let order = summation_order(&nodes.z, |k| nodes.thetas[k] >= 0.0);
    let mut acc = vec![Compensated::default(); transform.dim()];
    for &k in &order {
        let z = nodes.z[k];
        let re_zt = z.re * t;
        if re_zt >= MAX_EXP_ARG {
            return Err(Error::Overflow { index: k, re_zt });
        }
        let weight = if nodes.thetas[k] == 0.0 { 1.0 } else { 2.0 };
        let factor = (z * t).exp() * nodes.dz[k];
        let fv = eval_at(transform, k, z)?;
        for (a, f) in acc.iter_mut().zip(&fv) {
            a.add(weight * (factor * f).im);
        }
    }
    finish(acc, n, t, params, matches!(transform, Transform::Scalar(_)))
}

/// The same midpoint sum written over all N nodes with no symmetry saving:
/// `f(t) ~ Im(sum_k g_k) / N`. Provided to cross-check the half sum.
pub fn invert_full_sum(
    transform: &Transform,
    params: &ContourParams,
    n: usize,
    t: f64,
) -> Result<InversionResult> {
    let nodes = params.nodes(n, t)?;
    let order = summation_order(&nodes.z, |_| true);
    let mut acc = vec![Compensated::default(); transform.dim()];
    for &k in &order {
        let z = nodes.z[k];
        let re_zt = z.re * t;
        if re_zt >= MAX_EXP_ARG {
            return Err(Error::Overflow { index: k, re_zt });
        }
        let factor = (z * t).exp() * nodes.dz[k];
        let fv = eval_at(transform, k, z)?;
        for (a, f) in acc.iter_mut().zip(&fv) {
            a.add((factor * f).im);
        }
    }
    finish(acc, n, t, params, matches!(transform, Transform::Scalar(_)))
}

/// Per-N contour supplier for sweeps: fixed parameters, or a roundoff
/// controlled generator. Returns the parameters together with the decay
/// rate `c` they were derived from.
pub trait ParamSource {
    fn params_for(&self, n: usize) -> Result<(ContourParams, f64)>;
}

/// The same contour for every N.
#[derive(Debug, Clone, Copy)]
pub struct FixedSource {
    pub params: ContourParams,
    pub c: f64,
}

impl ParamSource for FixedSource {
    fn params_for(&self, _n: usize) -> Result<(ContourParams, f64)> {
        Ok((self.params, self.c))
    }
}

impl<F> ParamSource for F
where
    F: Fn(usize) -> Result<(ContourParams, f64)>,
{
    fn params_for(&self, n: usize) -> Result<(ContourParams, f64)> {
        self(n)
    }
}

/// One row of a convergence sweep. `rel_error` is `None` when the
/// inversion failed at that N (the sweep itself continues).
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub n: usize,
    pub rel_error: Option<f64>,
    pub c_used: f64,
    pub zeta0_used: f64,
}

/// Relative error against `reference` for each N, with per-N contour
/// parameters from `source`.
pub fn convergence_sweep(
    transform: &Transform,
    reference: &Value,
    t: f64,
    n_values: impl IntoIterator<Item = usize>,
    source: &dyn ParamSource,
) -> Vec<SweepPoint> {
    n_values
        .into_iter()
        .map(|n| match source.params_for(n) {
            Ok((params, c)) => {
                let rel_error = invert(transform, &params, n, t)
                    .and_then(|res| res.value.relative_error(reference))
                    .ok();
                SweepPoint {
                    n,
                    rel_error,
                    c_used: c,
                    zeta0_used: params.zeta_at_origin(),
                }
            }
            Err(_) => SweepPoint {
                n,
                rel_error: None,
                c_used: f64::NAN,
                zeta0_used: f64::NAN,
            },
        })
        .collect()
}

/// Least-squares slope of `ln(error)` against N over the given points,
/// skipping failures. Used to measure empirical convergence rates.
pub fn log_error_slope(points: &[SweepPoint]) -> Option<f64> {
    let data: Vec<(f64, f64)> = points
        .iter()
        .filter_map(|p| p.rel_error.map(|e| (p.n as f64, e.ln())))
        .filter(|(_, l)| l.is_finite())
        .collect();
    if data.len() < 2 {
        return None;
    }
    let n = data.len() as f64;
    let mx = data.iter().map(|d| d.0).sum::<f64>() / n;
    let my = data.iter().map(|d| d.1).sum::<f64>() / n;
    let sxy: f64 = data.iter().map(|d| (d.0 - mx) * (d.1 - my)).sum();
    let sxx: f64 = data.iter().map(|d| (d.0 - mx) * (d.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
