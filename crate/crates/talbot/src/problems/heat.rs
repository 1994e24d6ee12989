//! Matrix transform from the 2-D heat equation.
//!
//! `u_t + A u = 0` on the unit square with homogeneous Dirichlet data,
//! `A` the 5-point finite-difference negative Laplacian scaled by the
//! diffusivity. The Laplace transform of the solution is
//! `U(z) = (z I + A)^{-1} u0`, so every quadrature node costs one shifted
//! linear solve. The exact solution `exp(-A t) u0` follows from the
//! explicitly known sine eigenbasis and serves as the reference.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::Transform;

/// Fixed seed for the random initial condition; errors are reproducible
/// run to run.
const U0_SEED: u64 = 7;

/// Relative residual bound every shifted solve must meet.
const SOLVE_TOL: f64 = 1e-12;

/// Problems at or below this dimension use one dense factorization
/// instead of the block elimination.
const DENSE_LIMIT: usize = 100;

/// Semi-discrete heat problem on an `m x m` interior grid.
#[derive(Debug, Clone)]
pub struct HeatModel {
    m: usize,
    kappa: f64,
    h: f64,
    u0: Vec<f64>,
}

impl HeatModel {
    /// Model with diffusivity 0.01 and a seeded random initial condition,
    /// entries uniform on [0, 1).
    pub fn new(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidInput(format!("need m >= 1, got {m}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(U0_SEED);
        let u0 = (0..m * m).map(|_| rng.random_range(0.0..1.0)).collect();
        Ok(Self {
            m,
            kappa: 0.01,
            h: 1.0 / (m as f64 + 1.0),
            u0,
        })
    }

    /// Interior grid points per dimension.
    pub fn grid(&self) -> usize {
        self.m
    }

    /// Problem dimension `J = m^2`.
    pub fn dim(&self) -> usize {
        self.m * self.m
    }

    pub fn u0(&self) -> &[f64] {
        &self.u0
    }

    /// Eigenvalue of `A` for the sine mode `(j, k)`, 1-based:
    /// `kappa (4/h^2) (sin^2(j pi h / 2) + sin^2(k pi h / 2))`.
    pub fn eigenvalue(&self, j: usize, k: usize) -> f64 {
        let s = |i: usize| (i as f64 * PI * self.h / 2.0).sin().powi(2);
        self.kappa * 4.0 / (self.h * self.h) * (s(j) + s(k))
    }

    /// `(z I + A) x` for the 5-point stencil, used for residual checks.
    fn apply_shifted(&self, z: Complex64, x: &[Complex64]) -> Vec<Complex64> {
        let m = self.m;
        let g = self.kappa / (self.h * self.h);
        let mut out = vec![Complex64::ZERO; m * m];
        for i in 0..m {
            for j in 0..m {
                let p = i * m + j;
                let mut v = (z + 4.0 * g) * x[p];
                if i > 0 {
                    v -= g * x[p - m];
                }
                if i + 1 < m {
                    v -= g * x[p + m];
                }
                if j > 0 {
                    v -= g * x[p - 1];
                }
                if j + 1 < m {
                    v -= g * x[p + 1];
                }
                out[p] = v;
            }
        }
        out
    }

    /// Solve `(z I + A) x = u0`.
    ///
    /// Small problems go through one dense LU; otherwise the block
    /// tridiagonal structure is eliminated directly (m blocks of size m).
    /// Every solution is verified against the stencil: the relative
    /// residual in the infinity norm must be below `1e-12`.
    pub fn transform(&self, z: Complex64) -> Result<Vec<Complex64>> {
        let x = if self.dim() <= DENSE_LIMIT {
            self.solve_dense(z)?
        } else {
            self.solve_block_tridiagonal(z)?
        };
        let residual = self.apply_shifted(z, &x);
        let u0_norm = self.u0.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let res_norm = residual
            .iter()
            .zip(&self.u0)
            .map(|(r, b)| (r - b).norm())
            .fold(0.0f64, f64::max);
        if !(res_norm.is_finite() && res_norm <= SOLVE_TOL * u0_norm) {
            return Err(Error::SolveFailed {
                z,
                reason: format!("residual {res_norm:e} exceeds {SOLVE_TOL:e} * {u0_norm:e}"),
            });
        }
        Ok(x)
    }

    fn solve_dense(&self, z: Complex64) -> Result<Vec<Complex64>> {
        let n = self.dim();
        let m = self.m;
        let g = self.kappa / (self.h * self.h);
        let a = DMatrix::<Complex64>::from_fn(n, n, |r, c| {
            let (ri, rj) = (r / m, r % m);
            let (ci, cj) = (c / m, c % m);
            if r == c {
                z + 4.0 * g
            } else if (ri == ci && rj.abs_diff(cj) == 1) || (rj == cj && ri.abs_diff(ci) == 1) {
                Complex64::from(-g)
            } else {
                Complex64::ZERO
            }
        });
        let b = DVector::from_iterator(n, self.u0.iter().map(|&v| Complex64::from(v)));
        let x = a.lu().solve(&b).ok_or_else(|| Error::SolveFailed {
            z,
            reason: "dense factorization is singular".into(),
        })?;
        Ok(x.iter().copied().collect())
    }

    /// Block Thomas elimination. With `D = z I + B` (B the within-row
    /// tridiagonal block) and coupling `-g I`:
    ///
    /// ```text
    /// Phi_1 = D,              Phi_i = D - g^2 Phi_{i-1}^{-1}
    /// y_1   = b_1,            y_i   = b_i + g Phi_{i-1}^{-1} y_{i-1}
    /// x_m   = Phi_m^{-1} y_m, x_i   = Phi_i^{-1} (y_i + g x_{i+1})
    /// ```
    fn solve_block_tridiagonal(&self, z: Complex64) -> Result<Vec<Complex64>> {
        let m = self.m;
        let g = Complex64::from(self.kappa / (self.h * self.h));
        let diag_block = DMatrix::<Complex64>::from_fn(m, m, |r, c| {
            if r == c {
                z + 4.0 * g
            } else if r.abs_diff(c) == 1 {
                -g
            } else {
                Complex64::ZERO
            }
        });
        let singular = || Error::SolveFailed {
            z,
            reason: "block pivot is singular".into(),
        };

        let mut inverses: Vec<DMatrix<Complex64>> = Vec::with_capacity(m);
        let mut ys: Vec<DVector<Complex64>> = Vec::with_capacity(m);
        for i in 0..m {
            let b_i = DVector::from_iterator(
                m,
                self.u0[i * m..(i + 1) * m]
                    .iter()
                    .map(|&v| Complex64::from(v)),
            );
            let (phi, y) = if i == 0 {
                (diag_block.clone(), b_i)
            } else {
                let prev_inv = &inverses[i - 1];
                let phi = &diag_block - prev_inv * (g * g);
                let y = b_i + (prev_inv * &ys[i - 1]) * g;
                (phi, y)
            };
            inverses.push(phi.lu().try_inverse().ok_or_else(singular)?);
            ys.push(y);
        }

        let mut x = vec![DVector::<Complex64>::zeros(m); m];
        x[m - 1] = &inverses[m - 1] * &ys[m - 1];
        for i in (0..m - 1).rev() {
            let rhs = &ys[i] + &x[i + 1] * g;
            x[i] = &inverses[i] * rhs;
        }
        Ok(x.iter().flat_map(|xi| xi.iter().copied()).collect())
    }

    /// Exact `exp(-A t) u0` from the sine eigenbasis.
    pub fn reference(&self, t: f64) -> Vec<f64> {
        let m = self.m;
        let s = DMatrix::<f64>::from_fn(m, m, |j, p| {
            ((j as f64 + 1.0) * (p as f64 + 1.0) * PI * self.h).sin()
        });
        let u0 = DMatrix::<f64>::from_fn(m, m, |i, j| self.u0[i * m + j]);
        let scale = (2.0 / (m as f64 + 1.0)).powi(2);
        let coeffs = scale * (&s * u0 * &s);
        let damped = DMatrix::<f64>::from_fn(m, m, |j, k| {
            coeffs[(j, k)] * (-(self.eigenvalue(j + 1, k + 1)) * t).exp()
        });
        let ut = &s * damped * &s;
        (0..m * m).map(|p| ut[(p / m, p % m)]).collect()
    }

    /// The shifted-solve evaluator packaged for the quadrature engine.
    pub fn transform_op(&self) -> Transform<'_> {
        Transform::vector(self.dim(), move |z| self.transform(z))
    }
}
