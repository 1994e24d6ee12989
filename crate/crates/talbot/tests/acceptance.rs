//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with the measured quantities. Run with
//! `cargo test -p talbot --test acceptance -- --nocapture` to see every
//! line; failures print regardless.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use talbot::contour::ContourParams;
use talbot::params;
use talbot::problems::{self, heat::HeatModel};
use talbot::quadrature::{
    convergence_sweep, invert, invert_full_sum, log_error_slope, FixedSource, SweepPoint,
    Transform, Value,
};
use talbot::roundoff::{self, RoundoffModel};

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if ok {
            self.notes.push(detail);
        } else {
            self.failures.push(detail);
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("criterion {}: PASS ({})", self.name, self.notes.join("; "));
        } else {
            let passed = if self.notes.is_empty() {
                String::new()
            } else {
                format!("; passed: {}", self.notes.join("; "))
            };
            println!(
                "criterion {}: FAIL ({}{})",
                self.name,
                self.failures.join("; "),
                passed
            );
            panic!(
                "criterion {} failed: {}",
                self.name,
                self.failures.join("; ")
            );
        }
    }
}

fn scalar(result: talbot::InversionResult) -> f64 {
    result.value.as_scalar().expect("scalar inversion")
}

fn rel(v: f64, reference: f64) -> f64 {
    ((v - reference) / reference).abs()
}

fn sweep_errors(
    transform: &Transform,
    reference: f64,
    t: f64,
    ns: impl IntoIterator<Item = usize>,
    source: &dyn talbot::quadrature::ParamSource,
) -> Vec<SweepPoint> {
    convergence_sweep(transform, &Value::Scalar(reference), t, ns, source)
}

#[test]
fn criterion_1_cotangent_parameter_derivation() {
    let mut c = Criterion::new("1 (cotangent parameter derivation)");
    let sol = params::optimize_alpha().expect("optimization converges");
    let (alpha, sigma, mu, nu) = match sol.params {
        ContourParams::Cotangent {
            sigma,
            mu,
            nu,
            alpha,
        } => (alpha, sigma, mu, nu),
        _ => unreachable!(),
    };
    c.check(
        (alpha - 0.6407).abs() <= 5e-4,
        format!("alpha = {alpha:.6}"),
    );
    c.check((sol.c - 1.3580).abs() <= 5e-4, format!("c = {:.6}", sol.c));
    c.check(
        (sigma - 0.6122).abs() <= 1e-3
            && (mu - 0.5017).abs() <= 1e-3
            && (nu - 0.2645).abs() <= 1e-3,
        format!("(sigma, mu, nu) = ({sigma:.5}, {mu:.5}, {nu:.5})"),
    );
    c.check(
        (sol.saddle.re - 3.4208).abs() <= 1e-3 && (sol.saddle.im + 2.3438).abs() <= 1e-3,
        format!("saddle = {:.5} + {:.5} i", sol.saddle.re, sol.saddle.im),
    );
    c.finish();
}

#[test]
fn criterion_2_rational_parameter_derivation() {
    let mut c = Criterion::new("2 (rational parameter derivation)");
    let sol = params::derive_rational().expect("optimization converges");
    let (a, b, d, e) = match sol.params {
        ContourParams::Rational { a, b, d, e } => (a, b, d, e),
        _ => unreachable!(),
    };
    c.check(
        (a - 0.1446).abs() <= 5e-3
            && (b - 3.0232).abs() <= 5e-3
            && (d - 3.0767).abs() <= 5e-3
            && (e - 0.2339).abs() <= 5e-3,
        format!("(a, b, d, e) = ({a:.5}, {b:.5}, {d:.5}, {e:.5})"),
    );
    c.check((sol.c - 1.311).abs() <= 5e-3, format!("c = {:.6}", sol.c));
    c.finish();
}

#[test]
fn criterion_3_model_transform_convergence_rate() {
    let mut c = Criterion::new("3 (model transform convergence rate)");
    let (p, rate) = params::optimized_cotangent();
    let f = problems::f1_transform(1.0);
    let exact = problems::reference_f1(1.0, 1.0);
    let source = FixedSource { params: p, c: rate };

    let pts = sweep_errors(&f, exact, 1.0, (3..=11).map(|h| 2 * h), &source);
    let slope = log_error_slope(&pts).expect("slope defined");
    c.check(
        (slope + 1.358).abs() <= 0.1358,
        format!("log-error slope over N in [6,22] = {slope:.4}"),
    );

    let min_err = (24..=30)
        .map(|n| rel(scalar(invert(&f, &p, n, 1.0).unwrap()), exact))
        .fold(f64::INFINITY, f64::min);
    c.check(
        min_err <= 1e-13,
        format!("min error over N in [24,30] = {min_err:.2e}"),
    );
    c.finish();
}

#[test]
fn criterion_4_ten_digit_accuracy_at_n18() {
    let mut c = Criterion::new("4 (ten digits at N = 18)");
    let (p, _) = params::optimized_cotangent();

    let heat = HeatModel::new(20).unwrap();
    let heat_err = invert(&heat.transform_op(), &p, 18, 1.0)
        .unwrap()
        .value
        .relative_error(&Value::Vector(heat.reference(1.0)))
        .unwrap();
    c.check(heat_err <= 1e-10, format!("heat m=20: {heat_err:.3e}"));

    let f2_err = rel(
        scalar(invert(&problems::f2_transform(), &p, 18, 1.0).unwrap()),
        problems::reference_f2(1.0).unwrap(),
    );
    c.check(f2_err <= 1e-10, format!("f2: {f2_err:.3e}"));

    // Known shortfall: the exact (infinite-precision) 18-node midpoint sum
    // for this transform already has relative error 1.047e-10, so the
    // 1e-10 bound is unattainable by any implementation of this rule.
    // Asserted as specified; see the f3 note in the README.
    let f3_err = rel(
        scalar(invert(&problems::f3_transform(0.4, 0.5), &p, 18, 1.0).unwrap()),
        problems::reference_f3(1.0, 0.4, 0.5).unwrap(),
    );
    c.check(f3_err <= 1e-10, format!("f3(0.4, 0.5): {f3_err:.3e}"));
    c.finish();
}

#[test]
fn criterion_5_roundoff_control() {
    let mut c = Criterion::new("5 (roundoff control)");
    let model = RoundoffModel::default();
    let source = model.cotangent_source();

    // controlled sweeps stay at the floor through N = 60
    let exact = problems::reference_f1(1.0, 1.0);
    let worst_f1 = sweep_errors(&problems::f1_transform(1.0), exact, 1.0, 24..=60, &source)
        .iter()
        .filter_map(|p| p.rel_error)
        .fold(0.0f64, f64::max);
    c.check(
        worst_f1 <= 1e-11,
        format!("controlled f1 max = {worst_f1:.2e}"),
    );

    let f2_ref = problems::reference_f2(1.0).unwrap();
    let worst_f2 = sweep_errors(&problems::f2_transform(), f2_ref, 1.0, 24..=60, &source)
        .iter()
        .filter_map(|p| p.rel_error)
        .fold(0.0f64, f64::max);
    c.check(
        worst_f2 <= 1e-11,
        format!("controlled f2 max = {worst_f2:.2e}"),
    );

    let heat = HeatModel::new(20).unwrap();
    let heat_ref = Value::Vector(heat.reference(1.0));
    let heat_op = heat.transform_op();
    let worst_heat = convergence_sweep(&heat_op, &heat_ref, 1.0, (12..=30).map(|h| 2 * h), &source)
        .iter()
        .filter_map(|p| p.rel_error)
        .fold(0.0f64, f64::max);
    c.check(
        worst_heat <= 1e-11,
        format!("controlled heat max = {worst_heat:.2e}"),
    );

    // without control the error regrows exponentially at the apex rate
    let (p, rate) = params::optimized_cotangent();
    let fixed = FixedSource { params: p, c: rate };
    let pts = sweep_errors(
        &problems::f1_transform(1.0),
        exact,
        1.0,
        (16..=30).map(|h| 2 * h),
        &fixed,
    );
    let growth = log_error_slope(&pts).expect("slope defined");
    let zeta0 = p.zeta_at_origin();
    c.check(
        (growth - zeta0).abs() <= 0.25 * zeta0,
        format!("uncontrolled regrowth slope = {growth:.4} vs zeta(0) = {zeta0:.4}"),
    );
    c.finish();
}

#[test]
fn criterion_6_critical_node_count_prediction() {
    let mut c = Criterion::new("6 (critical N prediction)");
    let n16 = roundoff::critical_n_for_precision(16.0, 1.0).unwrap();
    c.check(
        (n16 - 24.0).abs() <= 1.0,
        format!("N*(16 digits, k0 = 1) = {n16:.3}"),
    );
    for d in [16.0, 32.0, 64.0] {
        let ratio = roundoff::critical_n_for_precision(d, 1.0).unwrap() / d;
        c.check(
            (ratio - 1.5).abs() <= 0.1,
            format!("N*/d at d = {d}: {ratio:.4}"),
        );
    }
    c.finish();
}

#[test]
fn criterion_7_hard_transform_critical_points() {
    let mut c = Criterion::new("7 (f3 with r = 3)");
    let (p, rate) = params::optimized_cotangent();
    let fixed = FixedSource { params: p, c: rate };
    for (t, expected_n) in [(1.0, 38usize), (4.0, 32usize)] {
        let reference = problems::reference_f3(t, 0.4, 3.0).unwrap();
        let pts = sweep_errors(
            &problems::f3_transform(0.4, 3.0),
            reference,
            t,
            (3..=30).map(|h| 2 * h),
            &fixed,
        );
        let errors: Vec<(usize, f64)> = pts
            .iter()
            .filter_map(|p| p.rel_error.map(|e| (p.n, e)))
            .collect();
        let n_star = roundoff::detect_n_star(&errors).expect("turn detected");
        c.check(
            n_star.abs_diff(expected_n) <= 3,
            format!("t = {t}: N* = {n_star} (expected {expected_n} +/- 3)"),
        );
        // asymptotic decay before the minimum
        let window: Vec<SweepPoint> = pts
            .iter()
            .filter(|p| p.n + 4 <= n_star && p.n + 14 >= n_star)
            .cloned()
            .collect();
        let slope = log_error_slope(&window).expect("slope defined");
        c.check(
            (slope + 1.358).abs() <= 0.15 * 1.358,
            format!("t = {t}: pre-minimum slope = {slope:.4}"),
        );
    }
    c.finish();
}

#[test]
fn criterion_8_property_suites() {
    let mut c = Criterion::new("8 (property suites)");
    let (p, _) = params::optimized_cotangent();

    // half sum against full sum, both parities, all suite transforms
    let heat5 = HeatModel::new(5).unwrap();
    let transforms: Vec<(&str, Transform)> = vec![
        ("f1", problems::f1_transform(1.0)),
        ("f2", problems::f2_transform()),
        ("f3", problems::f3_transform(0.4, 0.5)),
        ("heat m=5", heat5.transform_op()),
    ];
    let mut worst_pair = 0.0f64;
    for (_, tr) in &transforms {
        for n in [16usize, 17, 24, 25] {
            let half = invert(tr, &p, n, 1.0).unwrap().value;
            let full = invert_full_sum(tr, &p, n, 1.0).unwrap().value;
            worst_pair = worst_pair.max(half.relative_error(&full).unwrap());
        }
    }
    c.check(
        worst_pair <= 1e-13,
        format!("half vs full sum worst = {worst_pair:.2e}"),
    );

    // Schwarz reflection on random points off the cut
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let evals: [&dyn Fn(Complex64) -> talbot::Result<Complex64>; 3] =
        [&|z| problems::eval_f1(z, 1.0), &problems::eval_f2, &|z| {
            problems::eval_f3(z, 0.4, 0.5)
        }];
    let mut worst_schwarz = 0.0f64;
    for f in evals {
        for _ in 0..50 {
            let z = Complex64::new(rng.random_range(-6.0..6.0), rng.random_range(0.05..6.0));
            let v = f(z).unwrap();
            let rel = (f(z.conj()).unwrap() - v.conj()).norm() / (1.0 + v.norm());
            worst_schwarz = worst_schwarz.max(rel);
        }
    }
    c.check(
        worst_schwarz <= 1e-14,
        format!("Schwarz reflection worst = {worst_schwarz:.2e}"),
    );

    // analyticity constraint residuals at the derived parameters
    let sol = params::optimize_alpha().unwrap();
    let ic = Complex64::new(0.0, sol.c);
    let r1 = sol.params.zeta(ic).unwrap().norm();
    let r2 = sol.params.zeta_prime(ic).unwrap().norm();
    let r3 = (sol.params.zeta(Complex64::new(PI, 0.0)).unwrap().re + sol.c).abs();
    c.check(
        r1 <= 1e-12 && r2 <= 1e-12 && r3 <= 1e-12,
        format!("constraint residuals = ({r1:.1e}, {r2:.1e}, {r3:.1e})"),
    );

    // spectral reference against a dense matrix-exponential oracle
    let mut worst_heat = 0.0f64;
    for m in [2usize, 3, 4] {
        let model = HeatModel::new(m).unwrap();
        let oracle = expm_times(&dense_operator(&model), model.u0(), 1.0);
        let spectral = model.reference(1.0);
        for (s, o) in spectral.iter().zip(&oracle) {
            worst_heat = worst_heat.max((s - o).abs());
        }
    }
    c.check(
        worst_heat <= 1e-12,
        format!("spectral vs expm worst = {worst_heat:.2e}"),
    );

    // residue series self-consistency
    let k = problems::reference_f2_truncated(1.0, 15).unwrap();
    let k5 = problems::reference_f2_truncated(1.0, 20).unwrap();
    let series_rel = ((k - k5) / k5).abs();
    c.check(
        series_rel <= 1e-13,
        format!("f2 series truncation shift = {series_rel:.2e}"),
    );
    c.finish();
}

#[allow(clippy::needless_range_loop)] // indices double as grid coordinates
fn dense_operator(model: &HeatModel) -> Vec<Vec<f64>> {
    let m = model.grid();
    let g = 0.01 * (m as f64 + 1.0).powi(2);
    let j = m * m;
    let mut a = vec![vec![0.0; j]; j];
    for r in 0..j {
        let (ri, rj) = (r / m, r % m);
        for cc in 0..j {
            let (ci, cj) = (cc / m, cc % m);
            if r == cc {
                a[r][cc] = 4.0 * g;
            } else if (ri == ci && rj.abs_diff(cj) == 1) || (rj == cj && ri.abs_diff(ci) == 1) {
                a[r][cc] = -g;
            }
        }
    }
    a
}

/// exp(-A t) u0 by scaling and squaring on a plain dense matrix; the
/// oracle shares no code with the spectral reference.
fn expm_times(a: &[Vec<f64>], u0: &[f64], t: f64) -> Vec<f64> {
    let n = a.len();
    let norm: f64 = a
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        * t;
    let squarings = norm.log2().ceil().max(0.0) as i32 + 1;
    let scale = -t / 2f64.powi(squarings);
    let scaled: Vec<Vec<f64>> = a
        .iter()
        .map(|row| row.iter().map(|v| v * scale).collect())
        .collect();
    let matmul = |x: &[Vec<f64>], y: &[Vec<f64>]| -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                let xv = x[i][k];
                if xv != 0.0 {
                    for j in 0..n {
                        out[i][j] += xv * y[k][j];
                    }
                }
            }
        }
        out
    };
    let mut result = vec![vec![0.0; n]; n];
    let mut term = vec![vec![0.0; n]; n];
    for i in 0..n {
        result[i][i] = 1.0;
        term[i][i] = 1.0;
    }
    for k in 1..=24 {
        term = matmul(&term, &scaled);
        let inv = 1.0 / k as f64;
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v *= inv;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    (0..n)
        .map(|i| (0..n).map(|j| result[i][j] * u0[j]).sum())
        .collect()
}
