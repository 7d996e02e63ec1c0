//! Analytic test-function families with independently derived expected
//! values, shared by the test suites and the `selftest` subcommand.
//!
//! Every expected value carries a provenance tag: literature values, trivial
//! identities, or derived values together with the oracle that produced them
//! (closed-form substitution, brute-force quadrature, or seeded Monte
//! Carlo). Monte-Carlo comparisons are encoded as a sigma-distance check
//! with threshold 3.

use std::sync::Arc;

use serde::Serialize;

use crate::dual_transform::{
    cluster_mean, dual_apply, dual_apply_refinement, dual_invert_even, dual_invert_pointwise,
    dual_r1, duality_check, DualApplyParams, EvenInversionParams, WeightedClassParams,
};
use crate::error::{RadonError, Result};
use crate::fracint::RadialSamples;
use crate::geometry::Hyperplane;
use crate::kelvin_route::{kelvin_invert, kelvin_invert_marchaud, KelvinParams};
use crate::radon_line::{
    radon_forward_mc, radon_forward_quasiradial, radon_invert, radon_radial, HyperplaneFunction,
    InversionParams, QuasiRadialFunction,
};
use crate::spherical::{HarmonicBasis, SphereGrid};

/// Where an expected value comes from.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", content = "oracle")]
pub enum Provenance {
    /// Stated in the literature.
    Paper,
    /// Immediate identity (constants, zero functions, gates).
    Trivial,
    /// Computed by an independent oracle, identified by name.
    Derived(String),
}

/// One executable comparison belonging to a test case.
pub struct Check {
    pub label: String,
    pub provenance: Provenance,
    pub expected: f64,
    pub tolerance: f64,
    pub relative: bool,
    compute: Arc<dyn Fn() -> Result<f64> + Send + Sync>,
}

impl Check {
    fn new<F: Fn() -> Result<f64> + Send + Sync + 'static>(
        label: &str,
        provenance: Provenance,
        expected: f64,
        tolerance: f64,
        relative: bool,
        compute: F,
    ) -> Self {
        Check {
            label: label.to_string(),
            provenance,
            expected,
            tolerance,
            relative,
            compute: Arc::new(compute),
        }
    }

    pub fn run(&self) -> Result<f64> {
        (self.compute)()
    }
}

/// A named family: closed-form line and/or hyperplane functions plus the
/// checks anchored to them.
pub struct TestCase {
    pub name: String,
    pub dimension: usize,
    pub line_function: Option<Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>>,
    pub hyperplane_function: Option<HyperplaneFunction>,
    pub checks: Vec<Check>,
}

/// Pass/fail for an operation output against an oracle output
/// (value, stderr). With stderr > 0 the comparison is |diff| <= k * stderr;
/// a deterministic oracle (stderr = 0) treats k as an absolute tolerance.
pub fn oracle_compare(op_output: f64, oracle_output: (f64, f64), k: f64) -> bool {
    let (value, stderr) = oracle_output;
    let diff = (op_output - value).abs();
    if stderr > 0.0 {
        diff <= k * stderr
    } else {
        diff <= k
    }
}

/// Report for one check, serializable for the machine-readable output.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub label: String,
    pub expected: f64,
    pub got: Option<f64>,
    pub provenance: Provenance,
    pub tolerance: f64,
    pub relative: bool,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub cases: Vec<CaseReport>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Run every check of the suite, optionally restricted to one dimension.
pub fn run_suite(dimension: Option<usize>) -> SuiteReport {
    let mut cases = Vec::new();
    let mut passed = 0;
    let mut failed = 0;
    for case in analytic_suite() {
        if let Some(d) = dimension {
            if case.dimension != d {
                continue;
            }
        }
        for check in &case.checks {
            let report = match check.run() {
                Ok(got) => {
                    let diff = (got - check.expected).abs();
                    let bound = if check.relative {
                        check.tolerance * check.expected.abs().max(1e-300)
                    } else {
                        check.tolerance
                    };
                    CaseReport {
                        case: case.name.clone(),
                        label: check.label.clone(),
                        expected: check.expected,
                        got: Some(got),
                        provenance: check.provenance.clone(),
                        tolerance: check.tolerance,
                        relative: check.relative,
                        pass: diff <= bound,
                        error: None,
                    }
                }
                Err(e) => CaseReport {
                    case: case.name.clone(),
                    label: check.label.clone(),
                    expected: check.expected,
                    got: None,
                    provenance: check.provenance.clone(),
                    tolerance: check.tolerance,
                    relative: check.relative,
                    pass: false,
                    error: Some(e.to_string()),
                },
            };
            if report.pass {
                passed += 1;
            } else {
                failed += 1;
            }
            cases.push(report);
        }
    }
    SuiteReport {
        cases,
        passed,
        failed,
    }
}

fn e(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

fn gaussian_line_fn() -> Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync> {
    Arc::new(|_w: &[f64], u: &[f64]| (-crate::linalg::dot(u, u)).exp())
}

fn build_gaussian_qr(n: usize, res: usize, degree: usize) -> Result<QuasiRadialFunction> {
    let grid = SphereGrid::cached(n, res)?;
    let basis = Arc::new(HarmonicBasis::new(grid, degree)?);
    QuasiRadialFunction::from_fn(
        |_w: &[f64], r: f64| (-r * r).exp(),
        basis,
        8.0,
        40,
        30.0,
    )
}

/// phi(theta, t) = |t theta_2|.
pub fn abs_t_theta2(n: usize) -> HyperplaneFunction {
    HyperplaneFunction::from_fn(n, |theta: &[f64], t: f64| (t * theta[1]).abs(), true, 2.0)
}

/// The Kelvin-pair hyperplane function t^{-2} e^{-1/t^2}; its A-transform
/// is the unit Gaussian.
pub fn kelvin_pair(n: usize) -> HyperplaneFunction {
    HyperplaneFunction::from_fn(
        n,
        |_theta: &[f64], t: f64| {
            let tt = t * t;
            if tt < 1e-280 {
                0.0
            } else {
                (-1.0 / tt).exp() / tt
            }
        },
        true,
        2.0,
    )
}

/// Closed form of R* of the Kelvin pair in R^3.
pub fn kelvin_pair_dual(u: &[f64]) -> f64 {
    let r = crate::linalg::norm(u);
    (-1.0 / (r * r)).exp() / (std::f64::consts::PI.sqrt() * r)
}

/// The critical family phi_p (see `dual_transform::phi_p_function`).
pub use crate::dual_transform::phi_p_function;

/// The analytic suite: Gaussian quasi-radial family (n = 3..6), the
/// |t theta2| example, the Kelvin Gaussian pair, the phi_p divergence
/// family, and the non-even theta2 t case; at least one check per
/// inversion route.
pub fn analytic_suite() -> Vec<TestCase> {
    let mut cases = Vec::new();
    let sqrt_pi = std::f64::consts::PI.sqrt();

    // Gaussian quasi-radial, n = 3.
    {
        let mut checks = Vec::new();
        checks.push(Check::new(
            "forward-closed-form-t1",
            Provenance::Derived("substitution s = sqrt(r^2 - t^2) in the slice integral".into()),
            sqrt_pi * (-1.0f64).exp(),
            1e-8,
            false,
            || {
                let f = build_gaussian_qr(3, 8, 4)?;
                radon_forward_quasiradial(&f, &e(3, 0), 1.0)
            },
        ));
        checks.push(Check::new(
            "forward-mc-sigma-distance",
            Provenance::Derived("seeded Monte-Carlo of the defining double integral".into()),
            0.0,
            3.0,
            false,
            || {
                let f = build_gaussian_qr(3, 8, 4)?;
                let theta = crate::linalg::normalize(&[0.2, -0.5, 0.84]);
                let exact = radon_forward_quasiradial(&f, &theta, 0.7)?;
                let (mc, se) =
                    radon_forward_mc(|w, u| f.eval_line(w, u), &theta, 0.7, 40_000, 2024);
                Ok((exact - mc).abs() / se.max(1e-300))
            },
        ));
        checks.push(Check::new(
            "round-trip-r0.5",
            Provenance::Derived("forward transform then factorized inverse".into()),
            (-0.25f64).exp(),
            1e-3,
            true,
            || {
                let f = build_gaussian_qr(3, 8, 4)?;
                let fwd = f.clone();
                let g = HyperplaneFunction::from_fn(
                    3,
                    move |theta: &[f64], t: f64| {
                        radon_forward_quasiradial(&fwd, theta, t).unwrap()
                    },
                    true,
                    25.0,
                );
                let grid = SphereGrid::cached(3, 8)?;
                let basis = Arc::new(HarmonicBasis::new(grid, 4)?);
                let inv = radon_invert(&g, basis, &InversionParams::default())?;
                Ok(inv.f0.eval(&crate::linalg::normalize(&[1.0, 1.0, 1.0]), 0.5))
            },
        ));
        checks.push(Check::new(
            "duality-sigma-distance",
            Provenance::Derived("Monte-Carlo estimates of both pairings".into()),
            0.0,
            3.0,
            false,
            || {
                let f = build_gaussian_qr(3, 6, 2)?;
                let phi = HyperplaneFunction::from_fn(
                    3,
                    |_: &[f64], t: f64| (-t * t).exp(),
                    true,
                    20.0,
                );
                let check = duality_check(&f, &phi, 30_000, 11, 12)?;
                Ok(check.sigma_distance())
            },
        ));
        cases.push(TestCase {
            name: "gaussian-quasiradial-n3".into(),
            dimension: 3,
            line_function: Some(gaussian_line_fn()),
            hyperplane_function: None,
            checks,
        });
    }

    // Gaussian quasi-radial, n = 4.
    {
        let mut checks = Vec::new();
        checks.push(Check::new(
            "forward-closed-form-t1",
            Provenance::Derived("sigma_1 int_t^inf e^{-r^2} r dr = pi e^{-t^2}".into()),
            std::f64::consts::PI * (-1.0f64).exp(),
            1e-8,
            false,
            || {
                let f = build_gaussian_qr(4, 6, 4)?;
                radon_forward_quasiradial(&f, &e(4, 0), 1.0)
            },
        ));
        checks.push(Check::new(
            "round-trip-r1",
            Provenance::Derived("forward transform then factorized inverse".into()),
            (-1.0f64).exp(),
            1e-3,
            true,
            || {
                let f = build_gaussian_qr(4, 6, 4)?;
                let fwd = f.clone();
                let g = HyperplaneFunction::from_fn(
                    4,
                    move |theta: &[f64], t: f64| {
                        radon_forward_quasiradial(&fwd, theta, t).unwrap()
                    },
                    true,
                    25.0,
                );
                let grid = SphereGrid::cached(4, 6)?;
                let basis = Arc::new(HarmonicBasis::new(grid, 4)?);
                let inv = radon_invert(&g, basis, &InversionParams::default())?;
                Ok(inv.f0.eval(&crate::linalg::normalize(&[1.0, 0.0, 0.0, 1.0]), 1.0))
            },
        ));
        cases.push(TestCase {
            name: "gaussian-quasiradial-n4".into(),
            dimension: 4,
            line_function: Some(gaussian_line_fn()),
            hyperplane_function: None,
            checks,
        });
    }

    // Gaussian quasi-radial, n = 5 and 6: the quasi-radial forward must
    // agree with the radial-profile transform on radial input.
    for n in [5usize, 6] {
        let checks = vec![Check::new(
            "radial-consistency-t1",
            Provenance::Derived("radial-profile transform with k=1, k'=n-1".into()),
            0.0,
            1e-10,
            false,
            move || {
                let f = build_gaussian_qr(n, 4, 2)?;
                let prof = RadialSamples::from_fn(
                    |r: f64| (-r * r).exp(),
                    RadialSamples::uniform_grid(1e-3, 8.0, 80),
                    30.0,
                )?;
                let a = radon_forward_quasiradial(&f, &e(n, 0), 1.0)?;
                let b = radon_radial(&prof, 1, n - 1, 1.0)?;
                Ok((a - b).abs())
            },
        )];
        cases.push(TestCase {
            name: format!("gaussian-quasiradial-n{n}"),
            dimension: n,
            line_function: Some(gaussian_line_fn()),
            hyperplane_function: None,
            checks,
        });
    }

    // |t theta2|, n = 3: the literature values and the cluster mean.
    {
        let mut checks = Vec::new();
        checks.push(Check::new(
            "dual-at-e1-e2",
            Provenance::Paper,
            0.5,
            1e-4,
            false,
            || {
                let phi = abs_t_theta2(3);
                dual_apply(&phi, &e(3, 0), &e(3, 1), &DualApplyParams::new(192))
            },
        ));
        checks.push(Check::new(
            "dual-at-e1-e3",
            Provenance::Paper,
            1.0 / std::f64::consts::PI,
            1e-4,
            false,
            || {
                let phi = abs_t_theta2(3);
                dual_apply(&phi, &e(3, 0), &e(3, 2), &DualApplyParams::new(192))
            },
        ));
        checks.push(Check::new(
            "non-quasi-radial-witness",
            Provenance::Paper,
            0.5 - 1.0 / std::f64::consts::PI,
            1e-3,
            false,
            || {
                let phi = abs_t_theta2(3);
                let p = DualApplyParams::new(192);
                let a = dual_apply(&phi, &e(3, 0), &e(3, 1), &p)?;
                let b = dual_apply(&phi, &e(3, 0), &e(3, 2), &p)?;
                Ok((a - b).abs())
            },
        ));
        checks.push(Check::new(
            "cluster-mean-r1",
            Provenance::Derived("slice formula c = 2 sigma_0/sigma_1 with inner mean 2|t|/pi".into()),
            4.0 / (std::f64::consts::PI * std::f64::consts::PI),
            1e-4,
            false,
            || {
                let phi = abs_t_theta2(3);
                let p = DualApplyParams::unchecked(128);
                cluster_mean(
                    |w: &[f64], u: &[f64]| dual_apply(&phi, w, u, &p).unwrap(),
                    &e(3, 0),
                    1.0,
                    128,
                )
            },
        ));
        cases.push(TestCase {
            name: "abs-t-theta2-n3".into(),
            dimension: 3,
            line_function: None,
            hyperplane_function: Some(abs_t_theta2(3)),
            checks,
        });
    }

    // Even Gaussian hyperplane function: the even-route round trip.
    {
        let checks = vec![Check::new(
            "even-inverse-round-trip-t1",
            Provenance::Derived("dual transform quadrature then even-route inverse".into()),
            (-1.0f64).exp(),
            1e-2,
            true,
            || {
                let phi = HyperplaneFunction::from_fn(
                    3,
                    |_: &[f64], t: f64| (-t * t).exp(),
                    true,
                    20.0,
                );
                let dual_params = DualApplyParams::unchecked(16);
                let grid = SphereGrid::cached(3, 8)?;
                let basis = Arc::new(HarmonicBasis::new(grid, 2)?);
                let rec = dual_invert_even(
                    |w: &[f64], u: &[f64]| dual_apply(&phi, w, u, &dual_params).unwrap(),
                    basis,
                    &EvenInversionParams {
                        r_max: 3.0,
                        radial_order: 32,
                        cluster_resolution: 16,
                        validate_round_trip: true,
                    },
                )?;
                Ok(rec.eval(&crate::linalg::normalize(&[0.3, 0.3, 0.9]), 1.0))
            },
        )];
        cases.push(TestCase {
            name: "gaussian-hyperplane-even-n3".into(),
            dimension: 3,
            line_function: None,
            hyperplane_function: Some(HyperplaneFunction::from_fn(
                3,
                |_: &[f64], t: f64| (-t * t).exp(),
                true,
                20.0,
            )),
            checks,
        });
    }

    // Kelvin pair, n = 3: consistency of the closed form and both
    // general-route inversions.
    {
        let mut checks = Vec::new();
        checks.push(Check::new(
            "dual-quadrature-vs-closed-form",
            Provenance::Derived("plane-transform algebra: A phi is the unit Gaussian".into()),
            kelvin_pair_dual(&[0.0, 1.5, 0.0]),
            1e-4,
            true,
            || {
                let phi = kelvin_pair(3);
                dual_apply(
                    &phi,
                    &e(3, 0),
                    &crate::linalg::scale(&e(3, 1), 1.5),
                    &DualApplyParams::unchecked(64),
                )
            },
        ));
        checks.push(Check::new(
            "kelvin-local-limit-h1",
            Provenance::Derived("round trip against the analytic pair value e^{-1}".into()),
            (-1.0f64).exp(),
            2e-2,
            true,
            || {
                let class = WeightedClassParams::cmu(10.0, 3)?;
                let h = Hyperplane::new(e(3, 0), 1.0)?;
                kelvin_invert(
                    |_w: &[f64], u: &[f64]| kelvin_pair_dual(u),
                    class,
                    &h,
                    &KelvinParams::default(),
                )
            },
        ));
        checks.push(Check::new(
            "kelvin-marchaud-h1",
            Provenance::Derived("round trip against the analytic pair value e^{-1}".into()),
            (-1.0f64).exp(),
            3e-2,
            true,
            || {
                let class = WeightedClassParams::cmu(10.0, 3)?;
                let h = Hyperplane::new(e(3, 0), 1.0)?;
                kelvin_invert_marchaud(
                    |_w: &[f64], u: &[f64]| kelvin_pair_dual(u),
                    class,
                    &h,
                    1,
                    &KelvinParams::default(),
                )
            },
        ));
        checks.push(Check::new(
            "kelvin-route-agreement-h0.8",
            Provenance::Derived("two inversion formulas for one target".into()),
            0.0,
            3e-2,
            false,
            || {
                let class = WeightedClassParams::cmu(10.0, 3)?;
                let h = Hyperplane::new(crate::linalg::normalize(&[1.0, 1.0, 0.5]), 0.8)?;
                let params = KelvinParams::default();
                let a = kelvin_invert(
                    |_w: &[f64], u: &[f64]| kelvin_pair_dual(u),
                    class,
                    &h,
                    &params,
                )?;
                let b = kelvin_invert_marchaud(
                    |_w: &[f64], u: &[f64]| kelvin_pair_dual(u),
                    class,
                    &h,
                    1,
                    &params,
                )?;
                Ok((a - b).abs() / a.abs().max(1e-3))
            },
        ));
        cases.push(TestCase {
            name: "kelvin-pair-n3".into(),
            dimension: 3,
            line_function: Some(Arc::new(|_w: &[f64], u: &[f64]| kelvin_pair_dual(u))),
            hyperplane_function: Some(kelvin_pair(3)),
            checks,
        });
    }

    // theta2 t: not even in t; the pointwise route recovers it and the
    // even route must reject it.
    {
        let mut checks = Vec::new();
        checks.push(Check::new(
            "pointwise-recovery",
            Provenance::Derived("round trip through the redundant parametrization".into()),
            0.8,
            1e-3,
            false,
            || {
                let phi =
                    HyperplaneFunction::from_fn(3, |th: &[f64], t: f64| th[1] * t, false, 2.0);
                let p = DualApplyParams::unchecked(48);
                let grid = SphereGrid::cached(3, 12)?;
                let basis = HarmonicBasis::new(grid, 8)?;
                dual_invert_pointwise(
                    |w: &[f64], x: &[f64]| dual_r1(&phi, w, x, &p).unwrap(),
                    &e(3, 1),
                    0.8,
                    &basis,
                )
            },
        ));
        checks.push(Check::new(
            "even-route-rejects",
            Provenance::Trivial,
            1.0,
            0.0,
            false,
            || {
                let phi =
                    HyperplaneFunction::from_fn(3, |th: &[f64], t: f64| th[1] * t, false, 2.0);
                let p = DualApplyParams::unchecked(24);
                let grid = SphereGrid::cached(3, 8)?;
                let basis = Arc::new(HarmonicBasis::new(grid, 4)?);
                match dual_invert_even(
                    |w: &[f64], u: &[f64]| dual_apply(&phi, w, u, &p).unwrap(),
                    basis,
                    &EvenInversionParams {
                        r_max: 3.0,
                        radial_order: 24,
                        cluster_resolution: 16,
                        validate_round_trip: true,
                    },
                ) {
                    Err(RadonError::NotEven { .. }) => Ok(1.0),
                    Err(e) => Err(e),
                    Ok(_) => Ok(0.0),
                }
            },
        ));
        cases.push(TestCase {
            name: "theta2t-noneven-n3".into(),
            dimension: 3,
            line_function: None,
            hyperplane_function: Some(HyperplaneFunction::from_fn(
                3,
                |th: &[f64], t: f64| th[1] * t,
                false,
                2.0,
            )),
            checks,
        });
    }

    // phi_p at the critical index: rejected by the class gate, and the
    // bypassed quadrature grows past 10^3.
    {
        let mut checks = Vec::new();
        checks.push(Check::new(
            "class-gate-rejects",
            Provenance::Trivial,
            1.0,
            0.0,
            false,
            || {
                let p = 3.0 / (3.0 - 2.0);
                match WeightedClassParams::lp(p, 3) {
                    Err(RadonError::ClassViolation { .. }) => Ok(1.0),
                    Err(e) => Err(e),
                    Ok(_) => Ok(0.0),
                }
            },
        ));
        checks.push(Check::new(
            "quadrature-divergence",
            Provenance::Derived("monotone growth past 1e3 under four resolution doublings".into()),
            1.0,
            0.0,
            false,
            || {
                let phi = phi_p_function(3, 3.0);
                let dir = crate::linalg::normalize(&[0.0, 0.83, 0.5572]);
                let u = crate::linalg::scale(&dir, 1e-4);
                let values = dual_apply_refinement(&phi, &e(3, 0), &u, 64, 4);
                let monotone = values.windows(2).all(|w| w[1] > w[0]);
                let past = values.last().copied().unwrap_or(0.0) > 1e3;
                Ok(if monotone && past { 1.0 } else { 0.0 })
            },
        ));
        cases.push(TestCase {
            name: "phi-p-critical-n3".into(),
            dimension: 3,
            line_function: None,
            hyperplane_function: Some(phi_p_function(3, 3.0)),
            checks,
        });
    }

    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_structure() {
        let suite = analytic_suite();
        assert!(suite.len() >= 8, "suite has {} cases", suite.len());
        // All four inversion routes are exercised.
        let labels: Vec<String> = suite
            .iter()
            .flat_map(|c| c.checks.iter().map(|ch| ch.label.clone()))
            .collect();
        assert!(labels.iter().any(|l| l.contains("round-trip")));
        assert!(labels.iter().any(|l| l.contains("even-inverse")));
        assert!(labels.iter().any(|l| l.contains("kelvin")));
        assert!(labels.iter().any(|l| l.contains("pointwise")));
        // The literature-anchored values are present.
        let paper_values: Vec<f64> = suite
            .iter()
            .flat_map(|c| c.checks.iter())
            .filter(|ch| matches!(ch.provenance, Provenance::Paper))
            .map(|ch| ch.expected)
            .collect();
        assert!(paper_values.iter().any(|&v| (v - 0.5).abs() < 1e-12));
        assert!(paper_values
            .iter()
            .any(|&v| (v - 1.0 / std::f64::consts::PI).abs() < 1e-12));
    }

    #[test]
    fn oracle_compare_modes() {
        assert!(oracle_compare(3.1415, (3.1413, 0.001), 3.0));
        assert!(!oracle_compare(3.2, (3.1413, 0.001), 3.0));
        assert!(oracle_compare(1.0, (1.0000004, 0.0), 1e-6));
    }

    #[test]
    fn fast_checks_pass_and_serialize() {
        // Run the cheap literature-anchored case end to end and make sure
        // the report serializes.
        let suite = analytic_suite();
        let case = suite
            .iter()
            .find(|c| c.name == "abs-t-theta2-n3")
            .expect("case present");
        for check in &case.checks {
            let got = check.run().unwrap();
            let bound = if check.relative {
                check.tolerance * check.expected.abs()
            } else {
                check.tolerance
            };
            assert!(
                (got - check.expected).abs() <= bound,
                "{}: got={got} expected={}",
                check.label,
                check.expected
            );
        }
        let report = run_suite_single("abs-t-theta2-n3");
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"Paper\""));
    }

    fn run_suite_single(name: &str) -> Vec<CaseReport> {
        let mut out = Vec::new();
        for case in analytic_suite() {
            if case.name != name {
                continue;
            }
            for check in &case.checks {
                let got = check.run().ok();
                out.push(CaseReport {
                    case: case.name.clone(),
                    label: check.label.clone(),
                    expected: check.expected,
                    got,
                    provenance: check.provenance.clone(),
                    tolerance: check.tolerance,
                    relative: check.relative,
                    pass: true,
                    error: None,
                });
            }
        }
        out
    }
}
