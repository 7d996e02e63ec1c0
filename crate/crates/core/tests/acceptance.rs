//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`). Tolerances are pinned in the
//! assertions; timed criteria also assert their runtime budgets.

use std::sync::Arc;
use std::time::Instant;

use radon_lines::dual_transform::{
    dual_apply, dual_apply_refinement, dual_invert_even, duality_check, DualApplyParams,
    EvenInversionParams, WeightedClassParams,
};
use radon_lines::error::RadonError;
use radon_lines::fracint::{
    ek_derivative, ek_integral, kappa, kappa_numeric, FractionalOrder, RadialSamples, Side,
};
use radon_lines::geometry::Hyperplane;
use radon_lines::kelvin_route::{kelvin_invert, kelvin_invert_marchaud, KelvinParams};
use radon_lines::linalg::normalize;
use radon_lines::radon_line::{
    radon_forward_quasiradial, radon_invert, HyperplaneFunction, InversionParams,
    QuasiRadialFunction,
};
use radon_lines::spherical::{
    funk_forward, funk_inverse_abel, funk_inverse_spectral, funk_multiplier, AbelInverseParams,
    HarmonicBasis, SphereGrid,
};
use radon_lines::testlib::{abs_t_theta2, kelvin_pair, phi_p_function};

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {number} ({name}): {status} — {detail}");
    assert!(pass, "acceptance {number} ({name}) failed: {detail}");
}

fn e(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

#[test]
fn acceptance_1_paper_values() {
    let start = Instant::now();
    let phi = abs_t_theta2(3);
    let params = DualApplyParams::new(192);
    let a = dual_apply(&phi, &e(3, 0), &e(3, 1), &params).unwrap();
    let b = dual_apply(&phi, &e(3, 0), &e(3, 2), &params).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let err_a = (a - 0.5).abs();
    let err_b = (b - 1.0 / std::f64::consts::PI).abs();
    let pass = err_a <= 1e-4 && err_b <= 1e-4 && elapsed < 1.0;
    report(
        1,
        "dual transform of |t theta2| at (e1,e2) and (e1,e3)",
        pass,
        &format!(
            "got ({a:.6}, {b:.6}), errors ({err_a:.1e}, {err_b:.1e}), {elapsed:.2} s"
        ),
    );
}

#[test]
fn acceptance_2_quasiradial_round_trip() {
    let radii = [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0];
    let mut detail = String::new();
    let mut pass = true;
    for n in [3usize, 4] {
        for harmonic in [false, true] {
            let start = Instant::now();
            let res = if n == 3 { 8 } else { 6 };
            let grid = SphereGrid::cached(n, res).unwrap();
            let basis = Arc::new(HarmonicBasis::new(grid, 4).unwrap());
            let f = if harmonic {
                QuasiRadialFunction::from_fn(
                    |w: &[f64], r: f64| w[2] * w[2] * (-r * r).exp(),
                    basis.clone(),
                    8.0,
                    48,
                    30.0,
                )
                .unwrap()
            } else {
                QuasiRadialFunction::from_fn(
                    |_w: &[f64], r: f64| (-r * r).exp(),
                    basis.clone(),
                    8.0,
                    48,
                    30.0,
                )
                .unwrap()
            };
            let fwd = f.clone();
            let g = HyperplaneFunction::from_fn(
                n,
                move |theta: &[f64], t: f64| radon_forward_quasiradial(&fwd, theta, t).unwrap(),
                true,
                25.0,
            );
            let inv = radon_invert(&g, basis, &InversionParams::default()).unwrap();
            let omegas: Vec<Vec<f64>> = vec![e(n, 2), normalize(&vec![1.0; n])];
            let mut worst: f64 = 0.0;
            for omega in &omegas {
                for &r in &radii {
                    let expected = if harmonic {
                        omega[2] * omega[2] * (-r * r as f64).exp()
                    } else {
                        (-r * r as f64).exp()
                    };
                    let got = inv.f0.eval(omega, r);
                    worst = worst.max(((got - expected) / expected).abs());
                }
            }
            let elapsed = start.elapsed().as_secs_f64();
            let ok = worst <= 1e-3 && elapsed < 30.0;
            pass &= ok;
            detail.push_str(&format!(
                "n={n} {}: rel {worst:.1e} in {elapsed:.1} s; ",
                if harmonic { "w3^2 gaussian" } else { "gaussian" }
            ));
        }
    }
    report(2, "quasi-radial forward/inverse round trip", pass, &detail);
}

#[test]
fn acceptance_3_even_dual_round_trip() {
    let mut pass = true;
    let mut detail = String::new();
    for n in [3usize, 4] {
        let phi =
            HyperplaneFunction::from_fn(n, |_: &[f64], t: f64| (-t * t).exp(), true, 20.0);
        let res = if n == 3 { 8 } else { 4 };
        let grid = SphereGrid::cached(n, res).unwrap();
        let basis = Arc::new(HarmonicBasis::new(grid, 2).unwrap());
        let dual_params = DualApplyParams::unchecked(if n == 3 { 16 } else { 8 });
        let rec = dual_invert_even(
            |w: &[f64], u: &[f64]| dual_apply(&phi, w, u, &dual_params).unwrap(),
            basis,
            &EvenInversionParams {
                r_max: 3.0,
                radial_order: 32,
                cluster_resolution: if n == 3 { 16 } else { 8 },
                validate_round_trip: true,
            },
        )
        .unwrap();
        let theta = normalize(&vec![0.4; n]);
        let mut worst: f64 = 0.0;
        for t in [0.2, 0.5, 0.8, 1.2, 1.6, 2.0] {
            let got = rec.eval(&theta, t);
            let expected = (-t * t as f64).exp();
            worst = worst.max(((got - expected) / expected).abs());
        }
        pass &= worst <= 1e-2;
        detail.push_str(&format!("n={n}: rel {worst:.1e}; "));
    }
    report(3, "even hyperplane function recovered from R*", pass, &detail);
}

#[test]
fn acceptance_4_kelvin_route() {
    let start = Instant::now();
    let phi = kelvin_pair(3);
    let class = WeightedClassParams::cmu(10.0, 3).unwrap();
    let dual_params = DualApplyParams::unchecked(32);
    let f_dual = |w: &[f64], u: &[f64]| dual_apply(&phi, w, u, &dual_params).unwrap();
    let params = KelvinParams::default();
    let mut pass = true;
    let mut detail = String::new();
    for level in [0.5f64, 1.0, 2.0] {
        let h = Hyperplane::new(e(3, 0), level).unwrap();
        let expected = phi.eval(h.normal(), h.level());
        let local = kelvin_invert(f_dual, class, &h, &params).unwrap();
        let difference = kelvin_invert_marchaud(f_dual, class, &h, 1, &params).unwrap();
        let rel_local = ((local - expected) / expected).abs();
        let rel_march = ((difference - expected) / expected).abs();
        let rel_agree = ((local - difference) / expected).abs();
        pass &= rel_local <= 3e-2 && rel_march <= 3e-2 && rel_agree <= 3e-2;
        detail.push_str(&format!(
            "|h|={level}: local {rel_local:.1e}, marchaud {rel_march:.1e}, agree {rel_agree:.1e}; "
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 300.0;
    detail.push_str(&format!("{elapsed:.0} s total"));
    report(4, "Kelvin-route inversions of the Gaussian pair", pass, &detail);
}

#[test]
fn acceptance_5_erdelyi_kober_calculus() {
    let mut pass = true;
    let mut detail = String::new();

    // Gaussian fixed point.
    let gauss = RadialSamples::from_fn(
        |r: f64| (-r * r).exp(),
        RadialSamples::uniform_grid(1e-3, 8.5, 160),
        30.0,
    )
    .unwrap();
    let mut worst_fp: f64 = 0.0;
    for alpha in [0.5, 1.0, 1.5, 2.0] {
        let order = FractionalOrder::minus(alpha).unwrap();
        for t in [0.1, 0.4, 0.9, 1.6, 2.4, 3.0] {
            let got = ek_integral(&gauss, order, t).unwrap();
            worst_fp = worst_fp.max((got - (-t * t as f64).exp()).abs());
        }
    }
    pass &= worst_fp <= 1e-8;
    detail.push_str(&format!("fixed point {worst_fp:.1e}; "));

    // Left inverse in every dimension, both sides.
    let profile = |r: f64| (-r * r).exp() * (1.0 + 0.3 * r * r);
    let mut worst_li: f64 = 0.0;
    for n in 3..=6usize {
        let alpha = n as f64 / 2.0 - 1.0;
        for side in [Side::Minus, Side::Plus] {
            let chi = RadialSamples::from_fn(
                profile,
                RadialSamples::uniform_grid(1e-3, 9.0, 160),
                30.0,
            )
            .unwrap();
            let order = FractionalOrder::new(alpha, side).unwrap();
            let integrated = RadialSamples::from_fn(
                {
                    let chi = chi.clone();
                    move |r: f64| ek_integral(&chi, order, r).unwrap()
                },
                RadialSamples::uniform_grid(1e-3, 9.0, 100),
                if side == Side::Minus { 30.0 } else { 5.0 },
            )
            .unwrap();
            for t in [0.3, 0.8, 1.6] {
                let got = ek_derivative(&integrated, n, side, t).unwrap();
                worst_li = worst_li.max(((got - profile(t)) / profile(t)).abs());
            }
        }
    }
    pass &= worst_li <= 1e-6;
    detail.push_str(&format!("left inverse {worst_li:.1e}; "));

    // kappa constants against their closed forms and the defining integral.
    let k13 = kappa(1, 3).unwrap();
    let k13_num = kappa_numeric(1, 3).unwrap();
    let k24 = kappa(2, 4).unwrap();
    let k24_num = kappa_numeric(2, 4).unwrap();
    let e13 = (k13 - 2.0 * std::f64::consts::PI.sqrt())
        .abs()
        .max((k13_num - 2.0 * std::f64::consts::PI.sqrt()).abs());
    let e24 = (k24 - 2.0 * 2f64.ln()).abs().max((k24_num - 2.0 * 2f64.ln()).abs());
    pass &= e13 <= 1e-8 && e24 <= 1e-6;
    detail.push_str(&format!("kappa(1,3) err {e13:.1e}, kappa(2,4) err {e24:.1e}"));

    report(5, "Erdelyi-Kober calculus identities", pass, &detail);
}

#[test]
fn acceptance_6_funk_identities() {
    let mut pass = true;
    let mut detail = String::new();

    // Spectral identity on even harmonics up to degree 8, n = 3 and 4.
    let mut worst: f64 = 0.0;
    for n in [3usize, 4] {
        let res = 10usize;
        let grid = SphereGrid::cached(n, res).unwrap();
        let basis = HarmonicBasis::new(grid.clone(), 8).unwrap();
        let equator = SphereGrid::cached_any(n - 1, res);
        for k in (2..=8).step_by(2) {
            let nk = radon_lines::special::harmonic_dim(n, k);
            let mut coefs: Vec<Vec<f64>> = (0..=8)
                .map(|d| vec![0.0; radon_lines::special::harmonic_dim(n, d)])
                .collect();
            for m in 0..nk {
                coefs[k][m] = ((m + 2) as f64 * 0.61).cos();
            }
            let expansion = basis.make_expansion(coefs, 1.0);
            let yf = radon_lines::spherical::SphereFunction::Expansion(expansion.clone());
            let lam = funk_multiplier(k, n);
            for i in (0..grid.len()).step_by(11) {
                let theta = grid.node(i);
                let lhs = funk_forward(&yf, theta, &equator);
                worst = worst.max((lhs - lam * expansion.eval(theta)).abs());
            }
        }
    }
    pass &= worst <= 1e-8;
    detail.push_str(&format!("spectral identity {worst:.1e}; "));

    // Abel-route inverse against the spectral inverse, n = 3.
    let f = |x: &[f64]| (x[2] * x[2] - 0.25 * x[0] * x[1]).exp();
    let g_fun = radon_lines::spherical::SphereFunction::from_fn(f);
    let grid = SphereGrid::cached(3, 16).unwrap();
    let basis = HarmonicBasis::new(grid, 14).unwrap();
    let equator = SphereGrid::cached_any(2, 16);
    let forward = {
        let eq = equator.clone();
        radon_lines::spherical::SphereFunction::from_fn(move |theta: &[f64]| {
            funk_forward(&g_fun, theta, &eq)
        })
    };
    let spectral = funk_inverse_spectral(&forward, &basis, 0.0).unwrap();
    let abel_params = AbelInverseParams {
        equator_resolution: 24,
        s_quad_points: 64,
        cheb_order: 40,
        ..Default::default()
    };
    let mut worst_abel: f64 = 0.0;
    for omega in [e(3, 2), normalize(&[0.6, 0.5, 0.3]), normalize(&[-0.2, 0.9, 0.1])] {
        let a = funk_inverse_abel(&forward, &omega, &abel_params).unwrap();
        let s = spectral.eval(&omega);
        worst_abel = worst_abel.max(((a - s) / s.abs().max(1.0)).abs());
    }
    pass &= worst_abel <= 1e-3;
    detail.push_str(&format!("abel vs spectral {worst_abel:.1e}"));

    report(6, "Funk transform identities", pass, &detail);
}

#[test]
fn acceptance_7_duality() {
    let mut pass = true;
    let mut detail = String::new();
    for (n, seed) in [(3usize, 301u64), (4, 402)] {
        let res = if n == 3 { 8 } else { 6 };
        let grid = SphereGrid::cached(n, res).unwrap();
        let basis = Arc::new(HarmonicBasis::new(grid, 2).unwrap());
        let f = QuasiRadialFunction::from_fn(
            |_w: &[f64], r: f64| (-r * r).exp(),
            basis,
            8.0,
            40,
            30.0,
        )
        .unwrap();
        let phi = HyperplaneFunction::from_fn(n, |_: &[f64], t: f64| (-t * t).exp(), true, 20.0);
        let check = duality_check(&f, &phi, 100_000, seed, 12).unwrap();
        let sigma = check.sigma_distance();
        pass &= sigma <= 3.0;
        detail.push_str(&format!(
            "n={n}: <Rf,phi>={:.5} <f,R*phi>={:.5} ({sigma:.2} sigma); ",
            check.lhs, check.rhs
        ));
    }
    report(7, "duality pairing by Monte Carlo", pass, &detail);
}

#[test]
fn acceptance_8_divergence_gate() {
    let n = 3usize;
    let critical = n as f64 / (n as f64 - 2.0);
    let gate = matches!(
        WeightedClassParams::lp(critical, n),
        Err(RadonError::ClassViolation { .. })
    );

    let phi = phi_p_function(n, critical);
    let dir = normalize(&[0.0, 0.83, 0.5572]);
    let u: Vec<f64> = dir.iter().map(|v| v * 1e-4).collect();
    let values = dual_apply_refinement(&phi, &e(3, 0), &u, 64, 4);
    let monotone = values.windows(2).all(|w| w[1] > w[0]);
    let past_bound = values.last().copied().unwrap_or(0.0) > 1e3;
    let finite = values.iter().all(|v| v.is_finite());

    let pass = gate && monotone && past_bound && finite;
    report(
        8,
        "critical-index family rejected and quadrature divergent",
        pass,
        &format!("gate={gate}, refinement values {values:?}"),
    );
}
