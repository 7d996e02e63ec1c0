//! One-dimensional quadrature: Gauss-Jacobi rules by Golub-Welsch,
//! panel integration for smooth integrands, and Richardson extrapolation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::special::gamma;

/// Nodes and weights for the weight (1-x)^a (1+x)^b on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn jacobi_rule_uncached(m: usize, a: f64, b: f64) -> GaussRule {
    assert!(m >= 1 && a > -1.0 && b > -1.0);
    // Monic Jacobi recurrence coefficients.
    let mut diag = vec![0.0; m];
    let mut off = vec![0.0; m.saturating_sub(1)];
    diag[0] = (b - a) / (a + b + 2.0);
    for k in 1..m {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
    if m > 1 {
        off[0] = (4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0).powi(2) * (a + b + 3.0))).sqrt();
    }
    for k in 2..m {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let beta = 4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)
            / (s * s * (s + 1.0) * (s - 1.0));
        off[k - 1] = beta.sqrt();
    }

    let mut jac = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        jac[(i, i)] = diag[i];
        if i + 1 < m {
            jac[(i, i + 1)] = off[i];
            jac[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mu0 = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);

    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (node, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

type RuleKey = (usize, u64, u64);
static RULE_CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();

/// Gauss-Jacobi rule for weight (1-x)^a (1+x)^b on [-1, 1], cached by (m, a, b).
pub fn gauss_jacobi(m: usize, a: f64, b: f64) -> Arc<GaussRule> {
    let cache = RULE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (m, a.to_bits(), b.to_bits());
    let mut guard = cache.lock().unwrap();
    guard
        .entry(key)
        .or_insert_with(|| Arc::new(jacobi_rule_uncached(m, a, b)))
        .clone()
}

/// Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(m: usize) -> Arc<GaussRule> {
    gauss_jacobi(m, 0.0, 0.0)
}

/// Integrate f over [lo, hi] with an m-point Gauss-Legendre rule.
pub fn integrate_legendre<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, m: usize) -> f64 {
    let rule = gauss_legendre(m);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integral of (x - lo)^{alpha - 1} f(x) over [lo, hi] with the endpoint
/// singularity absorbed into a Gauss-Jacobi weight.
pub fn integrate_left_singular<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    alpha: f64,
    m: usize,
) -> f64 {
    let rule = gauss_jacobi(m, 0.0, alpha - 1.0);
    let half = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(lo + half * (1.0 + x));
    }
    acc * half.powf(alpha)
}

/// Integral of (hi - x)^{alpha - 1} f(x) over [lo, hi].
pub fn integrate_right_singular<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    alpha: f64,
    m: usize,
) -> f64 {
    let rule = gauss_jacobi(m, alpha - 1.0, 0.0);
    let half = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(lo + half * (1.0 + x));
    }
    acc * half.powf(alpha)
}

/// Integrate a smooth f over [lo, hi] on geometrically widening panels.
/// Suited to integrands that decay away from `lo`.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    first_width: f64,
    m: usize,
) -> f64 {
    let mut acc = 0.0;
    let mut a = lo;
    let mut width = first_width;
    while a < hi {
        let b = (a + width).min(hi);
        acc += integrate_legendre(&mut f, a, b, m);
        a = b;
        width *= 2.0;
    }
    acc
}

/// Integrate over [lo, hi) with panels shrinking geometrically toward `hi`,
/// for integrands with mild endpoint non-smoothness there. The sliver next
/// to `hi` (relative width ~1e-13) is dropped; its contribution is bounded
/// by the integrand's integrability.
pub fn integrate_panels_shrinking<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    m: usize,
) -> f64 {
    let span = hi - lo;
    let mut acc = 0.0;
    let mut a = lo;
    let mut frac = 0.5;
    while frac * span > 1e-13 * span.abs().max(1e-300) {
        let b = hi - frac * span;
        if b > a {
            acc += integrate_legendre(&mut f, a, b, m);
            a = b;
        }
        frac *= 0.5;
    }
    acc
}

/// Richardson extrapolation to h -> 0 under the error model
/// y(h) = y0 + sum_j c_j h^{powers[j]}, solved as a small linear system.
pub fn richardson(h: &[f64], y: &[f64], powers: &[f64]) -> f64 {
    assert_eq!(h.len(), y.len());
    assert!(!h.is_empty());
    let terms = powers.len().min(h.len() - 1);
    let rows = h.len();
    let cols = terms + 1;
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut rhs = nalgebra::DVector::<f64>::zeros(rows);
    for i in 0..rows {
        a[(i, 0)] = 1.0;
        for j in 0..terms {
            a[(i, j + 1)] = h[i].powf(powers[j]);
        }
        rhs[i] = y[i];
    }
    let sol = a
        .svd(true, true)
        .solve(&rhs, 1e-300)
        .expect("richardson solve");
    sol[0]
}
