//! Special-function helpers: Gamma, sphere surface areas, Gegenbauer
//! polynomials, and binomial coefficients.

/// Gamma function. Handles negative non-integer arguments.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// Surface area of the unit sphere S^m in R^{m+1}:
/// sigma_m = 2 pi^{(m+1)/2} / Gamma((m+1)/2).
///
/// sigma_0 = 2 (two points), sigma_1 = 2 pi, sigma_2 = 4 pi.
pub fn sphere_surface(m: usize) -> f64 {
    let half = (m as f64 + 1.0) / 2.0;
    2.0 * std::f64::consts::PI.powf(half) / gamma(half)
}

/// Gegenbauer (ultraspherical) polynomial C_k^lambda(x) by the three-term
/// recurrence
///   k C_k = 2x (k + lambda - 1) C_{k-1} - (k + 2 lambda - 2) C_{k-2}.
///
/// Stable for the moderate degrees used here (k <= 32).
pub fn gegenbauer(k: usize, lambda: f64, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0 * lambda * x,
        _ => {
            let mut c_prev = 1.0;
            let mut c = 2.0 * lambda * x;
            for j in 2..=k {
                let jf = j as f64;
                let c_next =
                    (2.0 * x * (jf + lambda - 1.0) * c - (jf + 2.0 * lambda - 2.0) * c_prev) / jf;
                c_prev = c;
                c = c_next;
            }
            c
        }
    }
}

/// Binomial coefficient C(n, k) as f64.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Dimension of the space of spherical harmonics of degree k on S^{n-1}.
pub fn harmonic_dim(n: usize, k: usize) -> usize {
    if k == 0 {
        return 1;
    }
    let c = |a: usize, b: usize| -> usize {
        if b > a {
            return 0;
        }
        let b = b.min(a - b);
        let mut acc: usize = 1;
        for i in 0..b {
            acc = acc * (a - i) / (i + 1);
        }
        acc
    };
    // C(n+k-1, k) - C(n+k-3, k-2)
    let first = c(n + k - 1, k);
    let second = if k >= 2 { c(n + k - 3, k - 2) } else { 0 };
    first - second
}
