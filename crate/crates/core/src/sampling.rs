//! Seeded random sampling: standard normals, uniform sphere points, and
//! Haar-distributed orthogonal matrices.

use nalgebra::DMatrix;
use rand::Rng;

/// Standard normal via Box-Muller.
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Uniform point on S^{n-1}.
pub fn uniform_sphere<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| standard_normal(rng)).collect();
        let norm = crate::linalg::norm(&v);
        if norm > 1e-8 {
            return crate::linalg::scale(&v, 1.0 / norm);
        }
    }
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// R-diagonal signs fixed (Mezzadri's construction).
pub fn haar_orthogonal<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let gauss = DMatrix::<f64>::from_fn(n, n, |_, _| standard_normal(rng));
    let qr = gauss.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}
