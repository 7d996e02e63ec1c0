//! Small dense-vector helpers shared by the geometry and sphere modules.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn normalize(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    scale(a, 1.0 / n)
}

pub fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Remove from `v` its components along each (orthonormal) row of `basis`.
pub fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(v, b);
        axpy(v, -c, b);
    }
}

/// Complete `seed` (assumed linearly independent) to an orthonormal basis of
/// R^n by modified Gram-Schmidt over the coordinate axes, with one
/// re-orthogonalization pass per vector.
pub fn orthonormal_completion(seed: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(n);
    for s in seed {
        let mut v = s.clone();
        project_out(&mut v, &frame);
        project_out(&mut v, &frame);
        let nv = norm(&v);
        assert!(nv > 1e-10, "seed vectors must be linearly independent");
        frame.push(scale(&v, 1.0 / nv));
    }
    let mut axis = 0usize;
    while frame.len() < n {
        assert!(axis < n, "failed to complete frame");
        let mut v = vec![0.0; n];
        v[axis] = 1.0;
        axis += 1;
        project_out(&mut v, &frame);
        project_out(&mut v, &frame);
        let nv = norm(&v);
        if nv > 1e-6 {
            frame.push(scale(&v, 1.0 / nv));
        }
    }
    frame
}

/// True if -v is lexicographically larger than v.
pub fn antipode_is_larger(v: &[f64]) -> bool {
    for &x in v {
        if x > 0.0 {
            return false;
        }
        if x < 0.0 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_is_orthonormal() {
        let seed = vec![normalize(&[1.0, 2.0, -1.0, 0.5])];
        let frame = orthonormal_completion(&seed, 4);
        assert_eq!(frame.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot(&frame[i], &frame[j]) - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn antipode_ordering() {
        assert!(antipode_is_larger(&[-1.0, 0.0]));
        assert!(!antipode_is_larger(&[1.0, -5.0]));
        assert!(antipode_is_larger(&[0.0, -0.2, 3.0]));
    }
}
