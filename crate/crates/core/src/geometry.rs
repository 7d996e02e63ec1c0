//! Parametrizations of lines, hyperplanes, and general affine k-planes in
//! R^n, together with the quasi-orthogonal inversion map.
//!
//! A k-plane is stored as an orthonormal basis of its direction subspace
//! plus the offset vector from the origin, which is kept orthogonal to the
//! basis. Lines and hyperplanes are non-oriented: `Line(w, u)` equals
//! `Line(-w, u)` and `Hyperplane(t, s)` equals `Hyperplane(-t, -s)`; a
//! canonical representative (the lexicographically larger of the two) is
//! stored so that equality and hashing are deterministic.

use crate::error::{RadonError, Result};
use crate::linalg::{antipode_is_larger, dot, norm, orthonormal_completion, project_out, scale};

/// Planes closer to the origin than this have no quasi-orthogonal image.
pub const ORIGIN_PLANE_THRESHOLD: f64 = 1e-14;

const ORTHO_TOL: f64 = 1e-12;

/// Affine k-plane in R^n: span of `basis` translated by `offset`, with
/// `offset` orthogonal to the span. k = 0 encodes a point.
#[derive(Debug, Clone)]
pub struct AffinePlane {
    dim_ambient: usize,
    basis: Vec<Vec<f64>>,
    offset: Vec<f64>,
}

impl AffinePlane {
    pub fn new(dim_ambient: usize, basis: Vec<Vec<f64>>, offset: Vec<f64>) -> Result<Self> {
        if dim_ambient < 3 {
            return Err(RadonError::UnsupportedDimension {
                n: dim_ambient,
                min: 3,
                max: usize::MAX,
            });
        }
        if basis.len() >= dim_ambient || offset.len() != dim_ambient {
            return Err(RadonError::InvalidInput(format!(
                "plane dimension {} and offset length {} inconsistent with ambient {}",
                basis.len(),
                offset.len(),
                dim_ambient
            )));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.len() != dim_ambient {
                return Err(RadonError::InvalidInput(
                    "basis vector length mismatch".into(),
                ));
            }
            if (norm(b) - 1.0).abs() > ORTHO_TOL {
                return Err(RadonError::InvalidInput(format!(
                    "basis vector {i} is not unit length"
                )));
            }
            for other in basis.iter().take(i) {
                if dot(b, other).abs() > ORTHO_TOL {
                    return Err(RadonError::InvalidInput(
                        "basis vectors are not orthogonal".into(),
                    ));
                }
            }
            if dot(b, &offset).abs() > ORTHO_TOL {
                return Err(RadonError::InvalidInput(
                    "offset is not orthogonal to the basis".into(),
                ));
            }
        }
        Ok(AffinePlane {
            dim_ambient,
            basis,
            offset,
        })
    }

    /// A point, seen as a 0-plane.
    pub fn point(x: Vec<f64>) -> Result<Self> {
        let n = x.len();
        AffinePlane::new(n, Vec::new(), x)
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim_plane(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    /// Euclidean distance from the origin.
    pub fn distance(&self) -> f64 {
        norm(&self.offset)
    }

    /// A point on the plane: offset plus a combination of basis vectors.
    pub fn point_at(&self, coords: &[f64]) -> Vec<f64> {
        let mut p = self.offset.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            crate::linalg::axpy(&mut p, *c, b);
        }
        p
    }
}

/// Frobenius distance between the orthogonal projectors onto the two
/// direction subspaces, plus nothing else; use together with offsets to
/// compare planes.
pub fn subspace_distance(a: &AffinePlane, b: &AffinePlane) -> f64 {
    let n = a.dim_ambient;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let pa: f64 = a.basis.iter().map(|v| v[i] * v[j]).sum();
            let pb: f64 = b.basis.iter().map(|v| v[i] * v[j]).sum();
            acc += (pa - pb) * (pa - pb);
        }
    }
    acc.sqrt()
}

/// Non-oriented line {w} + u with u perpendicular to the unit direction w.
#[derive(Debug, Clone)]
pub struct Line {
    direction: Vec<f64>,
    offset: Vec<f64>,
}

impl Line {
    pub fn new(direction: Vec<f64>, offset: Vec<f64>) -> Result<Self> {
        if direction.len() != offset.len() {
            return Err(RadonError::InvalidInput("length mismatch".into()));
        }
        if (norm(&direction) - 1.0).abs() > ORTHO_TOL {
            return Err(RadonError::InvalidInput("direction is not unit".into()));
        }
        if dot(&direction, &offset).abs() > ORTHO_TOL {
            return Err(RadonError::InvalidInput(
                "offset not orthogonal to direction".into(),
            ));
        }
        let direction = if antipode_is_larger(&direction) {
            scale(&direction, -1.0)
        } else {
            direction
        };
        Ok(Line { direction, offset })
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn distance(&self) -> f64 {
        norm(&self.offset)
    }

    pub fn as_plane(&self) -> AffinePlane {
        AffinePlane::new(
            self.direction.len(),
            vec![self.direction.clone()],
            self.offset.clone(),
        )
        .expect("line is a valid 1-plane")
    }
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        self.direction
            .iter()
            .zip(&other.direction)
            .all(|(a, b)| (a - b).abs() <= ORTHO_TOL)
            && self
                .offset
                .iter()
                .zip(&other.offset)
                .all(|(a, b)| (a - b).abs() <= ORTHO_TOL)
    }
}

/// Non-oriented hyperplane {x : x . normal = level}.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    normal: Vec<f64>,
    level: f64,
}

impl Hyperplane {
    pub fn new(normal: Vec<f64>, level: f64) -> Result<Self> {
        if (norm(&normal) - 1.0).abs() > ORTHO_TOL {
            return Err(RadonError::InvalidInput("normal is not unit".into()));
        }
        let mut stacked = normal.clone();
        stacked.push(level);
        let (normal, level) = if antipode_is_larger(&stacked) {
            (scale(&normal, -1.0), -level)
        } else {
            (normal, level)
        };
        Ok(Hyperplane { normal, level })
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn dim_ambient(&self) -> usize {
        self.normal.len()
    }

    /// Distance from the origin, |level|.
    pub fn distance(&self) -> f64 {
        self.level.abs()
    }

    pub fn as_plane(&self) -> AffinePlane {
        let n = self.normal.len();
        let frame = orthonormal_completion(&[self.normal.clone()], n);
        let basis = frame[1..].to_vec();
        let offset = scale(&self.normal, self.level);
        AffinePlane::new(n, basis, offset).expect("hyperplane is a valid (n-1)-plane")
    }
}

impl PartialEq for Hyperplane {
    fn eq(&self, other: &Self) -> bool {
        (self.level - other.level).abs() <= ORTHO_TOL
            && self
                .normal
                .iter()
                .zip(&other.normal)
                .all(|(a, b)| (a - b).abs() <= ORTHO_TOL)
    }
}

/// Cluster cl(w, r): all lines with direction w at distance r from the
/// central line through the origin.
#[derive(Debug, Clone)]
pub struct LineCluster {
    pub direction: Vec<f64>,
    pub radius: f64,
}

impl LineCluster {
    pub fn new(direction: Vec<f64>, radius: f64) -> Result<Self> {
        if radius <= 0.0 {
            return Err(RadonError::NonPositivePoint { point: radius });
        }
        let direction = if antipode_is_larger(&direction) {
            scale(&direction, -1.0)
        } else {
            direction
        };
        Ok(LineCluster { direction, radius })
    }
}

/// Quasi-orthogonal inversion: the k-plane (xi, u) maps to the
/// (n-k-1)-plane with direction {xi, u}^perp and offset -u/|u|^2. It is an
/// involution and |nu(plane)| = 1/|plane|.
pub fn nu_map(plane: &AffinePlane) -> Result<AffinePlane> {
    let n = plane.dim_ambient;
    let r = plane.distance();
    if r < ORIGIN_PLANE_THRESHOLD {
        return Err(RadonError::OriginPlane {
            threshold: ORIGIN_PLANE_THRESHOLD,
        });
    }
    let mut seed = plane.basis.clone();
    seed.push(scale(&plane.offset, 1.0 / r));
    let frame = orthonormal_completion(&seed, n);
    let new_basis = frame[plane.dim_plane() + 1..].to_vec();
    let mut new_offset = scale(&plane.offset, -1.0 / (r * r));
    // Numerical cleanup: keep the offset exactly orthogonal to the basis.
    project_out(&mut new_offset, &new_basis);
    AffinePlane::new(n, new_basis, new_offset)
}

/// Inverse of the nu map on points: x maps to the hyperplane with normal
/// x/|x| through -x/|x|^2, i.e. h(x/|x|, -1/|x|).
pub fn nu_inverse_point(x: &[f64]) -> Result<Hyperplane> {
    let r = norm(x);
    if r < ORIGIN_PLANE_THRESHOLD {
        return Err(RadonError::OriginPlane {
            threshold: ORIGIN_PLANE_THRESHOLD,
        });
    }
    Hyperplane::new(scale(x, 1.0 / r), -1.0 / r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn line_in_r3_maps_to_line() {
        // Line(e1, e2) -> 1-plane with direction span(e3), offset -e2.
        let line = Line::new(e(3, 0), e(3, 1)).unwrap();
        let img = nu_map(&line.as_plane()).unwrap();
        assert_eq!(img.dim_plane(), 1);
        assert!((img.basis()[0][2].abs() - 1.0).abs() < 1e-12);
        assert!((img.offset()[1] + 1.0).abs() < 1e-12);
        assert!(img.offset()[0].abs() < 1e-12 && img.offset()[2].abs() < 1e-12);
    }

    #[test]
    fn hyperplane_maps_to_point() {
        // h(e1, 2) -> point -e1/2 in any dimension.
        for n in 3..=6 {
            let h = Hyperplane::new(e(n, 0), 2.0).unwrap();
            let img = nu_map(&h.as_plane()).unwrap();
            assert_eq!(img.dim_plane(), 0);
            assert!((img.offset()[0] + 0.5).abs() < 1e-12);
            for i in 1..n {
                assert!(img.offset()[i].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn involution_on_a_line() {
        let line = Line::new(e(3, 0), scale(&e(3, 1), 3.0)).unwrap();
        let plane = line.as_plane();
        let twice = nu_map(&nu_map(&plane).unwrap()).unwrap();
        assert!(subspace_distance(&plane, &twice) < 1e-10);
        for i in 0..3 {
            assert!((plane.offset()[i] - twice.offset()[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn involution_and_distance_on_random_planes() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(3..=6);
            let k = rng.random_range(0..n);
            let mut seed: Vec<Vec<f64>> = Vec::new();
            for _ in 0..=k {
                seed.push((0..n).map(|_| rng.random::<f64>() - 0.5).collect());
            }
            let frame = orthonormal_completion(
                &seed
                    .iter()
                    .map(|v| crate::linalg::normalize(v))
                    .collect::<Vec<_>>(),
                n,
            );
            let basis = frame[..k].to_vec();
            let offset = scale(&frame[k], 0.2 + 3.0 * rng.random::<f64>());
            let plane = AffinePlane::new(n, basis, offset).unwrap();

            let img = nu_map(&plane).unwrap();
            assert_eq!(img.dim_plane(), n - k - 1);
            assert!((img.distance() * plane.distance() - 1.0).abs() < 1e-12);

            let back = nu_map(&img).unwrap();
            assert!(subspace_distance(&plane, &back) < 1e-10);
            for i in 0..n {
                assert!((plane.offset()[i] - back.offset()[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn nu_map_rejects_origin_planes() {
        let p = AffinePlane::new(3, vec![e(3, 0)], vec![0.0; 3]).unwrap();
        assert!(matches!(nu_map(&p), Err(RadonError::OriginPlane { .. })));
    }

    #[test]
    fn point_inverse_examples() {
        // x = e1 -> h(e1, -1), stored canonically as h(-e1, 1) or h(e1, -1).
        let h = nu_inverse_point(&e(3, 0)).unwrap();
        let expected = Hyperplane::new(e(3, 0), -1.0).unwrap();
        assert_eq!(h, expected);

        // x = 2 e2 -> h(e2, -1/2).
        let h = nu_inverse_point(&scale(&e(3, 1), 2.0)).unwrap();
        let expected = Hyperplane::new(e(3, 1), -0.5).unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn point_inverse_round_trip() {
        let x = scale(&normalize_vec(&[1.0, 1.0, 1.0]), 2.0);
        let h = nu_inverse_point(&x).unwrap();
        let img = nu_map(&h.as_plane()).unwrap();
        assert_eq!(img.dim_plane(), 0);
        for i in 0..3 {
            assert!((img.offset()[i] - x[i]).abs() < 1e-12);
        }
        fn normalize_vec(v: &[f64]) -> Vec<f64> {
            crate::linalg::normalize(v)
        }
    }

    #[test]
    fn antipodal_identification() {
        let a = Line::new(e(3, 0), e(3, 1)).unwrap();
        let b = Line::new(scale(&e(3, 0), -1.0), e(3, 1)).unwrap();
        assert_eq!(a, b);

        let h1 = Hyperplane::new(e(4, 2), -2.5).unwrap();
        let h2 = Hyperplane::new(scale(&e(4, 2), -1.0), 2.5).unwrap();
        assert_eq!(h1, h2);
    }

    #[test]
    fn cluster_requires_positive_radius() {
        assert!(LineCluster::new(e(3, 0), 0.0).is_err());
        assert!(LineCluster::new(e(3, 0), 1.5).is_ok());
    }
}
