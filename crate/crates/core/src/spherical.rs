//! Quadrature and harmonic analysis on S^{n-1}, the Funk transform, and two
//! of its inverses.
//!
//! Grids are product rules: a Gauss-Jacobi rule in the polar coordinate
//! (weight (1 - s^2)^{(n-3)/2}) composed with a grid one dimension down,
//! bottoming out at a uniform midpoint rule on the circle. A grid built with
//! `resolution` integrates every spherical harmonic of degree <= 2*resolution
//! exactly, which makes discrete Gram matrices of harmonics up to degree
//! `resolution` equal to the continuous ones. Orthonormal bases of each
//! degree space are then obtained by a pivoted, weighted QR over zonal
//! functions centered at grid nodes; this works uniformly in the dimension.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

use crate::cheb::ChebSeries;
use crate::error::{RadonError, Result};
use crate::linalg::{antipode_is_larger, orthonormal_completion, scale};
use crate::quad::{gauss_jacobi, integrate_legendre, richardson};
use crate::special::{gegenbauer, harmonic_dim};

/// Quadrature grid on the unit sphere of R^dim with the probability measure.
#[derive(Debug)]
pub struct SphereGrid {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    design_degree: usize,
    resolution: usize,
}

impl SphereGrid {
    /// Grid on S^{n-1} integrating harmonics up to degree 2*resolution.
    pub fn build(n: usize, resolution: usize) -> Result<Self> {
        if !(3..=6).contains(&n) {
            return Err(RadonError::UnsupportedDimension { n, min: 3, max: 6 });
        }
        if resolution < 4 {
            return Err(RadonError::InvalidInput(format!(
                "resolution {resolution} < 4"
            )));
        }
        Ok(Self::build_any(n, resolution))
    }

    /// Same construction without the ambient-dimension gate; used internally
    /// for equator grids (dim >= 2).
    pub(crate) fn build_any(dim: usize, resolution: usize) -> Self {
        assert!(dim >= 2);
        if dim == 2 {
            let m = 2 * resolution + 2;
            let mut nodes = Vec::with_capacity(2 * m);
            let w = 1.0 / m as f64;
            for j in 0..m {
                let a = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
                nodes.push(a.cos());
                nodes.push(a.sin());
            }
            return SphereGrid {
                dim,
                nodes,
                weights: vec![w; m],
                design_degree: 2 * resolution,
                resolution,
            };
        }
        let inner = SphereGrid::build_any(dim - 1, resolution);
        let a = (dim as f64 - 3.0) / 2.0;
        let polar = gauss_jacobi(resolution + 1, a, a);
        let polar_total: f64 = polar.weights.iter().sum();
        let count = polar.nodes.len() * inner.len();
        let mut nodes = Vec::with_capacity(count * dim);
        let mut weights = Vec::with_capacity(count);
        for (s, ws) in polar.nodes.iter().zip(&polar.weights) {
            let ring = (1.0 - s * s).max(0.0).sqrt();
            for j in 0..inner.len() {
                let y = inner.node(j);
                for yi in y {
                    nodes.push(ring * yi);
                }
                nodes.push(*s);
                weights.push(ws / polar_total * inner.weight(j));
            }
        }
        SphereGrid {
            dim,
            nodes,
            weights,
            design_degree: 2 * resolution,
            resolution,
        }
    }

    /// Process-wide cache of grids keyed by (dimension, resolution).
    pub fn cached(n: usize, resolution: usize) -> Result<Arc<SphereGrid>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<SphereGrid>>>> = OnceLock::new();
        if !(3..=6).contains(&n) {
            return Err(RadonError::UnsupportedDimension { n, min: 3, max: 6 });
        }
        if resolution < 4 {
            return Err(RadonError::InvalidInput(format!(
                "resolution {resolution} < 4"
            )));
        }
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        Ok(guard
            .entry((n, resolution))
            .or_insert_with(|| Arc::new(SphereGrid::build_any(n, resolution)))
            .clone())
    }

    /// Grid cache without the ambient-dimension gate; serves the equator
    /// grids (dimension n-1) that subsphere rules are built from.
    pub fn cached_any(dim: usize, resolution: usize) -> Arc<SphereGrid> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<SphereGrid>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry((dim, resolution))
            .or_insert_with(|| Arc::new(SphereGrid::build_any(dim, resolution)))
            .clone()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn design_degree(&self) -> usize {
        self.design_degree
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Quadrature of `f` against the probability measure.
    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        (0..self.len()).map(|i| self.weights[i] * f(self.node(i))).sum()
    }
}

/// Quadrature on S^{n-1} intersected with the hyperplane pole^perp, for the
/// rotation-invariant probability measure. Built by rotating a reference
/// equator grid with a frame completing the pole; poles theta and -theta
/// produce identical node sets.
#[derive(Debug)]
pub struct SubsphereQuadrature {
    pole: Vec<f64>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    dim: usize,
}

impl SubsphereQuadrature {
    pub fn new(pole: &[f64], reference: &SphereGrid) -> Self {
        let n = pole.len();
        assert_eq!(reference.dim(), n - 1, "reference grid must live in pole^perp");
        let canon = if antipode_is_larger(pole) {
            scale(pole, -1.0)
        } else {
            pole.to_vec()
        };
        let frame = orthonormal_completion(&[canon.clone()], n);
        let basis = &frame[1..];
        let mut nodes = Vec::with_capacity(reference.len() * n);
        for j in 0..reference.len() {
            let y = reference.node(j);
            let mut x = vec![0.0; n];
            for (yi, b) in y.iter().zip(basis) {
                crate::linalg::axpy(&mut x, *yi, b);
            }
            nodes.extend_from_slice(&x);
        }
        SubsphereQuadrature {
            pole: pole.to_vec(),
            nodes,
            weights: (0..reference.len()).map(|j| reference.weight(j)).collect(),
            dim: n,
        }
    }

    pub fn pole(&self) -> &[f64] {
        &self.pole
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        (0..self.len()).map(|i| self.weights[i] * f(self.node(i))).sum()
    }
}

/// Function on the sphere: a closure or a finite harmonic expansion.
#[derive(Clone)]
pub enum SphereFunction {
    Callable(Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>),
    Expansion(HarmonicExpansion),
}

impl SphereFunction {
    pub fn from_fn<F: Fn(&[f64]) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        SphereFunction::Callable(Arc::new(f))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            SphereFunction::Callable(f) => f(x),
            SphereFunction::Expansion(e) => e.eval(x),
        }
    }
}

impl std::fmt::Debug for SphereFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SphereFunction::Callable(_) => write!(f, "SphereFunction::Callable"),
            SphereFunction::Expansion(e) => write!(f, "SphereFunction::Expansion(L={})", e.max_degree()),
        }
    }
}

struct DegreeBasis {
    /// Zonal centers (node coordinates), one per basis column.
    centers: Vec<Vec<f64>>,
    /// Values of the orthonormal basis at the grid nodes, column-major (dim x count = count x N).
    values: DMatrix<f64>,
    /// Combination coefficients: Y_m = sum_j combo[(j, m)] * zonal(center_j, .).
    combo: DMatrix<f64>,
}

/// Orthonormal bases of the spherical-harmonic spaces of degree 0..=L on a
/// grid, orthonormal with respect to the grid's (exact) inner product.
pub struct HarmonicBasis {
    grid: Arc<SphereGrid>,
    max_degree: usize,
    lambda: f64,
    degrees: Vec<DegreeBasis>,
}

impl HarmonicBasis {
    pub fn new(grid: Arc<SphereGrid>, max_degree: usize) -> Result<Self> {
        let n = grid.dim();
        if max_degree > grid.resolution() {
            return Err(RadonError::InvalidInput(format!(
                "max degree {} exceeds grid resolution {}; Gram matrices would be inexact",
                max_degree,
                grid.resolution()
            )));
        }
        let lambda = (n as f64 - 2.0) / 2.0;
        let mut degrees = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            degrees.push(build_degree_basis(&grid, k, lambda)?);
        }
        Ok(HarmonicBasis {
            grid,
            max_degree,
            lambda,
            degrees,
        })
    }

    pub fn grid(&self) -> &Arc<SphereGrid> {
        &self.grid
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim_ambient(&self) -> usize {
        self.grid.dim()
    }

    /// Expand samples given at the grid nodes.
    pub fn expand_samples(&self, samples: &[f64]) -> HarmonicExpansion {
        assert_eq!(samples.len(), self.grid.len());
        let g = self.grid.len();
        let mut coefs = Vec::with_capacity(self.degrees.len());
        for db in &self.degrees {
            let nk = db.values.ncols();
            let mut c = vec![0.0; nk];
            for (m, cm) in c.iter_mut().enumerate() {
                let mut acc = 0.0;
                for i in 0..g {
                    acc += self.grid.weight(i) * samples[i] * db.values[(i, m)];
                }
                *cm = acc;
            }
            coefs.push(c);
        }
        let total_energy = (0..g)
            .map(|i| self.grid.weight(i) * samples[i] * samples[i])
            .sum();
        HarmonicExpansion::assemble(self, coefs, total_energy)
    }

    /// Expand an arbitrary sphere function by sampling it at the nodes.
    pub fn expand(&self, f: &SphereFunction) -> HarmonicExpansion {
        let samples: Vec<f64> = (0..self.grid.len())
            .map(|i| f.eval(self.grid.node(i)))
            .collect();
        self.expand_samples(&samples)
    }

    /// Assemble an expansion directly from per-degree coefficient vectors.
    pub fn make_expansion(&self, coefs: Vec<Vec<f64>>, sample_energy: f64) -> HarmonicExpansion {
        assert_eq!(coefs.len(), self.max_degree + 1);
        for (k, c) in coefs.iter().enumerate() {
            assert_eq!(c.len(), harmonic_dim(self.grid.dim(), k));
        }
        HarmonicExpansion::assemble(self, coefs, sample_energy)
    }
}

impl std::fmt::Debug for HarmonicBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "HarmonicBasis(n={}, L={}, grid={} nodes)",
            self.grid.dim(),
            self.max_degree,
            self.grid.len()
        )
    }
}

fn build_degree_basis(grid: &Arc<SphereGrid>, k: usize, lambda: f64) -> Result<DegreeBasis> {
    let g = grid.len();
    let n_dim = harmonic_dim(grid.dim(), k);
    if n_dim > g {
        return Err(RadonError::InvalidInput(format!(
            "degree {k} needs {n_dim} basis functions but the grid has only {g} nodes"
        )));
    }
    let geg_at_one = gegenbauer(k, lambda, 1.0);
    let zonal = |center: &[f64], x: &[f64]| -> f64 {
        gegenbauer(k, lambda, crate::linalg::dot(center, x)) / geg_at_one
    };

    // Candidate centers: grid nodes, strided for spread. Antipodal duplicates
    // are weeded out by the pivoting.
    let mut pool_size = (4 * n_dim + 8).min(g);
    loop {
        let stride = (g as f64 / pool_size as f64).max(1.0);
        let cand_idx: Vec<usize> = (0..pool_size)
            .map(|c| ((c as f64 * stride) as usize).min(g - 1))
            .collect();
        let mut resid: Vec<Vec<f64>> = cand_idx
            .iter()
            .map(|&ci| {
                let center = grid.node(ci).to_vec();
                (0..g).map(|i| zonal(&center, grid.node(i))).collect()
            })
            .collect();

        // Pivoted selection on weighted residual norms.
        let mut selected: Vec<usize> = Vec::with_capacity(n_dim);
        let mut q_cols: Vec<Vec<f64>> = Vec::with_capacity(n_dim);
        let wnorm2 = |v: &[f64]| -> f64 {
            (0..g).map(|i| grid.weight(i) * v[i] * v[i]).sum::<f64>()
        };
        let wdot = |a: &[f64], b: &[f64]| -> f64 {
            (0..g).map(|i| grid.weight(i) * a[i] * b[i]).sum::<f64>()
        };
        let mut ok = true;
        for _ in 0..n_dim {
            let (best, best_n2) = resid
                .iter()
                .enumerate()
                .map(|(c, v)| (c, wnorm2(v)))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            if best_n2 < 1e-14 {
                ok = false;
                break;
            }
            let inv = 1.0 / best_n2.sqrt();
            let y: Vec<f64> = resid[best].iter().map(|v| v * inv).collect();
            for v in resid.iter_mut() {
                let c = wdot(v, &y);
                for (vi, yi) in v.iter_mut().zip(&y) {
                    *vi -= c * yi;
                }
            }
            selected.push(cand_idx[best]);
            q_cols.push(y);
        }
        if !ok {
            if pool_size == g {
                return Err(RadonError::InvalidInput(format!(
                    "could not build a rank-{n_dim} zonal basis for degree {k}"
                )));
            }
            pool_size = (pool_size * 2).min(g);
            continue;
        }

        // Fresh weighted QR on the selected columns for orthonormality.
        let mut z = DMatrix::<f64>::zeros(g, n_dim);
        for (m, &ci) in selected.iter().enumerate() {
            let center = grid.node(ci).to_vec();
            for i in 0..g {
                z[(i, m)] = zonal(&center, grid.node(i));
            }
        }
        let sqrt_w: Vec<f64> = (0..g).map(|i| grid.weight(i).sqrt()).collect();
        let mut b = z.clone();
        for i in 0..g {
            for m in 0..n_dim {
                b[(i, m)] *= sqrt_w[i];
            }
        }
        let qr = b.qr();
        let q = qr.q();
        let r = qr.r();
        for m in 0..n_dim {
            if r[(m, m)].abs() < 1e-10 {
                return Err(RadonError::InvalidInput(format!(
                    "zonal basis for degree {k} is numerically rank-deficient"
                )));
            }
        }
        let mut values = DMatrix::<f64>::zeros(g, n_dim);
        for i in 0..g {
            for m in 0..n_dim {
                values[(i, m)] = q[(i, m)] / sqrt_w[i];
            }
        }
        // combo = R^{-1} (columns give zonal combinations for each Y_m).
        let identity = DMatrix::<f64>::identity(n_dim, n_dim);
        let combo = r
            .solve_upper_triangular(&identity)
            .ok_or_else(|| RadonError::InvalidInput("triangular solve failed".into()))?;

        return Ok(DegreeBasis {
            centers: selected.iter().map(|&ci| grid.node(ci).to_vec()).collect(),
            values,
            combo,
        });
    }
}

/// Finite spherical-harmonic expansion tied to a [`HarmonicBasis`].
#[derive(Clone)]
pub struct HarmonicExpansion {
    n: usize,
    lambda: f64,
    max_degree: usize,
    /// Coefficients per degree in the basis order.
    coefs: Vec<Vec<f64>>,
    /// Zonal centers and per-center combined weights for direct evaluation.
    zonal: Vec<(Vec<Vec<f64>>, Vec<f64>)>,
    /// Quadrature energy of the expanded samples (`<f, f>` on the grid).
    sample_energy: f64,
}

impl HarmonicExpansion {
    fn assemble(basis: &HarmonicBasis, coefs: Vec<Vec<f64>>, sample_energy: f64) -> Self {
        let mut zonal = Vec::with_capacity(coefs.len());
        for (db, c) in basis.degrees.iter().zip(&coefs) {
            let nk = c.len();
            let mut beta = vec![0.0; nk];
            for (j, bj) in beta.iter_mut().enumerate() {
                let mut acc = 0.0;
                for m in 0..nk {
                    acc += db.combo[(j, m)] * c[m];
                }
                *bj = acc;
            }
            zonal.push((db.centers.clone(), beta));
        }
        HarmonicExpansion {
            n: basis.grid.dim(),
            lambda: basis.lambda,
            max_degree: basis.max_degree,
            coefs,
            zonal,
            sample_energy,
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coefficients(&self, degree: usize) -> &[f64] {
        &self.coefs[degree]
    }

    /// Energy carried by degree k, i.e. the squared norm of its projection.
    pub fn degree_energy(&self, degree: usize) -> f64 {
        self.coefs[degree].iter().map(|c| c * c).sum()
    }

    pub fn total_energy(&self) -> f64 {
        self.sample_energy
    }

    /// Energy fraction in odd degrees, relative to the sampled energy.
    pub fn odd_fraction(&self) -> f64 {
        if self.sample_energy <= 0.0 {
            return 0.0;
        }
        let odd: f64 = (0..=self.max_degree)
            .filter(|k| k % 2 == 1)
            .map(|k| self.degree_energy(k))
            .sum();
        odd / self.sample_energy
    }

    /// Energy fraction above the cutoff degree (aliasing + truncation).
    pub fn residual_fraction(&self) -> f64 {
        if self.sample_energy <= 0.0 {
            return 0.0;
        }
        let captured: f64 = (0..=self.max_degree).map(|k| self.degree_energy(k)).sum();
        ((self.sample_energy - captured) / self.sample_energy).max(0.0)
    }

    /// Scale the coefficients of each degree by `factor(k)`.
    pub fn scale_degrees<F: Fn(usize) -> f64>(&self, factor: F) -> HarmonicExpansion {
        let mut out = self.clone();
        for k in 0..=self.max_degree {
            let s = factor(k);
            for c in out.coefs[k].iter_mut() {
                *c *= s;
            }
            for b in out.zonal[k].1.iter_mut() {
                *b *= s;
            }
        }
        out
    }

    /// Evaluate at an arbitrary point of the sphere.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (k, (centers, beta)) in self.zonal.iter().enumerate() {
            if beta.iter().all(|b| b.abs() < 1e-300) {
                continue;
            }
            let geg1 = gegenbauer(k, self.lambda, 1.0);
            for (center, b) in centers.iter().zip(beta) {
                acc += b * gegenbauer(k, self.lambda, crate::linalg::dot(center, x)) / geg1;
            }
        }
        acc
    }
}

/// Funk transform: average of `f` over the great subsphere orthogonal to
/// `theta`, with respect to the invariant probability measure. Even in theta
/// exactly, since theta and -theta share one quadrature rule.
pub fn funk_forward(f: &SphereFunction, theta: &[f64], equator: &SphereGrid) -> f64 {
    let sub = SubsphereQuadrature::new(theta, equator);
    sub.integrate(|x| f.eval(x))
}

/// Funk-Hecke multiplier of the Funk transform on degree-k harmonics under
/// the probability normalization: C_k^{(n-2)/2}(0) / C_k^{(n-2)/2}(1).
/// Zero for odd k.
pub fn funk_multiplier(k: usize, n: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let lambda = (n as f64 - 2.0) / 2.0;
    gegenbauer(k, lambda, 0.0) / gegenbauer(k, lambda, 1.0)
}

/// Threshold on the odd-energy fraction accepted by the spectral inverse.
pub const ODD_ENERGY_LIMIT: f64 = 1e-8;
/// Threshold on the above-cutoff energy fraction.
pub const DEGREE_OVERFLOW_LIMIT: f64 = 1e-6;

/// Spectral inverse of the Funk transform: divide each even-degree
/// coefficient by its multiplier. `tikhonov` = 0 gives the exact inverse;
/// a positive value replaces 1/lambda by lambda/(lambda^2 + eps).
pub fn funk_inverse_spectral(
    g: &SphereFunction,
    basis: &HarmonicBasis,
    tikhonov: f64,
) -> Result<SphereFunction> {
    let expansion = basis.expand(g);
    funk_inverse_spectral_expansion(&expansion, basis, tikhonov)
}

/// Spectral inverse acting on an existing expansion.
pub fn funk_inverse_spectral_expansion(
    expansion: &HarmonicExpansion,
    basis: &HarmonicBasis,
    tikhonov: f64,
) -> Result<SphereFunction> {
    let odd = expansion.odd_fraction();
    if odd > ODD_ENERGY_LIMIT {
        return Err(RadonError::OddComponent {
            fraction: odd,
            limit: ODD_ENERGY_LIMIT,
        });
    }
    let resid = expansion.residual_fraction();
    if resid > DEGREE_OVERFLOW_LIMIT {
        return Err(RadonError::DegreeOverflow {
            degree: basis.max_degree(),
            fraction: resid,
            limit: DEGREE_OVERFLOW_LIMIT,
        });
    }
    let n = basis.dim_ambient();
    let inverted = expansion.scale_degrees(|k| {
        if k % 2 == 1 {
            return 0.0;
        }
        let lam = funk_multiplier(k, n);
        if tikhonov > 0.0 {
            lam / (lam * lam + tikhonov)
        } else {
            1.0 / lam
        }
    });
    Ok(SphereFunction::Expansion(inverted))
}

/// Tuning knobs of the Abel-route Funk inverse.
#[derive(Debug, Clone)]
pub struct AbelInverseParams {
    /// Resolution of the equator grid used for the latitude means.
    pub equator_resolution: usize,
    /// Points of the s-quadrature per evaluation of the Abel integral.
    pub s_quad_points: usize,
    /// Chebyshev fit order for the t-profile (in the variable t^2).
    pub cheb_order: usize,
    /// Richardson samples t = 1 - 2^{-m}, m = first..first+count.
    pub richardson_first: u32,
    pub richardson_count: u32,
}

impl Default for AbelInverseParams {
    fn default() -> Self {
        AbelInverseParams {
            equator_resolution: 16,
            s_quad_points: 48,
            cheb_order: 32,
            richardson_first: 3,
            richardson_count: 5,
        }
    }
}

/// Abel-route inverse of the Funk transform at a single point.
///
/// Forms the latitude means Phi_w(s) of g around `omega`, assembles the
/// weighted Abel integral
///   B(t) = c_n * int_0^t (t^2-s^2)^{n/2-2} Phi_w(s) s^{n-2} ds,
/// applies (1/(2t) d/dt)^{n-2}, and extrapolates t -> 1 by Richardson from
/// t = 1 - 2^{-m}. The constant c_n = 2^{n-2}/(n-3)! makes the route agree
/// with the spectral inverse (equivalently c_n folds to
/// sqrt(pi)/Gamma((n-1)/2) against the fractional-integral normalization).
pub fn funk_inverse_abel(
    g: &SphereFunction,
    omega: &[f64],
    params: &AbelInverseParams,
) -> Result<f64> {
    let n = omega.len();
    if !(3..=4).contains(&n) {
        return Err(RadonError::UnsupportedDimension { n, min: 3, max: 4 });
    }
    let equator = SphereGrid::cached_any(n - 1, params.equator_resolution);
    let sub = SubsphereQuadrature::new(omega, &equator);
    let phi = |s: f64| -> f64 {
        let c = (1.0 - s * s).max(0.0).sqrt();
        sub.integrate(|xi| {
            let mut p: Vec<f64> = xi.iter().map(|v| v * s).collect();
            crate::linalg::axpy(&mut p, c, omega);
            g.eval(&p)
        })
    };

    let constant = match n {
        3 => 2.0,
        _ => 4.0,
    };
    let bracket = |t: f64| -> f64 {
        match n {
            3 => {
                // Substitution s = t sin(phi) removes the (t^2-s^2)^{-1/2} kernel.
                constant
                    * integrate_legendre(
                        |ang: f64| phi(t * ang.sin()) * t * ang.sin(),
                        0.0,
                        std::f64::consts::FRAC_PI_2,
                        params.s_quad_points,
                    )
            }
            _ => constant * integrate_legendre(|s| phi(s) * s * s, 0.0, t, params.s_quad_points),
        }
    };

    // Fit B in w = t^2 on a window below 1 and differentiate spectrally;
    // (1/(2t) d/dt) is d/dw.
    let w_lo = 0.45;
    let mut series = ChebSeries::fit(|w: f64| bracket(w.sqrt()), w_lo, 1.0, params.cheb_order);
    for _ in 0..(n - 2) {
        series = series.deriv();
    }
    let mut hs = Vec::new();
    let mut ys = Vec::new();
    for m in params.richardson_first..params.richardson_first + params.richardson_count {
        let t = 1.0 - 2f64.powi(-(m as i32));
        hs.push(1.0 - t);
        ys.push(series.eval(t * t));
    }
    Ok(richardson(&hs, &ys, &[1.0, 2.0, 3.0, 4.0]))
}
