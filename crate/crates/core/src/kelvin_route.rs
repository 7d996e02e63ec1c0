//! General (non-even) inversion of the dual transform through the
//! quasi-orthogonal inversion map: the A-operator, the plane profile Phi,
//! the (n-2)-plane transform with its shifted mean value operator, the
//! local-limit inversion, and the Marchaud-type difference inversion.
//!
//! The chain: f = R* phi determines Phi on (n-2)-planes via
//! Phi(pi) = (sigma_{n-2} / 2|pi|) f(nu(pi)), which equals the (n-2)-plane
//! transform of A phi. Inverting that transform at the point x = nu(h)
//! recovers (A phi)(x), and phi(h) = |h|^{n-1} ... |h|^{1-n} scaling undoes
//! the A-weight. Mean values of Phi over plane orbits around x are reduced
//! to a radial profile G(r), fitted once per inversion point as a Chebyshev
//! series in r^2; that shared profile is what both inversion formulas
//! consume, so overlapping orbit queries are paid for once.

use std::sync::Arc;

use rand::SeedableRng;

use crate::cheb::ChebSeries;
use crate::error::{RadonError, Result};
use crate::fracint::{ek_derivative, marchaud_limit, RadialSamples, Side};
use crate::geometry::{nu_map, AffinePlane, Hyperplane};
use crate::linalg::{axpy, dot, norm, scale};
use crate::quad::{integrate_panels, richardson};
use crate::sampling::haar_orthogonal;
use crate::special::sphere_surface;
use crate::spherical::SphereGrid;

pub use crate::dual_transform::WeightedClassParams;

/// Function on R^n \ {0} with declared behavior at the origin and at
/// infinity: |g(x)| = O(|x|^{origin_exponent}) as x -> 0 and
/// |g(x)| = O(|x|^{-decay_infinity}) as |x| -> infinity.
#[derive(Clone)]
pub struct SpaceFunction {
    n: usize,
    f: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    pub decay_infinity: f64,
    pub origin_exponent: f64,
}

impl std::fmt::Debug for SpaceFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SpaceFunction(n={}, decay_inf={}, origin_exp={})",
            self.n, self.decay_infinity, self.origin_exponent
        )
    }
}

impl SpaceFunction {
    pub fn new<F: Fn(&[f64]) -> f64 + Send + Sync + 'static>(
        n: usize,
        f: F,
        decay_infinity: f64,
        origin_exponent: f64,
    ) -> Self {
        SpaceFunction {
            n,
            f: Arc::new(f),
            decay_infinity,
            origin_exponent,
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// The Kelvin-type A-operator: (A phi)(x) = |x|^{1-n} phi(h(x/|x|, -1/|x|)).
/// Membership transfers: phi in tilde-L^p iff A phi in L^p, and phi in
/// tilde-C_mu iff A phi in C_mu; the declared class fixes the decay
/// exponents of the result.
pub fn a_transform(
    phi: &crate::radon_line::HyperplaneFunction,
    class: WeightedClassParams,
) -> SpaceFunction {
    let n = phi.dim_ambient();
    let phi = phi.clone();
    let (decay_infinity, origin_exponent) = match class {
        WeightedClassParams::Cmu { mu, .. } => (mu, 0.0),
        WeightedClassParams::Lp { .. } => (f64::NAN, f64::NAN),
    };
    SpaceFunction::new(
        n,
        move |x: &[f64]| {
            let r = norm(x);
            if r < crate::geometry::ORIGIN_PLANE_THRESHOLD {
                return f64::NAN;
            }
            let theta = scale(x, 1.0 / r);
            r.powi(1 - n as i32) * phi.eval(&theta, -1.0 / r)
        },
        decay_infinity,
        origin_exponent,
    )
}

const RJ_QUAD_POINTS: usize = 24;

/// Integral of g over an (n-2)-dimensional affine plane; the oracle side of
/// the plane-transform identities. Truncates each axis where the declared
/// decay bounds the tail, hence `Divergent` when the decay does not beat
/// the plane dimension.
pub fn rj_forward(g: &SpaceFunction, plane: &AffinePlane) -> Result<f64> {
    let n = g.dim_ambient();
    if plane.dim_ambient() != n || plane.dim_plane() != n - 2 {
        return Err(RadonError::InvalidInput(format!(
            "expected an (n-2)-plane in R^{n}, got a {}-plane in R^{}",
            plane.dim_plane(),
            plane.dim_ambient()
        )));
    }
    let k = n - 2;
    if !(g.decay_infinity > k as f64) {
        return Err(RadonError::Divergent {
            value: f64::INFINITY,
            delta: f64::INFINITY,
        });
    }
    // Truncation radius from the declared power decay.
    let base = plane.distance().max(1.0) + 1.0;
    let margin = g.decay_infinity - k as f64;
    let r_cut = (base * 10f64.powf(10.0 / margin)).min(base * 1e5);

    // Iterated integration over the plane coordinates.
    fn recurse(
        g: &SpaceFunction,
        plane: &AffinePlane,
        coords: &mut Vec<f64>,
        axis: usize,
        r_cut: f64,
    ) -> f64 {
        let k = plane.dim_plane();
        if axis == k {
            return g.eval(&plane.point_at(coords));
        }
        let mut total = 0.0;
        for sign in [-1.0, 1.0] {
            total += integrate_panels(
                |y: f64| {
                    coords.push(sign * y);
                    let v = recurse(g, plane, coords, axis + 1, r_cut);
                    coords.pop();
                    v
                },
                0.0,
                r_cut,
                1.0,
                RJ_QUAD_POINTS,
            );
        }
        total
    }
    let mut coords = Vec::with_capacity(k);
    Ok(recurse(g, plane, &mut coords, 0, r_cut))
}

/// The plane profile Phi(pi) = (sigma_{n-2} / 2 |pi|) (R* phi)(nu(pi)),
/// which coincides with the (n-2)-plane transform of A phi.
pub fn build_phi<F: Fn(&[f64], &[f64]) -> f64>(f_dual: F, plane: &AffinePlane) -> Result<f64> {
    let n = plane.dim_ambient();
    let line = nu_map(plane)?;
    debug_assert_eq!(line.dim_plane(), 1);
    let omega = line.basis()[0].clone();
    let u = line.offset().to_vec();
    Ok(sphere_surface(n - 2) / (2.0 * plane.distance()) * f_dual(&omega, &u))
}

/// How the SO(n)-average over plane orbits is evaluated.
#[derive(Debug, Clone)]
pub enum MeanValueMethod {
    /// Product quadrature over (normal direction on S^2) x azimuth; n = 3.
    Deterministic {
        sphere_resolution: usize,
        azimuth_points: usize,
    },
    /// Haar-random orthogonal matrices; any n, reports a standard error.
    HaarMc { samples: usize, seed: u64 },
}

/// Mean values of a plane function over the orbit of planes at distance r
/// from a center, with sampling metadata.
#[derive(Debug, Clone)]
pub struct MeanValueProfile {
    pub center: Vec<f64>,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    /// Standard errors, one per radius, when Monte-Carlo sampling was used.
    pub stderr: Option<Vec<f64>>,
}

/// The shifted mean value of Phi at radius r around x: the average of
/// Phi over the SO(n)-orbit of planes gamma R^{n-2} + x + r gamma e_n.
pub fn rj_meanvalue<P: Fn(&AffinePlane) -> Result<f64>>(
    phi: P,
    x: &[f64],
    r: f64,
    method: &MeanValueMethod,
) -> Result<(f64, Option<f64>)> {
    if r < 0.0 {
        return Err(RadonError::NonPositivePoint { point: r });
    }
    let n = x.len();
    match method {
        MeanValueMethod::Deterministic {
            sphere_resolution,
            azimuth_points,
        } => {
            if n != 3 {
                return Err(RadonError::InvalidInput(
                    "the deterministic mean value is implemented for n = 3".into(),
                ));
            }
            // Haar on SO(3) factors into (c = gamma e3 uniform on S^2) x
            // (azimuth of gamma e1 in c^perp).
            let sphere = SphereGrid::cached_any(3, *sphere_resolution);
            let m = *azimuth_points;
            let mut acc = 0.0;
            for i in 0..sphere.len() {
                let c = sphere.node(i);
                let frame = crate::linalg::orthonormal_completion(&[c.to_vec()], 3);
                let (b1, b2) = (&frame[1], &frame[2]);
                let mut point: Vec<f64> = x.to_vec();
                axpy(&mut point, r, c);
                let mut inner = 0.0;
                for j in 0..m {
                    let alpha = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
                    let mut dir = scale(b1, alpha.cos());
                    axpy(&mut dir, alpha.sin(), b2);
                    let mut offset = point.clone();
                    let c_along = dot(&offset, &dir);
                    axpy(&mut offset, -c_along, &dir);
                    let plane = AffinePlane::new(3, vec![dir], offset)?;
                    inner += phi(&plane)?;
                }
                acc += sphere.weight(i) * inner / m as f64;
            }
            Ok((acc, None))
        }
        MeanValueMethod::HaarMc { samples, seed } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for _ in 0..*samples {
                let gamma = haar_orthogonal(n, &mut rng);
                let basis: Vec<Vec<f64>> = (0..n - 2)
                    .map(|j| (0..n).map(|i| gamma[(i, j)]).collect())
                    .collect();
                let e_n: Vec<f64> = (0..n).map(|i| gamma[(i, n - 1)]).collect();
                let mut offset: Vec<f64> = x.to_vec();
                axpy(&mut offset, r, &e_n);
                crate::linalg::project_out(&mut offset, &basis);
                let plane = AffinePlane::new(n, basis, offset)?;
                let v = phi(&plane)?;
                sum += v;
                sumsq += v * v;
            }
            let mean = sum / *samples as f64;
            let var = (sumsq / *samples as f64 - mean * mean).max(0.0);
            Ok((mean, Some((var / *samples as f64).sqrt())))
        }
    }
}

/// Mean values along a radial grid, with metadata.
pub fn rj_meanvalue_profile<P: Fn(&AffinePlane) -> Result<f64>>(
    phi: P,
    x: &[f64],
    radii: Vec<f64>,
    method: &MeanValueMethod,
) -> Result<MeanValueProfile> {
    let mut values = Vec::with_capacity(radii.len());
    let mut errs = Vec::with_capacity(radii.len());
    let mut any_err = false;
    for &r in &radii {
        let (v, se) = rj_meanvalue(&phi, x, r, method)?;
        values.push(v);
        if let Some(se) = se {
            any_err = true;
            errs.push(se);
        } else {
            errs.push(0.0);
        }
    }
    Ok(MeanValueProfile {
        center: x.to_vec(),
        radii,
        values,
        stderr: if any_err { Some(errs) } else { None },
    })
}

/// Tuning for the Kelvin-route inversions.
#[derive(Debug, Clone)]
pub struct KelvinParams {
    /// Radial extent of the mean-value profile G.
    pub rho_max: f64,
    /// Chebyshev order of the G fit (in rho^2).
    pub profile_order: usize,
    /// Declared power decay of G.
    pub g_decay: f64,
    /// Radii of the Erdelyi-Kober derivative, extrapolated r -> 0.
    pub r_schedule: Vec<f64>,
    pub mean_value: MeanValueMethod,
    /// Marchaud epsilon schedule: eps_m = 2^{-m}, m = first..first+count.
    pub marchaud_first_m: u32,
    pub marchaud_count: u32,
}

impl Default for KelvinParams {
    fn default() -> Self {
        KelvinParams {
            rho_max: 7.0,
            profile_order: 64,
            g_decay: 12.0,
            r_schedule: vec![0.4, 0.2, 0.1, 0.05],
            mean_value: MeanValueMethod::Deterministic {
                sphere_resolution: 12,
                azimuth_points: 24,
            },
            marchaud_first_m: 3,
            marchaud_count: 5,
        }
    }
}

/// Fit G(rho) = (mean value of Phi at radius rho around x) once per
/// inversion point; this Chebyshev profile is the memo that serves every
/// later orbit query.
fn mean_value_series<F: Fn(&[f64], &[f64]) -> f64>(
    f_dual: &F,
    x: &[f64],
    params: &KelvinParams,
) -> Result<ChebSeries> {
    let phi = |plane: &AffinePlane| build_phi(f_dual, plane);
    let w_nodes = ChebSeries::nodes(0.0, params.rho_max * params.rho_max, params.profile_order);
    let mut vals = Vec::with_capacity(w_nodes.len());
    for &w in &w_nodes {
        let r = w.max(0.0).sqrt();
        let (v, _) = rj_meanvalue(&phi, x, r, &params.mean_value)?;
        vals.push(v);
    }
    Ok(ChebSeries::from_lobatto_values(
        0.0,
        params.rho_max * params.rho_max,
        &vals,
    ))
}

fn series_profile(series: ChebSeries, rho_max: f64, decay: f64) -> Result<RadialSamples> {
    RadialSamples::from_fn(
        move |r: f64| {
            if r <= rho_max {
                series.eval(r * r)
            } else {
                series.eval(rho_max * rho_max) * (r / rho_max).powf(-decay)
            }
        },
        vec![rho_max * 1e-3, rho_max],
        decay,
    )
}

/// Local-limit inversion of the dual transform at the hyperplane h:
///   phi(h) = |h|^{1-n} lim_{r->0} pi^{1-n/2} (D^{n/2-1}_{-,2} G)(r),
/// where G is the mean-value profile of Phi around x = nu(h). The class
/// declaration must admit the dual transform (checked at its construction).
pub fn kelvin_invert<F: Fn(&[f64], &[f64]) -> f64>(
    f_dual: F,
    _class: WeightedClassParams,
    h: &Hyperplane,
    params: &KelvinParams,
) -> Result<f64> {
    let n = h.dim_ambient();
    if h.distance() < crate::geometry::ORIGIN_PLANE_THRESHOLD {
        return Err(RadonError::OriginPlane {
            threshold: crate::geometry::ORIGIN_PLANE_THRESHOLD,
        });
    }
    let x = nu_map(&h.as_plane())?.offset().to_vec();
    let series = mean_value_series(&f_dual, &x, params)?;
    let profile = series_profile(series, params.rho_max, params.g_decay)?;

    let prefactor = std::f64::consts::PI.powf(1.0 - n as f64 / 2.0);
    let mut hs = Vec::new();
    let mut ys = Vec::new();
    for &r in &params.r_schedule {
        hs.push(r);
        ys.push(prefactor * ek_derivative(&profile, n, Side::Minus, r)?);
    }
    let limit = richardson(&hs, &ys, &[2.0, 4.0]);
    Ok(h.distance().powi(1 - n as i32) * limit)
}

/// Marchaud-type inversion:
///   phi(h) = pi^{1-n/2} |h|^{1-n} * (1/kappa_ell) int_0^inf [...] dr / r^{n/2},
/// driving eps -> 0 through the declared schedule. For n = 3, ell = 1 the
/// integrand reduces to [G(0) - G(sqrt r)] r^{-3/2}.
pub fn kelvin_invert_marchaud<F: Fn(&[f64], &[f64]) -> f64>(
    f_dual: F,
    _class: WeightedClassParams,
    h: &Hyperplane,
    ell: u32,
    params: &KelvinParams,
) -> Result<f64> {
    let n = h.dim_ambient();
    if h.distance() < crate::geometry::ORIGIN_PLANE_THRESHOLD {
        return Err(RadonError::OriginPlane {
            threshold: crate::geometry::ORIGIN_PLANE_THRESHOLD,
        });
    }
    let x = nu_map(&h.as_plane())?.offset().to_vec();
    let series = mean_value_series(&f_dual, &x, params)?;
    let rho_max = params.rho_max;
    let g = move |rho: f64| series.eval((rho * rho).min(rho_max * rho_max));
    let m = marchaud_limit(
        &g,
        rho_max,
        Some(0.0),
        ell,
        n,
        params.marchaud_first_m,
        params.marchaud_count,
    )?;
    let prefactor = std::f64::consts::PI.powf(1.0 - n as f64 / 2.0);
    Ok(prefactor * h.distance().powi(1 - n as i32) * m)
}
