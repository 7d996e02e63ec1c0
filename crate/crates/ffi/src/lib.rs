//! C ABI for the Radon line/hyperplane transform library.
//!
//! Conventions: every function returns an [`RlStatus`] code (0 = success)
//! and writes results through out-pointers. Stateful operations go through
//! an opaque [`RlEngine`] handle created with `rl_engine_new` and released
//! with `rl_engine_free`. Hyperplane functions can be passed either as a
//! builtin name or as a C callback plus a user-data pointer. Panics are
//! caught at the boundary and surface as `RL_STATUS_INTERNAL_PANIC`.

use std::collections::HashMap;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, Mutex};

use radon_lines::dual_transform::{dual_apply, DualApplyParams, WeightedClassParams};
use radon_lines::error::RadonError;
use radon_lines::fracint::{ek_derivative, ek_integral, FractionalOrder, RadialSamples, Side};
use radon_lines::geometry::{nu_inverse_point, nu_map, Hyperplane};
use radon_lines::kelvin_route::{kelvin_invert, kelvin_invert_marchaud, KelvinParams};
use radon_lines::radon_line::{radon_forward_quasiradial, HyperplaneFunction, QuasiRadialFunction};
use radon_lines::spherical::{HarmonicBasis, SphereGrid};

/// Status codes mirroring the library error type.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    OriginPlane = 1,
    UnsupportedDimension = 2,
    OddComponent = 3,
    DegreeOverflow = 4,
    DecayTooSlow = 5,
    NonPositivePoint = 6,
    GridTooCoarse = 7,
    OrderTooSmall = 8,
    TailUnbounded = 9,
    Divergent = 10,
    NotEven = 11,
    ClassViolation = 12,
    InvalidArgument = 13,
    InternalPanic = 14,
}

fn status_of(err: &RadonError) -> RlStatus {
    match err {
        RadonError::OriginPlane { .. } => RlStatus::OriginPlane,
        RadonError::UnsupportedDimension { .. } => RlStatus::UnsupportedDimension,
        RadonError::OddComponent { .. } => RlStatus::OddComponent,
        RadonError::DegreeOverflow { .. } => RlStatus::DegreeOverflow,
        RadonError::DecayTooSlow { .. } => RlStatus::DecayTooSlow,
        RadonError::NonPositivePoint { .. } => RlStatus::NonPositivePoint,
        RadonError::GridTooCoarse { .. } => RlStatus::GridTooCoarse,
        RadonError::OrderTooSmall { .. } => RlStatus::OrderTooSmall,
        RadonError::TailUnbounded => RlStatus::TailUnbounded,
        RadonError::Divergent { .. } => RlStatus::Divergent,
        RadonError::NotEven { .. } => RlStatus::NotEven,
        RadonError::ClassViolation { .. } => RlStatus::ClassViolation,
        RadonError::InvalidInput(_) => RlStatus::InvalidArgument,
    }
}

/// Stable name of a status code, as a NUL-terminated static string.
#[no_mangle]
pub extern "C" fn rl_status_name(status: RlStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        RlStatus::Ok => b"Ok\0",
        RlStatus::OriginPlane => b"OriginPlane\0",
        RlStatus::UnsupportedDimension => b"UnsupportedDimension\0",
        RlStatus::OddComponent => b"OddComponent\0",
        RlStatus::DegreeOverflow => b"DegreeOverflow\0",
        RlStatus::DecayTooSlow => b"DecayTooSlow\0",
        RlStatus::NonPositivePoint => b"NonPositivePoint\0",
        RlStatus::GridTooCoarse => b"GridTooCoarse\0",
        RlStatus::OrderTooSmall => b"OrderTooSmall\0",
        RlStatus::TailUnbounded => b"TailUnbounded\0",
        RlStatus::Divergent => b"Divergent\0",
        RlStatus::NotEven => b"NotEven\0",
        RlStatus::ClassViolation => b"ClassViolation\0",
        RlStatus::InvalidArgument => b"InvalidArgument\0",
        RlStatus::InternalPanic => b"InternalPanic\0",
    };
    name.as_ptr() as *const c_char
}

/// Library version as a NUL-terminated static string.
#[no_mangle]
pub extern "C" fn rl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Opaque engine: dimension, grids, harmonic basis, and a cache of builtin
/// quasi-radial functions.
pub struct RlEngine {
    n: usize,
    sphere_res: usize,
    cutoff: usize,
    basis: Arc<HarmonicBasis>,
    builtins: Mutex<HashMap<String, Arc<QuasiRadialFunction>>>,
}

/// C callback type for hyperplane functions phi(theta, t).
pub type RlHyperplaneFn =
    Option<unsafe extern "C" fn(theta: *const f64, n: usize, t: f64, ctx: *mut std::ffi::c_void) -> f64>;

fn guard<F: FnOnce() -> RlStatus>(f: F) -> RlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => RlStatus::InternalPanic,
    }
}

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

/// Create an engine for dimension n (3..=6).
///
/// # Safety
/// `out` must be a valid pointer to an engine-handle slot.
#[no_mangle]
pub unsafe extern "C" fn rl_engine_new(
    n: usize,
    sphere_resolution: usize,
    cutoff: usize,
    out: *mut *mut RlEngine,
) -> RlStatus {
    if out.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let grid = match SphereGrid::cached(n, sphere_resolution) {
            Ok(g) => g,
            Err(e) => return status_of(&e),
        };
        let basis = match HarmonicBasis::new(grid, cutoff) {
            Ok(b) => Arc::new(b),
            Err(e) => return status_of(&e),
        };
        let engine = Box::new(RlEngine {
            n,
            sphere_res: sphere_resolution,
            cutoff,
            basis,
            builtins: Mutex::new(HashMap::new()),
        });
        unsafe { *out = Box::into_raw(engine) };
        RlStatus::Ok
    })
}

/// Release an engine. Passing NULL is a no-op.
///
/// # Safety
/// `engine` must have been returned by `rl_engine_new` and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn rl_engine_free(engine: *mut RlEngine) {
    if !engine.is_null() {
        drop(unsafe { Box::from_raw(engine) });
    }
}

/// Read back the engine configuration. NULL out-pointers are skipped.
///
/// # Safety
/// `engine` must be live; non-NULL out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rl_engine_info(
    engine: *const RlEngine,
    out_n: *mut usize,
    out_sphere_resolution: *mut usize,
    out_cutoff: *mut usize,
) -> RlStatus {
    let Some(engine) = (unsafe { engine.as_ref() }) else {
        return RlStatus::InvalidArgument;
    };
    unsafe {
        if !out_n.is_null() {
            *out_n = engine.n;
        }
        if !out_sphere_resolution.is_null() {
            *out_sphere_resolution = engine.sphere_res;
        }
        if !out_cutoff.is_null() {
            *out_cutoff = engine.cutoff;
        }
    }
    RlStatus::Ok
}

fn engine_builtin_line(engine: &RlEngine, name: &str) -> Result<Arc<QuasiRadialFunction>, RadonError> {
    if let Some(hit) = engine.builtins.lock().unwrap().get(name) {
        return Ok(hit.clone());
    }
    let f = match name {
        "gaussian" => QuasiRadialFunction::from_fn(
            |_w: &[f64], r: f64| (-r * r).exp(),
            engine.basis.clone(),
            8.0,
            40,
            30.0,
        )?,
        "gaussian_harmonic" => QuasiRadialFunction::from_fn(
            |w: &[f64], r: f64| w[w.len() - 1].powi(2) * (-r * r).exp(),
            engine.basis.clone(),
            8.0,
            40,
            30.0,
        )?,
        other => {
            return Err(RadonError::InvalidInput(format!(
                "unknown builtin line function {other:?}"
            )))
        }
    };
    let arc = Arc::new(f);
    engine
        .builtins
        .lock()
        .unwrap()
        .insert(name.to_string(), arc.clone());
    Ok(arc)
}

fn builtin_hyperplane(name: &str, n: usize) -> Result<HyperplaneFunction, RadonError> {
    radon_lines::cli::builtin_hyperplane(&format!("builtin:{name}"), n)
}

unsafe fn cstr_arg<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

/// Funk-Hecke multiplier of the Funk transform on degree-k harmonics.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_funk_multiplier(k: usize, n: usize, out: *mut f64) -> RlStatus {
    if out.is_null() || n < 3 {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        unsafe { *out = radon_lines::spherical::funk_multiplier(k, n) };
        RlStatus::Ok
    })
}

/// kappa_ell constant in closed form.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_kappa(ell: u32, n: usize, out: *mut f64) -> RlStatus {
    if out.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| match radon_lines::fracint::kappa(ell, n) {
        Ok(v) => {
            unsafe { *out = v };
            RlStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Surface area of the unit sphere S^m.
#[no_mangle]
pub extern "C" fn rl_sphere_surface(m: usize) -> f64 {
    radon_lines::special::sphere_surface(m)
}

/// Erdelyi-Kober fractional integral of a sampled radial profile.
/// side: 0 = minus (integral over (t, inf)), 1 = plus (over (0, t)).
///
/// # Safety
/// `grid` and `values` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rl_ek_integral(
    grid: *const f64,
    values: *const f64,
    len: usize,
    decay_rate: f64,
    alpha: f64,
    side: i32,
    t: f64,
    out: *mut f64,
) -> RlStatus {
    let (Some(g), Some(v)) = (unsafe { slice_arg(grid, len) }, unsafe { slice_arg(values, len) })
    else {
        return RlStatus::InvalidArgument;
    };
    if out.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let side = if side == 0 { Side::Minus } else { Side::Plus };
        let run = || -> Result<f64, RadonError> {
            let profile = RadialSamples::from_samples(g.to_vec(), v.to_vec(), decay_rate)?;
            let order = FractionalOrder::new(alpha, side)?;
            ek_integral(&profile, order, t)
        };
        match run() {
            Ok(val) => {
                unsafe { *out = val };
                RlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Erdelyi-Kober derivative D^{n/2-1} of a sampled radial profile.
///
/// # Safety
/// As for `rl_ek_integral`.
#[no_mangle]
pub unsafe extern "C" fn rl_ek_derivative(
    grid: *const f64,
    values: *const f64,
    len: usize,
    decay_rate: f64,
    n: usize,
    side: i32,
    t: f64,
    out: *mut f64,
) -> RlStatus {
    let (Some(g), Some(v)) = (unsafe { slice_arg(grid, len) }, unsafe { slice_arg(values, len) })
    else {
        return RlStatus::InvalidArgument;
    };
    if out.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let side = if side == 0 { Side::Minus } else { Side::Plus };
        let run = || -> Result<f64, RadonError> {
            let profile = RadialSamples::from_samples(g.to_vec(), v.to_vec(), decay_rate)?;
            ek_derivative(&profile, n, side, t)
        };
        match run() {
            Ok(val) => {
                unsafe { *out = val };
                RlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Quasi-orthogonal image of a point: the hyperplane h(x/|x|, -1/|x|),
/// written as a unit normal and a level.
///
/// # Safety
/// `x` must point to n doubles; `out_normal` to n doubles; `out_level` valid.
#[no_mangle]
pub unsafe extern "C" fn rl_nu_point(
    x: *const f64,
    n: usize,
    out_normal: *mut f64,
    out_level: *mut f64,
) -> RlStatus {
    let Some(xv) = (unsafe { slice_arg(x, n) }) else {
        return RlStatus::InvalidArgument;
    };
    if out_normal.is_null() || out_level.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| match nu_inverse_point(xv) {
        Ok(h) => {
            unsafe {
                std::ptr::copy_nonoverlapping(h.normal().as_ptr(), out_normal, n);
                *out_level = h.level();
            }
            RlStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Quasi-orthogonal image of a hyperplane: the point -normal/level.
///
/// # Safety
/// `normal` must point to n doubles; `out_point` to n doubles.
#[no_mangle]
pub unsafe extern "C" fn rl_nu_hyperplane(
    normal: *const f64,
    n: usize,
    level: f64,
    out_point: *mut f64,
) -> RlStatus {
    let Some(nv) = (unsafe { slice_arg(normal, n) }) else {
        return RlStatus::InvalidArgument;
    };
    if out_point.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let run = || -> Result<Vec<f64>, RadonError> {
            let h = Hyperplane::new(radon_lines::linalg::normalize(nv), level)?;
            let img = nu_map(&h.as_plane())?;
            Ok(img.offset().to_vec())
        };
        match run() {
            Ok(p) => {
                unsafe { std::ptr::copy_nonoverlapping(p.as_ptr(), out_point, n) };
                RlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Forward Radon transform of a builtin quasi-radial function at the
/// hyperplane (theta, t). Builtins: "gaussian", "gaussian_harmonic".
///
/// # Safety
/// `engine` must be live; `name` NUL-terminated; `theta` n doubles.
#[no_mangle]
pub unsafe extern "C" fn rl_radon_forward_builtin(
    engine: *const RlEngine,
    name: *const c_char,
    theta: *const f64,
    t: f64,
    out: *mut f64,
) -> RlStatus {
    let Some(engine) = (unsafe { engine.as_ref() }) else {
        return RlStatus::InvalidArgument;
    };
    let Some(name) = (unsafe { cstr_arg(name) }) else {
        return RlStatus::InvalidArgument;
    };
    let Some(theta) = (unsafe { slice_arg(theta, engine.n) }) else {
        return RlStatus::InvalidArgument;
    };
    if out.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let run = || -> Result<f64, RadonError> {
            let f = engine_builtin_line(engine, name)?;
            radon_forward_quasiradial(&f, &radon_lines::linalg::normalize(theta), t)
        };
        match run() {
            Ok(v) => {
                unsafe { *out = v };
                RlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

fn hyperplane_from_callback(
    n: usize,
    f: RlHyperplaneFn,
    ctx: *mut std::ffi::c_void,
    even_in_t: bool,
) -> Option<HyperplaneFunction> {
    let f = f?;
    let ctx_addr = ctx as usize;
    Some(HyperplaneFunction::from_fn(
        n,
        move |theta: &[f64], t: f64| unsafe {
            f(theta.as_ptr(), theta.len(), t, ctx_addr as *mut std::ffi::c_void)
        },
        even_in_t,
        4.0,
    ))
}

/// Dual transform of a caller-supplied hyperplane function at the line
/// (omega, u). The refinement check is controlled by `check` (0/1).
///
/// # Safety
/// `engine` live; `omega`, `u` n doubles; `phi` a valid callback for the
/// whole call; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rl_dual_apply_fn(
    engine: *const RlEngine,
    phi: RlHyperplaneFn,
    ctx: *mut std::ffi::c_void,
    omega: *const f64,
    u: *const f64,
    resolution: usize,
    check: i32,
    out: *mut f64,
) -> RlStatus {
    let Some(engine) = (unsafe { engine.as_ref() }) else {
        return RlStatus::InvalidArgument;
    };
    let (Some(omega), Some(u)) = (
        unsafe { slice_arg(omega, engine.n) },
        unsafe { slice_arg(u, engine.n) },
    ) else {
        return RlStatus::InvalidArgument;
    };
    let Some(phi) = hyperplane_from_callback(engine.n, phi, ctx, false) else {
        return RlStatus::InvalidArgument;
    };
    if out.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let params = if check != 0 {
            DualApplyParams::new(resolution)
        } else {
            DualApplyParams::unchecked(resolution)
        };
        match dual_apply(&phi, &radon_lines::linalg::normalize(omega), u, &params) {
            Ok(v) => {
                unsafe { *out = v };
                RlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Dual transform of a builtin hyperplane function. Builtins: "gaussian",
/// "abs_t_theta2", "kelvin_pair", "phi_p", "theta2_t".
///
/// # Safety
/// As for `rl_dual_apply_fn`, with `name` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn rl_dual_apply_builtin(
    engine: *const RlEngine,
    name: *const c_char,
    omega: *const f64,
    u: *const f64,
    resolution: usize,
    check: i32,
    out: *mut f64,
) -> RlStatus {
    let Some(engine) = (unsafe { engine.as_ref() }) else {
        return RlStatus::InvalidArgument;
    };
    let Some(name) = (unsafe { cstr_arg(name) }) else {
        return RlStatus::InvalidArgument;
    };
    let (Some(omega), Some(u)) = (
        unsafe { slice_arg(omega, engine.n) },
        unsafe { slice_arg(u, engine.n) },
    ) else {
        return RlStatus::InvalidArgument;
    };
    if out.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let run = || -> Result<f64, RadonError> {
            let phi = builtin_hyperplane(name, engine.n)?;
            let params = if check != 0 {
                DualApplyParams::new(resolution)
            } else {
                DualApplyParams::unchecked(resolution)
            };
            dual_apply(&phi, &radon_lines::linalg::normalize(omega), u, &params)
        };
        match run() {
            Ok(v) => {
                unsafe { *out = v };
                RlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Kelvin-route inversion of the dual transform of a builtin hyperplane
/// function at the hyperplane (normal, level). `marchaud` selects the
/// difference formula of order `ell`; `mu` declares the weighted class.
///
/// # Safety
/// `engine` live; `name` NUL-terminated; `normal` n doubles; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rl_kelvin_invert_builtin(
    engine: *const RlEngine,
    name: *const c_char,
    normal: *const f64,
    level: f64,
    mu: f64,
    marchaud: i32,
    ell: u32,
    resolution: usize,
    out: *mut f64,
) -> RlStatus {
    let Some(engine) = (unsafe { engine.as_ref() }) else {
        return RlStatus::InvalidArgument;
    };
    let Some(name) = (unsafe { cstr_arg(name) }) else {
        return RlStatus::InvalidArgument;
    };
    let Some(normal) = (unsafe { slice_arg(normal, engine.n) }) else {
        return RlStatus::InvalidArgument;
    };
    if out.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let run = || -> Result<f64, RadonError> {
            let phi = builtin_hyperplane(name, engine.n)?;
            let class = WeightedClassParams::cmu(mu, engine.n)?;
            let h = Hyperplane::new(radon_lines::linalg::normalize(normal), level)?;
            let dual_params = DualApplyParams::unchecked(resolution);
            let f_dual = |w: &[f64], u: &[f64]| dual_apply(&phi, w, u, &dual_params).unwrap();
            let params = KelvinParams::default();
            if marchaud != 0 {
                kelvin_invert_marchaud(f_dual, class, &h, ell, &params)
            } else {
                kelvin_invert(f_dual, class, &h, &params)
            }
        };
        match run() {
            Ok(v) => {
                unsafe { *out = v };
                RlStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Run the analytic self-test suite (restricted to dimension n, or all
/// dimensions when n = 0) and report pass/fail counts.
///
/// # Safety
/// `out_passed` and `out_failed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rl_selftest(
    n: usize,
    out_passed: *mut usize,
    out_failed: *mut usize,
) -> RlStatus {
    if out_passed.is_null() || out_failed.is_null() {
        return RlStatus::InvalidArgument;
    }
    guard(|| {
        let report = radon_lines::testlib::run_suite(if n == 0 { None } else { Some(n) });
        unsafe {
            *out_passed = report.passed;
            *out_failed = report.failed;
        }
        RlStatus::Ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn new_engine(n: usize) -> *mut RlEngine {
        let mut engine: *mut RlEngine = std::ptr::null_mut();
        let status = unsafe { rl_engine_new(n, if n == 3 { 8 } else { 6 }, 4, &mut engine) };
        assert_eq!(status, RlStatus::Ok);
        assert!(!engine.is_null());
        engine
    }

    #[test]
    fn engine_lifecycle_and_dimension_gate() {
        let engine = new_engine(3);
        let (mut n, mut res, mut cutoff) = (0usize, 0usize, 0usize);
        assert_eq!(
            unsafe { rl_engine_info(engine, &mut n, &mut res, &mut cutoff) },
            RlStatus::Ok
        );
        assert_eq!((n, res, cutoff), (3, 8, 4));
        unsafe { rl_engine_free(engine) };

        let mut bad: *mut RlEngine = std::ptr::null_mut();
        let status = unsafe { rl_engine_new(9, 8, 4, &mut bad) };
        assert_eq!(status, RlStatus::UnsupportedDimension);
        assert!(bad.is_null());
        unsafe { rl_engine_free(std::ptr::null_mut()) };
    }

    #[test]
    fn forward_builtin_matches_closed_form() {
        let engine = new_engine(4);
        let theta = [1.0, 0.0, 0.0, 0.0];
        let mut value = 0.0;
        let status = unsafe {
            rl_radon_forward_builtin(
                engine,
                c"gaussian".as_ptr(),
                theta.as_ptr(),
                1.0,
                &mut value,
            )
        };
        assert_eq!(status, RlStatus::Ok);
        let expected = std::f64::consts::PI * (-1.0f64).exp();
        assert!((value - expected).abs() < 1e-8, "value={value}");
        unsafe { rl_engine_free(engine) };
    }

    #[test]
    fn dual_builtin_literature_value() {
        let engine = new_engine(3);
        let omega = [1.0, 0.0, 0.0];
        let u = [0.0, 1.0, 0.0];
        let mut value = 0.0;
        let status = unsafe {
            rl_dual_apply_builtin(
                engine,
                c"abs_t_theta2".as_ptr(),
                omega.as_ptr(),
                u.as_ptr(),
                192,
                1,
                &mut value,
            )
        };
        assert_eq!(status, RlStatus::Ok);
        assert!((value - 0.5).abs() < 1e-4, "value={value}");
        unsafe { rl_engine_free(engine) };
    }

    unsafe extern "C" fn gaussian_phi(
        _theta: *const f64,
        _n: usize,
        t: f64,
        _ctx: *mut std::ffi::c_void,
    ) -> f64 {
        (-t * t).exp()
    }

    #[test]
    fn dual_with_c_callback() {
        let engine = new_engine(3);
        let omega = [0.0, 0.0, 1.0];
        let u = [0.6, 0.8, 0.0];
        let mut value = 0.0;
        let status = unsafe {
            rl_dual_apply_fn(
                engine,
                Some(gaussian_phi),
                std::ptr::null_mut(),
                omega.as_ptr(),
                u.as_ptr(),
                64,
                0,
                &mut value,
            )
        };
        assert_eq!(status, RlStatus::Ok);
        // Cross-check against the radial-profile dual transform.
        let prof = RadialSamples::from_fn(
            |s: f64| (-s * s).exp(),
            RadialSamples::uniform_grid(1e-3, 8.0, 80),
            20.0,
        )
        .unwrap();
        let expected = radon_lines::radon_line::dual_radial(&prof, 1, 2, 3, 1.0).unwrap();
        assert!((value - expected).abs() < 1e-9, "value={value} expected={expected}");
        unsafe { rl_engine_free(engine) };
    }

    #[test]
    fn ek_integral_gaussian_fixed_point() {
        let grid: Vec<f64> = (1..=160).map(|i| i as f64 * 0.05).collect();
        let values: Vec<f64> = grid.iter().map(|&r| (-r * r as f64).exp()).collect();
        let mut out = 0.0;
        let status = unsafe {
            rl_ek_integral(
                grid.as_ptr(),
                values.as_ptr(),
                grid.len(),
                30.0,
                1.0,
                0,
                0.9,
                &mut out,
            )
        };
        assert_eq!(status, RlStatus::Ok);
        assert!((out - (-0.81f64).exp()).abs() < 1e-6, "out={out}");

        // Decay gate surfaces as a status code.
        let status = unsafe {
            rl_ek_integral(
                grid.as_ptr(),
                values.as_ptr(),
                grid.len(),
                1.0,
                1.0,
                0,
                0.9,
                &mut out,
            )
        };
        assert_eq!(status, RlStatus::DecayTooSlow);
    }

    #[test]
    fn kappa_and_multiplier() {
        let mut v = 0.0;
        assert_eq!(unsafe { rl_kappa(1, 3, &mut v) }, RlStatus::Ok);
        assert!((v - 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert_eq!(unsafe { rl_kappa(1, 4, &mut v) }, RlStatus::OrderTooSmall);

        assert_eq!(unsafe { rl_funk_multiplier(2, 3, &mut v) }, RlStatus::Ok);
        assert!((v + 0.5).abs() < 1e-14);
    }

    #[test]
    fn nu_maps_round_trip() {
        let x = [0.0, 2.0, 0.0];
        let mut normal = [0.0; 3];
        let mut level = 0.0;
        assert_eq!(
            unsafe { rl_nu_point(x.as_ptr(), 3, normal.as_mut_ptr(), &mut level) },
            RlStatus::Ok
        );
        // h(e2, -1/2) up to the antipodal representative.
        assert!((normal[1].abs() - 1.0).abs() < 1e-12);
        assert!((level * normal[1] + 0.5).abs() < 1e-12);

        let mut point = [0.0; 3];
        assert_eq!(
            unsafe { rl_nu_hyperplane(normal.as_ptr(), 3, level, point.as_mut_ptr()) },
            RlStatus::Ok
        );
        for (a, b) in point.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }

        let origin = [0.0; 3];
        assert_eq!(
            unsafe { rl_nu_point(origin.as_ptr(), 3, normal.as_mut_ptr(), &mut level) },
            RlStatus::OriginPlane
        );
    }

    #[test]
    fn null_pointers_are_invalid() {
        let mut v = 0.0;
        assert_eq!(
            unsafe { rl_ek_integral(std::ptr::null(), std::ptr::null(), 4, 1.0, 1.0, 0, 1.0, &mut v) },
            RlStatus::InvalidArgument
        );
        assert_eq!(
            unsafe {
                rl_radon_forward_builtin(
                    std::ptr::null(),
                    c"gaussian".as_ptr(),
                    std::ptr::null(),
                    0.0,
                    &mut v,
                )
            },
            RlStatus::InvalidArgument
        );
    }

    #[test]
    fn selftest_via_ffi() {
        let mut passed = 0usize;
        let mut failed = 0usize;
        let status = unsafe { rl_selftest(4, &mut passed, &mut failed) };
        assert_eq!(status, RlStatus::Ok);
        assert!(passed >= 2);
        assert_eq!(failed, 0);
    }

    #[test]
    fn status_names_are_stable() {
        let name = unsafe { CStr::from_ptr(rl_status_name(RlStatus::DecayTooSlow)) };
        assert_eq!(name.to_str().unwrap(), "DecayTooSlow");
        let version = unsafe { CStr::from_ptr(rl_version()) };
        assert!(!version.to_str().unwrap().is_empty());
    }
}
