//! Radon transforms between lines and hyperplanes in R^n (3 <= n <= 6).
//!
//! The forward transform integrates a line function over all lines inside a
//! hyperplane; the dual transform averages a hyperplane function over all
//! hyperplanes containing a line. On quasi-radial line functions the forward
//! transform factors into the Funk transform on the sphere tensored with an
//! Erdelyi-Kober fractional integral, and this factorization drives every
//! inversion route implemented here:
//!
//! * [`radon_line`] - forward transform of quasi-radial functions and its
//!   inverse, plus the radial-profile transform pair for general plane
//!   dimensions.
//! * [`dual_transform`] - the dual transform, cluster averages, inversion of
//!   even hyperplane functions, and pointwise inversion through the
//!   redundant line parametrization.
//! * [`kelvin_route`] - inversion of the dual transform in full generality
//!   via the quasi-orthogonal inversion map and the (n-2)-plane transform,
//!   with both a local-limit and a Marchaud-type difference formula.
//!
//! Supporting layers: [`geometry`] (planes and the inversion map nu),
//! [`spherical`] (sphere quadrature, harmonic analysis, Funk transform),
//! [`fracint`] (Erdelyi-Kober integrals and derivatives), and [`testlib`]
//! (analytic test families with independent oracles, shared by the test
//! suites and the `radon selftest` subcommand).

pub mod cheb;
pub mod cli;
pub mod dual_transform;
pub mod error;
pub mod fracint;
pub mod geometry;
pub mod kelvin_route;
pub mod linalg;
pub mod quad;
pub mod radon_line;
pub mod sampling;
pub mod special;
pub mod spherical;
pub mod testlib;

pub use error::{RadonError, Result};
pub use fracint::{ek_derivative, ek_integral, FractionalOrder, RadialSamples, Side};
pub use geometry::{nu_inverse_point, nu_map, AffinePlane, Hyperplane, Line, LineCluster};
pub use radon_line::{HyperplaneFunction, QuasiRadialFunction};
pub use spherical::{HarmonicBasis, HarmonicExpansion, SphereFunction, SphereGrid};
