//! Christoffel-Darboux kernels of the modified Jacobi unitary ensemble.
//!
//! The weight is w(x) = (1-x)^alpha (1+x)^beta h(x) on (-1, 1) with
//! alpha, beta > -1 and h analytic and strictly positive. The crate builds
//! the orthonormal polynomials of w, the exact n-point kernel K_n, its
//! bulk and hard-edge scalings, the limiting sine and Bessel kernels, the
//! Szego function and phase asymptotics, and hard-edge gap probabilities as
//! Fredholm determinants.
//!
//! All numerics are generic over the scalar type through [`scalar::Real`];
//! `f64` aliases are provided at the crate root.

pub mod asymptotics;
pub mod cheb;
pub mod error;
pub mod fredholm;
pub mod kernels;
mod linalg;
pub mod orthopoly;
pub mod quad;
pub mod scalar;
pub mod special;
pub mod weight;

pub use error::{Error, Result};
pub use scalar::Real;

pub use asymptotics::{
    arcsine_density, bulk_pi_asymptotic, edge_pi_asymptotic, phi_boundary, phi_map, psi_phase,
    szego_boundary, szego_exterior, Side, SzegoData,
};
pub use cheb::{cheb_fit, ChebSeries};
pub use fredholm::{
    bessel_gap_probability, finite_gap_probability, fredholm_series_oracle, nystrom_determinant,
    nystrom_determinant_auto, GapSpec, SeriesEstimate,
};
pub use kernels::{
    bessel_kernel, kernel_cd, kernel_sum, scaled_bulk, scaled_edge, sine_kernel, BesselKernel,
    KernelContext,
};
pub use orthopoly::{recurrence_table, RecurrenceTable};
pub use quad::{
    gauss_jacobi_rule, gauss_jacobi_shifted_rule, gauss_legendre_rule, integrate, QuadratureRule,
    WeightTag,
};
pub use special::{bessel_eval, gamma_real, BesselEval};
pub use weight::ModifiedJacobiWeight;

/// Concrete f64 aliases.
pub type ChebSeries64 = ChebSeries<f64>;
pub type ModifiedJacobiWeight64 = ModifiedJacobiWeight<f64>;
pub type RecurrenceTable64 = RecurrenceTable<f64>;
pub type QuadratureRule64 = QuadratureRule<f64>;
pub type BesselEval64 = BesselEval<f64>;
pub type BesselKernel64 = BesselKernel<f64>;
pub type SzegoData64 = SzegoData<f64>;
pub type GapSpec64 = GapSpec<f64>;
pub type KernelContext64<'a> = KernelContext<'a, f64>;
