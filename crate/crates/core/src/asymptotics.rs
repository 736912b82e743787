//! Explicit asymptotic objects for the modified Jacobi weight: the conformal
//! map onto the exterior of the unit circle, the Szego function and its
//! boundary values, the phase psi via the Chebyshev route to the principal
//! value integral, the arcsine density, and the leading-order bulk/edge
//! formulas for the monic polynomials.

use num_complex::Complex;

use crate::cheb::{cheb_fit, ChebSeries};
use crate::error::{Error, Result};
use crate::scalar::{cast, cast_usize, Real};
use crate::special::bessel_eval;
use crate::weight::ModifiedJacobiWeight;

/// Which side of the cut [-1,1] a boundary value is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

fn on_cut<T: Real>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re >= cast(-1.0) && z.re <= T::one()
}

/// phi(z) = z + (z^2 - 1)^{1/2}, the branch with |phi| > 1 off [-1, 1].
pub fn phi_map<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if on_cut(z) {
        return Err(Error::domain(format!(
            "phi branch cut: z = {z} lies on [-1,1]"
        )));
    }
    // sqrt(z-1) sqrt(z+1) with principal square roots selects |phi| > 1
    let one = Complex::new(T::one(), T::zero());
    Ok(z + (z - one).sqrt() * (z + one).sqrt())
}

/// Boundary value phi_+(x) = exp(i arccos x) for x in (-1, 1).
pub fn phi_boundary<T: Real>(x: T) -> Result<Complex<T>> {
    if x <= cast(-1.0) || x >= T::one() {
        return Err(Error::domain(format!(
            "phi boundary argument must lie in (-1,1), got {x}"
        )));
    }
    let theta = x.acos();
    Ok(Complex::new(theta.cos(), theta.sin()))
}

/// Szego data of a modified Jacobi weight: exponents, Chebyshev coefficients
/// of log h, and the value at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct SzegoData<T> {
    pub alpha: T,
    pub beta: T,
    pub logh: ChebSeries<T>,
    pub d_infty: T,
}

impl<T: Real> SzegoData<T> {
    pub fn from_weight(weight: &ModifiedJacobiWeight<T>) -> Result<Self> {
        let h = weight.h.clone();
        let logh = cheb_fit(move |x| h.eval(x).ln(), cast(1e-14))?;
        Ok(Self::from_parts(weight.alpha, weight.beta, logh))
    }

    pub fn from_parts(alpha: T, beta: T, logh: ChebSeries<T>) -> Self {
        // D_infty = 2^{-(alpha+beta)/2} exp(c_0 / 2)
        let c0 = logh.coefficients.first().copied().unwrap_or_else(T::zero);
        let half = cast::<T>(0.5);
        let d_infty = cast::<T>(2.0).powf(-(alpha + beta) * half) * (c0 * half).exp();
        SzegoData {
            alpha,
            beta,
            logh,
            d_infty,
        }
    }
}

/// The phase psi(x): closed Jacobi part plus the finite Hilbert transform of
/// log h evaluated coefficient-wise through T_k -> pi U_{k-1}.
pub fn psi_phase<T: Real>(data: &SzegoData<T>, x: T) -> Result<T> {
    if x <= cast(-1.0) || x >= T::one() {
        return Err(Error::domain(format!(
            "psi argument must lie in (-1,1), got {x}"
        )));
    }
    let theta = x.acos();
    let half = cast::<T>(0.5);
    let jacobi_part = half * (data.alpha * (theta - T::PI()) + data.beta * theta);
    // sqrt(1-x^2)/2 * sum_{k>=1} c_k U_{k-1}(x) = 1/2 sum_{k>=1} c_k sin(k theta)
    let mut hilbert = T::zero();
    for (k, &ck) in data.logh.coefficients.iter().enumerate().skip(1) {
        hilbert += ck * (cast_usize::<T>(k) * theta).sin();
    }
    Ok(jacobi_part + half * hilbert)
}

/// D(z) on C \ [-1,1]: the closed-form pure-Jacobi factor times the analytic
/// factor built from the log h Chebyshev coefficients.
pub fn szego_exterior<T: Real>(data: &SzegoData<T>, z: Complex<T>) -> Result<Complex<T>> {
    if on_cut(z) {
        return Err(Error::domain(format!(
            "Szego branch cut: z = {z} lies on [-1,1]"
        )));
    }
    let one = Complex::new(T::one(), T::zero());
    let half = cast::<T>(0.5);
    let phi = phi_map(z)?;
    let d_jacobi = (z - one).powf(data.alpha * half)
        * (z + one).powf(data.beta * half)
        * phi.powf(-(data.alpha + data.beta) * half);
    // D_h(z) = exp(c_0/2 + 1/2 sum_{k>=1} c_k phi^{-k})
    let phi_inv = phi.inv();
    let mut acc = Complex::new(
        data.logh.coefficients.first().copied().unwrap_or_else(T::zero) * half,
        T::zero(),
    );
    let mut pw = one;
    for &ck in data.logh.coefficients.iter().skip(1) {
        pw = pw * phi_inv;
        acc = acc + pw.scale(ck * half);
    }
    Ok(d_jacobi * acc.exp())
}

/// Boundary values D_+-(x) = sqrt(w(x)) exp(-+ i psi(x)).
pub fn szego_boundary<T: Real>(
    data: &SzegoData<T>,
    weight: &ModifiedJacobiWeight<T>,
    x: T,
    side: Side,
) -> Result<Complex<T>> {
    let modulus = weight.eval(x)?.sqrt();
    let psi = psi_phase(data, x)?;
    let arg = match side {
        Side::Above => -psi,
        Side::Below => psi,
    };
    Ok(Complex::new(modulus * arg.cos(), modulus * arg.sin()))
}

/// The arcsine density xi(x) = 1 / (pi sqrt(1 - x^2)).
pub fn arcsine_density<T: Real>(x: T) -> Result<T> {
    if x <= cast(-1.0) || x >= T::one() {
        return Err(Error::domain(format!(
            "arcsine density argument must lie in (-1,1), got {x}"
        )));
    }
    Ok(((T::one() - x * x).sqrt() * T::PI()).recip())
}

/// Default distance from the endpoints separating the bulk and edge regimes.
pub const BULK_EDGE_DELTA: f64 = 0.1;

/// Leading-order interior asymptotic of the monic polynomial:
/// pi_n(x) ~ sqrt(2) D_inf 2^{-n} w(x)^{-1/2} (1-x^2)^{-1/4}
///           cos((n + 1/2) arccos x + psi(x) - pi/4).
pub fn bulk_pi_asymptotic<T: Real>(
    data: &SzegoData<T>,
    weight: &ModifiedJacobiWeight<T>,
    n: usize,
    x: T,
) -> Result<T> {
    let delta: T = cast(BULK_EDGE_DELTA);
    if x.abs() > T::one() - delta {
        return Err(Error::domain(format!(
            "bulk asymptotic valid for |x| <= 1 - {BULK_EDGE_DELTA}, got {x}"
        )));
    }
    let theta = x.acos();
    let psi = psi_phase(data, x)?;
    let w = weight.eval(x)?;
    let quarter_pi = T::PI() * cast(0.25);
    let phase = (cast_usize::<T>(n) + cast(0.5)) * theta + psi - quarter_pi;
    let amp = cast::<T>(2.0).sqrt() * data.d_infty * cast::<T>(2.0).powi(-(n as i32))
        / (w.sqrt() * (T::one() - x * x).powf(cast(0.25)));
    Ok(amp * phase.cos())
}

/// Leading-order hard-edge asymptotic of the monic polynomial on (1-delta, 1):
/// pi_n(x) ~ sqrt(pi) D_inf 2^{-n} w(x)^{-1/2} (n arccos x)^{1/2}
///           (1-x^2)^{-1/4} [cos zeta_1 J_alpha(n arccos x)
///                           + sin zeta_1 J'_alpha(n arccos x)],
/// zeta_1 = arccos(x)/2 + psi(x) + alpha pi / 2.
pub fn edge_pi_asymptotic<T: Real>(
    data: &SzegoData<T>,
    weight: &ModifiedJacobiWeight<T>,
    n: usize,
    x: T,
) -> Result<T> {
    let delta: T = cast(BULK_EDGE_DELTA);
    if x <= T::one() - delta || x >= T::one() {
        return Err(Error::domain(format!(
            "edge asymptotic valid for x in (1 - {BULK_EDGE_DELTA}, 1), got {x}"
        )));
    }
    let theta = x.acos();
    let psi = psi_phase(data, x)?;
    let w = weight.eval(x)?;
    let half = cast::<T>(0.5);
    let zeta1 = half * theta + psi + data.alpha * T::PI() * half;
    let arg = cast_usize::<T>(n) * theta;
    let bes = bessel_eval(data.alpha, arg)?;
    let amp = T::PI().sqrt() * data.d_infty * cast::<T>(2.0).powi(-(n as i32)) * arg.sqrt()
        / (w.sqrt() * (T::one() - x * x).powf(cast(0.25)));
    Ok(amp * (zeta1.cos() * bes.value + zeta1.sin() * bes.derivative))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::recurrence_table;
    use crate::quad::{gauss_jacobi_rule, gauss_legendre_rule, integrate};
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn crel(a: Complex<f64>, b: Complex<f64>) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    fn test_weights() -> Vec<ModifiedJacobiWeight<f64>> {
        vec![
            ModifiedJacobiWeight::pure_jacobi(0.0, 0.0).unwrap(),
            ModifiedJacobiWeight::new(
                0.3,
                -0.4,
                cheb_fit(|x: f64| x.exp(), 1e-14).unwrap(),
            )
            .unwrap(),
            ModifiedJacobiWeight::new(
                -0.5,
                -0.5,
                cheb_fit(|x: f64| 1.0 + x * x / 4.0, 1e-14).unwrap(),
            )
            .unwrap(),
        ]
    }

    #[test]
    fn phi_examples() {
        let phi = phi_map(Complex::new(1.25_f64, 0.0)).unwrap();
        assert!(crel(phi, Complex::new(2.0, 0.0)) < 1e-14);
        // leading behavior phi(z)/z -> 2
        let big = phi_map(Complex::new(1e9_f64, 0.0)).unwrap();
        assert!(rel(big.re / 1e9, 2.0) < 1e-9);
        // Joukowski identity at a complex point
        let z = Complex::new(0.5_f64, 2.0);
        let p = phi_map(z).unwrap();
        assert!(crel((p + p.inv()).scale(0.5), z) < 1e-12);
        assert!(p.norm() > 1.0);
        // modulus exceeds 1 on both sides of the cut and on the negative axis
        for z in [Complex::new(-2.0, 0.0), Complex::new(0.3, -1e-3), Complex::new(0.3, 1e-3)] {
            assert!(phi_map(z).unwrap().norm() > 1.0, "z = {z}");
        }
        assert!(phi_map(Complex::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn phi_boundary_values() {
        assert!(crel(phi_boundary(1.0 - 1e-14).unwrap(), Complex::new(1.0, 0.0)) < 1e-6);
        assert!(crel(phi_boundary(0.0).unwrap(), Complex::new(0.0, 1.0)) < 1e-15);
        assert!(crel(phi_boundary(-1.0 + 1e-14).unwrap(), Complex::new(-1.0, 0.0)) < 1e-6);
        let b = phi_boundary(0.37).unwrap();
        assert!(rel(b.norm(), 1.0) < 1e-15);
    }

    #[test]
    fn psi_closed_form_for_unit_h() {
        let data = SzegoData::from_parts(0.3_f64, -0.4, ChebSeries::constant(0.0));
        for &x in &[-0.9f64, -0.2, 0.0, 0.5, 0.95] {
            let theta: f64 = x.acos();
            let expect = 0.5 * (0.3 * (theta - PI) + (-0.4) * theta);
            assert!(rel(psi_phase(&data, x).unwrap(), expect) < 1e-13);
        }
        let zero = SzegoData::from_parts(0.0_f64, 0.0, ChebSeries::constant(0.0));
        assert_eq!(psi_phase(&zero, 0.4).unwrap(), 0.0);
    }

    /// Brute-force principal value oracle: symmetric excision in
    /// theta = arccos t with dyadic panels and Richardson extrapolation in
    /// the excision radius. Test-only; independent of the Chebyshev route.
    fn pv_oracle(logh: &dyn Fn(f64) -> f64, alpha: f64, beta: f64, x: f64) -> f64 {
        let theta0 = x.acos();
        let integral_excised = |eps: f64| -> f64 {
            let mut acc = 0.0;
            let mut segment = |mut a: f64, b: f64, toward_b: bool| {
                // dyadic panels refining toward the singular end
                let mut panels = Vec::new();
                if toward_b {
                    // refine toward b: walk from b outward
                    let mut hi = b;
                    let mut step = eps;
                    while hi - step > a {
                        panels.push((hi - step, hi));
                        hi -= step;
                        step *= 2.0;
                    }
                    panels.push((a, hi));
                } else {
                    let mut step = eps;
                    while a + step < b {
                        panels.push((a, a + step));
                        a += step;
                        step *= 2.0;
                    }
                    panels.push((a, b));
                }
                for (lo, hi) in panels {
                    let rule = gauss_legendre_rule(32, lo, hi).unwrap();
                    acc += integrate(&rule, |th: f64| logh(th.cos()) / (th.cos() - x)).unwrap();
                }
            };
            if theta0 - eps > 0.0 {
                segment(0.0, theta0 - eps, true);
            }
            if theta0 + eps < PI {
                segment(theta0 + eps, PI, false);
            }
            acc
        };
        let e = 1e-3;
        let pv = 2.0 * integral_excised(e / 2.0) - integral_excised(e);
        let theta = x.acos();
        0.5 * (alpha * (theta - PI) + beta * theta) + (1.0 - x * x).sqrt() / (2.0 * PI) * pv
    }

    #[test]
    fn psi_matches_pv_quadrature() {
        let cases: Vec<(f64, f64, Box<dyn Fn(f64) -> f64>)> = vec![
            (0.3, -0.4, Box::new(|t: f64| t)),                      // h = exp(x)
            (-0.5, -0.5, Box::new(|t: f64| (1.0 + t * t / 4.0).ln())), // h = runge
        ];
        for (alpha, beta, logh) in cases {
            let series = cheb_fit(|x: f64| logh(x), 1e-14).unwrap();
            let data = SzegoData::from_parts(alpha, beta, series);
            for &x in &[-0.9, -0.6, -0.2, 0.0, 0.3, 0.7, 0.9] {
                let fast = psi_phase(&data, x).unwrap();
                let slow = pv_oracle(logh.as_ref(), alpha, beta, x);
                assert!(
                    (fast - slow).abs() < 1e-7,
                    "alpha={alpha}: psi({x}) {fast} vs oracle {slow}"
                );
            }
        }
    }

    #[test]
    fn szego_trivial_weight() {
        let data = SzegoData::from_parts(0.0_f64, 0.0, ChebSeries::constant(0.0));
        for z in [Complex::new(2.0, 0.5), Complex::new(0.0, 3.0)] {
            assert!(crel(szego_exterior(&data, z).unwrap(), Complex::new(1.0, 0.0)) < 1e-14);
        }
        assert_eq!(data.d_infty, 1.0);
    }

    #[test]
    fn szego_limit_at_infinity() {
        for w in test_weights() {
            let data = SzegoData::from_weight(&w).unwrap();
            // 1/z correction removed by Richardson between |z| = 1e6 and 2e6
            let d1 = szego_exterior(&data, Complex::new(1e6, 0.0)).unwrap();
            let d2 = szego_exterior(&data, Complex::new(2e6, 0.0)).unwrap();
            let lim = d2.scale(2.0) - d1;
            assert!(
                crel(lim, Complex::new(data.d_infty, 0.0)) < 1e-9,
                "alpha={}, beta={}: {} vs {}",
                w.alpha,
                w.beta,
                lim,
                data.d_infty
            );
        }
    }

    #[test]
    fn boundary_factorization() {
        // D_+ D_- = w on a 21-point interior grid, all three test weights
        for w in test_weights() {
            let data = SzegoData::from_weight(&w).unwrap();
            for j in 0..21 {
                let x = -0.95 + 0.095 * j as f64;
                let above = szego_boundary(&data, &w, x, Side::Above).unwrap();
                let below = szego_boundary(&data, &w, x, Side::Below).unwrap();
                let prod = above * below;
                let wx = w.eval(x).unwrap();
                assert!(crel(prod, Complex::new(wx, 0.0)) < 1e-9, "x = {x}");
                assert!(rel(above.norm(), wx.sqrt()) < 1e-12);
            }
        }
    }

    #[test]
    fn boundary_limit_from_above() {
        // szego_exterior(x + i eps) -> szego_boundary(x, above), Richardson
        // over eps in {1e-3, 1e-4, 1e-5}
        for w in test_weights() {
            let data = SzegoData::from_weight(&w).unwrap();
            for &x in &[-0.6, 0.0, 0.3, 0.7] {
                let f = |eps: f64| szego_exterior(&data, Complex::new(x, eps)).unwrap();
                let (a, b, c) = (f(1e-3), f(1e-4), f(1e-5));
                // two Richardson stages on the 10x ladder
                let r1 = (b.scale(10.0) - a).unscale(9.0);
                let r2 = (c.scale(10.0) - b).unscale(9.0);
                let lim = (r2.scale(10.0) - r1).unscale(9.0);
                let bound = szego_boundary(&data, &w, x, Side::Above).unwrap();
                assert!(
                    crel(lim, bound) < 1e-6,
                    "x = {x}, alpha = {}: {lim} vs {bound}",
                    w.alpha
                );
            }
        }
    }

    #[test]
    fn arcsine_density_values() {
        assert!(rel(arcsine_density(0.0_f64).unwrap(), 1.0 / PI) < 1e-15);
        assert_eq!(
            arcsine_density(0.4_f64).unwrap(),
            arcsine_density(-0.4_f64).unwrap()
        );
        // normalization against the Gauss-Jacobi(-1/2,-1/2) rule
        let rule = gauss_jacobi_rule(8, -0.5_f64, -0.5).unwrap();
        let total = integrate(&rule, |_| 1.0 / PI).unwrap();
        assert!(rel(total, 1.0) < 1e-13);
        assert!(arcsine_density(1.0_f64).is_err());
    }

    #[test]
    fn bulk_asymptotic_matches_legendre() {
        let w = ModifiedJacobiWeight::pure_jacobi(0.0_f64, 0.0).unwrap();
        let data = SzegoData::from_weight(&w).unwrap();
        let table = recurrence_table(&w, 201).unwrap();
        for &n in &[50usize, 100, 200] {
            let x = 0.2;
            let (p, _) = table.eval_orthonormal(n, x).unwrap();
            let exact = p[n] / table.gamma(n).unwrap();
            let approx = bulk_pi_asymptotic(&data, &w, n, x).unwrap();
            let err = rel(approx, exact);
            assert!(err < 6.0 / n as f64, "n = {n}: rel err {err}");
        }
    }

    #[test]
    fn bulk_asymptotic_sign_structure() {
        let w = ModifiedJacobiWeight::pure_jacobi(0.0_f64, 0.0).unwrap();
        let data = SzegoData::from_weight(&w).unwrap();
        // cosine argument zero: (n + 1/2) arccos x - pi/4 = pi/2
        let n = 10usize;
        let theta = (2.75 * PI) / (n as f64 + 0.5);
        let x0 = theta.cos();
        let lo = bulk_pi_asymptotic(&data, &w, n, x0 - 1e-4).unwrap();
        let hi = bulk_pi_asymptotic(&data, &w, n, x0 + 1e-4).unwrap();
        assert!(lo * hi < 0.0, "sign flip across the cosine zero");
    }

    #[test]
    fn edge_asymptotic_matches_exact() {
        let h = cheb_fit(|x: f64| x.exp(), 1e-14).unwrap();
        let w = ModifiedJacobiWeight::new(0.3_f64, -0.4, h).unwrap();
        let data = SzegoData::from_weight(&w).unwrap();
        let table = recurrence_table(&w, 201).unwrap();
        for &n in &[50usize, 100, 200] {
            // u = 2 in the edge scaling
            let x = 1.0 - 2.0 / (2.0 * (n as f64).powi(2));
            let (p, _) = table.eval_orthonormal(n, x).unwrap();
            let exact = p[n] / table.gamma(n).unwrap();
            let approx = edge_pi_asymptotic(&data, &w, n, x).unwrap();
            let err = rel(approx, exact);
            assert!(err < 6.0 / n as f64, "n = {n}: rel err {err}");
        }
    }

    #[test]
    fn edge_asymptotic_half_integer_closed_form() {
        // alpha = 1/2, h = 1: J_{1/2} and its derivative admit closed forms
        let w = ModifiedJacobiWeight::pure_jacobi(0.5_f64, 0.0).unwrap();
        let data = SzegoData::from_weight(&w).unwrap();
        let n = 60usize;
        let x = 1.0 - 1.0 / (n as f64).powi(2);
        let theta: f64 = x.acos();
        let z = n as f64 * theta;
        let j = (2.0 / (PI * z)).sqrt() * z.sin();
        let jp = (2.0 / (PI * z)).sqrt() * z.cos() - 0.5 * (2.0 / PI).sqrt() * z.powf(-1.5) * z.sin();
        let psi = psi_phase(&data, x).unwrap();
        let zeta1 = 0.5 * theta + psi + 0.25 * PI;
        let expect = PI.sqrt() * data.d_infty * 2f64.powi(-(n as i32)) * z.sqrt()
            / (w.eval(x).unwrap().sqrt() * (1.0 - x * x).powf(0.25))
            * (zeta1.cos() * j + zeta1.sin() * jp);
        let got = edge_pi_asymptotic(&data, &w, n, x).unwrap();
        assert!(rel(got, expect) < 1e-10);
    }

    #[test]
    fn domain_errors() {
        let w = ModifiedJacobiWeight::pure_jacobi(0.0_f64, 0.0).unwrap();
        let data = SzegoData::from_weight(&w).unwrap();
        assert!(bulk_pi_asymptotic(&data, &w, 10, 0.95).is_err());
        assert!(edge_pi_asymptotic(&data, &w, 10, 0.85).is_err());
        assert!(psi_phase(&data, 1.0).is_err());
        assert!(szego_exterior(&data, Complex::new(0.3, 0.0)).is_err());
    }
}
