//! Real Gamma function and Bessel functions of the first kind with real
//! order `alpha > -1`, including the entire part `G` of the factorization
//! `J_alpha(z) = z^alpha G(z)`.

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

/// Lanczos coefficients, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_092,
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_2,
    -0.491_913_816_097_620_200,
    3.399_464_998_481_188_87e-5,
    4.652_362_892_704_857_57e-5,
    -9.837_447_530_487_956_47e-5,
    1.580_887_032_249_124_89e-4,
    -2.102_644_417_241_048_83e-4,
    2.174_396_181_152_126_43e-4,
    -1.643_181_065_367_638_90e-4,
    8.441_822_398_385_274_33e-5,
    -2.619_083_840_158_140_87e-5,
    3.689_918_265_953_162_27e-6,
];

fn lanczos_gamma_positive<T: Real>(x: T) -> T {
    // valid for x >= 0.5
    let g: T = cast(LANCZOS_G);
    let half: T = cast(0.5);
    let mut acc: T = cast(LANCZOS[0]);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += cast::<T>(c) / (x - T::one() + cast(k as f64));
    }
    let t = x - half + g;
    let sqrt_two_pi: T = cast(2.506_628_274_631_000_5);
    sqrt_two_pi * t.powf(x - half) * (-t).exp() * acc
}

/// Gamma function for real `x` away from the poles at 0, -1, -2, ...
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    if x <= T::zero() && x == x.floor() {
        return Err(Error::GammaPole {
            x: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    if x < cast(0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let pi = T::PI();
        Ok(pi / ((pi * x).sin() * lanczos_gamma_positive(T::one() - x)))
    } else {
        Ok(lanczos_gamma_positive(x))
    }
}

/// Joint evaluation of J_alpha, its derivative, and the entire part G with
/// J_alpha(z) = z^alpha G(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval<T> {
    pub order: T,
    pub argument: T,
    /// J_alpha(argument)
    pub value: T,
    /// J'_alpha(argument)
    pub derivative: T,
    /// G(argument)
    pub entire_part: T,
    /// G'(argument)
    pub entire_part_derivative: T,
}

/// Power series / asymptotic switchover; below this argument the series for
/// the entire part converges without damaging cancellation.
const SERIES_CUTOFF: f64 = 12.0;
const SERIES_MAX_TERMS: usize = 60;

fn check_order<T: Real>(order: T) -> Result<()> {
    if order <= cast(-1.0) || !order.is_finite() {
        return Err(Error::InvalidOrder {
            order: order.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// G and z*G'(z) by the power series, valid for any z but used for |z| <= 12.
/// Returns (G(z), G'(z)).
fn entire_series<T: Real>(order: T, z: T) -> Result<(T, T)> {
    let w = z * z * cast(0.25);
    let c0 = cast::<T>(2.0).powf(-order) / gamma_real(order + T::one())?;
    let mut term = c0;
    let mut g = c0;
    let mut zg = T::zero(); // z * G'(z) = sum 2k t_k
    let tiny: T = cast(1e-17);
    for k in 0..SERIES_MAX_TERMS {
        let kk = cast::<T>((k + 1) as f64);
        term = -term * w / (kk * (kk + order));
        g += term;
        zg += cast::<T>(2.0) * kk * term;
        if term.abs() < tiny * g.abs() {
            break;
        }
    }
    let gp = if z == T::zero() { T::zero() } else { zg / z };
    Ok((g, gp))
}

/// Hankel large-argument expansion of J_alpha(z), z >= SERIES_CUTOFF.
fn bessel_asymptotic<T: Real>(order: T, z: T) -> T {
    let mu = cast::<T>(4.0) * order * order;
    let eight_z = cast::<T>(8.0) * z;
    // a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! (8z)^k), summed with
    // alternating assignment into the P (even k) and Q (odd k) series.
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut prev = T::infinity();
    for k in 1usize..=40 {
        let odd = cast::<T>((2 * k - 1) as f64);
        term = term * (mu - odd * odd) / (cast::<T>(k as f64) * eight_z);
        if term.abs() >= prev {
            break; // divergent tail reached: stop at the smallest term
        }
        prev = term.abs();
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if term.abs() < cast(1e-18) {
            break;
        }
    }
    let omega = z - (order * cast(0.5) + cast(0.25)) * T::PI();
    (cast::<T>(2.0) / (T::PI() * z)).sqrt() * (p * omega.cos() - q * omega.sin())
}

/// Evaluate J_alpha, J'_alpha and the entire part G, G' at `argument >= 0`.
pub fn bessel_eval<T: Real>(order: T, argument: T) -> Result<BesselEval<T>> {
    check_order(order)?;
    if argument < T::zero() || !argument.is_finite() {
        return Err(Error::domain(format!(
            "Bessel argument must be >= 0, got {argument}"
        )));
    }
    let z = argument;
    // At order +-1/2 the large-argument expansion terminates and is exact for
    // every z > 0, so it beats the power series as soon as z is not small.
    let half: T = cast(0.5);
    let terminating = (order == half || order == -half) && z > half;
    if z <= cast(SERIES_CUTOFF) && !terminating {
        let (g, gp) = entire_series(order, z)?;
        let (value, derivative);
        if z == T::zero() {
            value = if order == T::zero() {
                T::one()
            } else if order > T::zero() {
                T::zero()
            } else {
                T::infinity()
            };
            derivative = if order == T::zero() {
                T::zero()
            } else if order == T::one() {
                order * g
            } else if order > T::one() {
                T::zero()
            } else if order > T::zero() {
                T::infinity()
            } else {
                T::neg_infinity()
            };
        } else {
            let za = z.powf(order);
            value = za * g;
            derivative = za * (order * g / z + gp);
        }
        Ok(BesselEval {
            order,
            argument,
            value,
            derivative,
            entire_part: g,
            entire_part_derivative: gp,
        })
    } else {
        let value = bessel_asymptotic(order, z);
        let next = bessel_asymptotic(order + T::one(), z);
        let derivative = order / z * value - next;
        let zma = z.powf(-order);
        let entire_part = zma * value;
        // G'(z) = z^{-alpha} (J' - alpha J / z) = -z^{-alpha} J_{alpha+1}(z)
        let entire_part_derivative = -zma * next;
        Ok(BesselEval {
            order,
            argument,
            value,
            derivative,
            entire_part,
            entire_part_derivative,
        })
    }
}

/// Coefficients of the entire function g(u) = u^{-alpha/2} J_alpha(sqrt u)
/// as a power series in u: g(u) = sum_k c_k u^k.
///
/// Also usable for k(u) = alpha g(u) + sqrt(u) G'(sqrt u) whose series is
/// sum_k (alpha + 2k) c_k u^k.  Both appear in the stabilized divided
/// difference form of the Bessel kernel.
pub(crate) fn entire_pair_coeffs<T: Real>(order: T, u_max: T, tol: T) -> Result<Vec<T>> {
    // c_k = 2^{-alpha} (-1)^k / (4^k k! Gamma(k + alpha + 1))
    let mut coeffs = Vec::with_capacity(24);
    let mut c = cast::<T>(2.0).powf(-order) / gamma_real(order + T::one())?;
    coeffs.push(c);
    let scale = u_max.max(T::one());
    let mut pw = T::one();
    for k in 0..SERIES_MAX_TERMS {
        let kk = cast::<T>((k + 1) as f64);
        c = -c / (cast::<T>(4.0) * kk * (kk + order));
        coeffs.push(c);
        pw = pw * scale;
        if (c * pw * scale).abs() < tol {
            break;
        }
    }
    Ok(coeffs)
}
