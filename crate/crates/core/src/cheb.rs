//! Finite Chebyshev-T series on [-1, 1]: the representation used for the
//! analytic weight factor h and for log h.

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

/// Coefficients c_0..c_K of sum c_k T_k(x) on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries<T> {
    pub coefficients: Vec<T>,
}

const DEGREE_CAP: usize = 4096;

impl<T: Real> ChebSeries<T> {
    pub fn constant(c: T) -> Self {
        ChebSeries {
            coefficients: vec![c],
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: T) -> T {
        let c = &self.coefficients;
        if c.is_empty() {
            return T::zero();
        }
        let two_x = cast::<T>(2.0) * x;
        let mut b1 = T::zero();
        let mut b2 = T::zero();
        for &ck in c.iter().skip(1).rev() {
            let b0 = ck + two_x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        c[0] + x * b1 - b2
    }

    pub fn max_abs_coefficient(&self) -> T {
        self.coefficients
            .iter()
            .fold(T::zero(), |m, c| m.max(c.abs()))
    }
}

/// Chebyshev coefficients from samples at the m+1 Lobatto points
/// x_j = cos(pi j / m); DCT-I, direct O(m^2).
fn coeffs_from_samples<T: Real>(samples: &[T]) -> Vec<T> {
    let m = samples.len() - 1;
    let mut coeffs = vec![T::zero(); m + 1];
    let pi_over_m = T::PI() / cast::<T>(m as f64);
    let half = cast::<T>(0.5);
    for (k, ck) in coeffs.iter_mut().enumerate() {
        let mut acc = half * (samples[0] + if k % 2 == 0 { samples[m] } else { -samples[m] });
        for (j, &fj) in samples.iter().enumerate().skip(1).take(m - 1) {
            acc += fj * (pi_over_m * cast::<T>((j * k) as f64)).cos();
        }
        *ck = cast::<T>(2.0) / cast::<T>(m as f64) * acc;
    }
    coeffs[0] = coeffs[0] * half;
    coeffs[m] = coeffs[m] * half;
    coeffs
}

/// Fit an analytic function by Chebyshev interpolation, doubling the degree
/// until the trailing coefficient block drops below `tol` relative to the
/// largest coefficient. Errors if the degree cap (4096) is exceeded.
pub fn cheb_fit<T: Real, F: Fn(T) -> T>(f: F, tol: T) -> Result<ChebSeries<T>> {
    let mut m = 16usize;
    loop {
        let samples: Vec<T> = (0..=m)
            .map(|j| {
                let x = (T::PI() * cast::<T>(j as f64) / cast::<T>(m as f64)).cos();
                f(x)
            })
            .collect();
        for (j, &v) in samples.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue {
                    x: (std::f64::consts::PI * j as f64 / m as f64).cos(),
                });
            }
        }
        let coeffs = coeffs_from_samples(&samples);
        let max = coeffs.iter().fold(T::zero(), |a: T, c| a.max(c.abs()));
        let tail = m / 8 + 2;
        let converged = coeffs[coeffs.len() - tail..]
            .iter()
            .all(|c| c.abs() <= tol * max);
        if converged {
            // trim the negligible tail, keeping at least the constant term
            let floor = cast::<T>(1e-15) * max;
            let keep = coeffs
                .iter()
                .rposition(|c| c.abs() > floor)
                .map_or(1, |k| k + 1);
            return Ok(ChebSeries {
                coefficients: coeffs[..keep].to_vec(),
            });
        }
        if m >= DEGREE_CAP {
            return Err(Error::FitDidNotConverge {
                tol: tol.to_f64().unwrap_or(f64::NAN),
                cap: DEGREE_CAP,
            });
        }
        m *= 2;
    }
}
