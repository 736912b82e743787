//! The modified Jacobi weight w(x) = (1-x)^alpha (1+x)^beta h(x) on (-1,1)
//! with alpha, beta > -1 and h analytic and strictly positive.

use crate::cheb::ChebSeries;
use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

/// Positivity floor for the analytic factor h on the validation grid.
pub const H_POSITIVITY_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct ModifiedJacobiWeight<T> {
    pub alpha: T,
    pub beta: T,
    pub h: ChebSeries<T>,
}

impl<T: Real> ModifiedJacobiWeight<T> {
    /// Build and validate: exponents above -1, h above the positivity floor
    /// on a 1001-point Chebyshev grid.
    pub fn new(alpha: T, beta: T, h: ChebSeries<T>) -> Result<Self> {
        if alpha <= cast(-1.0) || beta <= cast(-1.0) {
            return Err(Error::ExponentOutOfRange {
                alpha: alpha.to_f64().unwrap_or(f64::NAN),
                beta: beta.to_f64().unwrap_or(f64::NAN),
            });
        }
        let floor: T = cast(H_POSITIVITY_FLOOR);
        for j in 0..=1000usize {
            let x = (T::PI() * cast::<T>(j as f64) / cast::<T>(1000.0)).cos();
            let v = h.eval(x);
            if !(v >= floor) {
                return Err(Error::WeightNotPositive {
                    x: x.to_f64().unwrap_or(f64::NAN),
                    value: v.to_f64().unwrap_or(f64::NAN),
                    floor: H_POSITIVITY_FLOOR,
                });
            }
        }
        Ok(ModifiedJacobiWeight { alpha, beta, h })
    }

    /// The pure Jacobi weight (h = 1).
    pub fn pure_jacobi(alpha: T, beta: T) -> Result<Self> {
        Self::new(alpha, beta, ChebSeries::constant(T::one()))
    }

    /// w(x) for x in (-1, 1).
    pub fn eval(&self, x: T) -> Result<T> {
        if x <= cast(-1.0) || x >= T::one() {
            return Err(Error::domain(format!(
                "weight argument must lie in (-1,1), got {x}"
            )));
        }
        Ok((T::one() - x).powf(self.alpha) * (T::one() + x).powf(self.beta) * self.h.eval(x))
    }
}
