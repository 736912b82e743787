//! Gauss-Legendre and Gauss-Jacobi quadrature via eigen-decomposition of the
//! symmetric Jacobi matrix (Golub-Welsch), plus a generic integrator.

use crate::error::{Error, Result};
use crate::linalg::tridiag_eigen_first_components;
use crate::scalar::{cast, cast_usize, Real};
use crate::special::gamma_real;

/// Weight function implicitly attached to a rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightTag<T> {
    /// unit weight on (lo, hi)
    Unit,
    /// (1-x)^alpha (1+x)^beta on (-1, 1)
    Jacobi { alpha: T, beta: T },
    /// u^alpha on (0, s)
    JacobiShifted { alpha: T, s: T },
}

/// Immutable quadrature rule: strictly increasing nodes inside the open
/// domain interval, positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub domain: (T, T),
    pub weight_tag: WeightTag<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Total mass sum(weights).
    pub fn mass(&self) -> T {
        self.weights.iter().copied().fold(T::zero(), |a, w| a + w)
    }
}

/// Monic three-term recurrence coefficients of the classical Jacobi
/// polynomials for weight (1-x)^alpha (1+x)^beta on (-1,1):
/// pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1}.
///
/// Returned as (a_0..a_{m-1}, b_1..b_{m-1}, mass).
pub(crate) fn jacobi_monic_recurrence<T: Real>(
    m: usize,
    alpha: T,
    beta: T,
) -> Result<(Vec<T>, Vec<T>, T)> {
    let one = T::one();
    let two = cast::<T>(2.0);
    let ab = alpha + beta;
    let mass = two.powf(ab + one) * gamma_real(alpha + one)? * gamma_real(beta + one)?
        / gamma_real(ab + two)?;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m.saturating_sub(1));
    for k in 0..m {
        let kk = cast_usize::<T>(k);
        if k == 0 {
            a.push((beta - alpha) / (ab + two));
        } else {
            let d = two * kk + ab;
            a.push((beta * beta - alpha * alpha) / (d * (d + two)));
        }
    }
    for k in 1..m {
        let kk = cast_usize::<T>(k);
        let bk = if k == 1 {
            cast::<T>(4.0) * (one + alpha) * (one + beta)
                / ((two + ab) * (two + ab) * (cast::<T>(3.0) + ab))
        } else {
            let d = two * kk + ab;
            cast::<T>(4.0) * kk * (kk + alpha) * (kk + beta) * (kk + ab)
                / (d * d * (d + one) * (d - one))
        };
        b.push(bk);
    }
    Ok((a, b, mass))
}

fn golub_welsch<T: Real>(a: &[T], b: &[T], mass: T) -> Result<(Vec<T>, Vec<T>)> {
    let off: Vec<T> = b.iter().map(|&bk| bk.sqrt()).collect();
    let (nodes, firsts) = tridiag_eigen_first_components(a, &off)?;
    let weights = firsts.iter().map(|&f| mass * f * f).collect();
    Ok((nodes, weights))
}

/// Gauss-Legendre rule with `m` points on (lo, hi); exact for polynomials up
/// to degree 2m-1.
pub fn gauss_legendre_rule<T: Real>(m: usize, lo: T, hi: T) -> Result<QuadratureRule<T>> {
    if lo >= hi {
        return Err(Error::InvalidInterval {
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    assert!(m >= 1, "rule size must be positive");
    let (a, b, mass) = jacobi_monic_recurrence(m, T::zero(), T::zero())?;
    let (nodes, weights) = golub_welsch(&a, &b, mass)?;
    let half = cast::<T>(0.5);
    let mid = (lo + hi) * half;
    let rad = (hi - lo) * half;
    Ok(QuadratureRule {
        nodes: nodes.into_iter().map(|x| mid + rad * x).collect(),
        weights: weights.into_iter().map(|w| rad * w).collect(),
        domain: (lo, hi),
        weight_tag: WeightTag::Unit,
    })
}

/// Gauss-Jacobi rule with `m` points for weight (1-x)^alpha (1+x)^beta on
/// (-1, 1).
pub fn gauss_jacobi_rule<T: Real>(m: usize, alpha: T, beta: T) -> Result<QuadratureRule<T>> {
    if alpha <= cast(-1.0) || beta <= cast(-1.0) {
        return Err(Error::ExponentOutOfRange {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            beta: beta.to_f64().unwrap_or(f64::NAN),
        });
    }
    assert!(m >= 1, "rule size must be positive");
    let (a, b, mass) = jacobi_monic_recurrence(m, alpha, beta)?;
    let (nodes, weights) = golub_welsch(&a, &b, mass)?;
    Ok(QuadratureRule {
        nodes,
        weights,
        domain: (cast(-1.0), T::one()),
        weight_tag: WeightTag::Jacobi { alpha, beta },
    })
}

/// Gauss rule for weight u^alpha on (0, s): the one-sided Jacobi rule used by
/// the Nystrom discretization at the hard edge.
pub fn gauss_jacobi_shifted_rule<T: Real>(m: usize, alpha: T, s: T) -> Result<QuadratureRule<T>> {
    if alpha <= cast(-1.0) {
        return Err(Error::ExponentOutOfRange {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            beta: 0.0,
        });
    }
    if s <= T::zero() {
        return Err(Error::InvalidInterval {
            lo: 0.0,
            hi: s.to_f64().unwrap_or(f64::NAN),
        });
    }
    // u = s (1 + t) / 2 maps weight (1+t)^alpha on (-1,1) to u^alpha on (0,s)
    let base = gauss_jacobi_rule(m, T::zero(), alpha)?;
    let half = cast::<T>(0.5);
    let scale = (s * half).powf(alpha + T::one());
    Ok(QuadratureRule {
        nodes: base.nodes.iter().map(|&t| s * half * (t + T::one())).collect(),
        weights: base.weights.iter().map(|&w| scale * w).collect(),
        domain: (T::zero(), s),
        weight_tag: WeightTag::JacobiShifted { alpha, s },
    })
}

/// Apply a rule: sum_i w_i f(x_i). Non-finite integrand values are an error.
pub fn integrate<T: Real, F: Fn(T) -> T>(rule: &QuadratureRule<T>, f: F) -> Result<T> {
    let mut acc = T::zero();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFiniteValue {
                x: x.to_f64().unwrap_or(f64::NAN),
            });
        }
        acc += w * v;
    }
    Ok(acc)
}
