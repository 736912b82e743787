//! The Christoffel-Darboux kernel K_n of the modified Jacobi weight, its
//! bulk and hard-edge scalings, and the limiting sine and Bessel kernels
//! with numerically stable diagonals.

use crate::asymptotics::arcsine_density;
use crate::error::{Error, Result};
use crate::orthopoly::RecurrenceTable;
use crate::scalar::{cast, cast_usize, Real};
use crate::special::{bessel_eval, entire_pair_coeffs};
use crate::weight::ModifiedJacobiWeight;

/// Immutable context for finite-n kernel evaluation; `table` must be built
/// from `weight` and hold degrees up to n.
#[derive(Debug, Clone, Copy)]
pub struct KernelContext<'a, T> {
    pub weight: &'a ModifiedJacobiWeight<T>,
    pub table: &'a RecurrenceTable<T>,
    pub n: usize,
}

impl<'a, T: Real> KernelContext<'a, T> {
    pub fn new(
        weight: &'a ModifiedJacobiWeight<T>,
        table: &'a RecurrenceTable<T>,
        n: usize,
    ) -> Result<Self> {
        if n < 1 || n >= table.len() {
            return Err(Error::IndexOutOfRange {
                n,
                max: table.len(),
            });
        }
        Ok(KernelContext { weight, table, n })
    }
}

/// K_n(x, y) = sqrt(w(x)) sqrt(w(y)) sum_{j<n} p_j(x) p_j(y).
pub fn kernel_sum<T: Real>(ctx: &KernelContext<T>, x: T, y: T) -> Result<T> {
    let wx = ctx.weight.eval(x)?;
    let wy = ctx.weight.eval(y)?;
    let (px, _) = ctx.table.eval_orthonormal(ctx.n - 1, x)?;
    let (py, _) = ctx.table.eval_orthonormal(ctx.n - 1, y)?;
    let mut s = T::zero();
    for j in 0..ctx.n {
        s += px[j] * py[j];
    }
    Ok(wx.sqrt() * wy.sqrt() * s)
}

/// relative x-y separation below which the confluent form takes over
const CD_DIAGONAL_TOL: f64 = 1e-8;

/// K_n by the Christoffel-Darboux formula; near-diagonal arguments are
/// routed to the confluent form with p_n', p_{n-1}'.
pub fn kernel_cd<T: Real>(ctx: &KernelContext<T>, x: T, y: T) -> Result<T> {
    let n = ctx.n;
    // gamma_{n-1} / gamma_n = sqrt(b_n)
    let ratio = ctx.table.b[n - 1].sqrt();
    if (x - y).abs() < cast::<T>(CD_DIAGONAL_TOL) * (T::one() + x.abs()) {
        let mid = (x + y) * cast(0.5);
        let w = ctx.weight.eval(mid)?;
        let (p, dp) = ctx.table.eval_orthonormal(n, mid)?;
        return Ok(ratio * (dp[n] * p[n - 1] - dp[n - 1] * p[n]) * w);
    }
    let wx = ctx.weight.eval(x)?;
    let wy = ctx.weight.eval(y)?;
    let (px, _) = ctx.table.eval_orthonormal(n, x)?;
    let (py, _) = ctx.table.eval_orthonormal(n, y)?;
    Ok(wx.sqrt() * wy.sqrt() * ratio * (px[n] * py[n - 1] - px[n - 1] * py[n]) / (x - y))
}

/// Bulk scaling (1/(n xi(x))) K_n(x + u/(n xi(x)), x + v/(n xi(x))), the
/// quantity converging to the sine kernel.
pub fn scaled_bulk<T: Real>(ctx: &KernelContext<T>, x: T, u: T, v: T) -> Result<T> {
    let xi = arcsine_density(x)?;
    let scale = cast_usize::<T>(ctx.n) * xi;
    let xs = x + u / scale;
    let ys = x + v / scale;
    for (name, s) in [("u", xs), ("v", ys)] {
        if s <= cast(-1.0) || s >= T::one() {
            return Err(Error::domain(format!(
                "bulk-shifted argument for {name} leaves (-1,1): {s}"
            )));
        }
    }
    Ok(kernel_cd(ctx, xs, ys)? / scale)
}

/// Hard-edge scaling D_n(u,v) = (1/(2n^2)) K_n(1 - u/(2n^2), 1 - v/(2n^2)),
/// the quantity converging to the Bessel kernel.
pub fn scaled_edge<T: Real>(ctx: &KernelContext<T>, u: T, v: T) -> Result<T> {
    if u <= T::zero() || v <= T::zero() {
        return Err(Error::domain(format!(
            "edge coordinates must be positive, got ({u}, {v})"
        )));
    }
    let two_n2 = cast::<T>(2.0) * cast_usize::<T>(ctx.n) * cast_usize::<T>(ctx.n);
    let un = T::one() - u / two_n2;
    let vn = T::one() - v / two_n2;
    if un <= cast(-1.0) || vn <= cast(-1.0) {
        return Err(Error::domain(format!(
            "edge coordinates exceed 4n^2: ({u}, {v})"
        )));
    }
    Ok(kernel_cd(ctx, un, vn)? / two_n2)
}

/// sin(pi (u - v)) / (pi (u - v)), with a series near the diagonal.
pub fn sine_kernel<T: Real>(u: T, v: T) -> T {
    let t = T::PI() * (u - v);
    if t.abs() < cast::<T>(1e-6) * T::PI() {
        let t2 = t * t;
        T::one() - t2 / cast(6.0) + t2 * t2 / cast(120.0)
    } else {
        t.sin() / t
    }
}

/// relative u-v separation below which the Bessel kernel switches from the
/// direct formula to the divided-difference form
const BESSEL_DIAGONAL_TOL: f64 = 1e-4;

/// The hard-edge Bessel kernel for a fixed order, with precomputed series
/// coefficients of the entire functions
/// g(u) = u^{-alpha/2} J_alpha(sqrt u) and
/// k(u) = u^{-alpha/2} sqrt(u) J'_alpha(sqrt u)
/// used on and near the diagonal.
#[derive(Debug, Clone)]
pub struct BesselKernel<T> {
    pub alpha: T,
    coeffs: Vec<T>,
}

impl<T: Real> BesselKernel<T> {
    /// `u_max` bounds the coordinates at which the divided-difference series
    /// will be used; larger arguments fall back to direct evaluation.
    pub fn new(alpha: T, u_max: T) -> Result<Self> {
        if alpha <= cast(-1.0) {
            return Err(Error::InvalidOrder {
                order: alpha.to_f64().unwrap_or(f64::NAN),
            });
        }
        let coeffs = entire_pair_coeffs(alpha, u_max, cast(1e-18))?;
        Ok(BesselKernel { alpha, coeffs })
    }

    /// (g(u), k(u)) by the power series.
    fn entire_pair(&self, u: T) -> (T, T) {
        let mut g = T::zero();
        let mut k = T::zero();
        let mut pw = T::one();
        for (j, &c) in self.coeffs.iter().enumerate() {
            let t = c * pw;
            g += t;
            k += (self.alpha + cast::<T>(2.0) * cast_usize::<T>(j)) * t;
            pw = pw * u;
        }
        (g, k)
    }

    /// H(u,v) = (uv)^{-alpha/2} J_alpha(u,v): the entire, symmetric factor of
    /// the kernel, finite down to u, v = 0. Stable for all separations.
    pub fn reduced(&self, u: T, v: T) -> Result<T> {
        if u < T::zero() || v < T::zero() {
            return Err(Error::domain(format!(
                "Bessel kernel coordinates must be positive, got ({u}, {v})"
            )));
        }
        let (gu, ku) = self.entire_pair(u);
        let (gv, kv) = self.entire_pair(v);
        // divided differences of the entire series: no cancellation near u=v
        let mut dg = T::zero();
        let mut dk = T::zero();
        let mut s = T::zero(); // divided difference of u^j
        let mut vpow = T::one();
        for (j, &c) in self.coeffs.iter().enumerate() {
            dg += c * s;
            dk += (self.alpha + cast::<T>(2.0) * cast_usize::<T>(j)) * c * s;
            s = u * s + vpow;
            vpow = vpow * v;
        }
        let g_mid = (gu + gv) * cast(0.5);
        let k_mid = (ku + kv) * cast(0.5);
        Ok((dg * k_mid - dk * g_mid) * cast(0.5))
    }

    /// J_alpha(u, v).
    pub fn eval(&self, u: T, v: T) -> Result<T> {
        if u <= T::zero() || v <= T::zero() {
            return Err(Error::domain(format!(
                "Bessel kernel coordinates must be positive, got ({u}, {v})"
            )));
        }
        let half_alpha = self.alpha * cast(0.5);
        if (u - v).abs() >= cast::<T>(BESSEL_DIAGONAL_TOL) * (u + v) {
            let eu = bessel_eval(self.alpha, u.sqrt())?;
            let ev = bessel_eval(self.alpha, v.sqrt())?;
            Ok(
                (eu.value * v.sqrt() * ev.derivative - ev.value * u.sqrt() * eu.derivative)
                    / (cast::<T>(2.0) * (u - v)),
            )
        } else {
            Ok(u.powf(half_alpha) * v.powf(half_alpha) * self.reduced(u, v)?)
        }
    }
}

/// One-shot Bessel kernel evaluation J_alpha(u, v).
pub fn bessel_kernel<T: Real>(alpha: T, u: T, v: T) -> Result<T> {
    BesselKernel::new(alpha, u.max(v))?.eval(u, v)
}
