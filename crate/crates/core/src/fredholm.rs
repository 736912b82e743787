//! Fredholm determinants det(I - K) on L^2(0, s) for the limiting Bessel
//! operator and the finite-n hard-edge kernel, via weighted Nystrom
//! discretization that absorbs the u^{alpha/2} endpoint behavior, giving
//! the gap probabilities at the hard edge.

use crate::error::{Error, Result};
use crate::kernels::{scaled_edge, BesselKernel, KernelContext};
use crate::linalg::det_i_minus;
use crate::quad::gauss_jacobi_shifted_rule;
use crate::scalar::{cast, Real};

/// Parameters of a gap-probability computation on (0, s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapSpec<T> {
    pub alpha: T,
    pub s: T,
    pub quadrature_size: usize,
}

impl<T: Real> GapSpec<T> {
    pub fn new(alpha: T, s: T, quadrature_size: usize) -> Result<Self> {
        if alpha <= cast(-1.0) {
            return Err(Error::InvalidOrder {
                order: alpha.to_f64().unwrap_or(f64::NAN),
            });
        }
        if s <= T::zero() {
            return Err(Error::domain(format!("gap interval length must be positive, got {s}")));
        }
        if quadrature_size < 4 {
            return Err(Error::domain(format!(
                "Nystrom rule needs at least 4 points, got {quadrature_size}"
            )));
        }
        Ok(GapSpec {
            alpha,
            s,
            quadrature_size,
        })
    }
}

const NYSTROM_MAX_SIZE: usize = 512;
const NYSTROM_SELF_TOL: f64 = 1e-8;

fn nystrom_matrix<T: Real, F>(h: &F, spec: &GapSpec<T>) -> Result<(Vec<T>, usize)>
where
    F: Fn(T, T) -> Result<T>,
{
    let rule = gauss_jacobi_shifted_rule(spec.quadrature_size, spec.alpha, spec.s)?;
    let m = rule.len();
    let sw: Vec<T> = rule.weights.iter().map(|&w| w.sqrt()).collect();
    let mut a = vec![T::zero(); m * m];
    for i in 0..m {
        for j in i..m {
            let v = h(rule.nodes[i], rule.nodes[j])?;
            if !v.is_finite() {
                return Err(Error::FactorizationFailure {
                    u: rule.nodes[i].to_f64().unwrap_or(f64::NAN),
                    v: rule.nodes[j].to_f64().unwrap_or(f64::NAN),
                });
            }
            let e = sw[i] * sw[j] * v;
            a[i * m + j] = e;
            a[j * m + i] = e;
        }
    }
    Ok((a, m))
}

/// Weighted-Nystrom Fredholm determinant for a kernel factored as
/// K(u,v) = u^{alpha/2} v^{alpha/2} H(u,v): the determinant of
/// delta_ij - sqrt(w_i w_j) H(u_i, u_j) over the Gauss rule with weight
/// u^alpha on (0, s). `h` receives the bounded factor H.
pub fn nystrom_determinant<T: Real, F>(h: F, spec: &GapSpec<T>) -> Result<T>
where
    F: Fn(T, T) -> Result<T>,
{
    let (a, m) = nystrom_matrix(&h, spec)?;
    let det = det_i_minus(&a, m);
    // the operator is positive with norm below one
    if !(det > T::zero() && det <= T::one() + cast(1e-10)) {
        return Err(Error::domain(format!(
            "Nystrom determinant {det} escaped (0, 1]: kernel not a positive contraction"
        )));
    }
    Ok(det.min(T::one()))
}

/// As `nystrom_determinant` but doubling the rule from `spec.quadrature_size`
/// until two sizes agree to 1e-8, failing past m = 512.
pub fn nystrom_determinant_auto<T: Real, F>(h: F, spec: &GapSpec<T>) -> Result<T>
where
    F: Fn(T, T) -> Result<T>,
{
    let mut m = spec.quadrature_size;
    let mut prev = nystrom_determinant(&h, &GapSpec { quadrature_size: m, ..*spec })?;
    while m < NYSTROM_MAX_SIZE {
        m *= 2;
        let next = nystrom_determinant(&h, &GapSpec { quadrature_size: m, ..*spec })?;
        if (next - prev).abs() <= cast(NYSTROM_SELF_TOL) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::DeterminantNotConverged { m })
}

/// det(I - J_{alpha,s}): the limiting hard-edge gap probability.
pub fn bessel_gap_probability<T: Real>(alpha: T, s: T, m: usize) -> Result<T> {
    let spec = GapSpec::new(alpha, s, m)?;
    let kernel = BesselKernel::new(alpha, s)?;
    nystrom_determinant(|u, v| kernel.reduced(u, v), &spec)
}

/// det(I - D_{n,s}): the finite-n gap probability
/// P_n(1 - s/(2n^2), 1), which converges to the limiting Bessel value.
pub fn finite_gap_probability<T: Real>(ctx: &KernelContext<T>, s: T, m: usize) -> Result<T> {
    let alpha = ctx.weight.alpha;
    let spec = GapSpec::new(alpha, s, m)?;
    let half = cast::<T>(0.5);
    nystrom_determinant(
        |u: T, v: T| {
            let d = scaled_edge(ctx, u, v)?;
            Ok(d * (u * v).powf(-alpha * half))
        },
        &spec,
    )
}

/// Truncated Fredholm series estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate<T> {
    pub value: T,
    /// false when the last retained term exceeds 1e-8: series not converged
    pub converged: bool,
}

/// Test oracle: the determinant's series sum_{j} (-1)^j / j! int..int
/// det[K(u_i, u_k)] evaluated through power sums of the Nystrom matrix and
/// Newton's identities. Practical only while the operator norm is small.
pub fn fredholm_series_oracle<T: Real, F>(
    h: F,
    spec: &GapSpec<T>,
    terms: usize,
) -> Result<SeriesEstimate<T>>
where
    F: Fn(T, T) -> Result<T>,
{
    assert!(terms <= 6, "series oracle supports at most 6 terms");
    if terms == 0 {
        return Ok(SeriesEstimate {
            value: T::one(),
            converged: false,
        });
    }
    let (a, m) = nystrom_matrix(&h, spec)?;
    // power sums p_j = tr(A^j)
    let mut powers = a.clone();
    let mut psums = Vec::with_capacity(terms);
    psums.push((0..m).map(|i| a[i * m + i]).fold(T::zero(), |x, y| x + y));
    for _ in 1..terms {
        let mut next = vec![T::zero(); m * m];
        for i in 0..m {
            for k in 0..m {
                let aik = powers[i * m + k];
                if aik == T::zero() {
                    continue;
                }
                for j in 0..m {
                    next[i * m + j] += aik * a[k * m + j];
                }
            }
        }
        powers = next;
        psums.push((0..m).map(|i| powers[i * m + i]).fold(T::zero(), |x, y| x + y));
    }
    // Newton's identities: e_j = (1/j) sum_{i=1..j} (-1)^{i-1} e_{j-i} p_i
    let mut elem = vec![T::one()];
    for j in 1..=terms {
        let mut acc = T::zero();
        for i in 1..=j {
            let signed = if i % 2 == 1 { psums[i - 1] } else { -psums[i - 1] };
            acc += elem[j - i] * signed;
        }
        elem.push(acc / cast::<T>(j as f64));
    }
    let mut value = T::zero();
    let mut last = T::zero();
    for (j, &ej) in elem.iter().enumerate() {
        last = if j % 2 == 0 { ej } else { -ej };
        value += last;
    }
    Ok(SeriesEstimate {
        value,
        converged: last.abs() <= cast(1e-8),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::recurrence_table;
    use crate::weight::ModifiedJacobiWeight;

    #[test]
    fn tiny_interval_gap_is_one() {
        for &alpha in &[-0.5_f64, 0.0, 2.0] {
            let p = bessel_gap_probability(alpha, 1e-12, 8).unwrap();
            assert!((p - 1.0).abs() < 1e-6, "alpha = {alpha}: {p}");
        }
    }

    #[test]
    fn self_convergence() {
        for &alpha in &[-0.5_f64, 0.0, 0.3, 2.0] {
            for &s in &[0.5_f64, 2.0, 8.0] {
                let a = bessel_gap_probability(alpha, s, 64).unwrap();
                let b = bessel_gap_probability(alpha, s, 128).unwrap();
                assert!(
                    (a - b).abs() <= 1e-8,
                    "alpha = {alpha}, s = {s}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn monotone_decreasing_in_s() {
        let mut prev = 1.0_f64;
        for &s in &[0.5, 1.0, 2.0, 4.0, 8.0] {
            let p = bessel_gap_probability(0.0_f64, s, 96).unwrap();
            assert!(p > 0.0 && p < prev, "s = {s}: {p} vs prev {prev}");
            prev = p;
        }
    }

    #[test]
    fn series_oracle_degenerate_terms() {
        let kernel = BesselKernel::new(0.0_f64, 1.0).unwrap();
        let spec = GapSpec::new(0.0_f64, 1.0, 64).unwrap();
        let zero = fredholm_series_oracle(|u, v| kernel.reduced(u, v), &spec, 0).unwrap();
        assert_eq!(zero.value, 1.0);
        // one term: 1 - trace
        let one = fredholm_series_oracle(|u, v| kernel.reduced(u, v), &spec, 1).unwrap();
        let rule = gauss_jacobi_shifted_rule(64, 0.0_f64, 1.0).unwrap();
        let mut tr = 0.0;
        for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
            tr += w * kernel.reduced(u, u).unwrap();
        }
        assert!((one.value - (1.0 - tr)).abs() < 1e-12);
    }

    #[test]
    fn series_oracle_cross_method() {
        let kernel = BesselKernel::new(0.5_f64, 0.5).unwrap();
        let spec = GapSpec::new(0.5_f64, 0.5, 64).unwrap();
        let series = fredholm_series_oracle(|u, v| kernel.reduced(u, v), &spec, 6).unwrap();
        let nystrom = bessel_gap_probability(0.5_f64, 0.5, 64).unwrap();
        assert!(series.converged);
        assert!(
            (series.value - nystrom).abs() < 1e-7,
            "series {} vs nystrom {nystrom}",
            series.value
        );
    }

    #[test]
    fn auto_doubling_converges() {
        let kernel = BesselKernel::new(0.3_f64, 2.0).unwrap();
        let spec = GapSpec::new(0.3_f64, 2.0, 16).unwrap();
        let auto = nystrom_determinant_auto(|u, v| kernel.reduced(u, v), &spec).unwrap();
        let reference = bessel_gap_probability(0.3_f64, 2.0, 128).unwrap();
        assert!((auto - reference).abs() < 1e-7);
    }

    #[test]
    fn finite_gap_basics() {
        let w = ModifiedJacobiWeight::pure_jacobi(0.3_f64, 0.0).unwrap();
        let t = recurrence_table(&w, 41).unwrap();
        let ctx = KernelContext::new(&w, &t, 40).unwrap();
        let p_small = finite_gap_probability(&ctx, 1e-8, 16).unwrap();
        assert!((p_small - 1.0).abs() < 1e-6);
        let p = finite_gap_probability(&ctx, 2.0, 48).unwrap();
        assert!(p > 0.0 && p <= 1.0);
    }

    #[test]
    fn finite_gap_approaches_limit() {
        let w = ModifiedJacobiWeight::pure_jacobi(0.3_f64, 0.0).unwrap();
        let t = recurrence_table(&w, 81).unwrap();
        let s = 2.0;
        let limit = bessel_gap_probability(0.3_f64, s, 96).unwrap();
        let mut prev_gap = f64::INFINITY;
        for &n in &[20usize, 40, 80] {
            let ctx = KernelContext::new(&w, &t, n).unwrap();
            let p = finite_gap_probability(&ctx, s, 48).unwrap();
            let gap = (p - limit).abs();
            assert!(gap < prev_gap, "n = {n}: |finite - limit| = {gap}");
            prev_gap = gap;
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(GapSpec::new(0.0_f64, -1.0, 16).is_err());
        assert!(GapSpec::new(-1.5_f64, 1.0, 16).is_err());
        assert!(GapSpec::new(0.0_f64, 1.0, 2).is_err());
    }
}
