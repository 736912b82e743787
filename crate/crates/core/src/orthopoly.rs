//! Orthonormal polynomials for the modified Jacobi weight: three-term
//! recurrence coefficients by a discretized Stieltjes procedure over a
//! Gauss-Jacobi rule (the analytic factor h absorbed at the nodes), and
//! evaluation of p_n, p_n' and the leading coefficient gamma_n.

use crate::error::{Error, Result};
use crate::quad::gauss_jacobi_rule;
use crate::scalar::{cast, Real};
use crate::weight::ModifiedJacobiWeight;

/// Three-term recurrence data for the orthonormal family of a weight.
///
/// Monic form: pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1} with b_k > 0;
/// `mass` is b_0 = integral of w.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable<T> {
    /// a_0 .. a_{N-1}
    pub a: Vec<T>,
    /// b_1 .. b_{N-1}
    pub b: Vec<T>,
    /// b_0 = total weight mass
    pub mass: T,
}

impl<T: Real> RecurrenceTable<T> {
    /// N: polynomials of degree 0..N-1 are available.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// ln gamma_n = -1/2 (ln mass + sum_{k<=n} ln b_k).
    pub fn log_gamma(&self, n: usize) -> Result<T> {
        if n >= self.len() {
            return Err(Error::IndexOutOfRange {
                n,
                max: self.len(),
            });
        }
        let mut acc = self.mass.ln();
        for &bk in &self.b[..n] {
            acc += bk.ln();
        }
        Ok(-cast::<T>(0.5) * acc)
    }

    /// Leading coefficient gamma_n of the orthonormal p_n.
    pub fn gamma(&self, n: usize) -> Result<T> {
        Ok(self.log_gamma(n)?.exp())
    }

    /// Values p_0(x)..p_n(x) and derivatives p_0'(x)..p_n'(x) by the
    /// orthonormal recurrence run in lockstep with its derivative.
    pub fn eval_orthonormal(&self, n: usize, x: T) -> Result<(Vec<T>, Vec<T>)> {
        if n >= self.len() {
            return Err(Error::IndexOutOfRange {
                n,
                max: self.len(),
            });
        }
        let mut p = Vec::with_capacity(n + 1);
        let mut dp = Vec::with_capacity(n + 1);
        p.push(self.mass.sqrt().recip());
        dp.push(T::zero());
        if n == 0 {
            return Ok((p, dp));
        }
        // sqrt(b_{k+1}) p_{k+1} = (x - a_k) p_k - sqrt(b_k) p_{k-1}
        let mut sb_prev = T::zero();
        for k in 0..n {
            let sb = self.b[k].sqrt();
            let pk = p[k];
            let pk1 = if k == 0 { T::zero() } else { p[k - 1] };
            let dk = dp[k];
            let dk1 = if k == 0 { T::zero() } else { dp[k - 1] };
            let t = x - self.a[k];
            p.push((t * pk - sb_prev * pk1) / sb);
            dp.push((pk + t * dk - sb_prev * dk1) / sb);
            sb_prev = sb;
        }
        Ok((p, dp))
    }
}

/// Discretized Stieltjes coefficients for the weight, quadrature of size
/// max(2N+64, 200) with doubling retries on instability.
pub fn recurrence_table<T: Real>(
    weight: &ModifiedJacobiWeight<T>,
    n_table: usize,
) -> Result<RecurrenceTable<T>> {
    assert!(n_table >= 1, "table must hold at least the constant");
    let base_m = (2 * n_table + 64).max(200);
    let mut attempt = 0usize;
    loop {
        let m = base_m << attempt;
        match stieltjes_pass(weight, n_table, m) {
            Ok(table) => return Ok(table),
            Err(e @ Error::RecurrenceInstability { .. }) if attempt < 2 => {
                let _ = e;
                attempt += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

fn stieltjes_pass<T: Real>(
    weight: &ModifiedJacobiWeight<T>,
    n_table: usize,
    m: usize,
) -> Result<RecurrenceTable<T>> {
    let rule = gauss_jacobi_rule(m, weight.alpha, weight.beta)?;
    let nodes = &rule.nodes;
    // h absorbed node-wise; the singular part is handled exactly by the rule
    let wts: Vec<T> = rule
        .weights
        .iter()
        .zip(nodes)
        .map(|(&w, &x)| w * weight.h.eval(x))
        .collect();
    let mass: T = wts.iter().copied().fold(T::zero(), |a, w| a + w);
    if !(mass > T::zero()) {
        return Err(Error::RecurrenceInstability {
            k: 0,
            value: mass.to_f64().unwrap_or(f64::NAN),
            m,
        });
    }

    let np = nodes.len();
    let mut p_prev = vec![T::zero(); np];
    let mut p_cur = vec![mass.sqrt().recip(); np];
    let mut a = Vec::with_capacity(n_table);
    let mut b = Vec::with_capacity(n_table.saturating_sub(1));
    let mut sb_prev = T::zero();
    for k in 0..n_table {
        let mut ak = T::zero();
        for i in 0..np {
            ak += wts[i] * nodes[i] * p_cur[i] * p_cur[i];
        }
        a.push(ak);
        if k + 1 == n_table {
            break;
        }
        let mut norm2 = T::zero();
        let mut q = vec![T::zero(); np];
        for i in 0..np {
            q[i] = (nodes[i] - ak) * p_cur[i] - sb_prev * p_prev[i];
            norm2 += wts[i] * q[i] * q[i];
        }
        if !(norm2 > T::zero()) || !norm2.is_finite() {
            return Err(Error::RecurrenceInstability {
                k: k + 1,
                value: norm2.to_f64().unwrap_or(f64::NAN),
                m,
            });
        }
        b.push(norm2);
        let sb = norm2.sqrt();
        for i in 0..np {
            let next = q[i] / sb;
            p_prev[i] = p_cur[i];
            p_cur[i] = next;
        }
        sb_prev = sb;
    }
    Ok(RecurrenceTable { a, b, mass })
}
