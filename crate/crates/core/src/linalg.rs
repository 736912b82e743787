//! In-repo dense linear algebra at the small scales the crate needs:
//! implicit-shift QL for symmetric tridiagonal matrices (Golub-Welsch) and a
//! pivoted LU determinant for Nystrom matrices.

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

/// Eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each normalized eigenvector, returned sorted ascending.
///
/// `diag` has length n, `off` length n-1. Implicit-shift QL (EISPACK imtql2
/// restricted to the first eigenvector row).
pub fn tridiag_eigen_first_components<T: Real>(
    diag: &[T],
    off: &[T],
) -> Result<(Vec<T>, Vec<T>)> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n);
    let mut d = diag.to_vec();
    let mut e = vec![T::zero(); n];
    e[..n - 1].copy_from_slice(off);
    let mut z = vec![T::zero(); n];
    z[0] = T::one();

    let eps = T::epsilon();
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // locate a negligible subdiagonal element
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenNoConvergence);
            }
            // implicit shift from the 2x2 block at l
            let mut g = (d[l + 1] - d[l]) / (cast::<T>(2.0) * e[l]);
            let mut r = g.hypot(T::one());
            let sign_r = if g >= T::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + cast::<T>(2.0) * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // rotate the tracked eigenvector row
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values = idx.iter().map(|&i| d[i]).collect();
    let firsts = idx.iter().map(|&i| z[i]).collect();
    Ok((values, firsts))
}

/// det(I - A) by Gaussian elimination with partial pivoting; `a` is row-major
/// n x n and is consumed.
pub fn det_i_minus<T: Real>(a: &[T], n: usize) -> T {
    assert_eq!(a.len(), n * n);
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { T::one() } else { T::zero() };
            m[i * n + j] = delta - a[i * n + j];
        }
    }
    let mut det = T::one();
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].abs();
        for row in col + 1..n {
            let v = m[row * n + col].abs();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best == T::zero() {
            return T::zero();
        }
        if piv != col {
            for j in 0..n {
                m.swap(col * n + j, piv * n + j);
            }
            det = -det;
        }
        let pivot = m[col * n + col];
        det = det * pivot;
        for row in col + 1..n {
            let factor = m[row * n + col] / pivot;
            if factor == T::zero() {
                continue;
            }
            for j in col..n {
                let upper = m[col * n + j];
                m[row * n + j] = m[row * n + j] - factor * upper;
            }
        }
    }
    det
}
