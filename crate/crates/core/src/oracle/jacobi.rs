use super::DenseSymmetricMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_JACOBI_ORDER: usize = 512;
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// nondecreasing.
///
/// Each sweep visits the strict upper triangle in row-major order. Iteration
/// stops once the off-diagonal Frobenius norm is at most `tol` times the
/// diagonal Frobenius norm.
pub fn symmetric_eigenvalues_jacobi<T: Scalar>(m: &DenseSymmetricMatrix<T>, tol: T) -> Result<Vec<T>> {
    if !(tol > T::zero() && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol.as_f64()));
    }
    let n = m.order();
    if n > MAX_JACOBI_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_JACOBI_ORDER });
    }
    let mut a = m.clone().into_entries();
    let idx = |i: usize, j: usize| i * n + j;

    let mut sweeps = 0;
    loop {
        let (off, diag) = norms(&a, n);
        if off <= tol * diag {
            break;
        }
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(Error::NonConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let (c, s, t) = rotation(a[idx(p, p)], a[idx(q, q)], apq);
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[idx(k, p)] = new_kp;
                    a[idx(p, k)] = new_kp;
                    a[idx(k, q)] = new_kq;
                    a[idx(q, k)] = new_kq;
                }
                a[idx(p, p)] -= t * apq;
                a[idx(q, q)] += t * apq;
                a[idx(p, q)] = T::zero();
                a[idx(q, p)] = T::zero();
            }
        }
    }

    let mut ev: Vec<T> = (0..n).map(|i| a[idx(i, i)]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(ev)
}

fn norms<T: Scalar>(a: &[T], n: usize) -> (T, T) {
    let mut off = T::zero();
    let mut diag = T::zero();
    for i in 0..n {
        for j in 0..n {
            let v = a[i * n + j];
            if i == j {
                diag += v * v;
            } else {
                off += v * v;
            }
        }
    }
    (off.sqrt(), diag.sqrt())
}

/// Rotation `(c, s, tan θ)` annihilating `apq`; `tan θ` is the smaller root of
/// `t² + 2τt - 1 = 0` with `τ = (aqq - app) / (2 apq)`.
fn rotation<T: Scalar>(app: T, aqq: T, apq: T) -> (T, T, T) {
    let two = T::lit(2.0);
    let tau = (aqq - app) / (two * apq);
    let t = if tau.abs() > T::lit(1e150) {
        T::one() / (two * tau)
    } else {
        let sign = if tau >= T::zero() { T::one() } else { -T::one() };
        sign / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    (c, t * c, t)
}
