use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Number of eigenvalues strictly below `lambda` of the symmetric tridiagonal
/// matrix with the given diagonal and off-diagonal.
///
/// Uses the ratio form of the leading-principal-minor recurrence,
/// `q_i = (d_i - λ) - e_{i-1}² / q_{i-1}`; the count of negative `q_i` equals
/// the number of sign changes in the minor sequence.
pub fn sturm_count_below<T: Scalar>(diag: &[T], offdiag: &[T], lambda: T) -> usize {
    let tiny = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = T::one();
    for (i, d) in diag.iter().enumerate() {
        let e2 = if i == 0 { T::zero() } else { offdiag[i - 1] * offdiag[i - 1] };
        q = (*d - lambda) - if i == 0 { T::zero() } else { e2 / q };
        if q == T::zero() {
            q = -tiny;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of a symmetric tridiagonal matrix by Sturm-count bisection,
/// sorted nondecreasing, each bracketed to width at most `tol`.
pub fn sturm_tridiagonal_eigenvalues<T: Scalar>(diag: &[T], offdiag: &[T], tol: T) -> Result<Vec<T>> {
    if !(tol > T::zero() && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol.as_f64()));
    }
    let n = diag.len();
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if offdiag.len() != n - 1 {
        return Err(Error::Domain(format!(
            "off-diagonal must have {} entries, got {}",
            n - 1,
            offdiag.len()
        )));
    }
    if diag.iter().chain(offdiag).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "tridiagonal entry" });
    }

    // Gershgorin bounds
    let mut lower = T::infinity();
    let mut upper = T::neg_infinity();
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { T::zero() };
        let right = if i + 1 < n { offdiag[i].abs() } else { T::zero() };
        lower = lower.min(diag[i] - left - right);
        upper = upper.max(diag[i] + left + right);
    }
    let pad = tol.max((upper.abs().max(lower.abs()) + T::one()) * T::epsilon() * T::lit(4.0));
    lower = lower - pad;
    upper = upper + pad;

    let two = T::lit(2.0);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (mut lo, mut hi) = (lower, upper);
        while hi - lo > tol {
            let mid = lo + (hi - lo) / two;
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count_below(diag, offdiag, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(lo + (hi - lo) / two);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_entry() {
        assert_eq!(sturm_tridiagonal_eigenvalues(&[4.5], &[], 1e-12).map(|v| v.len()), Ok(1));
        let v: Vec<f64> = sturm_tridiagonal_eigenvalues(&[4.5], &[], 1e-12).unwrap();
        assert!((v[0] - 4.5).abs() <= 1e-12);
    }

    #[test]
    fn constant_tridiagonal_matches_cosines() {
        let (a, b, n) = (0.7, -1.3, 20);
        let tol = 1e-12;
        let ev = sturm_tridiagonal_eigenvalues(&vec![a; n], &vec![b; n - 1], tol).unwrap();
        let mut expected: Vec<f64> =
            (1..=n).map(|j| a + 2.0 * b * (PI * j as f64 / (n + 1) as f64).cos()).collect();
        expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (e, x) in ev.iter().zip(&expected) {
            assert!((e - x).abs() <= tol, "{e} vs {x}");
        }
    }

    #[test]
    fn counts_are_monotone() {
        let d = [1.0, -2.0, 0.5, 3.0];
        let e = [0.4, 1.1, -0.9];
        let mut prev = 0;
        for i in -60..=60 {
            let c = sturm_count_below(&d, &e, i as f64 / 10.0);
            assert!(c >= prev);
            prev = c;
        }
        assert_eq!(prev, 4);
    }

    #[test]
    fn shape_errors() {
        assert!(sturm_tridiagonal_eigenvalues(&[1.0, 2.0], &[], 1e-9).is_err());
        assert!(sturm_tridiagonal_eigenvalues::<f64>(&[], &[], 1e-9).is_err());
        assert!(sturm_tridiagonal_eigenvalues(&[1.0], &[], -1.0).is_err());
    }
}
