//! Brute-force spectra of explicitly assembled matrices.
//!
//! Nothing here reads the closed-form cosine formula: the matrices are built
//! entry by entry and handed to classical eigensolvers, so agreement with
//! [`crate::closedform`] is an independent check.

mod charpoly;
mod jacobi;
mod sturm;

pub use charpoly::charpoly_residual;
pub use jacobi::{symmetric_eigenvalues_jacobi, MAX_JACOBI_ORDER, MAX_JACOBI_SWEEPS};
pub use sturm::{sturm_count_below, sturm_tridiagonal_eigenvalues};

use crate::domain::RealizedTriple;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Banded matrix with constant diagonal, superdiagonal and subdiagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagonalToeplitzMatrix<T = f64> {
    order: usize,
    diag: T,
    sup: T,
    sub: T,
}

impl<T: Scalar> TridiagonalToeplitzMatrix<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn diag(&self) -> T {
        self.diag
    }

    pub fn sup(&self) -> T {
        self.sup
    }

    pub fn sub(&self) -> T {
        self.sub
    }

    /// Entry `(i, j)`, zero outside the three central diagonals.
    pub fn entry(&self, i: usize, j: usize) -> T {
        if i == j {
            self.diag
        } else if i + 1 == j {
            self.sup
        } else if j + 1 == i {
            self.sub
        } else {
            T::zero()
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

pub fn assemble<T: Scalar>(t: &RealizedTriple<T>, n: usize) -> Result<TridiagonalToeplitzMatrix<T>> {
    if n == 0 {
        return Err(Error::InvalidOrder(n));
    }
    Ok(TridiagonalToeplitzMatrix {
        order: n,
        diag: t.x(),
        sup: t.y(),
        sub: t.z(),
    })
}

/// Dense symmetric matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetricMatrix<T = f64> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Scalar> DenseSymmetricMatrix<T> {
    /// Rejects data that is not exactly symmetric.
    pub fn new(order: usize, entries: Vec<T>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        if entries.len() != order * order {
            return Err(Error::Domain(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "matrix entry" });
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("matrix is not square".into()));
        }
        Self::new(n, rows.iter().flatten().copied().collect())
    }

    pub fn diagonal(values: &[T]) -> Result<Self> {
        let n = values.len();
        let mut e = vec![T::zero(); n * n];
        for (i, v) in values.iter().enumerate() {
            e[i * n + i] = *v;
        }
        Self::new(n, e)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.order + j]
    }

    pub(crate) fn into_entries(self) -> Vec<T> {
        self.entries
    }
}

/// `AᵀA`, stored dense.
pub fn gram_matrix<T: Scalar>(m: &TridiagonalToeplitzMatrix<T>) -> DenseSymmetricMatrix<T> {
    let n = m.order();
    let mut g = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            // column i of A is nonzero only in rows i-1..=i+1
            let lo = i.max(j).saturating_sub(1);
            let hi = (i.min(j) + 1).min(n - 1);
            let mut s = T::zero();
            for k in lo..=hi {
                s += m.entry(k, i) * m.entry(k, j);
            }
            g[i * n + j] = s;
        }
    }
    DenseSymmetricMatrix { order: n, entries: g }
}

/// Singular values of the assembled matrix via Jacobi on its gram matrix,
/// nondecreasing.
pub fn singular_values_via_gram<T: Scalar>(
    m: &TridiagonalToeplitzMatrix<T>,
    tol: T,
) -> Result<Vec<T>> {
    let ev = symmetric_eigenvalues_jacobi(&gram_matrix(m), tol)?;
    Ok(ev.into_iter().map(|v| v.max(T::zero()).sqrt()).collect())
}

/// Eigenvalue moduli of the assembled matrix, nondecreasing, without the
/// cosine formula.
///
/// For `yz > 0` the matrix is diagonally similar to the symmetric tridiagonal
/// matrix with off-diagonal `√(yz)`; for `yz < 0` it is similar to
/// `x·I + i·√|yz|·S` where `S` is the symmetric tridiagonal matrix with zero
/// diagonal and unit off-diagonal. Both reduce to Sturm bisection.
pub fn eigen_moduli_via_sturm<T: Scalar>(
    m: &TridiagonalToeplitzMatrix<T>,
    tol: T,
) -> Result<Vec<T>> {
    let n = m.order();
    let p = m.sup() * m.sub();
    let mut moduli: Vec<T> = if p >= T::zero() {
        let off = vec![p.sqrt(); n.saturating_sub(1)];
        let diag = vec![m.diag(); n];
        sturm_tridiagonal_eigenvalues(&diag, &off, tol)?
            .into_iter()
            .map(|v| v.abs())
            .collect()
    } else {
        let s = (-p).sqrt();
        let off = vec![T::one(); n.saturating_sub(1)];
        let diag = vec![T::zero(); n];
        let inner_tol = tol / s.max(T::one());
        sturm_tridiagonal_eigenvalues(&diag, &off, inner_tol)?
            .into_iter()
            .map(|v| m.diag().hypot(s * v))
            .collect()
    };
    moduli.sort_by(|a, b| a.partial_cmp(b).expect("finite moduli"));
    Ok(moduli)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assemble_examples() {
        let t = RealizedTriple::new(1.0, 2.0, 3.0).unwrap();
        assert_eq!(assemble(&t, 2).unwrap().to_dense(), vec![vec![1.0, 2.0], vec![3.0, 1.0]]);
        let z = RealizedTriple::new(0.0, 0.0, 0.0).unwrap();
        let d = assemble(&z, 4).unwrap().to_dense();
        assert!(d.iter().flatten().all(|v| *v == 0.0));
        assert_eq!(assemble(&t, 0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn gram_examples() {
        let id = assemble(&RealizedTriple::new(1.0, 0.0, 0.0).unwrap(), 3).unwrap();
        assert_eq!(gram_matrix(&id), DenseSymmetricMatrix::diagonal(&[1.0, 1.0, 1.0]).unwrap());

        let shift = assemble(&RealizedTriple::new(0.0, 1.0, 0.0).unwrap(), 2).unwrap();
        let g = gram_matrix(&shift);
        assert_eq!(g, DenseSymmetricMatrix::from_rows(&[vec![0.0, 0.0], vec![0.0, 1.0]]).unwrap());
    }

    #[test]
    fn gram_matches_dense_product() {
        let t = RealizedTriple::new(0.37, -1.21, 0.52).unwrap();
        let m = assemble(&t, 8).unwrap();
        let a = m.to_dense();
        let g = gram_matrix(&m);
        for i in 0..8 {
            for j in 0..8 {
                let s: f64 = (0..8).map(|k| a[k][i] * a[k][j]).sum();
                assert!((g.get(i, j) - s).abs() < 1e-15);
                assert_eq!(g.get(i, j), g.get(j, i));
            }
        }
    }

    #[test]
    fn dense_symmetric_validation() {
        assert_eq!(
            DenseSymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.5, 1.0]]),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
        assert!(DenseSymmetricMatrix::<f64>::new(2, vec![1.0; 3]).is_err());
    }

    #[test]
    fn sturm_moduli_for_negative_product() {
        let t = RealizedTriple::new(1.0f64, 1.0, -1.0).unwrap();
        let m = assemble(&t, 3).unwrap();
        let mods = eigen_moduli_via_sturm(&m, 1e-13).unwrap();
        assert!((mods[0] - 1.0).abs() < 1e-12);
        assert!((mods[2] - 3f64.sqrt()).abs() < 1e-12);
    }
}
