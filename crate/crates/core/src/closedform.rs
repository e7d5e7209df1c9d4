//! Exact spectra of tridiagonal Toeplitz matrices and the exact per-realization
//! limits of their extreme moduli as the order grows.
//!
//! The eigenvalues of the order-`n` matrix with diagonal `x`, superdiagonal `y`
//! and subdiagonal `z` are `x + 2·√(yz)·cos(πj/(n+1))`, `j = 1..n`. As `n → ∞`
//! the cosines fill `[-1, 1]`, so the extremes converge to the extremes of
//! `|x + 2√(yz)·α|` over `α ∈ [-1, 1]`: a line (or, for `yz < 0`, a vertical
//! segment in the complex plane) whose modulus is extremal at `α = ±1` or at
//! its zero.

use num_complex::Complex;

use crate::domain::{Horizon, RealizedTriple, SpectralExtremes, SpectralKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which branch of the limit law a triple falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitCaseLabel {
    /// `yz = 0`: every eigenvalue equals `x`.
    ZeroProduct,
    /// `yz > 0` and `|x| ≤ 2√(yz)`: the line crosses zero inside `[-1, 1]`.
    PositiveProductZeroInside,
    /// `yz > 0` and `|x| > 2√(yz)`.
    PositiveProductZeroOutside,
    /// `yz < 0`: eigenvalues lie on a vertical segment through `x`.
    NegativeProduct,
}

/// `cos(πj/(n+1))`, evaluated directly for every index.
#[inline]
pub fn grid_cosine<T: Scalar>(j: usize, n: usize) -> T {
    (T::PI() * T::from_index(j) / T::from_index(n + 1)).cos()
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidOrder(n))
    } else {
        Ok(())
    }
}

/// `√|yz|` computed as `√|y|·√|z|` so it cannot overflow.
#[inline]
fn sqrt_abs_product<T: Scalar>(t: &RealizedTriple<T>) -> T {
    t.y().abs().sqrt() * t.z().abs().sqrt()
}

/// Eigenvalues `λ_j`, `j = 1..n`, in index order.
///
/// When `yz ≥ 0` every eigenvalue has an exactly zero imaginary part; when
/// `yz < 0` they are `x + 2i·√|yz|·cos(πj/(n+1))`.
pub fn eigenvalues_nonsymmetric<T: Scalar>(
    t: &RealizedTriple<T>,
    n: usize,
) -> Result<Vec<Complex<T>>> {
    check_order(n)?;
    let two = T::lit(2.0);
    let s = two * sqrt_abs_product(t);
    let negative = t.off_product() < T::zero();
    Ok((1..=n)
        .map(|j| {
            let c = grid_cosine::<T>(j, n);
            if negative {
                Complex::new(t.x(), s * c)
            } else {
                Complex::new(t.x() + s * c, T::zero())
            }
        })
        .collect())
}

/// Singular values of the symmetric matrix with diagonal `x` and off-diagonal
/// `y`, in nondecreasing order.
pub fn singular_values_symmetric<T: Scalar>(x: T, y: T, n: usize) -> Result<Vec<T>> {
    check_order(n)?;
    let s = T::lit(2.0) * y.abs();
    let mut out: Vec<T> = (1..=n)
        .map(|j| (x + s * grid_cosine::<T>(j, n)).abs())
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite singular values"));
    Ok(out)
}

/// Modulus of the `j`-th closed-form spectral value.
#[inline]
fn modulus<T: Scalar>(x: T, s: T, negative: bool, c: T) -> T {
    if negative {
        x.hypot(s * c)
    } else {
        (x + s * c).abs()
    }
}

/// Extremes over `j` of the closed-form moduli at order `n`.
///
/// `SymmetricSingular` reads only `x` and `y`; callers pass `z = y`.
pub fn finite_extremes<T: Scalar>(
    t: &RealizedTriple<T>,
    n: usize,
    kind: SpectralKind,
) -> Result<SpectralExtremes<T>> {
    check_order(n)?;
    let two = T::lit(2.0);
    let (s, negative) = match kind {
        SpectralKind::SymmetricSingular => (two * t.y().abs(), false),
        SpectralKind::NonsymmetricEigenModulus => {
            (two * sqrt_abs_product(t), t.off_product() < T::zero())
        }
    };
    let mut lo = T::infinity();
    let mut hi = T::zero();
    for j in 1..=n {
        let m = modulus(t.x(), s, negative, grid_cosine::<T>(j, n));
        lo = lo.min(m);
        hi = hi.max(m);
    }
    SpectralExtremes::new(lo, hi, kind, Horizon::FiniteN(n))
}

/// `(m, M)`: min and max of `|x ∓ 2|y||`.
pub fn endpoint_moduli_symmetric<T: Scalar>(x: T, y: T) -> (T, T) {
    let s = T::lit(2.0) * y.abs();
    let a = (x - s).abs();
    let b = (x + s).abs();
    (a.min(b), a.max(b))
}

/// `(μ, M)`: min and max of `|x ∓ 2√(yz)|`, taken as complex moduli when
/// `yz < 0` (both then equal `√(x² + 4|yz|)`).
pub fn endpoint_moduli_nonsymmetric<T: Scalar>(t: &RealizedTriple<T>) -> (T, T) {
    let s = T::lit(2.0) * sqrt_abs_product(t);
    if t.off_product() < T::zero() {
        let m = t.x().hypot(s);
        (m, m)
    } else {
        let a = (t.x() - s).abs();
        let b = (t.x() + s).abs();
        (a.min(b), a.max(b))
    }
}

/// Limit of the symmetric singular-value extremes.
pub fn limit_extremes_symmetric<T: Scalar>(x: T, y: T) -> Result<SpectralExtremes<T>> {
    let t = RealizedTriple::symmetric(x, y)?;
    let (m, big_m) = endpoint_moduli_symmetric(t.x(), t.y());
    let lo = if x.abs() <= T::lit(2.0) * y.abs() {
        T::zero()
    } else {
        m
    };
    SpectralExtremes::new(lo, big_m, SpectralKind::SymmetricSingular, Horizon::Limit)
}

pub fn case_label<T: Scalar>(t: &RealizedTriple<T>) -> LimitCaseLabel {
    let p = t.off_product();
    if p == T::zero() {
        LimitCaseLabel::ZeroProduct
    } else if p < T::zero() {
        LimitCaseLabel::NegativeProduct
    } else if t.x().abs() <= T::lit(2.0) * sqrt_abs_product(t) {
        LimitCaseLabel::PositiveProductZeroInside
    } else {
        LimitCaseLabel::PositiveProductZeroOutside
    }
}

/// Limit of the eigenvalue-modulus extremes of the general matrix.
pub fn limit_extremes_nonsymmetric<T: Scalar>(t: &RealizedTriple<T>) -> Result<SpectralExtremes<T>> {
    let ax = t.x().abs();
    let (mu, big_m) = endpoint_moduli_nonsymmetric(t);
    let (lo, hi) = match case_label(t) {
        LimitCaseLabel::ZeroProduct => (ax, ax),
        LimitCaseLabel::PositiveProductZeroInside => (T::zero(), big_m),
        LimitCaseLabel::PositiveProductZeroOutside => (mu, big_m),
        // modulus along the segment is smallest where the cosine vanishes
        LimitCaseLabel::NegativeProduct => (ax, big_m),
    };
    SpectralExtremes::new(lo, hi, SpectralKind::NonsymmetricEigenModulus, Horizon::Limit)
}

/// Dispatches on the spectral kind; the symmetric branch reads `x` and `y`.
pub fn limit_extremes<T: Scalar>(
    t: &RealizedTriple<T>,
    kind: SpectralKind,
) -> Result<SpectralExtremes<T>> {
    match kind {
        SpectralKind::SymmetricSingular => limit_extremes_symmetric(t.x(), t.y()),
        SpectralKind::NonsymmetricEigenModulus => limit_extremes_nonsymmetric(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn triple(x: f64, y: f64, z: f64) -> RealizedTriple<f64> {
        RealizedTriple::new(x, y, z).unwrap()
    }

    #[test]
    fn eigenvalues_small_cases() {
        let ev = eigenvalues_nonsymmetric(&triple(0.0, 1.0, 1.0), 1).unwrap();
        assert_eq!(ev.len(), 1);
        assert!(ev[0].norm() < 1e-15);

        let ev = eigenvalues_nonsymmetric(&triple(1.0, 1.0, 1.0), 3).unwrap();
        let expected = [1.0 + SQRT2, 1.0, 1.0 - SQRT2];
        for (l, e) in ev.iter().zip(expected) {
            assert_relative_eq!(l.re, e, epsilon = 1e-14);
            assert_eq!(l.im, 0.0);
        }
    }

    #[test]
    fn negative_product_eigenvalues_are_on_a_vertical_segment() {
        let t = triple(0.3, -0.7, 1.1);
        for l in eigenvalues_nonsymmetric(&t, 8).unwrap() {
            assert_eq!(l.re, 0.3);
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(singular_values_symmetric(1.0, 1.0, 0), Err(Error::InvalidOrder(0)));
        assert!(finite_extremes(&triple(1.0, 1.0, 1.0), 0, SpectralKind::SymmetricSingular).is_err());
    }

    #[test]
    fn singular_values_examples() {
        assert_eq!(singular_values_symmetric(1.0, 0.0, 5).unwrap(), vec![1.0; 5]);
        let sv = singular_values_symmetric(1.0, 1.0, 3).unwrap();
        assert_relative_eq!(sv[0], SQRT2 - 1.0, epsilon = 1e-14);
        assert_relative_eq!(sv[1], 1.0, epsilon = 1e-14);
        assert_relative_eq!(sv[2], 1.0 + SQRT2, epsilon = 1e-14);
    }

    #[test]
    fn finite_extremes_examples() {
        let e = finite_extremes(&triple(1.0, 1.0, 1.0), 3, SpectralKind::SymmetricSingular).unwrap();
        assert_relative_eq!(e.lo(), SQRT2 - 1.0, epsilon = 1e-14);
        assert_relative_eq!(e.hi(), SQRT2 + 1.0, epsilon = 1e-14);
        assert_eq!(e.horizon(), Horizon::FiniteN(3));

        let e = finite_extremes(&triple(1.0, 1.0, -1.0), 3, SpectralKind::NonsymmetricEigenModulus)
            .unwrap();
        assert_relative_eq!(e.lo(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(e.hi(), 3f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn limit_symmetric_examples() {
        for (x, y) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
            let e = limit_extremes_symmetric(x, y).unwrap();
            assert_eq!((e.lo(), e.hi()), (0.0, 3.0));
            assert_eq!(endpoint_moduli_symmetric(x, y), (1.0, 3.0));
        }
        let e = limit_extremes_symmetric(5.0, 1.0).unwrap();
        assert_eq!((e.lo(), e.hi()), (3.0, 7.0));
        for c in [-4.0, 0.0, 0.5, 3.0] {
            let e = limit_extremes_symmetric(0.0, c).unwrap();
            assert_eq!((e.lo(), e.hi()), (0.0, 2.0 * f64::abs(c)));
        }
    }

    #[test]
    fn limit_nonsymmetric_examples() {
        let e = limit_extremes_nonsymmetric(&triple(1.0, 1.0, 0.0)).unwrap();
        assert_eq!((e.lo(), e.hi()), (1.0, 1.0));
        let e = limit_extremes_nonsymmetric(&triple(1.0, 1.0, -1.0)).unwrap();
        assert_eq!(e.lo(), 1.0);
        assert_relative_eq!(e.hi(), 5f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn rademacher_sign_patterns() {
        let s5 = 5f64.sqrt();
        let mut singular = 0;
        for bits in 0..8u32 {
            let sign = |b: u32| if bits & (1 << b) == 0 { 1.0 } else { -1.0 };
            let t = triple(sign(0), sign(1), sign(2));
            let (mu, big_m) = endpoint_moduli_nonsymmetric(&t);
            assert!(mu == 1.0 || (mu - s5).abs() < 1e-15, "mu={mu}");
            assert!(big_m == 3.0 || (big_m - s5).abs() < 1e-15, "M={big_m}");
            let e = limit_extremes_nonsymmetric(&t).unwrap();
            assert_eq!(e.lo() == 0.0, t.y() * t.z() > 0.0);
            if e.lo() == 0.0 {
                singular += 1;
            }
        }
        assert_eq!(singular, 4);
    }

    #[test]
    fn case_labels() {
        assert_eq!(case_label(&triple(1.0, 1.0, 1.0)), LimitCaseLabel::PositiveProductZeroInside);
        assert_eq!(case_label(&triple(5.0, 1.0, 1.0)), LimitCaseLabel::PositiveProductZeroOutside);
        assert_eq!(case_label(&triple(1.0, 0.0, 7.0)), LimitCaseLabel::ZeroProduct);
        assert_eq!(case_label(&triple(1.0, 2.0, -7.0)), LimitCaseLabel::NegativeProduct);
        // closed interval: a zero exactly at α = ±1 counts as inside
        assert_eq!(case_label(&triple(2.0, 1.0, 1.0)), LimitCaseLabel::PositiveProductZeroInside);
        assert_eq!(limit_extremes_symmetric(2.0, 1.0).unwrap().lo(), 0.0);
    }

    #[test]
    fn single_order_collapses_to_diagonal() {
        for kind in [SpectralKind::SymmetricSingular, SpectralKind::NonsymmetricEigenModulus] {
            let t = triple(-0.7, 3.0, -2.0);
            let e = finite_extremes(&t, 1, kind).unwrap();
            assert_relative_eq!(e.lo(), 0.7, epsilon = 1e-15);
            assert_relative_eq!(e.hi(), 0.7, epsilon = 1e-15);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let t = RealizedTriple::new(1.0f32, 1.0, 1.0).unwrap();
        let e = finite_extremes(&t, 3, SpectralKind::SymmetricSingular).unwrap();
        assert!((e.lo() - (std::f32::consts::SQRT_2 - 1.0)).abs() < 1e-6);
    }

    #[test]
    fn hi_refines_monotonically_on_dyadic_orders() {
        let t = triple(0.4, 1.3, 0.8);
        let limit = limit_extremes_nonsymmetric(&t).unwrap();
        let mut prev = 0.0;
        for k in 1..=16 {
            let n = (1usize << k) - 1;
            let e = finite_extremes(&t, n, SpectralKind::NonsymmetricEigenModulus).unwrap();
            assert!(e.hi() >= prev, "n={n}");
            assert!(e.hi() <= limit.hi() + 1e-12);
            prev = e.hi();
        }
        assert!((limit.hi() - prev).abs() < 1e-8);
    }

    proptest! {
        #[test]
        fn nonsymmetric_reduces_to_symmetric(x in -10.0f64..10.0, y in -10.0f64..10.0) {
            let a = limit_extremes_nonsymmetric(&triple(x, y, y)).unwrap();
            let b = limit_extremes_symmetric(x, y).unwrap();
            let tol = 1e-12 * (x.abs() + y.abs() + 1.0);
            prop_assert!((a.hi() - b.hi()).abs() <= tol);
            // the zero-inside test can flip only when |x| = 2|y| to rounding
            if (x.abs() - 2.0 * y.abs()).abs() > tol {
                prop_assert!((a.lo() - b.lo()).abs() <= tol);
            }
        }

        #[test]
        fn limit_extremes_scale(x in -5.0f64..5.0, y in -5.0f64..5.0, z in -5.0f64..5.0, c in -4.0f64..4.0) {
            let t = triple(x, y, z);
            let a = limit_extremes_nonsymmetric(&t.scaled(c).unwrap()).unwrap();
            let b = limit_extremes_nonsymmetric(&t).unwrap();
            let tol = 1e-12 * (x.abs() + y.abs() + z.abs() + 1.0) * (c.abs() + 1.0);
            prop_assert!((a.hi() - c.abs() * b.hi()).abs() <= tol);
            if c != 0.0 && (x.abs() - 2.0 * (y * z).abs().sqrt()).abs() > 1e-9 {
                prop_assert!((a.lo() - c.abs() * b.lo()).abs() <= tol);
            }
        }

        #[test]
        fn case_label_matches_limit_branch(x in -5.0f64..5.0, y in -5.0f64..5.0, z in -5.0f64..5.0) {
            let t = triple(x, y, z);
            let e = limit_extremes_nonsymmetric(&t).unwrap();
            match case_label(&t) {
                LimitCaseLabel::PositiveProductZeroInside => prop_assert_eq!(e.lo(), 0.0),
                LimitCaseLabel::ZeroProduct | LimitCaseLabel::NegativeProduct => prop_assert_eq!(e.lo(), x.abs()),
                LimitCaseLabel::PositiveProductZeroOutside => prop_assert!(e.lo() > 0.0),
            }
        }

        #[test]
        fn finite_lo_within_grid_bound(x in -5.0f64..5.0, y in 0.01f64..5.0, z in 0.01f64..5.0, n in 10usize..400) {
            let t = triple(x, y, z);
            let fin = finite_extremes(&t, n, SpectralKind::NonsymmetricEigenModulus).unwrap();
            let lim = limit_extremes_nonsymmetric(&t).unwrap();
            let c = 10.0 * (x.abs() + 2.0 * (y * z).sqrt());
            prop_assert!((fin.lo() - lim.lo()).abs() <= c / n as f64);
            prop_assert!(fin.hi() <= lim.hi() + 1e-12);
        }
    }
}
