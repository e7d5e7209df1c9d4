//! Value types shared by every module: entry triples, spectral extremes,
//! entry laws and the extended-real condition number.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One draw of the diagonal (`x`), superdiagonal (`y`) and subdiagonal (`z`)
/// entries of a tridiagonal Toeplitz matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizedTriple<T = f64> {
    x: T,
    y: T,
    z: T,
}

impl<T: Scalar> RealizedTriple<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        for (v, what) in [(x, "diagonal entry"), (y, "superdiagonal entry"), (z, "subdiagonal entry")] {
            if !v.is_finite() {
                return Err(Error::NonFinite { what });
            }
        }
        Ok(Self { x, y, z })
    }

    /// Symmetric triple: the subdiagonal equals the superdiagonal.
    pub fn symmetric(x: T, y: T) -> Result<Self> {
        Self::new(x, y, y)
    }

    #[inline]
    pub fn x(&self) -> T {
        self.x
    }

    #[inline]
    pub fn y(&self) -> T {
        self.y
    }

    #[inline]
    pub fn z(&self) -> T {
        self.z
    }

    /// Product of the off-diagonal entries.
    #[inline]
    pub fn off_product(&self) -> T {
        self.y * self.z
    }

    pub fn scaled(&self, c: T) -> Result<Self> {
        Self::new(c * self.x, c * self.y, c * self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralKind {
    /// Singular values of the symmetric matrix (`z := y`).
    SymmetricSingular,
    /// Eigenvalue moduli of the general matrix.
    NonsymmetricEigenModulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Horizon {
    FiniteN(usize),
    Limit,
}

/// Smallest and largest spectral modulus of one realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralExtremes<T = f64> {
    lo: T,
    hi: T,
    kind: SpectralKind,
    horizon: Horizon,
}

impl<T: Scalar> SpectralExtremes<T> {
    pub fn new(lo: T, hi: T, kind: SpectralKind, horizon: Horizon) -> Result<Self> {
        if !(lo >= T::zero() && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidExtremes {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        if let Horizon::FiniteN(0) = horizon {
            return Err(Error::InvalidOrder(0));
        }
        Ok(Self { lo, hi, kind, horizon })
    }

    #[inline]
    pub fn lo(&self) -> T {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> T {
        self.hi
    }

    #[inline]
    pub fn kind(&self) -> SpectralKind {
        self.kind
    }

    #[inline]
    pub fn horizon(&self) -> Horizon {
        self.horizon
    }

    pub fn condition_number(&self) -> ConditionNumber<T> {
        condition_number(self)
    }
}

/// Ratio of the largest to the smallest extreme, with `+∞` as a distinct value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConditionNumber<T = f64> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> ConditionNumber<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ConditionNumber::Finite(_))
    }

    /// Finite value, or `None` for `+∞`.
    pub fn finite(&self) -> Option<T> {
        match *self {
            ConditionNumber::Finite(v) => Some(v),
            ConditionNumber::Infinite => None,
        }
    }

    /// Value as a float, mapping `Infinite` to `T::infinity()`.
    pub fn to_float(&self) -> T {
        self.finite().unwrap_or_else(T::infinity)
    }
}

impl<T: Scalar> fmt::Display for ConditionNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionNumber::Finite(v) => write!(f, "{v}"),
            ConditionNumber::Infinite => f.write_str("inf"),
        }
    }
}

/// `hi / lo`, `+∞` for a singular nonzero spectrum, and 1 for the all-zero
/// spectrum.
pub fn condition_number<T: Scalar>(e: &SpectralExtremes<T>) -> ConditionNumber<T> {
    let (lo, hi) = (e.lo(), e.hi());
    if lo > T::zero() {
        // lo <= hi guarantees the ratio is >= 1 up to rounding
        ConditionNumber::Finite((hi / lo).max(T::one()))
    } else if hi > T::zero() {
        ConditionNumber::Infinite
    } else {
        ConditionNumber::Finite(T::one())
    }
}

/// Marginal law shared by the random entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntryLaw {
    Rademacher,
    StandardNormal,
    StandardCauchy,
    /// Degenerate law concentrated on a fixed triple.
    PointMass(RealizedTriple<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Assignment {
    /// `x`, `y` independent, `z := y`.
    SymmetricIid,
    /// `x`, `y`, `z` independent.
    NonsymmetricIid,
}

impl Assignment {
    pub fn spectral_kind(self) -> SpectralKind {
        match self {
            Assignment::SymmetricIid => SpectralKind::SymmetricSingular,
            Assignment::NonsymmetricIid => SpectralKind::NonsymmetricEigenModulus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryDistribution {
    pub law: EntryLaw,
    pub assignment: Assignment,
}

impl EntryDistribution {
    pub fn new(law: EntryLaw, assignment: Assignment) -> Self {
        Self { law, assignment }
    }

    pub fn symmetric(law: EntryLaw) -> Self {
        Self::new(law, Assignment::SymmetricIid)
    }

    pub fn nonsymmetric(law: EntryLaw) -> Self {
        Self::new(law, Assignment::NonsymmetricIid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(lo: f64, hi: f64) -> SpectralExtremes<f64> {
        SpectralExtremes::new(lo, hi, SpectralKind::SymmetricSingular, Horizon::Limit).unwrap()
    }

    #[test]
    fn condition_number_examples() {
        assert_eq!(condition_number(&ext(1.0, 3.0)), ConditionNumber::Finite(3.0));
        assert_eq!(condition_number(&ext(0.0, 3.0)), ConditionNumber::Infinite);
        assert_eq!(condition_number(&ext(2.0, 2.0)), ConditionNumber::Finite(1.0));
        assert_eq!(condition_number(&ext(0.0, 0.0)), ConditionNumber::Finite(1.0));
    }

    #[test]
    fn extremes_reject_bad_input() {
        let k = SpectralKind::SymmetricSingular;
        assert!(SpectralExtremes::new(2.0, 1.0, k, Horizon::Limit).is_err());
        assert!(SpectralExtremes::new(-1.0, 1.0, k, Horizon::Limit).is_err());
        assert!(SpectralExtremes::new(f64::NAN, 1.0, k, Horizon::Limit).is_err());
        assert_eq!(
            SpectralExtremes::new(0.0, 1.0, k, Horizon::FiniteN(0)),
            Err(Error::InvalidOrder(0))
        );
    }

    #[test]
    fn triple_rejects_non_finite() {
        assert!(RealizedTriple::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(RealizedTriple::new(0.0, f64::INFINITY, 0.0).is_err());
        assert!(RealizedTriple::new(0.0, 0.0, f64::NEG_INFINITY).is_err());
        let t = RealizedTriple::symmetric(1.0f32, -2.0).unwrap();
        assert_eq!(t.z(), -2.0);
    }

    #[test]
    fn infinite_condition_number_displays_explicitly() {
        assert_eq!(ConditionNumber::<f64>::Infinite.to_string(), "inf");
        assert!(ConditionNumber::<f64>::Infinite.to_float().is_infinite());
    }

    proptest::proptest! {
        #[test]
        fn condition_number_is_scale_invariant(lo in 0.0f64..10.0, d in 0.0f64..10.0, c in 1e-3f64..1e3) {
            let hi = lo + d;
            let a = condition_number(&ext(lo, hi));
            let b = condition_number(&ext(c * lo, c * hi));
            match (a, b) {
                (ConditionNumber::Finite(u), ConditionNumber::Finite(v)) => {
                    proptest::prop_assert!((u - v).abs() <= 1e-12 * u.max(1.0));
                }
                (ConditionNumber::Infinite, ConditionNumber::Infinite) => {}
                _ => proptest::prop_assert!(false, "mismatch {a:?} vs {b:?}"),
            }
            proptest::prop_assert!(a.to_float() >= 1.0);
        }
    }
}
