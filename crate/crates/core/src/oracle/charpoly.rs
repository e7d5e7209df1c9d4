use num_complex::Complex;

use crate::domain::RealizedTriple;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Normalized residual of the characteristic polynomial of the order-`n`
/// matrix at `lambda`.
///
/// Runs `p_k = (x - λ)·p_{k-1} - yz·p_{k-2}` with `p_0 = 1` after dividing
/// `x - λ` by `√|yz|` and `yz` by `|yz|`, so that at the spectrum the sequence
/// is a bounded Chebyshev sequence independent of the entry scale. Each step
/// divides the two live terms by `max(1, |p_k|)`. A result near zero certifies
/// `lambda` as an eigenvalue.
pub fn charpoly_residual<T: Scalar>(t: &RealizedTriple<T>, n: usize, lambda: Complex<T>) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidOrder(n));
    }
    let p = t.off_product();
    let scale = if p == T::zero() {
        T::one()
    } else {
        t.y().abs().sqrt() * t.z().abs().sqrt()
    };
    let a = (Complex::new(t.x(), T::zero()) - lambda) / scale;
    let b = if p > T::zero() {
        T::one()
    } else if p < T::zero() {
        -T::one()
    } else {
        T::zero()
    };

    let mut prev2 = Complex::new(T::one(), T::zero());
    let mut prev = a;
    for _ in 2..=n {
        let next = a * prev - prev2 * b;
        let s = T::one().max(next.norm());
        prev2 = prev / s;
        prev = next / s;
    }
    Ok(prev.norm())
}
