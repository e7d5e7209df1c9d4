use rayon::prelude::*;

use crate::domain::{Assignment, EntryDistribution, RealizedTriple};
use crate::error::{Error, Result};
use crate::montecarlo::{sample_triple, trial_rng, with_threads};

/// Right-hand side of the joint limit law for one realization, as a
/// difference of indicators: `1{M ≤ y}` minus the events on which the
/// limiting minimum exceeds `x`.
///
/// The symmetric form reads `(x, y)` only; the non-symmetric form splits on
/// the sign of `yz`, with `M = √(x² + 4|yz|)` when `yz < 0`. The value is
/// always 0 or 1.
pub fn theorem_indicator(t: &RealizedTriple<f64>, assignment: Assignment, x: f64, y: f64) -> u8 {
    let one = |b: bool| b as i8;
    let xv = t.x();
    let value = match assignment {
        Assignment::SymmetricIid => {
            let s = 2.0 * t.y().abs();
            let (a, b) = ((xv - s).abs(), (xv + s).abs());
            let (m, big) = (a.min(b), a.max(b));
            // -X/|Y| ∈ [-2, 2], written without the division
            let zero_inside = xv.abs() <= s;
            one(big <= y)
                - one(zero_inside && x < 0.0 && 0.0 <= big && big <= y)
                - one(!zero_inside && x < m && m <= big && big <= y)
        }
        Assignment::NonsymmetricIid => {
            let p = t.y() * t.z();
            if p == 0.0 {
                let big = xv.abs();
                one(big <= y) - one(x < big && big <= y)
            } else if p > 0.0 {
                let s = 2.0 * p.sqrt();
                let (a, b) = ((xv - s).abs(), (xv + s).abs());
                let (mu, big) = (a.min(b), a.max(b));
                let zero_inside = xv.abs() <= s;
                one(big <= y)
                    - one(zero_inside && x < 0.0 && 0.0 <= big && big <= y)
                    - one(!zero_inside && x < mu && mu <= big && big <= y)
            } else {
                let big = xv.hypot(2.0 * (-p).sqrt());
                one(big <= y) - one(x < xv.abs() && xv.abs() <= big && big <= y)
            }
        }
    };
    debug_assert!(value == 0 || value == 1);
    value as u8
}

/// Monte Carlo estimate of the joint limit probability
/// `P(lim min ≤ x, lim max ≤ y)` for any entry law.
pub fn theorem_joint_cdf(dist: &EntryDistribution, x: f64, y: f64, samples: usize, seed: u64) -> Result<f64> {
    theorem_joint_cdf_with_threads(dist, x, y, samples, seed, None)
}

/// As [`theorem_joint_cdf`] with a worker cap; the result does not depend
/// on it.
pub fn theorem_joint_cdf_with_threads(
    dist: &EntryDistribution,
    x: f64,
    y: f64,
    samples: usize,
    seed: u64,
    threads: Option<usize>,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be positive".into()));
    }
    if x.is_nan() || y.is_nan() {
        return Err(Error::NonFinite { what: "CDF argument" });
    }
    let hits: u64 = with_threads(threads, || {
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let t = sample_triple(dist, &mut trial_rng(seed, i as u64));
                theorem_indicator(&t, dist.assignment, x, y) as u64
            })
            .sum()
    })?;
    Ok(hits as f64 / samples as f64)
}
