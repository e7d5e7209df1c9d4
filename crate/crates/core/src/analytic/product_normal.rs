//! Density of the product of two independent standard normals,
//! `f(t) = (1/π) ∫₀^∞ (1/s) exp(-(s² + t²/s²)/2) ds`, and integrals against it.
//!
//! `f` diverges logarithmically at `t = 0`; integrals against it split off a
//! neighbourhood of zero and integrate it with
//! [`integrate_with_integrable_singularity`].

use std::f64::consts::{PI, SQRT_2};

use super::normal::std_normal_pdf;

use super::{Estimate, InnerLog};
use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_finite, integrate_semi_infinite, integrate_with_integrable_singularity, QuadratureResult,
};

/// Absolute tolerance for a single density evaluation.
pub const DEFAULT_DENSITY_TOL: f64 = 1e-12;

/// `f(t)` with its quadrature diagnostics. `t = 0` is a [`Error::Domain`]
/// error: the density is infinite there.
pub fn product_normal_density_estimate(t: f64, tol: f64) -> Result<QuadratureResult<f64>> {
    if !t.is_finite() {
        return Err(Error::NonFinite { what: "product density argument" });
    }
    if t == 0.0 {
        return Err(Error::Domain("product-normal density is unbounded at t = 0".into()));
    }
    let t2 = t * t;
    let integrand = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        (-0.5 * (s * s + t2 / (s * s))).exp() / s
    };
    let mut r = integrate_semi_infinite(integrand, 0.0, tol * PI)?;
    r.value /= PI;
    r.abs_error_estimate /= PI;
    // near t = 0 the value grows like |ln t| and an absolute tol can sit below roundoff
    let roundoff = 100.0 * f64::EPSILON * r.value.abs();
    r.converged |= r.value.is_finite() && r.abs_error_estimate <= roundoff;
    Ok(r)
}

pub fn product_normal_density(t: f64) -> Result<f64> {
    product_normal_density_estimate(t, DEFAULT_DENSITY_TOL)?
        .require_converged("product-normal density")
        .map(|r| r.value)
}

/// `∫₀^upper g(t) f(t) dt` for bounded `g`; `upper` may be `+∞`.
pub fn integrate_against_product_density<G: Fn(f64) -> f64>(
    g: G,
    upper: f64,
    tol: f64,
    density_tol: f64,
) -> Result<Estimate> {
    if upper.is_nan() || upper < 0.0 {
        return Err(Error::Domain(format!("upper limit {upper} must be nonnegative")));
    }
    if upper == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let log = InnerLog::default();
    let integrand = |t: f64| {
        let gt = g(t);
        if gt == 0.0 {
            return 0.0;
        }
        gt * log.take(product_normal_density_estimate(t, density_tol))
    };
    let split = upper.min(1.0);
    let mut near = integrate_with_integrable_singularity(&integrand, 0.0, split, 0.0, 0.5 * tol)?;
    if upper > 1.0 {
        let far = if upper.is_infinite() {
            integrate_semi_infinite(&integrand, 1.0, 0.5 * tol)?
        } else {
            integrate_mapped(&integrand, 1.0, upper, 0.5 * tol)?
        };
        near.value += far.value;
        near.abs_error_estimate += far.abs_error_estimate;
        near.converged &= far.converged;
    }
    log.finish(near, 1.0, "integral against product-normal density")
}

/// `P(0 < YZ ≤ a)` for independent standard normals `Y`, `Z`.
pub fn product_normal_positive_mass(a: f64, tol: f64, density_tol: f64) -> Result<Estimate> {
    integrate_against_product_density(|_| 1.0, a, tol, density_tol)
}

/// `P(0 < YZ ≤ a)` as `2 ∫₀^∞ φ(y) (Φ(a/y) - 1/2) dy`, a single smooth
/// quadrature; same value as [`product_normal_positive_mass`].
pub fn positive_product_cdf(a: f64, tol: f64) -> Result<Estimate> {
    if a.is_nan() {
        return Err(Error::NonFinite { what: "product CDF argument" });
    }
    if a <= 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    if a.is_infinite() {
        return Ok(Estimate::exact(0.5));
    }
    let h = |y: f64| {
        let half_gap = if y == 0.0 { 0.5 } else { 0.5 * libm::erf(a / (y * SQRT_2)) };
        2.0 * std_normal_pdf(y) * half_gap
    };
    let r = integrate_semi_infinite(h, 0.0, tol)?.require_converged("positive product CDF")?;
    Ok(Estimate { value: r.value.clamp(0.0, 0.5), abs_error: r.abs_error_estimate })
}

/// `∫_a^b h` on a possibly long interval through `v = a + u/(1-u)`, which
/// keeps mass near `a` visible to the first Kronrod panel.
pub(crate) fn integrate_mapped<H: Fn(f64) -> f64>(h: H, a: f64, b: f64, tol: f64) -> Result<QuadratureResult<f64>> {
    if b - a <= 1.0 {
        return integrate_finite(h, a, b, tol);
    }
    let u_max = (b - a) / (1.0 + (b - a));
    integrate_finite(
        |u: f64| {
            let w = 1.0 - u;
            h(a + u / w) / (w * w)
        },
        0.0,
        u_max,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_finite;

    /// `K₀` by its power series about zero; accurate for small arguments.
    fn bessel_k0_series(x: f64) -> f64 {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        let q = x * x / 4.0;
        let mut term = 1.0;
        let mut harmonic = 0.0;
        let mut i0 = 1.0;
        let mut tail = 0.0;
        for k in 1..60 {
            let kf = k as f64;
            term *= q / (kf * kf);
            harmonic += 1.0 / kf;
            i0 += term;
            tail += term * harmonic;
        }
        -((x / 2.0).ln() + EULER_GAMMA) * i0 + tail
    }

    /// Same density through `s = e^u`: a smooth integrand on the whole line.
    fn density_log_substitution(t: f64) -> f64 {
        let g = |u: f64| (-0.5 * ((2.0 * u).exp() + t * t * (-2.0 * u).exp())).exp();
        let lo = -20.0 + 0.5 * t.abs().min(1.0).ln();
        integrate_finite(g, lo, 6.0, 1e-14).unwrap().value / PI
    }

    #[test]
    fn agrees_with_log_substitution_and_bessel_series() {
        for t in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0] {
            let f = product_normal_density(t).unwrap();
            assert!((f - density_log_substitution(t)).abs() < 1e-10, "t={t}");
            assert!((f - bessel_k0_series(t) / PI).abs() < 1e-10, "t={t}");
        }
        let f1 = product_normal_density(1.0).unwrap();
        assert!((f1 - 0.134_016_241_016_994_25).abs() < 1e-9, "{f1}");
    }

    #[test]
    fn symmetric_in_t() {
        for t in [0.1, 1.0, 5.0] {
            assert_eq!(product_normal_density(t).unwrap(), product_normal_density(-t).unwrap());
        }
    }

    #[test]
    fn zero_is_a_domain_error() {
        assert!(matches!(product_normal_density(0.0), Err(Error::Domain(_))));
        assert!(product_normal_density(f64::NAN).is_err());
    }

    #[test]
    fn half_line_mass_is_one_half() {
        let m = product_normal_positive_mass(f64::INFINITY, 1e-8, 1e-12).unwrap();
        assert!((m.value - 0.5).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn positive_mass_matches_normal_route() {
        for a in [0.0, 1e-6, 0.05, 0.5, 2.0, 9.0, 40.0] {
            let direct = positive_product_cdf(a, 1e-12).unwrap();
            let via_density = product_normal_positive_mass(a, 1e-9, 1e-12).unwrap();
            assert!((direct.value - via_density.value).abs() < 1e-8, "a={a}: {direct:?} vs {via_density:?}");
        }
        assert_eq!(positive_product_cdf(f64::INFINITY, 1e-9).unwrap().value, 0.5);
    }
}
