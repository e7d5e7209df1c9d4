use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// `Φ(t)`, through `erfc` so both tails keep full relative accuracy.
pub fn std_normal_cdf(t: f64) -> f64 {
    0.5 * libm::erfc(-t * FRAC_1_SQRT_2)
}

/// `φ(t) = exp(-t²/2) / √(2π)`.
pub fn std_normal_pdf(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * PI).sqrt()
}
