//! Adaptive Gauss–Kronrod integration on finite intervals, half-lines and
//! intervals with an integrable endpoint singularity.
//!
//! Every integral in [`crate::analytic`] goes through here. Nested integrals
//! are iterated: the inner call lives inside the outer integrand.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Panels deeper than this are accepted as they are and the result is flagged
/// unconverged.
pub const MAX_DEPTH: usize = 60;

/// Hard cap on integrand evaluations for one finite-interval call.
pub const MAX_EVALUATIONS: usize = 2_000_000;

/// Default lower bound on `1 - u` for the half-line map `v = a + u / (1 - u)`.
pub const DEFAULT_SEMI_INFINITE_EPS: f64 = 1e-12;

const MAX_SINGULAR_LEVELS: usize = 200;

// 15-point Kronrod abscissae (descending, centre last) and weights, with the
// embedded 7-point Gauss weights for abscissae 1, 3, 5 and the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T = f64> {
    pub value: T,
    pub abs_error_estimate: T,
    pub evaluations: usize,
    /// `true` only if `abs_error_estimate` is within the requested tolerance.
    pub converged: bool,
}

impl<T: Scalar> QuadratureResult<T> {
    fn zero() -> Self {
        Self {
            value: T::zero(),
            abs_error_estimate: T::zero(),
            evaluations: 0,
            converged: true,
        }
    }

    fn absorb(&mut self, other: &Self) {
        self.value += other.value;
        self.abs_error_estimate += other.abs_error_estimate;
        self.evaluations += other.evaluations;
        self.converged &= other.converged;
    }

    /// Turns an unconverged result into [`Error::QuadratureFailure`].
    pub fn require_converged(self, context: &str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::QuadratureFailure {
                value: self.value.as_f64(),
                abs_error_estimate: self.abs_error_estimate.as_f64(),
                context: context.to_string(),
            })
        }
    }
}

fn check_tol<T: Scalar>(tol: T) -> Result<()> {
    if tol > T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol.as_f64()))
    }
}

fn check_bounds<T: Scalar>(a: T, b: T) -> Result<()> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite { what: "integration bound" });
    }
    if a > b {
        return Err(Error::Domain(format!("lower bound {a} exceeds upper bound {b}")));
    }
    Ok(())
}

struct Panel<T> {
    value: T,
    error: T,
    /// Roundoff floor reached: splitting cannot lower the error.
    saturated: bool,
}

fn gauss_kronrod<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Panel<T> {
    let half = T::lit(0.5);
    let centre = half * (a + b);
    let half_len = half * (b - a);
    let f_centre = f(centre);

    let mut res_k = f_centre * T::lit(WGK[7]);
    let mut res_g = f_centre * T::lit(WG[3]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k += w * (f1 + f2);
        res_abs += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[7]) * (f_centre - mean).abs();
    for j in 0..7 {
        res_asc += T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let abs_half = half_len.abs();
    let value = res_k * half_len;
    let res_abs = res_abs * abs_half;
    let res_asc = res_asc * abs_half;
    let mut error = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && error != T::zero() {
        let scale = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    let mut saturated = false;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && floor >= error {
        error = floor;
        saturated = true;
    }
    Panel { value, error, saturated }
}

struct Adaptive<'f, T, F> {
    f: &'f F,
    _scalar: std::marker::PhantomData<T>,
    evaluations: usize,
    ok: bool,
}

impl<T: Scalar, F: Fn(T) -> T> Adaptive<'_, T, F> {
    fn refine(&mut self, a: T, b: T, panel: Panel<T>, share: T, depth: usize) -> (T, T) {
        if !panel.value.is_finite() || !panel.error.is_finite() {
            self.ok = false;
            return (panel.value, panel.error);
        }
        // a saturated panel may exceed its share; the total is checked against tol
        if panel.error <= share || panel.saturated {
            return (panel.value, panel.error);
        }
        let mid = T::lit(0.5) * (a + b);
        if depth >= MAX_DEPTH || mid <= a || mid >= b || self.evaluations >= MAX_EVALUATIONS {
            self.ok = false;
            return (panel.value, panel.error);
        }
        let left = gauss_kronrod(self.f, a, mid);
        let right = gauss_kronrod(self.f, mid, b);
        self.evaluations += 30;
        let half = share * T::lit(0.5);
        let (lv, le) = self.refine(a, mid, left, half, depth + 1);
        let (rv, re) = self.refine(mid, b, right, half, depth + 1);
        (lv + rv, le + re)
    }
}

/// Adaptive G7/K15 integration of `f` over `[a, b]` to absolute tolerance
/// `tol`.
///
/// A panel is bisected while its error estimate exceeds its share of `tol`
/// (each half receives half of the parent's share). Panels reaching
/// [`MAX_DEPTH`] are kept as they are; the result then comes back with
/// `converged = false` instead of an error, see
/// [`QuadratureResult::require_converged`].
pub fn integrate_finite<T: Scalar, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> Result<QuadratureResult<T>> {
    check_tol(tol)?;
    check_bounds(a, b)?;
    if a == b {
        return Ok(QuadratureResult::zero());
    }
    let mut run = Adaptive { f: &f, _scalar: std::marker::PhantomData, evaluations: 15, ok: true };
    let whole = gauss_kronrod(&f, a, b);
    let (value, err) = run.refine(a, b, whole, tol, 0);
    Ok(QuadratureResult {
        value,
        abs_error_estimate: err,
        evaluations: run.evaluations,
        converged: run.ok && err <= tol && value.is_finite(),
    })
}

/// `∫_a^∞ f` through `v = a + u/(1-u)` on `u ∈ [0, 1-ε]` with
/// `ε = 1e-12`.
pub fn integrate_semi_infinite<T: Scalar, F: Fn(T) -> T>(f: F, a: T, tol: T) -> Result<QuadratureResult<T>> {
    integrate_semi_infinite_with_tail(f, a, tol, None::<fn(T) -> T>)
}

/// As [`integrate_semi_infinite`], with an optional bound `tail(V) ≥ ∫_V^∞ |f|`.
///
/// With a bound, `ε` is the largest power of ten (down to `1e-12`) for which
/// the truncated tail is below `tol / 10`; the bound is then added to the
/// error estimate.
pub fn integrate_semi_infinite_with_tail<T, F, G>(
    f: F,
    a: T,
    tol: T,
    tail_bound: Option<G>,
) -> Result<QuadratureResult<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
    G: Fn(T) -> T,
{
    check_tol(tol)?;
    if !a.is_finite() {
        return Err(Error::NonFinite { what: "integration bound" });
    }
    let min_eps = T::lit(DEFAULT_SEMI_INFINITE_EPS);
    let cutoff = |eps: T| a + (T::one() - eps) / eps;
    let (eps, tail) = match &tail_bound {
        None => (min_eps, T::zero()),
        Some(bound) => {
            let mut eps = T::lit(0.1);
            while eps > min_eps && !(bound(cutoff(eps)) < tol / T::lit(10.0)) {
                eps = eps / T::lit(10.0);
            }
            let eps = eps.max(min_eps);
            (eps, bound(cutoff(eps)).abs())
        }
    };
    let g = |u: T| {
        let w = T::one() - u;
        let v = a + u / w;
        f(v) / (w * w)
    };
    let mut r = integrate_finite(g, T::zero(), T::one() - eps, tol)?;
    r.abs_error_estimate += tail;
    r.converged &= r.abs_error_estimate <= tol;
    Ok(r)
}

/// `∫_a^b f` for `f` with an integrable singularity at `a` or at `b`.
///
/// The interval is cut into dyadic panels shrinking toward the singular
/// point; panels are added until one contributes less than `tol / 10`, and
/// the remaining sliver is estimated from the geometric decay of the last two
/// panels and charged to the error.
pub fn integrate_with_integrable_singularity<T: Scalar, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    singular_point: T,
    tol: T,
) -> Result<QuadratureResult<T>> {
    check_tol(tol)?;
    check_bounds(a, b)?;
    if singular_point != a && singular_point != b {
        return Err(Error::InvalidSingularPoint {
            point: singular_point.as_f64(),
            a: a.as_f64(),
            b: b.as_f64(),
        });
    }
    if a == b {
        return Ok(QuadratureResult::zero());
    }
    let half = T::lit(0.5);
    let ratio = T::FRAC_1_SQRT_2();
    let mut share = T::lit(0.6) * tol * (T::one() - ratio);
    let stop = tol / T::lit(10.0);

    let mut total = QuadratureResult::zero();
    let mut h = b - a;
    let mut prev_abs: Option<T> = None;
    let mut last = T::zero();
    let mut small = false;
    for level in 0..MAX_SINGULAR_LEVELS {
        let (lo, hi) = match (singular_point == a, level) {
            (true, 0) => (a + h * half, b),
            (true, _) => (a + h * half, a + h),
            (false, 0) => (a, b - h * half),
            (false, _) => (b - h, b - h * half),
        };
        if lo >= hi || lo < a || hi > b {
            break;
        }
        let panel = integrate_finite(&f, lo, hi, share)?;
        total.absorb(&panel);
        let cur = panel.value.abs();
        last = panel.value;
        if level >= 2 && cur < stop {
            small = true;
            break;
        }
        prev_abs = Some(cur);
        h = h * half;
        share = share * ratio;
    }
    // The sliver next to the singular point is extrapolated geometrically
    // from the last two panels; its size is charged to the error.
    let r = match prev_abs {
        Some(p) if p > T::zero() => (last.abs() / p).min(T::lit(0.9)),
        _ => T::lit(0.9),
    };
    let tail = last * r / (T::one() - r);
    total.value += tail;
    total.abs_error_estimate += tail.abs();
    total.converged &= total.abs_error_estimate <= tol && (small || tail.abs() < stop);
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_and_polynomials_are_exact() {
        let r = integrate_finite(|_| 1.0f64, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-12);
        assert_eq!(r.evaluations, 15);

        let p = |t: f64| 3.0 * t.powi(5) - t.powi(4) + 2.0 * t.powi(2) - 7.0;
        let exact = |t: f64| 0.5 * t.powi(6) - 0.2 * t.powi(5) + 2.0 / 3.0 * t.powi(3) - 7.0 * t;
        let r = integrate_finite(p, -1.5, 2.0, 1e-10).unwrap();
        assert!((r.value - (exact(2.0) - exact(-1.5))).abs() <= 1e-12);
        assert_eq!(r.evaluations, 15, "no subdivision for low-degree polynomials");
    }

    #[test]
    fn smooth_examples() {
        let tol = 1e-10;
        let r = integrate_finite(f64::sin, 0.0, PI, tol).unwrap();
        assert!(r.converged && (r.value - 2.0).abs() <= tol);
        let r = integrate_finite(|t| 4.0 / (1.0 + t * t), 0.0, 1.0, tol).unwrap();
        assert!(r.converged && (r.value - PI).abs() <= tol);
        assert!((r.value - PI).abs() <= r.abs_error_estimate.max(1e-15));
    }

    #[test]
    fn single_precision() {
        let r = integrate_finite(|t: f32| t.cos(), 0.0, 1.0, 1e-5).unwrap();
        assert!((r.value - 1f32.sin()).abs() < 1e-5);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(integrate_finite(|t: f64| t, 1.0, 0.0, 1e-8).is_err());
        assert!(integrate_finite(|t: f64| t, 0.0, 1.0, 0.0).is_err());
        assert!(integrate_finite(|t: f64| t, 0.0, f64::INFINITY, 1e-8).is_err());
        assert!(integrate_with_integrable_singularity(|t: f64| t, 0.0, 1.0, 0.5, 1e-8).is_err());
    }

    #[test]
    fn endpoint_singularity_without_splitting_is_flagged() {
        let r = integrate_finite(|t: f64| 1.0 / t.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!(!r.converged);
        assert!(r.require_converged("test").is_err());
        assert!((r.value - 2.0).abs() < 1e-6);
    }

    #[test]
    fn interior_nan_is_not_converged() {
        let r = integrate_finite(|t: f64| if (t - 0.5).abs() < 0.01 { f64::NAN } else { t }, 0.0, 1.0, 1e-8)
            .unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn semi_infinite_examples() {
        let tol = 1e-9;
        let r = integrate_semi_infinite(|v: f64| (-v).exp(), 0.0, tol).unwrap();
        assert!(r.converged && (r.value - 1.0).abs() <= tol);
        let r = integrate_semi_infinite(|v: f64| 1.0 / (1.0 + v * v), 0.0, tol).unwrap();
        assert!(r.converged && (r.value - PI / 2.0).abs() <= tol);
        let r = integrate_semi_infinite(|v: f64| (-(v - 3.0)).exp(), 3.0, tol).unwrap();
        assert!((r.value - 1.0).abs() <= tol);
    }

    #[test]
    fn semi_infinite_with_tail_hint() {
        let tol = 1e-8;
        let r = integrate_semi_infinite_with_tail(|v: f64| (-v).exp(), 0.0, tol, Some(|c: f64| (-c).exp()))
            .unwrap();
        assert!(r.converged && (r.value - 1.0).abs() <= tol);
    }

    #[test]
    fn singular_endpoint_examples() {
        let tol = 1e-9;
        let r = integrate_with_integrable_singularity(|t: f64| (1.0 / t).ln(), 0.0, 1.0, 0.0, tol).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - 1.0).abs() <= tol);
        let r = integrate_with_integrable_singularity(|t: f64| 1.0 / t.sqrt(), 0.0, 1.0, 0.0, tol).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - 2.0).abs() <= tol);
        // singularity at the upper end
        // 1 - t cannot resolve below machine epsilon, so the sliver is larger
        let r = integrate_with_integrable_singularity(|t: f64| 1.0 / (1.0 - t).sqrt(), 0.0, 1.0, 1.0, 1e-7)
            .unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - 2.0).abs() <= 1e-7);
    }

    #[test]
    fn deterministic() {
        let f = |t: f64| (t * 3.0).sin() * (-t).exp();
        let a = integrate_semi_infinite(f, 0.0, 1e-10).unwrap();
        let b = integrate_semi_infinite(f, 0.0, 1e-10).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
