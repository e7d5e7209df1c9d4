use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use super::normal::{std_normal_cdf, std_normal_pdf};
use super::product_normal::{integrate_against_product_density, integrate_mapped, positive_product_cdf};
use super::{Accuracy, Estimate, InnerLog, LimitLaw};
use crate::closedform::limit_extremes;
use crate::domain::{Assignment, RealizedTriple, SpectralExtremes};
use crate::error::{Error, Result};
use crate::quadrature::integrate_semi_infinite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularityMethod {
    ClosedForm,
    Quadrature,
    Enumeration,
}

impl SingularityMethod {
    pub fn name(self) -> &'static str {
        match self {
            SingularityMethod::ClosedForm => "closed-form",
            SingularityMethod::Quadrature => "quadrature",
            SingularityMethod::Enumeration => "enumeration",
        }
    }
}

/// Limiting probability that the smallest extreme is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityConstant {
    pub law: LimitLaw,
    pub method: SingularityMethod,
    pub value: f64,
    pub abs_error: f64,
    /// Second evaluation by another route, when one exists.
    pub cross_check: Option<Estimate>,
}

/// Atom of the joint limit law of `(W, V)` conditioned on `W > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointAtom {
    pub w: f64,
    pub v: f64,
    pub probability: f64,
}

/// Tolerance for the Gaussian symmetric closed-form/quadrature agreement.
const GAUSSIAN_SYM_AGREEMENT: f64 = 1e-8;

fn check_arg(v: f64, what: &'static str) -> Result<()> {
    if v.is_nan() {
        Err(Error::NonFinite { what })
    } else {
        Ok(())
    }
}

fn sign_patterns(assignment: Assignment) -> Vec<(RealizedTriple<f64>, f64)> {
    const SIGNS: [f64; 2] = [1.0, -1.0];
    let signs = &SIGNS;
    match assignment {
        Assignment::SymmetricIid => signs
            .iter()
            .flat_map(|&x| signs.iter().map(move |&y| (x, y)))
            .map(|(x, y)| (RealizedTriple::symmetric(x, y).expect("finite"), 0.25))
            .collect(),
        Assignment::NonsymmetricIid => signs
            .iter()
            .flat_map(|&x| signs.iter().flat_map(move |&y| signs.iter().map(move |&z| (x, y, z))))
            .map(|(x, y, z)| (RealizedTriple::new(x, y, z).expect("finite"), 0.125))
            .collect(),
    }
}

/// Limit extremes of every Rademacher sign pattern with its probability.
fn rademacher_limits(law: LimitLaw) -> Vec<(SpectralExtremes<f64>, f64)> {
    let assignment = law.distribution().assignment;
    sign_patterns(assignment)
        .into_iter()
        .map(|(t, p)| (limit_extremes(&t, assignment.spectral_kind()).expect("finite"), p))
        .collect()
}

fn cauchy_pdf(u: f64) -> f64 {
    1.0 / (PI * (1.0 + u * u))
}

/// Gaussian symmetric singularity constant in closed form.
pub(crate) fn gaussian_sym_closed_form() -> f64 {
    (PI + (24.0f64 / 7.0).atan()) / (2.0 * PI)
}

fn singularity_by_quadrature(law: LimitLaw) -> Result<Estimate> {
    match law {
        LimitLaw::GaussianSym => {
            let r = integrate_semi_infinite(|v| (std_normal_cdf(2.0 * v) - 0.5) * std_normal_pdf(v), 0.0, 1e-12)?
                .require_converged("Gaussian symmetric singularity constant")?;
            Ok(Estimate { value: r.value, abs_error: r.abs_error_estimate }.scaled(4.0))
        }
        LimitLaw::CauchySym => {
            let r = integrate_semi_infinite(|v: f64| (2.0 * v).atan() / (1.0 + v * v), 0.0, 1e-11)?
                .require_converged("Cauchy singularity constant")?;
            Ok(Estimate { value: r.value, abs_error: r.abs_error_estimate }.scaled(4.0 / (PI * PI)))
        }
        LimitLaw::GaussianNonsym => {
            let e = integrate_against_product_density(
                |t| std_normal_cdf(2.0 * t.sqrt()),
                f64::INFINITY,
                1e-10,
                1e-13,
            )?;
            let s = e.scaled(2.0);
            Ok(Estimate { value: s.value - 0.5, abs_error: s.abs_error })
        }
        LimitLaw::RademacherSym | LimitLaw::RademacherNonsym => {
            Err(Error::Unsupported(format!("{law} singularity constant is exact by enumeration")))
        }
    }
}

pub fn singularity_constant(law: LimitLaw) -> Result<SingularityConstant> {
    match law {
        LimitLaw::RademacherSym | LimitLaw::RademacherNonsym => {
            let value = rademacher_limits(law)
                .iter()
                .filter(|(e, _)| e.lo() == 0.0)
                .map(|(_, p)| p)
                .sum();
            Ok(SingularityConstant {
                law,
                method: SingularityMethod::Enumeration,
                value,
                abs_error: 0.0,
                cross_check: None,
            })
        }
        LimitLaw::GaussianSym => {
            let closed = gaussian_sym_closed_form();
            let quad = singularity_by_quadrature(law)?;
            if (quad.value - closed).abs() > GAUSSIAN_SYM_AGREEMENT {
                return Err(Error::InternalInconsistency(format!(
                    "Gaussian symmetric singularity constant: closed form {closed} vs quadrature {}",
                    quad.value
                )));
            }
            Ok(SingularityConstant {
                law,
                method: SingularityMethod::ClosedForm,
                value: closed,
                abs_error: 0.0,
                cross_check: Some(quad),
            })
        }
        LimitLaw::CauchySym | LimitLaw::GaussianNonsym => {
            let q = singularity_by_quadrature(law)?;
            Ok(SingularityConstant {
                law,
                method: SingularityMethod::Quadrature,
                value: q.value,
                abs_error: q.abs_error,
                cross_check: None,
            })
        }
    }
}

/// Singularity constant, computed once per process.
fn cached_constant(law: LimitLaw) -> Result<f64> {
    static CELLS: [OnceLock<Result<f64>>; 5] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = LimitLaw::ALL.iter().position(|l| *l == law).expect("law listed");
    CELLS[idx]
        .get_or_init(|| singularity_constant(law).map(|c| c.value))
        .clone()
}

pub fn vmax_cdf(law: LimitLaw, y: f64) -> Result<Estimate> {
    vmax_cdf_with(law, y, Accuracy::CDF)
}

/// `P(V ≤ y)` for the limiting largest extreme.
pub fn vmax_cdf_with(law: LimitLaw, y: f64, acc: Accuracy) -> Result<Estimate> {
    check_arg(y, "CDF argument")?;
    if law.is_discrete() {
        let p = rademacher_limits(law)
            .iter()
            .filter(|(e, _)| e.hi() <= y)
            .map(|(_, p)| p)
            .sum();
        return Ok(Estimate::exact(p));
    }
    if y <= 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    if y.is_infinite() {
        return Ok(Estimate::exact(1.0));
    }
    let est = match law {
        LimitLaw::GaussianSym => {
            let r = integrate_mapped(
                |v| (std_normal_cdf(y - 2.0 * v) - std_normal_cdf(2.0 * v - y)) * std_normal_pdf(v),
                0.0,
                0.5 * y,
                acc.level(0),
            )?
            .require_converged("Gaussian symmetric max CDF")?;
            Estimate { value: r.value, abs_error: r.abs_error_estimate }.scaled(2.0)
        }
        LimitLaw::CauchySym => {
            let log = InnerLog::default();
            let inner_tol = acc.level(1);
            let outer = integrate_mapped(
                |v| {
                    let inner = integrate_mapped(|t| 1.0 / (1.0 + t * t), 0.0, y - 2.0 * v, inner_tol);
                    log.take(inner) / (1.0 + v * v)
                },
                0.0,
                0.5 * y,
                acc.level(0),
            )?;
            log.finish(outer, FRAC_PI_2, "Cauchy max CDF")?.scaled(4.0 / (PI * PI))
        }
        LimitLaw::GaussianNonsym => {
            let log = InnerLog::default();
            let inner_tol = acc.level(1);
            let outer = integrate_mapped(
                |v| {
                    let a = 0.25 * (y - v) * (y - v);
                    let b = 0.25 * (y * y - v * v);
                    let fa = log.take_estimate(positive_product_cdf(a, inner_tol));
                    let fb = log.take_estimate(positive_product_cdf(b, inner_tol));
                    (fa + fb) * std_normal_pdf(v)
                },
                0.0,
                y,
                acc.level(0),
            )?;
            log.finish(outer, 1.0, "Gaussian non-symmetric max CDF")?.scaled(2.0)
        }
        LimitLaw::RademacherSym | LimitLaw::RademacherNonsym => unreachable!("discrete handled above"),
    };
    Ok(est.probability())
}

pub fn wmin_cdf(law: LimitLaw, x: f64) -> Result<Estimate> {
    wmin_cdf_with(law, x, Accuracy::CDF)
}

/// `P(W ≤ x)` for the limiting smallest extreme, atom at zero included.
pub fn wmin_cdf_with(law: LimitLaw, x: f64, acc: Accuracy) -> Result<Estimate> {
    check_arg(x, "CDF argument")?;
    if law.is_discrete() {
        let p = rademacher_limits(law)
            .iter()
            .filter(|(e, _)| e.lo() <= x)
            .map(|(_, p)| p)
            .sum();
        return Ok(Estimate::exact(p));
    }
    if x < 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    if x.is_infinite() {
        return Ok(Estimate::exact(1.0));
    }
    // survival P(W > x) = P(zero outside, m > x)
    let survival = match law {
        LimitLaw::GaussianSym => {
            let r = integrate_semi_infinite(|v| std_normal_cdf(-(x + 2.0 * v)) * std_normal_pdf(v), 0.0, acc.level(0))?
                .require_converged("Gaussian symmetric min CDF")?;
            Estimate { value: r.value, abs_error: r.abs_error_estimate }.scaled(4.0)
        }
        LimitLaw::CauchySym => {
            let r = integrate_semi_infinite(|v: f64| 1f64.atan2(x + 2.0 * v) / (1.0 + v * v), 0.0, acc.level(0))?
                .require_converged("Cauchy min CDF")?;
            Estimate { value: r.value, abs_error: r.abs_error_estimate }.scaled(4.0 / (PI * PI))
        }
        LimitLaw::GaussianNonsym => {
            let positive = integrate_against_product_density(
                |t| std_normal_cdf(-(x + 2.0 * t.sqrt())),
                f64::INFINITY,
                acc.level(0),
                acc.level(1),
            )?
            .scaled(2.0);
            Estimate {
                value: std_normal_cdf(-x) + positive.value,
                abs_error: positive.abs_error,
            }
        }
        LimitLaw::RademacherSym | LimitLaw::RademacherNonsym => unreachable!("discrete handled above"),
    };
    Ok(Estimate {
        value: 1.0 - survival.value,
        abs_error: survival.abs_error,
    }
    .probability())
}

pub fn wmin_conditional_density(law: LimitLaw, w: f64) -> Result<Estimate> {
    wmin_conditional_density_with(law, w, Accuracy::CDF)
}

/// Density of the limiting smallest extreme given that it is positive.
pub fn wmin_conditional_density_with(law: LimitLaw, w: f64, acc: Accuracy) -> Result<Estimate> {
    check_arg(w, "density argument")?;
    if law.is_discrete() {
        return Err(Error::Unsupported(format!(
            "{law}: the positive part of the minimum is discrete, see rademacher_nonsym_conditional_atoms"
        )));
    }
    if w <= 0.0 || w.is_infinite() {
        return Ok(Estimate::exact(0.0));
    }
    let c = cached_constant(law)?;
    let unconditional = match law {
        LimitLaw::GaussianSym => symmetric_min_density(std_normal_pdf, w, acc.level(0))?,
        LimitLaw::CauchySym => symmetric_min_density(cauchy_pdf, w, acc.level(0))?,
        LimitLaw::GaussianNonsym => {
            let e = integrate_against_product_density(
                |t| std_normal_pdf(w + 2.0 * t.sqrt()),
                f64::INFINITY,
                acc.level(0),
                acc.level(1),
            )?;
            Estimate {
                value: std_normal_pdf(w) + 2.0 * e.value,
                abs_error: 2.0 * e.abs_error,
            }
        }
        LimitLaw::RademacherSym | LimitLaw::RademacherNonsym => unreachable!("discrete handled above"),
    };
    Ok(unconditional.scaled(1.0 / (1.0 - c)))
}

/// `4 ∫₀^∞ g(w + 2v) g(v) dv`: density of `|X| - 2|Y|` at `w > 0` for
/// independent `X`, `Y` with symmetric density `g`.
fn symmetric_min_density(g: fn(f64) -> f64, w: f64, tol: f64) -> Result<Estimate> {
    let r = integrate_semi_infinite(|v| g(w + 2.0 * v) * g(v), 0.0, tol / 4.0)?
        .require_converged("min density")?;
    Ok(Estimate { value: r.value, abs_error: r.abs_error_estimate }.scaled(4.0))
}

/// Joint atoms of `(W, V)` given `W > 0` for Rademacher non-symmetric entries.
pub fn rademacher_nonsym_conditional_atoms() -> Vec<JointAtom> {
    let limits = rademacher_limits(LimitLaw::RademacherNonsym);
    let positive: f64 = limits.iter().filter(|(e, _)| e.lo() > 0.0).map(|(_, p)| p).sum();
    let mut atoms: Vec<JointAtom> = Vec::new();
    for (e, p) in limits.iter().filter(|(e, _)| e.lo() > 0.0) {
        match atoms.iter_mut().find(|a| a.w == e.lo() && a.v == e.hi()) {
            Some(a) => a.probability += p / positive,
            None => atoms.push(JointAtom {
                w: e.lo(),
                v: e.hi(),
                probability: p / positive,
            }),
        }
    }
    atoms
}

pub fn kappa_cdf(law: LimitLaw, z: f64) -> Result<Estimate> {
    kappa_cdf_with(law, z, Accuracy::KAPPA)
}

/// `P(V/W ≤ z | W > 0)`, the limiting condition number given that it is
/// finite.
///
/// Evaluated as `∫ P(V ≤ zw | W = w) f_W(w) dw` with the conditional law of
/// `V` given `W = w` taken from the joint construction of `(W, V)` out of the
/// same entries. For the symmetric families `W = |X| - 2|Y|` and
/// `V = |X| + 2|Y|` on `{W > 0}`, so `V ≤ zw` iff `|Y| ≤ (z - 1) w / 4`.
pub fn kappa_cdf_with(law: LimitLaw, z: f64, acc: Accuracy) -> Result<Estimate> {
    check_arg(z, "condition-number argument")?;
    if z < 0.0 {
        return Err(Error::Domain(format!("condition-number argument must be nonnegative, got {z}")));
    }
    match law {
        LimitLaw::RademacherSym => {
            return Err(Error::Unsupported(
                "rademacher-sym: the limiting minimum is zero almost surely".into(),
            ))
        }
        LimitLaw::RademacherNonsym => {
            let p = rademacher_nonsym_conditional_atoms()
                .iter()
                .filter(|a| a.v / a.w <= z)
                .map(|a| a.probability)
                .sum();
            return Ok(Estimate::exact(p));
        }
        _ => {}
    }
    if z <= 1.0 {
        return Ok(Estimate::exact(0.0));
    }
    if z.is_infinite() {
        return Ok(Estimate::exact(1.0));
    }
    let c = cached_constant(law)?;
    let est = match law {
        LimitLaw::GaussianSym => symmetric_kappa(std_normal_pdf, z, acc)?,
        LimitLaw::CauchySym => symmetric_kappa(cauchy_pdf, z, acc)?,
        LimitLaw::GaussianNonsym => {
            let log = InnerLog::default();
            let (inner_tol, density_tol) = (acc.level(1), acc.level(2));
            let outer = integrate_semi_infinite(
                |w: f64| {
                    // yz < 0 branch: W = |X| = w, V = √(w² + 4|yz|)
                    let neg_limit = 0.25 * w * w * (z * z - 1.0);
                    let neg = log.take_estimate(positive_product_cdf(neg_limit, inner_tol));
                    // yz > 0 branch: |X| = w + 2√t, V = w + 4√t
                    let pos_limit = (0.25 * (z - 1.0) * w).powi(2);
                    let pos = log.take_estimate(integrate_against_product_density(
                        |t| std_normal_pdf(w + 2.0 * t.sqrt()),
                        pos_limit,
                        inner_tol,
                        density_tol,
                    ));
                    2.0 * (std_normal_pdf(w) * neg + pos)
                },
                0.0,
                acc.level(0),
            )?;
            log.finish(outer, 2.0, "Gaussian non-symmetric condition-number CDF")?
        }
        LimitLaw::RademacherSym | LimitLaw::RademacherNonsym => unreachable!("discrete handled above"),
    };
    Ok(est.scaled(1.0 / (1.0 - c)).probability())
}

/// `∫₀^∞ ∫₀^{(z-1)w/4} 4 g(w + 2b) g(b) db dw`.
fn symmetric_kappa(g: fn(f64) -> f64, z: f64, acc: Accuracy) -> Result<Estimate> {
    let log = InnerLog::default();
    let inner_tol = acc.level(1);
    let outer = integrate_semi_infinite(
        |w: f64| {
            let upper = 0.25 * (z - 1.0) * w;
            log.take(integrate_mapped(|b| g(w + 2.0 * b) * g(b), 0.0, upper, inner_tol))
        },
        0.0,
        acc.level(0) / 4.0,
    )?;
    Ok(log.finish(outer, 1.0, "symmetric condition-number CDF")?.scaled(4.0))
}

/// `∫ P(V ≤ zw) f_W(w | W > 0) dw`, which replaces the conditional law of `V`
/// given `W` by its marginal as if the two were independent.
///
/// Kept for comparison only; [`kappa_cdf`] is the distribution of `V/W`.
pub fn kappa_cdf_marginal_product(law: LimitLaw, z: f64, acc: Accuracy) -> Result<Estimate> {
    check_arg(z, "condition-number argument")?;
    if !matches!(law, LimitLaw::GaussianSym | LimitLaw::CauchySym) {
        return Err(Error::Unsupported(format!("{law}: marginal-product form is only written out for symmetric continuous laws")));
    }
    if z <= 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let log = InnerLog::default();
    let inner = Accuracy { target: acc.level(0) };
    let outer = integrate_semi_infinite(
        |w: f64| {
            let v = log.take_estimate(vmax_cdf_with(law, z * w, inner));
            let d = log.take_estimate(wmin_conditional_density_with(law, w, inner));
            v * d
        },
        0.0,
        acc.level(0),
    )?;
    Ok(log.finish(outer, 2.0, "marginal-product condition-number CDF")?.probability())
}
