//! The verification checks behind `verify` and the acceptance tests.
//!
//! Each check is deterministic: Monte Carlo parts use fixed seeds and the
//! per-trial streams of [`tridiag_spectra::montecarlo`].

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;
use tridiag_spectra::analytic::{
    kappa_cdf, kappa_cdf_marginal_product, product_normal_density, singularity_constant, theorem_joint_cdf_with_threads,
    vmax_cdf, wmin_conditional_density, Accuracy, LimitLaw, SingularityMethod,
};
use tridiag_spectra::closedform::{
    eigenvalues_nonsymmetric, endpoint_moduli_nonsymmetric, endpoint_moduli_symmetric, limit_extremes_symmetric,
    singular_values_symmetric,
};
use tridiag_spectra::montecarlo::{
    default_threshold, ks_distance, sample_triple, simulate_extremes, singularity_rate, trial_rng, with_threads,
    SimulationConfig,
};
use tridiag_spectra::oracle::{assemble, charpoly_residual, eigen_moduli_via_sturm, singular_values_via_gram};
use tridiag_spectra::quadrature::integrate_semi_infinite;
use tridiag_spectra::{EntryDistribution, EntryLaw, RealizedTriple, Result};

use crate::args::{BackendArg, DistArgs, Level, OutputArgs, SimulateArgs};
use crate::report::numeric_payload;

/// Seed shared by every Monte Carlo check.
pub const VERIFY_SEED: u64 = 20_240_501;

pub const GAUSSIAN_SYM_CONSTANT: f64 = 0.704832;
pub const CAUCHY_CONSTANT: f64 = 0.636834;
pub const GAUSSIAN_NONSYM_CONSTANT: f64 = 0.351488;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    /// Diagnostic only: never fails the run.
    pub informational: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        let status = match (self.informational, self.passed) {
            (true, _) => "INFO",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        let timing = if self.informational {
            format!("{:.3} s", self.elapsed.as_secs_f64())
        } else {
            format!("{:.3} s, budget {} s", self.elapsed.as_secs_f64(), self.budget.as_secs_f64())
        };
        format!("{status} [{}] {} ({timing}): {}", self.id, self.title, self.detail)
    }
}

/// Times `body`; the check passes only if `body` reports success within
/// `budget`.
fn check(
    id: &'static str,
    title: &'static str,
    budget: Duration,
    body: impl FnOnce() -> std::result::Result<(bool, String), String>,
) -> CheckOutcome {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let (ok, mut detail) = match result {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = elapsed <= budget;
    if !in_time {
        detail.push_str("; over time budget");
    }
    CheckOutcome {
        id,
        title,
        passed: ok && in_time,
        informational: false,
        detail,
        elapsed,
        budget,
    }
}

fn info(id: &'static str, title: &'static str, body: impl FnOnce() -> std::result::Result<String, String>) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(d) => (true, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome {
        id,
        title,
        passed: true,
        informational: true,
        detail: if passed { detail } else { detail + " (diagnostic only)" },
        elapsed: start.elapsed(),
        budget: Duration::MAX,
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn e2s(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn gaussian_sym_constant() -> CheckOutcome {
    check("1", "Gaussian symmetric singularity constant", secs(1), || {
        let c = singularity_constant(LimitLaw::GaussianSym).map_err(e2s)?;
        let quad = c.cross_check.ok_or("no quadrature cross-check")?.value;
        let gap = (quad - c.value).abs();
        // the quoted figure is the value cut to six decimals; the exact value rounds up
        let six = |v: f64| (v * 1e6).floor() / 1e6;
        let quoted = [c.value, quad]
            .iter()
            .all(|&v| six(v) == GAUSSIAN_SYM_CONSTANT && (v - GAUSSIAN_SYM_CONSTANT).abs() <= 1e-6);
        Ok((
            c.method == SingularityMethod::ClosedForm && gap <= 1e-8 && quoted,
            format!("closed form {:.10}, quadrature {quad:.10}, gap {gap:.1e}", c.value),
        ))
    })
}

pub fn cauchy_constant() -> CheckOutcome {
    check("2", "Cauchy singularity constant", secs(1), || {
        let c = singularity_constant(LimitLaw::CauchySym).map_err(e2s)?;
        let gap = (c.value - CAUCHY_CONSTANT).abs();
        Ok((gap <= 1e-5, format!("{:.8} (±{:.1e}), off by {gap:.1e}", c.value, c.abs_error)))
    })
}

/// Monte Carlo `P(YZ > 0, |X| ≤ 2√(YZ))` for standard normal triples.
fn gaussian_nonsym_singular_fraction(samples: usize, threads: Option<usize>) -> Result<f64> {
    let dist = EntryDistribution::nonsymmetric(EntryLaw::StandardNormal);
    let hits: usize = with_threads(threads, || {
        (0..samples)
            .into_par_iter()
            .filter(|&i| {
                let t = sample_triple(&dist, &mut trial_rng(VERIFY_SEED, i as u64));
                let p = t.off_product();
                p > 0.0 && t.x().abs() <= 2.0 * p.sqrt()
            })
            .count()
    })?;
    Ok(hits as f64 / samples as f64)
}

pub fn gaussian_nonsym_constant(threads: Option<usize>) -> CheckOutcome {
    check("3", "Gaussian non-symmetric singularity constant", secs(30), || {
        let c = singularity_constant(LimitLaw::GaussianNonsym).map_err(e2s)?;
        let mc = gaussian_nonsym_singular_fraction(1_000_000, threads).map_err(e2s)?;
        let (gq, gm) = ((c.value - GAUSSIAN_NONSYM_CONSTANT).abs(), (mc - GAUSSIAN_NONSYM_CONSTANT).abs());
        Ok((
            gq <= 1e-4 && gm <= 0.005,
            format!("quadrature {:.8} (off {gq:.1e}), Monte Carlo {mc:.5} (off {gm:.1e})", c.value),
        ))
    })
}

pub fn rademacher_enumeration() -> CheckOutcome {
    check("4", "Rademacher sign-pattern enumeration", Duration::from_millis(1), || {
        let signs = [1.0, -1.0];
        let sqrt5 = 5f64.sqrt();
        let mut sym_ok = true;
        for x in signs {
            for y in signs {
                sym_ok &= endpoint_moduli_symmetric(x, y) == (1.0, 3.0);
            }
        }
        let (mut mus, mut bigs) = (Vec::new(), Vec::new());
        for x in signs {
            for y in signs {
                for z in signs {
                    let t = RealizedTriple::new(x, y, z).map_err(e2s)?;
                    let (mu, big) = endpoint_moduli_nonsymmetric(&t);
                    mus.push(mu);
                    bigs.push(big);
                }
            }
        }
        let within = |v: &[f64], allowed: [f64; 2]| v.iter().all(|a| allowed.iter().any(|b| (a - b).abs() <= 1e-15));
        let nonsym_ok = within(&mus, [1.0, sqrt5]) && within(&bigs, [3.0, sqrt5]);
        let c_sym = singularity_constant(LimitLaw::RademacherSym).map_err(e2s)?.value;
        let c_nonsym = singularity_constant(LimitLaw::RademacherNonsym).map_err(e2s)?.value;
        Ok((
            sym_ok && nonsym_ok && c_sym == 1.0 && c_nonsym == 0.5,
            format!("symmetric (m, M) = (1, 3), P(W=0) = {c_sym}; non-symmetric P(W=0) = {c_nonsym}"),
        ))
    })
}

/// Closed-form singular values of the symmetric matrix, nondecreasing.
pub type SingularFn<'a> = &'a (dyn Fn(f64, f64, usize) -> Result<Vec<f64>> + Sync);
/// Closed-form eigenvalues of the general matrix.
pub type EigenFn<'a> = &'a (dyn Fn(&RealizedTriple<f64>, usize) -> Result<Vec<Complex64>> + Sync);

/// Worst normwise relative gap between two nondecreasing spectra.
fn normwise_gap(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

/// Oracle agreement for the given closed forms; see [`oracle_agreement`].
pub fn oracle_agreement_with(singular: SingularFn<'_>, eigen: EigenFn<'_>) -> CheckOutcome {
    check("5", "closed forms against oracles", secs(30), || {
        let dist = EntryDistribution::nonsymmetric(EntryLaw::StandardNormal);
        let (mut jacobi_gap, mut sturm_gap, mut residual) = (0.0f64, 0.0f64, 0.0f64);
        for i in 0..100u64 {
            let t = sample_triple(&dist, &mut trial_rng(VERIFY_SEED, i));
            let sym = RealizedTriple::symmetric(t.x(), t.y()).map_err(e2s)?;
            for n in [2, 3, 8, 32] {
                let cf = singular(t.x(), t.y(), n).map_err(e2s)?;
                let m = assemble(&sym, n).map_err(e2s)?;
                let jac = singular_values_via_gram(&m, 1e-15).map_err(e2s)?;
                let scale = t.x().abs() + 2.0 * t.y().abs() + f64::MIN_POSITIVE;
                let stu = eigen_moduli_via_sturm(&m, 1e-15 * scale).map_err(e2s)?;
                jacobi_gap = jacobi_gap.max(normwise_gap(&cf, &jac));
                sturm_gap = sturm_gap.max(normwise_gap(&cf, &stu));
                let eig = eigen(&t, n).map_err(e2s)?;
                if eig.len() != n {
                    residual = f64::INFINITY;
                }
                for lambda in eig {
                    residual = residual.max(charpoly_residual(&t, n, lambda).map_err(e2s)?);
                }
            }
        }
        Ok((
            jacobi_gap <= 1e-8 && sturm_gap <= 1e-8 && residual <= 1e-8,
            format!("Jacobi gap {jacobi_gap:.1e}, Sturm gap {sturm_gap:.1e}, charpoly residual {residual:.1e}"),
        ))
    })
}

pub fn oracle_agreement() -> CheckOutcome {
    oracle_agreement_with(&singular_values_symmetric::<f64>, &eigenvalues_nonsymmetric::<f64>)
}

pub fn sandwich_inequality() -> CheckOutcome {
    check("6", "eigenvalue moduli between extreme singular values", secs(10), || {
        let dist = EntryDistribution::nonsymmetric(EntryLaw::StandardNormal);
        let n = 16;
        let mut worst = f64::NEG_INFINITY;
        for i in 0..1000u64 {
            let t = sample_triple(&dist, &mut trial_rng(VERIFY_SEED ^ 0x5a5a, i));
            let sv = singular_values_via_gram(&assemble(&t, n).map_err(e2s)?, 1e-15).map_err(e2s)?;
            let (smin, smax) = (sv[0], sv[n - 1]);
            for lambda in eigenvalues_nonsymmetric(&t, n).map_err(e2s)? {
                let r = lambda.norm();
                worst = worst.max(smin - r).max(r - smax);
            }
        }
        Ok((
            worst <= 1e-8,
            format!("largest violation {worst:.1e} (negative means strictly inside)"),
        ))
    })
}

pub fn limit_law_convergence(threads: Option<usize>) -> CheckOutcome {
    check("7", "finite-order extremes approach the limit laws", secs(300), || {
        let law = LimitLaw::GaussianSym;
        let mut cfg = SimulationConfig::new(law.distribution(), vec![2000], 20_000, VERIFY_SEED);
        cfg.threads = threads;
        let s = simulate_extremes(&cfg, 2000).map_err(e2s)?;
        let mut failure = None;
        let ks = ks_distance(&s.hi, |y| match vmax_cdf(law, y) {
            Ok(e) => e.value,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        })
        .ok_or("no finite samples")?;
        if let Some(e) = failure {
            return Err(e.to_string());
        }
        let n = 2001;
        let mut cfg = SimulationConfig::new(LimitLaw::GaussianNonsym.distribution(), vec![n], 100_000, VERIFY_SEED);
        cfg.threads = threads;
        let threshold = default_threshold(n);
        let rate = singularity_rate(&cfg, n, threshold).map_err(e2s)?;
        let gap = (rate - GAUSSIAN_NONSYM_CONSTANT).abs();
        Ok((
            ks <= 0.02 && gap <= 0.01,
            format!("KS(max, n=2000) {ks:.4}; singular rate at n={n}, threshold {threshold:.5}: {rate:.4} (off {gap:.4})"),
        ))
    })
}

pub fn theorem_marginal(threads: Option<usize>) -> CheckOutcome {
    check("8", "joint limit law reduces to the law of the maximum", secs(60), || {
        let samples = 100_000;
        let mut details = Vec::new();
        let mut ok = true;
        for (law, y_max) in [(LimitLaw::GaussianSym, 8.0), (LimitLaw::GaussianNonsym, 8.0), (LimitLaw::CauchySym, 40.0)] {
            let dist = law.distribution();
            let mut worst = 0.0f64;
            for k in 1..=50 {
                let y = y_max * k as f64 / 50.0;
                let mc = theorem_joint_cdf_with_threads(&dist, 1e9, y, samples, VERIFY_SEED, threads).map_err(e2s)?;
                let exact = vmax_cdf(law, y).map_err(e2s)?;
                let se = (exact.value * (1.0 - exact.value) / samples as f64).sqrt();
                let allowed = 3.0 * se + exact.abs_error;
                let gap = (mc - exact.value).abs();
                if gap > allowed {
                    ok = false;
                }
                if allowed > 0.0 {
                    worst = worst.max(gap / allowed);
                }
            }
            details.push(format!("{law}: worst gap {worst:.2} of allowance"));
        }
        Ok((ok, details.join("; ")))
    })
}

/// Conditional Monte Carlo of the limiting condition number for Gaussian
/// symmetric entries: `V/W` over pairs with `W > 0`.
fn gaussian_sym_kappa_samples(pairs: usize, threads: Option<usize>) -> Result<Vec<f64>> {
    let dist = EntryDistribution::symmetric(EntryLaw::StandardNormal);
    let mut v: Vec<f64> = with_threads(threads, || {
        (0..pairs)
            .into_par_iter()
            .filter_map(|i| {
                let t = sample_triple(&dist, &mut trial_rng(VERIFY_SEED ^ 0x9e37, i as u64));
                let e = limit_extremes_symmetric(t.x(), t.y()).ok()?;
                (e.lo() > 0.0).then(|| e.hi() / e.lo())
            })
            .collect()
    })?;
    v.sort_by(f64::total_cmp);
    Ok(v)
}

fn fraction_le(sorted: &[f64], z: f64) -> f64 {
    sorted.partition_point(|&v| v <= z) as f64 / sorted.len() as f64
}

pub fn conditional_laws(threads: Option<usize>) -> CheckOutcome {
    check("9", "conditional densities and condition-number law", secs(300), || {
        let mut ok = true;
        let mut details = Vec::new();
        for law in [LimitLaw::GaussianSym, LimitLaw::GaussianNonsym] {
            let r = integrate_semi_infinite(
                |w: f64| wmin_conditional_density(law, w).map_or(f64::NAN, |e| e.value),
                0.0,
                1e-7,
            )
            .map_err(e2s)?;
            let gap = (r.value - 1.0).abs();
            ok &= r.converged && gap <= 1e-5;
            details.push(format!("{law} density mass {:.8}", r.value));
        }
        let mc = gaussian_sym_kappa_samples(1_000_000, threads).map_err(e2s)?;
        for z in [2.0, 3.0, 5.0] {
            let exact = kappa_cdf(LimitLaw::GaussianSym, z).map_err(e2s)?.value;
            let emp = fraction_le(&mc, z);
            ok &= (exact - emp).abs() <= 0.01;
            details.push(format!("kappa({z}) {exact:.4} vs {emp:.4}"));
        }
        Ok((ok, details.join("; ")))
    })
}

fn simulate_args(dist: &str, sym: bool, n: Vec<usize>, trials: usize, seed: u64, threads: usize) -> SimulateArgs {
    SimulateArgs {
        dist: DistArgs {
            dist: dist.into(),
            sym,
            nonsym: !sym,
        },
        n,
        trials,
        seed,
        threads: Some(threads),
        backend: BackendArg::ClosedForm,
        tol: None,
        output: OutputArgs {
            out: None,
            format: crate::args::Format::Csv,
        },
    }
}

pub fn determinism() -> CheckOutcome {
    check("10", "simulate output independent of thread count", secs(60), || {
        let runs = [
            ("gaussian", true, vec![100, 1000], 10_000, 42),
            ("cauchy", false, vec![64], 5_000, 7),
            ("rademacher", false, vec![1001], 5_000, 7),
        ];
        let mut ok = true;
        let count = runs.len();
        for (dist, sym, n, trials, seed) in runs {
            let payloads = [1, 4]
                .map(|k| crate::commands::simulate(&simulate_args(dist, sym, n.clone(), trials, seed, k)))
                .map(|r| r.map(|rep| numeric_payload(&rep.render(crate::args::Format::Csv))));
            match payloads {
                [Ok(a), Ok(b)] => ok &= a == b,
                [Err(e), _] | [_, Err(e)] => return Err(e.to_string()),
            }
        }
        Ok((ok, format!("{count} configurations compared at 1 and 4 threads")))
    })
}

/// Density of `YZ` at `t` estimated from the fraction of `samples` products
/// within `half_width` of `t`, with its standard error.
fn product_histogram_density(t: f64, samples: usize, half_width: f64, threads: Option<usize>) -> Result<(f64, f64)> {
    let dist = EntryDistribution::nonsymmetric(EntryLaw::StandardNormal);
    let hits = with_threads(threads, || {
        (0..samples)
            .into_par_iter()
            .filter(|&i| {
                let s = sample_triple(&dist, &mut trial_rng(VERIFY_SEED ^ 0x7f4a, i as u64));
                (s.off_product() - t).abs() <= half_width
            })
            .count()
    })?;
    let p = hits as f64 / samples as f64;
    let width = 2.0 * half_width;
    Ok((p / width, (p * (1.0 - p) / samples as f64).sqrt() / width))
}

/// `(1/π) ∫₀^∞ (1/s) exp(-(s² + |t|/s²)/2) ds`: the product density with `|t|`
/// in place of `t²`.
fn abs_t_variant(t: f64) -> Result<f64> {
    let a = t.abs();
    let r = integrate_semi_infinite(
        |s: f64| if s <= 0.0 { 0.0 } else { (-0.5 * (s * s + a / (s * s))).exp() / s },
        0.0,
        1e-12,
    )?;
    Ok(r.value / std::f64::consts::PI)
}

pub fn product_density_adjudication(threads: Option<usize>) -> CheckOutcome {
    info("fYZ", "product-normal density formula against sampled products", || {
        let mut lines = Vec::new();
        let (mut formula_ok, mut variant_ok) = (true, true);
        for t in [0.5, 1.0, 2.0] {
            let (emp, se) = product_histogram_density(t, 10_000_000, 0.01, threads).map_err(e2s)?;
            let f = product_normal_density(t).map_err(e2s)?;
            let g = abs_t_variant(t).map_err(e2s)?;
            // histogram bias is O(h² f''), far below 4·se at h = 0.01
            formula_ok &= (f - emp).abs() <= 4.0 * se;
            variant_ok &= (g - emp).abs() <= 4.0 * se;
            lines.push(format!("t={t}: sampled {emp:.5}±{se:.5}, t² form {f:.5}, |t| form {g:.5}"));
        }
        lines.push(format!(
            "t² form {}, |t| form {}",
            if formula_ok { "consistent" } else { "REJECTED" },
            if variant_ok { "consistent" } else { "rejected" }
        ));
        Ok(lines.join("; "))
    })
}

pub fn marginal_product_kappa_report(threads: Option<usize>) -> CheckOutcome {
    info("kappa-form", "condition-number law with the maximum taken independent of the minimum", || {
        let mc = gaussian_sym_kappa_samples(1_000_000, threads).map_err(e2s)?;
        let mut lines = Vec::new();
        for z in [2.0, 3.0, 5.0] {
            let lit = kappa_cdf_marginal_product(LimitLaw::GaussianSym, z, Accuracy::KAPPA).map_err(e2s)?.value;
            let cond = kappa_cdf(LimitLaw::GaussianSym, z).map_err(e2s)?.value;
            lines.push(format!("z={z}: independent form {lit:.4}, joint form {cond:.4}, Monte Carlo {:.4}", fraction_le(&mc, z)));
        }
        Ok(lines.join("; "))
    })
}

pub fn gaussian_nonsym_kappa_report(threads: Option<usize>) -> CheckOutcome {
    info("kappa-nonsym", "Gaussian non-symmetric condition-number law against Monte Carlo", || {
        let dist = EntryDistribution::nonsymmetric(EntryLaw::StandardNormal);
        let mut v: Vec<f64> = with_threads(threads, || {
            (0..1_000_000u64)
                .into_par_iter()
                .filter_map(|i| {
                    let t = sample_triple(&dist, &mut trial_rng(VERIFY_SEED ^ 0x31, i));
                    let e = tridiag_spectra::closedform::limit_extremes_nonsymmetric(&t).ok()?;
                    (e.lo() > 0.0).then(|| e.hi() / e.lo())
                })
                .collect()
        })
        .map_err(e2s)?;
        v.sort_by(f64::total_cmp);
        let mut lines = Vec::new();
        for z in [2.0, 5.0] {
            let exact = kappa_cdf(LimitLaw::GaussianNonsym, z).map_err(e2s)?.value;
            lines.push(format!("z={z}: {exact:.4} vs {:.4}", fraction_le(&v, z)));
        }
        Ok(lines.join("; "))
    })
}

/// Runs the checks of `level` in order, reporting each as it finishes.
pub fn run_level(level: Level, threads: Option<usize>, mut report: impl FnMut(&CheckOutcome)) -> Vec<CheckOutcome> {
    let mut steps: Vec<Box<dyn FnOnce() -> CheckOutcome>> = vec![
        Box::new(gaussian_sym_constant),
        Box::new(cauchy_constant),
        Box::new(move || gaussian_nonsym_constant(threads)),
        Box::new(rademacher_enumeration),
        Box::new(oracle_agreement),
        Box::new(sandwich_inequality),
    ];
    if level == Level::Full {
        steps.push(Box::new(move || limit_law_convergence(threads)));
    }
    steps.push(Box::new(move || theorem_marginal(threads)));
    steps.push(Box::new(move || conditional_laws(threads)));
    steps.push(Box::new(determinism));
    if level == Level::Full {
        steps.push(Box::new(move || product_density_adjudication(threads)));
        steps.push(Box::new(move || marginal_product_kappa_report(threads)));
        steps.push(Box::new(move || gaussian_nonsym_kappa_report(threads)));
    }
    steps
        .into_iter()
        .map(|step| {
            let o = step();
            report(&o);
            o
        })
        .collect()
}
