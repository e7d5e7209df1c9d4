use rayon::prelude::*;
use serde_json::json;
use tridiag_spectra::analytic::{
    kappa_cdf_with, singularity_constant, vmax_cdf_with, wmin_cdf_with, wmin_conditional_density_with, Accuracy,
    Estimate, LimitLaw,
};
use tridiag_spectra::montecarlo::{
    ks_distance, simulate_extremes, with_threads, Backend, EmpiricalCdf, SimulationConfig, TabulatedCdf,
};
use tridiag_spectra::Error;

use crate::args::{BackendArg, ConstantsArgs, LimitCdfArgs, SimulateArgs, Which};
use crate::dist::{describe, parse_distribution};
use crate::report::{Cell, Report, RunManifest, Table};
use crate::CliError;

pub const QUANTILES: [f64; 7] = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99];

/// Knots of the tabulated reference CDF for the extremes.
const EXTREME_KNOTS: usize = 256;
/// Knots for the condition number, whose law costs a nested quadrature per point.
const KAPPA_KNOTS: usize = 64;

pub fn constants(_args: &ConstantsArgs) -> Result<Report, CliError> {
    let mut table = Table::new(vec!["law", "method", "value", "abs_error", "cross_check"]);
    for law in LimitLaw::ALL {
        let c = singularity_constant(law)?;
        table.push(vec![
            law.name().into(),
            c.method.name().into(),
            c.value.into(),
            c.abs_error.into(),
            c.cross_check.map(|e| e.value).into(),
        ]);
    }
    Ok(Report {
        manifest: RunManifest::new("constants", None, json!({})),
        table,
    })
}

fn accuracy(tol: Option<f64>, default: Accuracy) -> Result<Accuracy, CliError> {
    match tol {
        Some(t) => Ok(Accuracy::new(t)?),
        None => Ok(default),
    }
}

fn limit_law(args: &crate::args::DistArgs) -> Result<LimitLaw, CliError> {
    let dist = parse_distribution(args)?;
    LimitLaw::for_distribution(&dist).ok_or_else(|| {
        CliError::Usage(format!(
            "no limit law is implemented for {} entries with this assignment",
            describe(&dist)
        ))
    })
}

fn which_name(w: Which) -> &'static str {
    match w {
        Which::Vmax => "vmax",
        Which::Wmin => "wmin",
        Which::WminDensity => "wmin-density",
        Which::Kappa => "kappa",
    }
}

/// Rows whose status column starts with `error` mark numeric failures.
pub fn limit_cdf(args: &LimitCdfArgs) -> Result<Report, CliError> {
    let law = limit_law(&args.dist)?;
    if args.grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(CliError::Usage("grid must be nondecreasing".into()));
    }
    let default = if args.which == Which::Kappa { Accuracy::KAPPA } else { Accuracy::CDF };
    let acc = accuracy(args.tol, default)?;
    let eval = |t: f64| -> tridiag_spectra::Result<Estimate> {
        match args.which {
            Which::Vmax => vmax_cdf_with(law, t, acc),
            Which::Wmin => wmin_cdf_with(law, t, acc),
            Which::WminDensity => wmin_conditional_density_with(law, t, acc),
            Which::Kappa => kappa_cdf_with(law, t, acc),
        }
    };
    let mut table = Table::new(vec!["argument", "value", "error_estimate", "status"]);
    for &t in &args.grid {
        let row = match eval(t) {
            Ok(e) => vec![t.into(), e.value.into(), e.abs_error.into(), "ok".into()],
            Err(Error::Unsupported(msg)) => vec![t.into(), Cell::Empty, Cell::Empty, format!("unsupported: {msg}").into()],
            Err(e) => vec![t.into(), Cell::Empty, Cell::Empty, format!("error: {e}").into()],
        };
        table.push(row);
    }
    let config = json!({
        "law": law.name(),
        "which": which_name(args.which),
        "grid": args.grid,
        "tol": acc.target,
    });
    Ok(Report {
        manifest: RunManifest::new("limit-cdf", None, config),
        table,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Statistic {
    Lo,
    Hi,
    Kappa,
}

impl Statistic {
    fn name(self) -> &'static str {
        match self {
            Statistic::Lo => "lo",
            Statistic::Hi => "hi",
            Statistic::Kappa => "kappa",
        }
    }
}

/// KS distance of the finite part of `emp` to the limit law of `stat`.
///
/// Discrete laws are evaluated directly. Continuous laws are tabulated at
/// sample quantiles and interpolated linearly between them.
fn reference_ks(law: LimitLaw, stat: Statistic, emp: &EmpiricalCdf, acc: Accuracy) -> Result<Option<f64>, CliError> {
    if emp.finite_count() == 0 || (stat == Statistic::Kappa && law == LimitLaw::RademacherSym) {
        return Ok(None);
    }
    let cdf = |t: f64| match stat {
        Statistic::Lo => wmin_cdf_with(law, t, acc),
        Statistic::Hi => vmax_cdf_with(law, t, acc),
        Statistic::Kappa => kappa_cdf_with(law, t, acc),
    };
    if law.is_discrete() {
        let mut failure = None;
        let d = ks_distance(emp, |t| match cdf(t) {
            Ok(e) => e.value,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        });
        return match failure {
            Some(e) => Err(e.into()),
            None => Ok(d),
        };
    }
    let knots = if stat == Statistic::Kappa { KAPPA_KNOTS } else { EXTREME_KNOTS };
    let mut grid: Vec<f64> = (0..=knots)
        .filter_map(|k| emp.finite_quantile(k as f64 / knots as f64))
        .collect();
    grid.dedup();
    let values = grid
        .par_iter()
        .map(|&t| cdf(t).map(|e| (t, e.value)))
        .collect::<tridiag_spectra::Result<Vec<_>>>()?;
    if values.len() == 1 {
        let (t0, p0) = values[0];
        return Ok(ks_distance(emp, |t| if t < t0 { cdf(t).map_or(f64::NAN, |e| e.value) } else { p0 }));
    }
    let table = TabulatedCdf::new(values)?;
    Ok(ks_distance(emp, |t| table.eval(t)))
}

pub fn simulation_config(args: &SimulateArgs) -> Result<SimulationConfig, CliError> {
    let dist = parse_distribution(&args.dist)?;
    let mut cfg = SimulationConfig::new(dist, args.n.clone(), args.trials, args.seed);
    cfg.backend = match args.backend {
        BackendArg::ClosedForm => Backend::ClosedForm,
        BackendArg::Oracle => Backend::Oracle,
    };
    cfg.threads = args.threads;
    cfg.validate()?;
    Ok(cfg)
}

pub fn simulate(args: &SimulateArgs) -> Result<Report, CliError> {
    let cfg = simulation_config(args)?;
    let law = LimitLaw::for_distribution(&cfg.dist);
    let extremes_acc = accuracy(args.tol, Accuracy::CDF)?;
    let kappa_acc = accuracy(args.tol, Accuracy::KAPPA)?;
    let mut table = Table::new(vec![
        "n",
        "statistic",
        "q01",
        "q05",
        "q25",
        "q50",
        "q75",
        "q95",
        "q99",
        "infinite_fraction",
        "ks",
        "ks_reference",
    ]);
    for &n in &cfg.n_grid {
        let sample = simulate_extremes(&cfg, n)?;
        for (stat, emp) in [
            (Statistic::Lo, &sample.lo),
            (Statistic::Hi, &sample.hi),
            (Statistic::Kappa, &sample.kappa),
        ] {
            let mut row: Vec<Cell> = vec![n.into(), stat.name().into()];
            row.extend(QUANTILES.iter().map(|&p| Cell::from(emp.finite_quantile(p))));
            row.push(emp.infinite_fraction().into());
            let acc = if stat == Statistic::Kappa { kappa_acc } else { extremes_acc };
            let ks = match law {
                Some(l) => with_threads(cfg.threads, || reference_ks(l, stat, emp, acc))??,
                None => None,
            };
            row.push(ks.into());
            row.push(match (law, ks) {
                (Some(l), Some(_)) => Cell::Text(l.name().into()),
                _ => Cell::Empty,
            });
            table.push(row);
        }
    }
    let config = json!({
        "dist": describe(&cfg.dist),
        "assignment": if args.dist.sym { "sym" } else { "nonsym" },
        "n": cfg.n_grid,
        "trials": cfg.trials,
        "backend": match cfg.backend { Backend::ClosedForm => "closed-form", Backend::Oracle => "oracle" },
        "threads": cfg.threads,
        "tol": args.tol,
        "quantiles": QUANTILES,
        "ks_reference": "limit law tabulated at sample quantiles for continuous laws, exact for discrete laws",
    });
    Ok(Report {
        manifest: RunManifest::new("simulate", Some(cfg.seed), config),
        table,
    })
}
