//! Finite-order simulation of random tridiagonal Toeplitz spectra.
//!
//! Trial `i` of a run seeded with `s` draws its triple from its own ChaCha
//! stream `(s, i)`, and per-trial results are collected in trial order, so
//! every output is identical for any number of worker threads.

mod empirical;
mod sampling;

use rayon::prelude::*;

pub use empirical::{ks_distance, ks_two_sample, EmpiricalCdf, TabulatedCdf};
pub use sampling::{sample_triple, trial_rng};

use crate::closedform::{finite_extremes, limit_extremes};
use crate::domain::{EntryDistribution, Horizon, RealizedTriple, SpectralExtremes};
use crate::error::{Error, Result};
use crate::oracle::{assemble, eigen_moduli_via_sturm};

/// Largest trial count per simulation cell; all samples are kept in memory.
pub const MAX_TRIALS: usize = 10_000_000;

/// Largest order accepted by the oracle backend.
pub const MAX_ORACLE_ORDER: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Cosine-grid closed form, `O(n)` per trial.
    ClosedForm,
    /// Sturm bisection on the assembled matrix, `O(n²)` per trial.
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub dist: EntryDistribution,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub backend: Backend,
    /// Worker cap; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SimulationConfig {
    pub fn new(dist: EntryDistribution, n_grid: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            dist,
            n_grid,
            trials,
            seed,
            backend: Backend::ClosedForm,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(Error::InvalidConfig("n grid is empty".into()));
        }
        if let Some(&n) = self.n_grid.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidOrder(n));
        }
        if self.trials == 0 || self.trials > MAX_TRIALS {
            return Err(Error::InvalidConfig(format!(
                "trials must be in 1..={MAX_TRIALS}, got {}",
                self.trials
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig("threads must be positive".into()));
        }
        let max_n = self.n_grid.iter().copied().max().unwrap_or(0);
        if self.backend == Backend::Oracle && max_n > MAX_ORACLE_ORDER {
            return Err(Error::OrderTooLarge {
                order: max_n,
                max: MAX_ORACLE_ORDER,
            });
        }
        Ok(())
    }
}

/// Runs `f` on a pool capped at `threads` workers, or on the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// One trial: its triple, finite-order extremes and limit extremes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub triple: RealizedTriple<f64>,
    pub finite: SpectralExtremes<f64>,
    pub limit: SpectralExtremes<f64>,
}

fn oracle_extremes(t: &RealizedTriple<f64>, n: usize, cfg: &SimulationConfig) -> Result<SpectralExtremes<f64>> {
    let m = assemble(t, n)?;
    let scale = t.x().abs() + 2.0 * (t.y().abs().sqrt() * t.z().abs().sqrt()) + f64::MIN_POSITIVE;
    let moduli = eigen_moduli_via_sturm(&m, 1e-15 * scale)?;
    let kind = cfg.dist.assignment.spectral_kind();
    SpectralExtremes::new(moduli[0], moduli[n - 1], kind, Horizon::FiniteN(n))
}

fn run_trial(cfg: &SimulationConfig, n: usize, index: usize) -> Result<TrialRecord> {
    let triple = sample_triple(&cfg.dist, &mut trial_rng(cfg.seed, index as u64));
    let kind = cfg.dist.assignment.spectral_kind();
    let finite = match cfg.backend {
        Backend::ClosedForm => finite_extremes(&triple, n, kind)?,
        Backend::Oracle => oracle_extremes(&triple, n, cfg)?,
    };
    let limit = limit_extremes(&triple, kind)?;
    Ok(TrialRecord { triple, finite, limit })
}

/// Every trial of `cfg` at order `n`, in trial order.
pub fn simulate_trials(cfg: &SimulationConfig, n: usize) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if cfg.backend == Backend::Oracle && n > MAX_ORACLE_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: MAX_ORACLE_ORDER,
        });
    }
    with_threads(cfg.threads, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| run_trial(cfg, n, i))
            .collect::<Result<Vec<_>>>()
    })?
}

/// Empirical laws of the smallest extreme, largest extreme and condition
/// number at one order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremesSample {
    pub n: usize,
    pub lo: EmpiricalCdf,
    pub hi: EmpiricalCdf,
    pub kappa: EmpiricalCdf,
}

pub fn simulate_extremes(cfg: &SimulationConfig, n: usize) -> Result<ExtremesSample> {
    if !cfg.n_grid.contains(&n) {
        return Err(Error::InvalidConfig(format!("order {n} is not in the configured grid")));
    }
    let trials = simulate_trials(cfg, n)?;
    let lo = trials.iter().map(|r| r.finite.lo()).collect();
    let hi = trials.iter().map(|r| r.finite.hi()).collect();
    let kappa = trials.iter().map(|r| r.finite.condition_number().to_float()).collect();
    Ok(ExtremesSample {
        n,
        lo: EmpiricalCdf::from_samples(lo)?,
        hi: EmpiricalCdf::from_samples(hi)?,
        kappa: EmpiricalCdf::from_samples(kappa)?,
    })
}

/// Default threshold for counting a finite-order minimum as zero.
///
/// The zero of the line sits between cosine nodes spaced `O(1/n)` apart, so
/// `lo_n` is `O(1/n)` on the singular event; `c/√n` separates it from the
/// nonsingular mass near zero, which shrinks with the threshold.
pub fn default_threshold(n: usize) -> f64 {
    0.25 / (n as f64).sqrt()
}

/// Fraction of trials at order `n` with `lo_n ≤ threshold`.
pub fn singularity_rate(cfg: &SimulationConfig, n: usize, threshold: f64) -> Result<f64> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidConfig(format!("threshold must be positive, got {threshold}")));
    }
    let trials = simulate_trials(cfg, n)?;
    let hits = trials.iter().filter(|r| r.finite.lo() <= threshold).count();
    Ok(hits as f64 / trials.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub median_lo_gap: f64,
    pub median_hi_gap: f64,
    /// Two-sample KS distance between finite-order and limit minima.
    pub ks_lo: f64,
    /// Two-sample KS distance between finite-order and limit maxima.
    pub ks_hi: f64,
}

/// Per-order gaps between each trial's finite-order and limit extremes.
///
/// Every order reuses the same triples, so rows differ only through `n`.
pub fn convergence_table(cfg: &SimulationConfig) -> Result<Vec<ConvergenceRow>> {
    cfg.validate()?;
    if cfg.n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("n grid must be strictly increasing".into()));
    }
    let mut rows = Vec::with_capacity(cfg.n_grid.len());
    for &n in &cfg.n_grid {
        let trials = simulate_trials(cfg, n)?;
        let gaps = |f: fn(&SpectralExtremes<f64>) -> f64| -> Result<EmpiricalCdf> {
            EmpiricalCdf::from_samples(trials.iter().map(|r| (f(&r.finite) - f(&r.limit)).abs()).collect())
        };
        let sample = |pick: fn(&TrialRecord) -> f64| EmpiricalCdf::from_samples(trials.iter().map(pick).collect());
        let ks_lo = ks_two_sample(&sample(|r| r.finite.lo())?, &sample(|r| r.limit.lo())?).unwrap_or(0.0);
        let ks_hi = ks_two_sample(&sample(|r| r.finite.hi())?, &sample(|r| r.limit.hi())?).unwrap_or(0.0);
        rows.push(ConvergenceRow {
            n,
            median_lo_gap: gaps(SpectralExtremes::lo)?.median(),
            median_hi_gap: gaps(SpectralExtremes::hi)?.median(),
            ks_lo,
            ks_hi,
        });
    }
    Ok(rows)
}
