use tridiag_spectra::analytic::{vmax_cdf, LimitLaw};
use tridiag_spectra::montecarlo::{ks_distance, singularity_rate, simulate_extremes, SimulationConfig};
use tridiag_spectra::{EntryDistribution, EntryLaw};

#[test]
fn rademacher_nonsym_is_singular_half_the_time() {
    let cfg = SimulationConfig::new(EntryDistribution::nonsymmetric(EntryLaw::Rademacher), vec![1001], 10_000, 3);
    let rate = singularity_rate(&cfg, 1001, 0.05).unwrap();
    assert!((rate - 0.5).abs() <= 0.02, "{rate}");
}

#[test]
fn gaussian_sym_maximum_matches_limit_law() {
    let cfg = SimulationConfig::new(EntryDistribution::symmetric(EntryLaw::StandardNormal), vec![2000], 10_000, 17);
    let s = simulate_extremes(&cfg, 2000).unwrap();
    let emp = &s.hi;
    let d = ks_distance(emp, |t| vmax_cdf(LimitLaw::GaussianSym, t).unwrap().value).unwrap();
    assert!(d < 0.02, "{d}");
}

#[test]
fn simulation_is_reproducible_across_thread_counts() {
    let mut cfg = SimulationConfig::new(EntryDistribution::nonsymmetric(EntryLaw::StandardCauchy), vec![64], 3_000, 5);
    cfg.threads = Some(1);
    let a = simulate_extremes(&cfg, 64).unwrap();
    cfg.threads = Some(3);
    let b = simulate_extremes(&cfg, 64).unwrap();
    assert_eq!(a.lo, b.lo);
    assert_eq!(a.hi, b.hi);
    assert_eq!(a.kappa, b.kappa);
}
