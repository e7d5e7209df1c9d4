use tridiag_spectra::analytic::{
    kappa_cdf, singularity_constant, theorem_joint_cdf, vmax_cdf, wmin_cdf, wmin_conditional_density,
    LimitLaw,
};
use tridiag_spectra::quadrature::integrate_semi_infinite;

fn grid(lo: f64, hi: f64, k: usize) -> impl Iterator<Item = f64> {
    (0..k).map(move |i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
}

#[test]
fn cdfs_are_monotone_and_bounded() {
    for law in LimitLaw::ALL {
        for (name, f) in [("vmax", vmax_cdf as fn(LimitLaw, f64) -> _), ("wmin", wmin_cdf)] {
            let mut prev = 0.0;
            for t in grid(-1.0, 12.0, 100) {
                let v = f(law, t).unwrap().value;
                assert!((-1e-9..=1.0 + 1e-9).contains(&v), "{law} {name}({t}) = {v}");
                assert!(v >= prev - 1e-8, "{law} {name} decreases at {t}: {prev} -> {v}");
                prev = v;
            }
        }
    }
}

#[test]
fn wmin_jump_at_zero_is_singularity_constant() {
    for law in LimitLaw::ALL {
        let c = singularity_constant(law).unwrap().value;
        let below = wmin_cdf(law, -1e-12).unwrap().value;
        let at = wmin_cdf(law, 0.0).unwrap().value;
        assert_eq!(below, 0.0, "{law}");
        assert!((at - c).abs() < 1e-6, "{law}: {at} vs {c}");
    }
}

#[test]
fn conditional_densities_have_unit_mass() {
    for law in [LimitLaw::CauchySym, LimitLaw::GaussianSym, LimitLaw::GaussianNonsym] {
        let f = |w: f64| wmin_conditional_density(law, w).map(|e| e.value).unwrap_or(f64::NAN);
        let mass = integrate_semi_infinite(f, 0.0, 1e-9).unwrap().value;
        assert!((mass - 1.0).abs() < 1e-5, "{law}: {mass}");
    }
}

#[test]
fn kappa_cdf_is_monotone_from_one() {
    for law in [LimitLaw::CauchySym, LimitLaw::GaussianSym, LimitLaw::GaussianNonsym] {
        assert_eq!(kappa_cdf(law, 0.5).unwrap().value, 0.0);
        let mut prev = 0.0;
        for z in [1.0, 1.5, 2.0, 5.0, 20.0, 200.0] {
            let v = kappa_cdf(law, z).unwrap().value;
            assert!(v >= prev - 1e-8 && v <= 1.0 + 1e-9, "{law} {z}: {v}");
            prev = v;
        }
    }
}

#[test]
fn joint_law_marginal_matches_maximum_law() {
    for law in [LimitLaw::GaussianSym, LimitLaw::RademacherNonsym] {
        for y in [1.0, 2.5, 4.0] {
            let joint = theorem_joint_cdf(&law.distribution(), 1e9, y, 40_000, 11).unwrap();
            let exact = vmax_cdf(law, y).unwrap().value;
            assert!((joint - exact).abs() < 0.01, "{law} y={y}: {joint} vs {exact}");
        }
    }
}
