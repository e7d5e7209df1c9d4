use tridiag_spectra::closedform::{eigenvalues_nonsymmetric, finite_extremes, singular_values_symmetric};
use tridiag_spectra::oracle::{
    assemble, charpoly_residual, eigen_moduli_via_sturm, singular_values_via_gram,
};
use tridiag_spectra::{RealizedTriple, SpectralKind, Triple32, Triple64};

const TRIPLES: [(f64, f64, f64); 6] = [
    (0.3, 1.2, 0.7),
    (-2.0, 0.5, -1.5),
    (1.0, 1.0, 1.0),
    (4.0, -0.25, 3.0),
    (0.0, 2.0, -2.0),
    (-0.7, 0.0, 5.0),
];

#[test]
fn symmetric_singular_values_match_gram_spectrum() {
    for &(x, y, _) in &TRIPLES {
        for n in [1, 2, 3, 8, 25, 60] {
            let t = Triple64::symmetric(x, y).unwrap();
            let closed = singular_values_symmetric(x, y, n).unwrap();
            let oracle = singular_values_via_gram(&assemble(&t, n).unwrap(), 1e-14).unwrap();
            let scale = x.abs() + 2.0 * y.abs() + 1.0;
            // the gram route resolves squares, so tiny singular values carry √ε error
            for (a, b) in closed.iter().zip(&oracle) {
                assert!((a * a - b * b).abs() <= 1e-12 * scale * scale, "x={x} y={y} n={n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn nonsymmetric_moduli_match_sturm_and_charpoly() {
    for &(x, y, z) in &TRIPLES {
        let t = Triple64::new(x, y, z).unwrap();
        for n in [1, 2, 5, 17, 64] {
            let mut closed: Vec<f64> = eigenvalues_nonsymmetric(&t, n).unwrap().iter().map(|l| l.norm()).collect();
            closed.sort_by(f64::total_cmp);
            let scale = x.abs() + 2.0 * (y * z).abs().sqrt() + 1.0;
            let oracle = eigen_moduli_via_sturm(&assemble(&t, n).unwrap(), 1e-15 * scale).unwrap();
            for (a, b) in closed.iter().zip(&oracle) {
                assert!((a - b).abs() <= 1e-12 * scale, "{t:?} n={n}: {a} vs {b}");
            }
            if n <= 17 {
                for l in eigenvalues_nonsymmetric(&t, n).unwrap() {
                    assert!(charpoly_residual(&t, n, l).unwrap() <= 1e-9, "{t:?} n={n} {l}");
                }
            }
        }
    }
}

#[test]
fn extremes_agree_with_full_spectrum() {
    let t = Triple64::new(0.4, -1.1, 0.8).unwrap();
    let e = finite_extremes(&t, 40, SpectralKind::NonsymmetricEigenModulus).unwrap();
    let moduli: Vec<f64> = eigenvalues_nonsymmetric(&t, 40).unwrap().iter().map(|l| l.norm()).collect();
    assert_eq!(e.lo(), moduli.iter().copied().fold(f64::INFINITY, f64::min));
    assert_eq!(e.hi(), moduli.iter().copied().fold(0.0, f64::max));
}

#[test]
fn single_precision_tracks_double() {
    let t32: Triple32 = RealizedTriple::new(0.3, 1.2, 0.7).unwrap();
    let t64 = Triple64::new(0.3, 1.2, 0.7).unwrap();
    let a = finite_extremes(&t32, 30, SpectralKind::NonsymmetricEigenModulus).unwrap();
    let b = finite_extremes(&t64, 30, SpectralKind::NonsymmetricEigenModulus).unwrap();
    assert!((f64::from(a.lo()) - b.lo()).abs() < 1e-5);
    assert!((f64::from(a.hi()) - b.hi()).abs() < 1e-5);
}
