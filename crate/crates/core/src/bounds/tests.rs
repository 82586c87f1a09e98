use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::corpus;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn test_polys() -> [Polynomial; 3] {
    [
        Polynomial::identity(),
        Polynomial::from_real(&[0.0, 0.0, 1.0]),
        Polynomial::from_real(&[0.0, 1.0, 0.5]),
    ]
}

#[test]
fn littlewood_paley_examples() {
    let quad = QuadSpec::default();
    let r = littlewood_paley_check(&corpus::square(), &Polynomial::identity(), &quad).unwrap();
    assert!((r.lhs - 1.0).abs() < 1e-12);
    assert!((r.rhs - 1.0).abs() < 1e-6, "{r:?}");
    let r = littlewood_paley_check(&corpus::identity(), &Polynomial::identity(), &quad).unwrap();
    assert!((r.rhs - 1.0).abs() < 1e-6, "{r:?}");
    let r = littlewood_paley_check(&corpus::half(), &Polynomial::identity(), &quad).unwrap();
    assert!((r.lhs - 0.25).abs() < 1e-12);
    assert!((r.rhs - 0.25).abs() < 0.25e-6, "{r:?}");
}

#[test]
fn littlewood_paley_closed_forms_for_the_identity() {
    // ‖f‖² = Σ|c_k|²: z² gives 1, z + z²/2 gives 5/4
    let quad = QuadSpec::default();
    let polys = test_polys();
    for (f, expected) in polys.iter().zip([1.0, 1.0, 1.25]) {
        let r = littlewood_paley_check(&corpus::identity(), f, &quad).unwrap();
        assert!((r.lhs - expected).abs() < 1e-12, "{f:?}");
        assert!((r.rhs - expected).abs() < 1e-6 * expected, "{f:?}: {r:?}");
    }
}

#[test]
fn stanton_examples() {
    let quad = QuadSpec::default();
    let g = Subharmonic::SquareModulus;
    let r = stanton_check(&corpus::square(), &g, &quad).unwrap();
    assert!((r.lhs - 1.0).abs() < 1e-12 && r.residual <= 1e-6, "{r:?}");
    let r = stanton_check(&corpus::half(), &g, &quad).unwrap();
    assert!((r.lhs - 0.25).abs() < 1e-12 && r.residual <= 1e-6, "{r:?}");
    // mean of cos²(θ/2) is 1/2
    let r = stanton_check(&corpus::lens(), &g, &quad).unwrap();
    assert!((r.lhs - 0.5).abs() < 1e-12, "{r:?}");
    assert!((r.rhs - 0.5).abs() < 0.5e-6, "{r:?}");
}

#[test]
fn identities_hold_across_the_corpus() {
    let quad = QuadSpec::default();
    for s in corpus::standard() {
        for f in test_polys() {
            let r = littlewood_paley_check(&s.map, &f, &quad).unwrap();
            assert!(r.residual <= 1e-5, "{} {f:?}: {r:?}", s.name);
        }
    }
}

#[test]
fn choa_kim_reproduces_the_discrepancy() {
    let quad = QuadSpec::default();
    let r = choa_kim_diagnostic(&corpus::identity(), c(0.9, 0.0), &quad).unwrap();
    assert!((r.n_value - (1.0 / 0.9f64).ln()).abs() < 1e-12);
    assert!((r.kernel_integral - 1.0 / 0.19).abs() < 1e-6, "{r:?}");
    assert!(r.exceeds_bound);
    assert!(r.best_constant > 1.0 / 8.0);

    let r = choa_kim_diagnostic(&corpus::half(), c(0.9, 0.0), &quad).unwrap();
    assert_eq!(r.n_value, 0.0);
    assert!(r.bound > 0.0 && !r.exceeds_bound);

    // z² is inner with φ(0) = 0, so it preserves m and the kernel mean is 1/(1 - |w|²)
    let r = choa_kim_diagnostic(&corpus::square(), c(0.81, 0.0), &quad).unwrap();
    assert!((r.n_value - 2.0 * (1.0 / 0.9f64).ln()).abs() < 1e-10);
    assert!((r.kernel_integral - 1.0 / (1.0 - 0.81 * 0.81)).abs() < 1e-8, "{r:?}");

    assert!(choa_kim_diagnostic(&corpus::identity(), c(0.4, 0.0), &quad).is_err());
    assert!(matches!(
        choa_kim_diagnostic(&corpus::lens(), c(0.5, 0.0), &quad),
        Err(Error::Precondition(_))
    ));
    let off_center = SchurMap::polynomial_real(&[0.7, 0.2]).unwrap();
    assert!(matches!(
        choa_kim_diagnostic(&off_center, c(0.7, 0.0), &quad),
        Err(Error::BasePoint { .. })
    ));
}

#[test]
fn upper_bound_examples() {
    let r = upper_bound_check(&corpus::identity(), c(0.99, 0.0)).unwrap();
    assert!((r.lhs - (1.0 / 0.99f64).ln()).abs() < 1e-12);
    assert!((r.rhs - 196.0 * 0.12 / PI).abs() < 1e-8, "{r:?}");
    assert!(r.pass);
    let r = upper_bound_check(&corpus::half(), c(0.9, 0.0)).unwrap();
    assert_eq!(r.lhs, 0.0);
    assert!(r.pass);
    let r = upper_bound_check(&corpus::lens(), c(0.99, 0.0)).unwrap();
    assert!((r.lhs - (1.0 / 0.98f64).ln()).abs() < 1e-12);
    assert!(r.pass && r.params["h"] > 0.0);
    assert!(upper_bound_check(&corpus::lens(), c(0.8, 0.0)).is_err());
    assert!(upper_bound_check(&corpus::identity(), c(0.0, 0.0)).is_err());
}

#[test]
fn window_sup_upper_examples() {
    let r = window_sup_upper_check(&corpus::identity(), ONE, 0.01).unwrap();
    assert!((r.lhs - (1.0 / 0.99f64).ln()).abs() < 1e-9, "{r:?}");
    assert!((r.rhs - 196.0 * 0.24 / PI).abs() < 1e-8);
    assert!(r.pass);
    let r = window_sup_upper_check(&corpus::square(), ONE, 0.01).unwrap();
    assert!((r.lhs - (1.0 / 0.99f64).ln()).abs() < 1e-9, "{r:?}");
    assert!(r.pass);
    let r = window_sup_upper_check(&corpus::half(), ONE, 0.05).unwrap();
    assert_eq!(r.lhs, 0.0);
    assert!(r.pass);
    assert!(window_sup_upper_check(&corpus::identity(), ONE, 0.3).is_err());
}

#[test]
fn lower_bound_examples() {
    let r = lower_bound_check(&corpus::identity(), ONE, 0.01).unwrap();
    assert!((r.lhs - 0.01 / PI).abs() < 1e-12);
    assert!((r.rhs - 64.0 * (1.0 / 0.36f64).ln()).abs() < 1e-6, "{r:?}");
    assert!(r.pass);
    let r = lower_bound_check(&corpus::lens(), ONE, 0.001).unwrap();
    assert!(r.pass && r.lhs > 0.0, "{r:?}");
    let r = lower_bound_check(&corpus::half(), ONE, 0.02).unwrap();
    assert_eq!(r.lhs, 0.0);
    assert!(r.pass);
    assert!(lower_bound_check(&corpus::lens(), ONE, 0.04).is_err());
}

/// Mean of `N_φ` over `S(ξ, h) ∩ 𝔻` by rejection sampling in the bounding square.
fn monte_carlo_sector_mean(map: &SchurMap, xi: Complex64, h: f64, n: usize) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let sector = DiskSector::new(xi, h).unwrap();
    let mut values = Vec::with_capacity(n);
    while values.len() < n {
        let z = xi + c(rng.gen_range(-h..h), rng.gen_range(-h..h));
        if z.norm() < 1.0 && sector.contains(z) {
            values.push(counting_function(map, z).unwrap_or(0.0));
        }
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

#[test]
fn average_bound_examples() {
    let quad = QuadSpec::default();
    let r = average_bound_check(&corpus::identity(), ONE, 0.01, &quad).unwrap();
    assert!(r.pass && r.slack > 0.0);
    let (mean, se) = monte_carlo_sector_mean(&corpus::identity(), ONE, 0.17, 200_000);
    let computed = r.params["integral"] / r.params["area"];
    assert!((computed - mean).abs() <= 4.0 * se, "{computed} vs {mean} ± {se}");
    let exact_lhs = 2.0 * (0.005f64).asin() / PI;
    assert!((r.lhs - exact_lhs).abs() < 1e-12);

    let r = average_bound_check(&corpus::square(), ONE, 0.01, &quad).unwrap();
    assert!(r.pass);
    let r = average_bound_check(&corpus::half(), ONE, 0.05, &quad).unwrap();
    assert_eq!(r.lhs, 0.0);
    assert!(r.pass);
    assert!(average_bound_check(&corpus::identity(), ONE, 0.2, &quad).is_err());
}

#[test]
fn preparatory_lemma_examples() {
    let v = Verifier::new(&corpus::identity(), BoundsConfig::default());
    // z = w: S(1, 6h) captures the arc |θ| ≤ 2 asin(3h), far above h/8
    let r = v.preparatory_lemma(c(0.9, 0.0)).unwrap();
    assert!((r.lhs - 0.9 / 8.0 * 0.1).abs() < 1e-15);
    assert!((r.rhs - 2.0 * (0.3f64).asin() / PI).abs() < 1e-12, "{r:?}");
    assert!(r.pass);
    assert!(v.preparatory_lemma(c(0.5, 0.0)).is_err());
    assert!(v.preparatory_lemma(c(1.0, 0.0)).is_err());
}

#[test]
fn base_point_lemma_examples() {
    for s in corpus::standard() {
        let v = Verifier::new(&s.map, BoundsConfig::default());
        let limit = v.base_gap() / 4.0;
        let a = Complex64::from_polar(1.0 - 0.99 * limit, 1.0);
        assert!(v.base_point_lemma(a).unwrap().pass, "{}", s.name);
    }
}

#[test]
fn equivalence_sweep_identity() {
    let hs: Vec<f64> = (5..=10).map(|k| 2f64.powi(-k)).collect();
    let rows = equivalence_sweep(&corpus::identity(), &hs).unwrap();
    assert_eq!(rows.len(), hs.len());
    for (row, &h) in rows.iter().zip(&hs) {
        assert_eq!(row.h, h);
        assert!((row.rho - h / PI).abs() < 1e-9, "{row:?}");
        assert!((row.nu - (1.0 / (1.0 - h)).ln()).abs() < 1e-9, "{row:?}");
        assert!(row.pass());
    }
    assert!(rows.windows(2).all(|p| p[0].nu >= p[1].nu));
    assert!(equivalence_sweep(&corpus::identity(), &[0.0625]).is_err());
}

#[test]
fn equivalence_sweep_lens_and_half() {
    let hs: Vec<f64> = (6..=10).map(|k| 2f64.powi(-k)).collect();
    let rows = equivalence_sweep(&corpus::lens(), &hs).unwrap();
    for row in &rows {
        assert!(row.pass(), "{row:?}");
        // ν = log 1/(1-2h) for this map, attained at w = 1 - h
        assert!((row.nu - (1.0 / (1.0 - 2.0 * row.h)).ln()).abs() < 1e-9, "{row:?}");
        assert!(row.rho / row.h > 0.25 && row.rho / row.h < 4.0, "{row:?}");
    }
    let rows = equivalence_sweep(&corpus::half(), &[0.01]).unwrap();
    assert_eq!((rows[0].rho, rows[0].nu), (0.0, 0.0));
    assert_eq!(rows[0].ratio_up, Some(0.0));
    assert!(rows[0].pass());
}

/// `N = log 1/(1 - 2s)` with `s` solving the scale relation, fitted independently.
fn slit_oracle(alpha: f64, hs: &[f64]) -> f64 {
    let points: Vec<(f64, f64)> = hs
        .iter()
        .map(|&h| {
            let f = |s: f64| s.powf(1.0 / alpha) / 4.0 + 2.0 * s - h;
            let (mut lo, mut hi) = (0.0f64, 0.5f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f(mid) < 0.0 {
                    lo = mid
                } else {
                    hi = mid
                }
            }
            (h.ln(), (-(1.0 - 2.0 * lo).ln()).ln())
        })
        .collect();
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn slit_exponents() {
    let hs = slit_default_h_list();
    for alpha in [1.0, 1.5, 2.0] {
        let fit = slit_example_exponent(alpha, &hs).unwrap();
        assert!((fit.alpha_hat - alpha).abs() <= 0.1 * alpha, "{fit:?}");
        assert!((fit.alpha_hat - slit_oracle(alpha, &hs)).abs() < 1e-6, "{fit:?}");
        for p in &fit.points {
            assert!((p.n_value - (1.0 / (2.0 * p.w - 1.0).norm()).ln()).abs() < 1e-12 * p.n_value.max(1e-3));
        }
    }
    assert!(slit_example_exponent(0.5, &hs).is_err());
    assert!(slit_example_exponent(1.0, &hs[..1]).is_err());
}

#[test]
fn constants_are_configurable() {
    let tight = BoundsConfig {
        constants: Constants {
            upper: 1e-6,
            ..Constants::default()
        },
        ..BoundsConfig::default()
    };
    let v = Verifier::new(&corpus::identity(), tight);
    assert!(!v.upper_bound(c(0.99, 0.0)).unwrap().pass);
    assert_eq!(Constants::default().average, 36992.0);
}

#[test]
fn records_serialize_with_params() {
    let r = upper_bound_check(&corpus::identity(), c(0.0, 0.99)).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    let back: InequalityRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    assert_eq!(r.params["a_im"], 0.99);
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0usize..9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn upper_bound_never_violated(idx in corpus_index(), angle in 0.0..TAU, u in 0.001..0.999f64) {
        let s = &corpus::standard()[idx];
        let v = Verifier::new(&s.map, BoundsConfig::default());
        let a = Complex64::from_polar(1.0 - u * v.base_gap() / 4.0, angle);
        let r = v.upper_bound(a).unwrap();
        prop_assert!(r.pass, "{}: {r:?}", s.name);
        prop_assert_eq!(r.slack, r.rhs - r.lhs);
    }

    #[test]
    fn preparatory_lemma_never_violated(idx in corpus_index(), angle in 0.0..TAU, u in 0.0..1.0f64) {
        let s = &corpus::standard()[idx];
        let v = Verifier::new(&s.map, BoundsConfig::default());
        let z = Complex64::from_polar(1.0 - 0.2 * u * u, angle);
        if let Ok(r) = v.preparatory_lemma(z) {
            prop_assert!(r.pass, "{}: {r:?}", s.name);
        }
    }

    #[test]
    fn rotation_leaves_identity_residuals_small(alpha in 0.0..TAU, idx in corpus_index()) {
        let s = &corpus::standard()[idx];
        let r = stanton_check(&s.map.rotated(alpha).unwrap(), &Subharmonic::SquareModulus, &QuadSpec::default()).unwrap();
        prop_assert!(r.residual <= 1e-5, "{}: {r:?}", s.name);
    }
}
