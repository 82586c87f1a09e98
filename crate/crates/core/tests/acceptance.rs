//! Acceptance criteria, one line per criterion.
//!
//! A criterion passes when its check holds and it finishes inside its time budget. Criteria in
//! [`KNOWN_FAILURES`] are still run and reported as `FAIL`, but do not fail the process.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schur_scope::area::QuadSpec;
use schur_scope::bounds::{
    choa_kim_diagnostic, littlewood_paley_check, slit_default_h_list, slit_example_exponent, BoundsConfig, Verifier,
};
use schur_scope::carleson::{pushforward_monte_carlo, rho_with_trace, BoundaryTrace, CenterRes, MONTE_CARLO_SEED};
use schur_scope::corpus::{self, NamedSymbol};
use schur_scope::geometry::{CarlesonWindow, Region};
use schur_scope::nevanlinna::{counting_function, nu, GridSpec};
use schur_scope::orlicz::{compactness_diagnostic, default_h_list, homogeneity_check, OrliczFunction, Verdict};
use schur_scope::poly::Polynomial;
use schur_scope::{Error, SchurMap};

/// Criteria whose statistical check can fail for an exact implementation with the fixed seeds.
const KNOWN_FAILURES: &[u32] = &[9];

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check {
        pass,
        detail: detail.into(),
    }
}

fn random_disk_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

fn gap(map: &SchurMap) -> f64 {
    1.0 - map.at_zero().norm()
}

/// Largest `2^{-k}` strictly below `limit`, followed by `n - 1` halvings.
fn dyadic_below(limit: f64, n: usize) -> Vec<f64> {
    let mut h = 1.0;
    while h >= limit {
        h /= 2.0;
    }
    (0..n).map(|i| h / 2f64.powi(i as i32)).collect()
}

fn closed_form_identity() -> Check {
    let map = corpus::identity();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_n: f64 = 0.0;
    for _ in 0..1000 {
        let w = loop {
            let w = random_disk_point(&mut rng, 1.0);
            if w.norm() > 1e-6 {
                break w;
            }
        };
        let n = counting_function(&map, w).unwrap();
        worst_n = worst_n.max((n - (1.0 / w.norm()).ln()).abs());
    }
    let trace = BoundaryTrace::new(&map, Default::default());
    let mut worst_m: f64 = 0.0;
    for h in [0.01, 0.1, 0.5] {
        for angle in [0.0, 1.0, 4.0] {
            let m = trace.window_mass(&CarlesonWindow::at_angle(angle, h).unwrap()).mass;
            worst_m = worst_m.max((m - h / PI).abs());
        }
    }
    check(
        worst_n <= 1e-10 && worst_m <= 1e-9,
        format!("max |N - log 1/|w|| = {worst_n:.2e}, max |m - h/π| = {worst_m:.2e}"),
    )
}

fn littlewood_paley() -> Check {
    let quad = QuadSpec::default();
    let r = littlewood_paley_check(&corpus::square(), &Polynomial::identity(), &quad).unwrap();
    let square_ok = (r.lhs - 1.0).abs() <= 1e-6 && (r.rhs - 1.0).abs() <= 1e-6;
    let polys = [
        Polynomial::identity(),
        Polynomial::from_real(&[0.0, 0.0, 1.0]),
        Polynomial::from_real(&[0.3, 1.0, 0.5]),
    ];
    let mut worst: f64 = 0.0;
    for s in corpus::standard() {
        for f in &polys {
            worst = worst.max(littlewood_paley_check(&s.map, f, &quad).unwrap().residual);
        }
    }
    check(
        square_ok && worst <= 1e-5,
        format!("z²: lhs {:.9}, rhs {:.9}; max corpus residual {worst:.2e}", r.lhs, r.rhs),
    )
}

fn verifiers() -> Vec<(NamedSymbol, Verifier)> {
    corpus::standard()
        .into_iter()
        .map(|s| {
            let v = Verifier::new(&s.map, BoundsConfig::default());
            (s, v)
        })
        .collect()
}

fn upper_sweep() -> Check {
    let mut count = 0;
    let mut violations = Vec::new();
    let mut min_slack = f64::INFINITY;
    for (s, v) in verifiers() {
        let limit = v.base_gap() / 4.0;
        for i in 0..32 {
            let theta = TAU * (i as f64 + 0.5) / 32.0;
            for j in 0..16 {
                let h = limit * (j as f64 + 0.5) / 16.0;
                let r = v.upper_bound(Complex64::from_polar(1.0 - h, theta)).unwrap();
                count += 1;
                min_slack = min_slack.min(r.slack);
                if !r.pass {
                    violations.push(format!("{} θ={theta:.3} h={h:.4}", s.name));
                }
            }
        }
    }
    check(
        violations.is_empty(),
        format!("{} violations in {count} points, min slack {min_slack:.3e} {violations:?}", violations.len()),
    )
}

fn lower_sweep() -> Check {
    let mut count = 0;
    let mut violations = Vec::new();
    for (s, v) in verifiers() {
        let limit = v.base_gap() / 16.0;
        for i in 0..32 {
            let xi = Complex64::from_polar(1.0, TAU * (i as f64 + 0.25) / 32.0);
            for u in [0.9, 0.5, 0.1, 0.01] {
                let r = v.lower_bound(xi, u * limit).unwrap();
                count += 1;
                if !r.pass {
                    violations.push(format!("{} ξ={xi:.3} h={:.4}", s.name, u * limit));
                }
            }
        }
    }
    check(violations.is_empty(), format!("{} violations in {count} windows {violations:?}", violations.len()))
}

fn preparatory_lemma() -> Check {
    let vs = verifiers();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut accepted = 0;
    let mut draws = 0;
    let mut violations = Vec::new();
    while accepted < 10_000 && draws < 2_000_000 {
        draws += 1;
        let (s, v) = &vs[rng.gen_range(0..vs.len())];
        let z = Complex64::from_polar(1.0 - 0.3 * rng.gen::<f64>().powi(2), rng.gen_range(0.0..TAU));
        let w = s.map.evaluate(z).unwrap();
        let h = 1.0 - w.norm();
        if !(h > 0.0 && h <= 0.25) {
            continue;
        }
        accepted += 1;
        let r = v.preparatory_lemma(z).unwrap();
        if !r.pass {
            violations.push(format!("{} z={z:.4}", s.name));
        }
    }
    check(
        accepted == 10_000 && violations.is_empty(),
        format!("{} violations in {accepted} samples ({draws} draws) {violations:?}", violations.len()),
    )
}

fn band(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(0.0, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

fn worked_example() -> Check {
    let map = corpus::lens();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let u = loop {
            let u = random_disk_point(&mut rng, 1.0);
            if u.norm() > 1e-6 {
                break u;
            }
        };
        let w = 0.5 + 0.5 * u;
        let expected = (1.0 / (2.0 * w - 1.0).norm()).ln();
        worst = worst.max((counting_function(&map, w).unwrap() - expected).abs());
    }
    let hs: Vec<f64> = (4..=14).map(|k| 2f64.powi(-k)).collect();
    let trace = BoundaryTrace::new(&map, Default::default());
    let rho_over_h: Vec<f64> = hs
        .iter()
        .map(|&h| rho_with_trace(&trace, h, CenterRes::default()).unwrap().value / h)
        .collect();
    let nu_over_h: Vec<f64> = hs.iter().map(|&h| nu(&map, h, GridSpec::default()).unwrap().value / h).collect();
    let (rho_band, nu_band) = (band(&rho_over_h), band(&nu_over_h));
    let mut exponents = Vec::new();
    let mut slit_ok = true;
    for alpha in [1.0, 1.5, 2.0] {
        let fit = slit_example_exponent(alpha, &slit_default_h_list()).unwrap();
        slit_ok &= (fit.alpha_hat - alpha).abs() <= 0.1 * alpha;
        exponents.push(format!("{alpha}→{:.3}", fit.alpha_hat));
    }
    check(
        worst <= 1e-10 && rho_band <= 4.0 && nu_band <= 4.0 && slit_ok,
        format!(
            "max |N - log 1/|2w-1|| = {worst:.2e}; ρ/h band {rho_band:.3}, ν/h band {nu_band:.3}; slit {}",
            exponents.join(", ")
        ),
    )
}

fn homogeneity() -> Check {
    let eps = [0.5, 0.25, 0.125];
    let mut worst: f64 = 0.0;
    let mut identity_k = Vec::new();
    let mut vacuous = Vec::new();
    for s in corpus::standard() {
        for t in dyadic_below(gap(&s.map) / 64.0, 3) {
            match homogeneity_check(&s.map, t, &eps, GridSpec::default()) {
                Ok(r) => {
                    worst = worst.max(r.k_hat);
                    if s.name == "identity" {
                        identity_k.push(r.k_hat);
                    }
                }
                Err(Error::ZeroMaximal { .. }) => vacuous.push(s.name),
                Err(e) => return check(false, format!("{}: {e}", s.name)),
            }
        }
    }
    vacuous.dedup();
    let identity_ok = !identity_k.is_empty() && identity_k.iter().all(|k| (0.9..=1.1).contains(k));
    check(
        worst.is_finite() && worst <= 16.0 && identity_ok,
        format!("max K_hat {worst:.4}; identity {identity_k:.4?}; vacuous for {vacuous:?}"),
    )
}

fn compactness() -> Check {
    let psi = OrliczFunction::power(2.0).unwrap();
    let hs = default_h_list();
    let cases = [
        ("half", corpus::half(), Verdict::CompactConsistent),
        ("lens", corpus::lens(), Verdict::NoncompactConsistent),
        ("square", corpus::square(), Verdict::NoncompactConsistent),
        ("moebius", corpus::moebius(), Verdict::NoncompactConsistent),
    ];
    let mut ok = true;
    let mut seen = Vec::new();
    for (name, map, expected) in cases {
        let a = compactness_diagnostic(&map, &psi, &hs, GridSpec::default()).unwrap();
        let b = compactness_diagnostic(&map, &psi, &hs, GridSpec::default()).unwrap();
        ok &= a.verdict == expected && a == b;
        seen.push(format!("{name}: {}", a.verdict.as_str()));
    }
    check(ok, seen.join(", "))
}

fn involution(a: Complex64, u: Complex64) -> Complex64 {
    (a - u) / (1.0 - a.conj() * u)
}

fn oracle_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(MONTE_CARLO_SEED);
    let n = 1_000_000;
    let mut max_z: f64 = 0.0;
    let mut worst_window = String::new();
    let mut beyond = 0;
    for s in corpus::standard() {
        let trace = BoundaryTrace::new(&s.map, Default::default());
        let regions: Vec<Region> = (0..20)
            .map(|_| {
                CarlesonWindow::at_angle(rng.gen_range(0.0..TAU), rng.gen_range(0.01..1.0))
                    .unwrap()
                    .into()
            })
            .collect();
        let mc = pushforward_monte_carlo(&s.map, &regions, n, MONTE_CARLO_SEED);
        for (region, estimate) in regions.iter().zip(mc) {
            let exact = trace.region_mass(region).mass;
            let se = (exact * (1.0 - exact) / n as f64).sqrt();
            let z = if se > 0.0 {
                (estimate.mass - exact).abs() / se
            } else if estimate.mass == exact {
                0.0
            } else {
                f64::INFINITY
            };
            if z > 3.0 {
                beyond += 1;
            }
            if z > max_z {
                max_z = z;
                worst_window = format!("{} {region:?}", s.name);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let symbols = corpus::standard();
    let mut worst_conj: f64 = 0.0;
    let mut done = 0;
    while done < 500 {
        let phi = &symbols[done % symbols.len()].map;
        let a = random_disk_point(&mut rng, 0.9);
        let w = random_disk_point(&mut rng, 0.99);
        if (w - phi.at_zero()).norm() < 1e-6 {
            continue;
        }
        done += 1;
        let composed = SchurMap::compose(SchurMap::involution(a).unwrap(), phi.clone()).unwrap();
        let lhs = counting_function(&composed, involution(a, w)).unwrap();
        worst_conj = worst_conj.max((lhs - counting_function(phi, w).unwrap()).abs());
    }
    check(
        max_z <= 3.0 && worst_conj <= 1e-8,
        format!(
            "{beyond}/180 windows beyond 3σ, max z {max_z:.3} at {worst_window}; max conjugation error {worst_conj:.2e}"
        ),
    )
}

fn choa_kim() -> Check {
    let r = choa_kim_diagnostic(&corpus::identity(), Complex64::new(0.9, 0.0), &QuadSpec::default()).unwrap();
    let expected = 1.0 / (1.0 - 0.81);
    let err = (r.kernel_integral - expected).abs();
    check(
        err <= 1e-6 && r.exceeds_bound,
        format!(
            "kernel integral {:.9} (error {err:.2e}); N = {:.6} vs bound {:.6}, flagged {}",
            r.kernel_integral, r.n_value, r.bound, r.exceeds_bound
        ),
    )
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "closed forms for the identity", budget: secs(5), run: closed_form_identity },
        Criterion { id: 2, name: "Littlewood-Paley identity", budget: secs(60), run: littlewood_paley },
        Criterion { id: 3, name: "upper bound sweep", budget: secs(180), run: upper_sweep },
        Criterion { id: 4, name: "lower bound sweep", budget: secs(180), run: lower_sweep },
        Criterion { id: 5, name: "preparatory lemma", budget: secs(120), run: preparatory_lemma },
        Criterion { id: 6, name: "(1+z)/2 and slit examples", budget: secs(120), run: worked_example },
        Criterion { id: 7, name: "homogeneity", budget: secs(120), run: homogeneity },
        Criterion { id: 8, name: "compactness verdicts", budget: secs(60), run: compactness },
        Criterion { id: 9, name: "oracle agreement", budget: secs(180), run: oracle_agreement },
        Criterion { id: 10, name: "Choa-Kim diagnostic", budget: secs(5), run: choa_kim },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let pass = result.pass && in_time;
        let known = KNOWN_FAILURES.contains(&c.id);
        let tag = match (pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        if !pass && !known {
            unexpected += 1;
        }
        let timing = if in_time { "" } else { " over budget" };
        println!(
            "{tag:<12} {:>2} {:<34} {:>7.2}s / {:>3}s{timing}  {}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            result.detail
        );
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
