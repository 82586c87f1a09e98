use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use schur_scope::area::QuadSpec;
use schur_scope::bounds::{
    stanton_check, BoundsConfig, EquivalenceRow, InequalityRecord, Subharmonic, Verifier,
};
use schur_scope::carleson::{carleson_exponent_fit, pushforward_monte_carlo, rho_with_trace, CenterRes};
use schur_scope::geometry::{containment_selftest, kernel_lemma_margin, CarlesonWindow, Region};
use schur_scope::nevanlinna::{nu, nu_window, preimages, subaveraging_check};
use schur_scope::orlicz::{self, compactness_diagnostic, homogeneity_check, OrliczFunction};
use schur_scope::poly::Polynomial;
use schur_scope::tolerances::{TOL_ROOT, TOL_SELFMAP};
use schur_scope::{bounds, Error, SchurMap};

use crate::report::{num, num_u64, sig17, Report, Row, Status};
use crate::{CarlesonArgs, Command, Common, CompactnessArgs, Failure, Format, EXIT_FAIL, EXIT_PASS, EXIT_SOLVER};

/// Identity residuals pass at this multiple of the quadrature tolerance.
pub const IDENTITY_SLACK: f64 = 10.0;
/// Largest admissible homogeneity constant.
pub const K_MAX: f64 = 16.0;

pub enum Body {
    Report(Report),
    Text(String),
}

pub struct Outcome {
    pub body: Body,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub solver_error: bool,
    pub failed: bool,
}

impl Outcome {
    fn report(report: Report, common: &Common, solver_error: bool) -> Self {
        let failed = report.summary().n_fail > 0;
        Outcome {
            body: Body::Report(report),
            out: common.out.clone(),
            format: common.format,
            solver_error,
            failed,
        }
    }

    pub fn render(&self) -> String {
        match (&self.body, self.format) {
            (Body::Report(r), Format::Json) => r.to_json(),
            (Body::Report(r), Format::Csv) => r.to_csv(),
            (Body::Text(t), _) => t.clone(),
        }
    }

    pub fn write(&self) -> Result<(), Failure> {
        let text = self.render();
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.solver_error {
            EXIT_SOLVER
        } else if self.failed {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }
}

pub fn dispatch(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate(c) => validate(c),
        Command::Nevanlinna(c) => nevanlinna(c),
        Command::Carleson(a) => carleson(a),
        Command::Verify(c) => verify(c),
        Command::Compactness(a) => compactness(a),
        Command::Plotdata(c) => plotdata(c),
    }
}

/// Named symbol text from `--symbol` or every `*.json` under `--corpus`, in name order.
fn sources(common: &Common) -> Result<Vec<(String, String)>, Failure> {
    let mut files: Vec<PathBuf> = Vec::new();
    if let Some(p) = &common.symbol {
        files.push(p.clone());
    }
    if let Some(dir) = &common.corpus {
        let entries = std::fs::read_dir(dir).map_err(|e| Failure::config(format!("{}: {e}", dir.display())))?;
        let mut found: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        found.sort();
        files.extend(found);
    }
    if common.symbol.is_none() && common.corpus.is_none() {
        return Err(Failure::config("one of --symbol or --corpus is required"));
    }
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|e| Failure::config(format!("{}: {e}", p.display())))?;
            Ok((symbol_name(&p), text))
        })
        .collect()
}

fn symbol_name(p: &Path) -> String {
    p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn parse(name: &str, text: &str) -> Result<SchurMap, Failure> {
    SchurMap::parse_json(text).map_err(|e| Failure::config(format!("{name}: {e}")))
}

/// Parsed and certified symbols; a non-self-map is a configuration error.
fn certified_symbols(common: &Common) -> Result<Vec<(String, SchurMap)>, Failure> {
    sources(common)?
        .into_iter()
        .map(|(name, text)| {
            let map = parse(&name, &text)?.certified().map_err(|e| Failure::config(format!("{name}: {e}")))?;
            Ok((name, map))
        })
        .collect()
}

fn single_symbol(common: &Common) -> Result<(String, SchurMap), Failure> {
    let mut all = certified_symbols(common)?;
    if all.len() != 1 {
        return Err(Failure::config("this command takes exactly one symbol"));
    }
    Ok(all.remove(0))
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let value = |t: &str| t.parse::<f64>().map_err(|_| Failure::config(format!("--w {s}: expected re,im")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(value(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(value(re)?, value(im)?)),
        _ => Err(Failure::config(format!("--w {s}: expected re,im"))),
    }
}

/// `2^{-k}, …, 2^{-k-n+1}` with `2^{-k}` the largest dyadic scale strictly below `limit`.
pub fn dyadic_below(limit: f64, n: usize) -> Vec<f64> {
    let mut h = 1.0;
    while h >= limit {
        h /= 2.0;
    }
    (0..n).map(|i| h / 2f64.powi(i as i32)).collect()
}

fn error_row(symbol: &str, check: &str, e: &Error, solver: &mut bool) -> Row {
    let status = match e {
        Error::Solver { .. } | Error::Degenerate => {
            *solver = true;
            Status::Fail
        }
        _ => Status::Warn,
    };
    Row::new(symbol, check, status).message(e.to_string())
}

fn record_row(symbol: &str, r: &InequalityRecord) -> Row {
    let status = match (r.pass, r.warnings.is_empty()) {
        (false, _) => Status::Fail,
        (true, true) => Status::Pass,
        (true, false) => Status::Warn,
    };
    let mut row = Row::new(symbol, &r.name, status)
        .num("lhs", r.lhs)
        .num("rhs", r.rhs)
        .num("slack", r.slack);
    for (k, v) in &r.params {
        row = row.num(k, *v);
    }
    if !r.warnings.is_empty() {
        row = row.message(r.warnings.join("; "));
    }
    row
}

fn complex_value(z: Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

fn validate(common: &Common) -> Result<Outcome, Failure> {
    let mut report = Report::new("validate", common.echo());
    for (name, text) in sources(common)? {
        let map = parse(&name, &text)?;
        let v = map.validate_self_map(4096, TOL_SELFMAP);
        report.push(
            Row::new(&name, "self_map", if v.pass { Status::Pass } else { Status::Fail })
                .num("max_boundary_modulus", v.max_boundary_modulus)
                .count("n_samples", v.n_samples as u64)
                .num("tol", v.tol),
        );
    }
    Ok(Outcome::report(report, common, false))
}

fn nevanlinna(common: &Common) -> Result<Outcome, Failure> {
    common.validate()?;
    let grid = common.grid_spec()?;
    let points: Vec<Complex64> = common.w.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?;
    if points.is_empty() && common.t.is_empty() && common.h.is_empty() {
        return Err(Failure::config("nothing to compute: give --w, --t or --h"));
    }
    let mut report = Report::new("nevanlinna", common.echo());
    let mut solver = false;
    for (name, map) in certified_symbols(common)? {
        for &w in &points {
            let row = match preimages(&map, w, TOL_ROOT).and_then(|p| {
                schur_scope::nevanlinna::counting_function(&map, w).map(|n| (n, p.total_multiplicity()))
            }) {
                Ok((n, count)) => Row::new(&name, "counting_function", Status::Info)
                    .value("w", complex_value(w))
                    .num("value", n)
                    .count("preimages", count as u64),
                Err(e) => error_row(&name, "counting_function", &e, &mut solver).value("w", complex_value(w)),
            };
            report.push(row);
        }
        for &t in &common.t {
            let s = nu(&map, t, grid)?;
            report.push(
                Row::new(&name, "nu", Status::Info)
                    .num("t", t)
                    .num("value", s.value)
                    .value("argmax_w", complex_value(s.argmax_w))
                    .count("evaluated", s.evaluated as u64),
            );
        }
        let angles = if common.xi.is_empty() { vec![0.0] } else { common.xi.clone() };
        for h in common.h_list() {
            for &angle in &angles {
                let xi = Complex64::from_polar(1.0, angle);
                let s = nu_window(&map, xi, h, grid)?;
                report.push(
                    Row::new(&name, "nu_window", Status::Info)
                        .num("xi_angle", angle)
                        .num("h", h)
                        .num("value", s.value)
                        .value("argmax_w", complex_value(s.argmax_w)),
                );
            }
        }
    }
    Ok(Outcome::report(report, common, solver))
}

fn carleson(args: &CarlesonArgs) -> Result<Outcome, Failure> {
    let common = &args.common;
    common.validate()?;
    let res = CenterRes::default();
    let mut report = Report::new("carleson", {
        let mut echo = common.echo();
        echo.insert("fit".into(), Value::Bool(args.fit));
        echo.insert("samples".into(), num_u64(args.samples as u64));
        echo
    });
    for (name, map) in certified_symbols(common)? {
        let trace = schur_scope::carleson::BoundaryTrace::new(&map, Default::default());
        for h in common.h_list() {
            let r = rho_with_trace(&trace, h, res)?;
            let status = if r.warning.is_some() { Status::Warn } else { Status::Info };
            report.push(
                Row::new(&name, "rho", status)
                    .num("h", h)
                    .num("value", r.value)
                    .value("argmax_xi", complex_value(r.argmax_xi)),
            );
            for &angle in &common.xi {
                let window = CarlesonWindow::at_angle(angle, h)?;
                let m = trace.window_mass(&window);
                let status = if m.warning.is_some() { Status::Warn } else { Status::Info };
                report.push(
                    Row::new(&name, "window_mass", status)
                        .num("xi_angle", angle)
                        .num("h", h)
                        .num("mass", m.mass)
                        .count("arcs", m.arcs.len() as u64)
                        .num("unresolved_mass", m.unresolved_mass),
                );
                if args.samples > 0 {
                    let mc = pushforward_monte_carlo(&map, &[Region::from(window)], args.samples, common.seed)[0];
                    let se = (m.mass * (1.0 - m.mass) / args.samples as f64).sqrt();
                    let z = if se > 0.0 { (mc.mass - m.mass).abs() / se } else { 0.0 };
                    let agree = z <= 3.0 && (se > 0.0 || mc.mass == m.mass);
                    report.push(
                        Row::new(&name, "monte_carlo", if agree { Status::Pass } else { Status::Warn })
                            .num("xi_angle", angle)
                            .num("h", h)
                            .num("estimate", mc.mass)
                            .num("standard_error", se)
                            .count("seed", mc.seed as u64)
                            .count("samples", mc.samples as u64),
                    );
                }
            }
        }
        if args.fit {
            let hs = if common.h.len() >= 6 {
                common.h_list()
            } else {
                dyadic_below((1.0 - map.at_zero().norm()) / 4.0, 6)
            };
            let row = match carleson_exponent_fit(&map, &hs, res) {
                Ok(fit) => Row::new(&name, "exponent_fit", Status::Info)
                    .num("alpha", fit.alpha)
                    .num("c", fit.c)
                    .num("residual", fit.residual),
                Err(e @ Error::Fit(_)) => Row::new(&name, "exponent_fit", Status::Warn).message(e.to_string()),
                Err(e) => return Err(e.into()),
            };
            report.push(row.value("h", Value::Array(hs.iter().map(|&h| num(h)).collect())));
        }
    }
    Ok(Outcome::report(report, common, false))
}

fn identity_rows(name: &str, map: &SchurMap, quad: &QuadSpec, solver: &mut bool) -> Vec<Row> {
    let polys = [
        ("id", Polynomial::identity()),
        ("z^2", Polynomial::from_real(&[0.0, 0.0, 1.0])),
        ("z+z^2/2", Polynomial::from_real(&[0.0, 1.0, 0.5])),
    ];
    let mut kernels: Vec<(&str, Subharmonic)> = vec![("|w|^2", Subharmonic::SquareModulus)];
    kernels.extend(polys.into_iter().map(|(label, f)| (label, Subharmonic::PolyModulusSq { f })));
    kernels
        .iter()
        .map(|(label, g)| {
            let check = match g {
                Subharmonic::SquareModulus => "stanton",
                _ => "littlewood_paley",
            };
            match stanton_check(map, g, quad) {
                Ok(r) => {
                    let ok = r.residual <= IDENTITY_SLACK * quad.tol_quad;
                    Row::new(name, check, if ok { Status::Pass } else { Status::Fail })
                        .text("f", label)
                        .num("lhs", r.lhs)
                        .num("rhs", r.rhs)
                        .num("residual", r.residual)
                }
                Err(e) => error_row(name, check, &e, solver),
            }
        })
        .collect()
}

fn push_record(rows: &mut Vec<Row>, name: &str, check: &str, r: schur_scope::Result<InequalityRecord>, solver: &mut bool) {
    rows.push(match r {
        Ok(r) => record_row(name, &r),
        Err(e) => error_row(name, check, &e, solver),
    });
}

fn equivalence_row(name: &str, r: &EquivalenceRow) -> Row {
    Row::new(name, "equivalence", if r.pass() { Status::Pass } else { Status::Fail })
        .num("h", r.h)
        .num("rho", r.rho)
        .num("nu", r.nu)
        .num("rho_small", r.rho_small)
        .num("rho_large", r.rho_large)
        .opt("ratio_up", r.ratio_up)
        .opt("ratio_down", r.ratio_down)
}

/// The inequality suite for one symbol.
pub fn verify_symbol(name: &str, map: &SchurMap, common: &Common) -> Result<(Vec<Row>, bool), Failure> {
    let quad = QuadSpec {
        tol_quad: common.tol,
        ..QuadSpec::default()
    };
    let config = BoundsConfig {
        grid: common.grid_spec()?,
        quad,
        ..BoundsConfig::default()
    };
    let v = Verifier::new(map, config);
    let gap = v.base_gap();
    let mut solver = false;
    let mut rows = identity_rows(name, map, &quad, &mut solver);
    let angles = |n: usize| (0..n).map(move |k| TAU * (k as f64 + 0.25) / n as f64);

    for theta in angles(8) {
        for u in [0.9, 0.5, 0.1, 0.01] {
            let a = Complex64::from_polar(1.0 - u * gap / 4.0, theta);
            push_record(&mut rows, name, "upper_bound", v.upper_bound(a), &mut solver);
        }
    }
    for theta in angles(4) {
        for u in [0.5, 0.05] {
            let xi = Complex64::from_polar(1.0, theta);
            push_record(&mut rows, name, "window_sup_upper", v.window_sup_upper(xi, u * gap / 4.0), &mut solver);
        }
    }
    for theta in angles(8) {
        for u in [0.5, 0.1, 0.01] {
            let xi = Complex64::from_polar(1.0, theta);
            push_record(&mut rows, name, "lower_bound", v.lower_bound(xi, u * gap / 16.0), &mut solver);
        }
    }
    for theta in angles(4) {
        for u in [0.5, 0.1] {
            let xi = Complex64::from_polar(1.0, theta);
            push_record(&mut rows, name, "average_bound", v.average_bound(xi, u * gap / 8.0), &mut solver);
        }
    }
    match v.equivalence_sweep(&dyadic_below(gap / 16.0, 4)) {
        Ok(table) => rows.extend(table.iter().map(|r| equivalence_row(name, r))),
        Err(e) => rows.push(error_row(name, "equivalence", &e, &mut solver)),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let mut lemma_points = 0;
    for _ in 0..4000 {
        if lemma_points == 32 {
            break;
        }
        let z = Complex64::from_polar(1.0 - 0.5 * rng.gen::<f64>().powi(2), rng.gen_range(0.0..TAU));
        let Ok(w) = map.evaluate(z) else { continue };
        if w.norm() >= 0.75 && w.norm() < 1.0 {
            lemma_points += 1;
            push_record(&mut rows, name, "preparatory_lemma", v.preparatory_lemma(z), &mut solver);
        }
    }
    if lemma_points == 0 {
        rows.push(Row::new(name, "preparatory_lemma", Status::Info).message("no point with |φ(z)| ≥ 3/4 was found"));
    }
    for theta in angles(8) {
        let a = Complex64::from_polar(1.0 - 0.5 * gap / 4.0, theta);
        push_record(&mut rows, name, "base_point_lemma", v.base_point_lemma(a), &mut solver);
    }

    let base = map.at_zero();
    for theta in angles(4) {
        let w0 = Complex64::from_polar(0.6, theta);
        let radius = (0.1f64).min(0.5 * (w0 - base).norm());
        rows.push(match subaveraging_check(map, w0, radius, &quad) {
            Ok(r) => Row::new(name, "subaveraging", if r.pass { Status::Pass } else { Status::Fail })
                .value("w0", complex_value(w0))
                .num("radius", radius)
                .num("lhs", r.lhs)
                .num("rhs", r.rhs),
            Err(e) => error_row(name, "subaveraging", &e, &mut solver),
        });
    }

    let t = dyadic_below(gap / 64.0, 1)[0];
    rows.push(match homogeneity_check(map, t, &[0.5, 0.25, 0.125], config.grid) {
        Ok(r) => Row::new(name, "homogeneity", if r.k_hat <= K_MAX { Status::Pass } else { Status::Fail })
            .num("t", t)
            .num("nu_t", r.nu_t)
            .num("k_hat", r.k_hat),
        Err(Error::ZeroMaximal { .. }) => Row::new(name, "homogeneity", Status::Pass)
            .num("t", t)
            .num("nu_t", 0.0)
            .message("vacuous: ν_φ(t) = 0"),
        Err(e) => error_row(name, "homogeneity", &e, &mut solver),
    });

    rows.push(match bounds::choa_kim_diagnostic(map, Complex64::new(0.9, 0.0), &quad) {
        Ok(r) => {
            let row = Row::new(name, "choa_kim", if r.exceeds_bound { Status::Warn } else { Status::Info })
                .num("w", 0.9)
                .num("n_value", r.n_value)
                .num("kernel_integral", r.kernel_integral)
                .num("bound", r.bound)
                .num("best_constant", r.best_constant);
            if r.exceeds_bound {
                row.message("N_φ(w) exceeds the kernel bound with constant 1/8")
            } else {
                row
            }
        }
        Err(e) => error_row(name, "choa_kim", &e, &mut solver),
    });
    Ok((rows, solver))
}

/// Symbol-independent lemma checks on seeded samples.
fn geometry_rows(seed: u64) -> Result<Vec<Row>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 10_000;
    let mut worst = f64::INFINITY;
    for _ in 0..n {
        let xi = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let h = rng.gen_range(1e-6..=0.5);
        let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
        worst = worst.min(kernel_lemma_margin(xi, h, z));
    }
    let kernel = Row::new("-", "kernel_lemma", if worst >= -1e-12 { Status::Pass } else { Status::Fail })
        .num("min_margin", worst)
        .count("samples", n as u64);
    let xi = Complex64::new(1.0, 0.0);
    let zeta = Complex64::from_polar(1.0, 0.05);
    let c = containment_selftest(xi, 0.1, 0.05, zeta, 2000, seed)?;
    let containment = Row::new("-", "containment", if c.pass() { Status::Pass } else { Status::Fail })
        .value("window_nesting", Value::Bool(c.window_nesting))
        .value("sector_in_window", Value::Bool(c.sector_in_window))
        .value("window_in_sector", Value::Bool(c.window_in_sector))
        .count("samples", c.samples as u64);
    Ok(vec![kernel, containment])
}

fn verify(common: &Common) -> Result<Outcome, Failure> {
    common.validate()?;
    let mut report = Report::new("verify", common.echo());
    let mut solver = false;
    let named = sources(common)?;
    if !named.is_empty() {
        for row in geometry_rows(common.seed)? {
            report.push(row);
        }
    }
    for (name, text) in named {
        let map = parse(&name, &text)?;
        let check = map.validate_self_map(4096, TOL_SELFMAP);
        if !check.pass {
            report.push(
                Row::new(&name, "self_map", Status::Warn)
                    .num("max_boundary_modulus", check.max_boundary_modulus)
                    .message("not a self-map of the disk; skipped"),
            );
            continue;
        }
        let (rows, s) = verify_symbol(&name, &map, common)?;
        solver |= s;
        for row in rows {
            report.push(row);
        }
    }
    Ok(Outcome::report(report, common, solver))
}

fn parse_psi(s: &str) -> Result<OrliczFunction, Failure> {
    let (family, param) = s
        .split_once(':')
        .ok_or_else(|| Failure::config(format!("--psi {s}: expected power:P or exp_power:A")))?;
    let x: f64 = param
        .parse()
        .map_err(|_| Failure::config(format!("--psi {s}: bad parameter")))?;
    match family {
        "power" => Ok(OrliczFunction::power(x)?),
        "exp_power" => Ok(OrliczFunction::exp_power(x)?),
        _ => Err(Failure::config(format!("--psi {s}: unknown family {family}"))),
    }
}

fn compactness(args: &CompactnessArgs) -> Result<Outcome, Failure> {
    let common = &args.common;
    common.validate()?;
    let psi = parse_psi(&args.psi)?;
    let grid = common.grid_spec()?;
    let mut report = Report::new("compactness", {
        let mut echo = common.echo();
        echo.insert("psi".into(), serde_json::to_value(psi).expect("serializes"));
        echo
    });
    for (name, map) in certified_symbols(common)? {
        let hs = if common.h.is_empty() {
            dyadic_below((1.0 - map.at_zero().norm()) / 16.0, 6)
        } else {
            common.h_list()
        };
        let v = compactness_diagnostic(&map, &psi, &hs, grid)?;
        let trace: Vec<Value> = v.ratio_trace.iter().map(|&(h, r)| Value::Array(vec![num(h), num(r)])).collect();
        report.push(
            Row::new(&name, "compactness", Status::Info)
                .text("verdict", v.verdict.as_str())
                .num("trend_stat", v.trend_stat)
                .value("ratio_trace", Value::Array(trace)),
        );
        let radii = [0.9, 0.99, 0.999, 0.9999];
        let angles = if common.xi.is_empty() { vec![0.0] } else { common.xi.clone() };
        for angle in angles {
            let s = orlicz::angular_sweep(&map, Complex64::from_polar(1.0, angle), &psi, &radii)?;
            let points: Vec<Value> = s.points.iter().map(|&(r, x)| Value::Array(vec![num(r), num(x)])).collect();
            report.push(
                Row::new(&name, "angular_ratio", Status::Info)
                    .num("xi_angle", angle)
                    .value("grows", Value::Bool(s.grows))
                    .value("points", Value::Array(points)),
            );
        }
    }
    Ok(Outcome::report(report, common, false))
}

pub const PLOT_HEADER: &str = "h,rho,nu,ratio_up,ratio_down";

fn plotdata(common: &Common) -> Result<Outcome, Failure> {
    common.validate()?;
    let (name, map) = single_symbol(common)?;
    let gap = 1.0 - map.at_zero().norm();
    let hs = if common.h.is_empty() { dyadic_below(gap / 16.0, 8) } else { common.h_list() };
    let config = BoundsConfig {
        grid: common.grid_spec()?,
        ..BoundsConfig::default()
    };
    let rows = Verifier::new(&map, config).equivalence_sweep(&hs)?;
    let body = match common.format {
        Format::Csv => {
            let cell = |x: Option<f64>| x.map_or(String::new(), sig17);
            let mut text = String::from(PLOT_HEADER);
            text.push('\n');
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    sig17(r.h),
                    sig17(r.rho),
                    sig17(r.nu),
                    cell(r.ratio_up),
                    cell(r.ratio_down)
                ));
            }
            Body::Text(text)
        }
        Format::Json => {
            let mut report = Report::new("plotdata", common.echo());
            for r in &rows {
                report.push(equivalence_row(&name, r));
            }
            Body::Report(report)
        }
    };
    let failed = rows.iter().any(|r| !r.pass());
    Ok(Outcome {
        body,
        out: common.out.clone(),
        format: common.format,
        solver_error: false,
        failed,
    })
}
