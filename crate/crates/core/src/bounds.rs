//! Explicit-constant comparisons between the counting function, its maximal functions and the
//! pull-back measure, plus the boundary/area identities that tie `N_φ` to Hardy-space norms.
//!
//! Every comparison produces an [`InequalityRecord`] carrying both sides and the parameters
//! needed to recompute them.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::area::{counting_integral, ConvexDomain, QuadSpec};
use crate::carleson::{rho_with_trace, BoundaryRes, BoundaryTrace, CenterRes};
use crate::error::{Error, Result};
use crate::geometry::{CarlesonWindow, DiskSector};
use crate::nevanlinna::{counting_function, nu, nu_window, GridSpec};
use crate::poly::Polynomial;
use crate::quadrature::periodic_mean;
use crate::symbol::SchurMap;
use crate::tolerances::TOL_INEQ;

/// Constants of the comparison theorems. The defaults are the published values; other
/// values are for exploring how tight the inequalities are.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// `N_φ(a) ≤ upper · m_φ(W(ξ, upper_dilation · h))`
    pub upper: f64,
    pub upper_dilation: f64,
    /// `sup_{W(ξ,h)} N_φ ≤ upper · m_φ(W(ξ, window_sup_dilation · h))`
    pub window_sup_dilation: f64,
    /// `m_φ(W(ξ,h)) ≤ lower · sup_{W(ξ, lower_dilation · h)} N_φ`
    pub lower: f64,
    pub lower_dilation: f64,
    /// `m_φ(S(ξ,h)) ≤ average · mean_{S(ξ, average_dilation · h)} N_φ`
    pub average: f64,
    pub average_dilation: f64,
}

pub const UPPER_CONSTANT: f64 = 196.0;
pub const UPPER_DILATION: f64 = 12.0;
pub const WINDOW_SUP_DILATION: f64 = 24.0;
pub const LOWER_CONSTANT: f64 = 64.0;
pub const LOWER_DILATION: f64 = 64.0;
pub const AVERAGE_DILATION: f64 = 17.0;
pub const AVERAGE_CONSTANT: f64 = 128.0 * AVERAGE_DILATION * AVERAGE_DILATION;

impl Default for Constants {
    fn default() -> Self {
        Constants {
            upper: UPPER_CONSTANT,
            upper_dilation: UPPER_DILATION,
            window_sup_dilation: WINDOW_SUP_DILATION,
            lower: LOWER_CONSTANT,
            lower_dilation: LOWER_DILATION,
            average: AVERAGE_CONSTANT,
            average_dilation: AVERAGE_DILATION,
        }
    }
}

/// Resolutions and slack shared by the inequality checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsConfig {
    pub constants: Constants,
    pub boundary: BoundaryRes,
    pub centers: CenterRes,
    pub grid: GridSpec,
    pub quad: QuadSpec,
    pub tol_ineq: f64,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            constants: Constants::default(),
            boundary: BoundaryRes::default(),
            centers: CenterRes::default(),
            grid: GridSpec::default(),
            quad: QuadSpec::default(),
            tol_ineq: TOL_INEQ,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`
    pub slack: f64,
    pub params: BTreeMap<String, f64>,
    /// `lhs ≤ rhs · (1 + tol_ineq)`
    pub pass: bool,
    pub warnings: Vec<String>,
}

impl InequalityRecord {
    fn new(name: &str, lhs: f64, rhs: f64, tol_ineq: f64, params: &[(&str, f64)]) -> Self {
        InequalityRecord {
            name: name.to_string(),
            lhs,
            rhs,
            slack: rhs - lhs,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            pass: lhs <= rhs * (1.0 + tol_ineq),
            warnings: Vec::new(),
        }
    }

    fn warn(mut self, warning: Option<String>) -> Self {
        self.warnings.extend(warning);
        self
    }
}

/// Both sides of a boundary/area identity, with `residual = |lhs - rhs| / (1 + lhs)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        IdentityCheck {
            lhs,
            rhs,
            residual: (lhs - rhs).abs() / (1.0 + lhs),
        }
    }
}

/// Subharmonic test functions with their Laplacians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subharmonic {
    /// `G(w) = |w|²`, `ΔG = 4`
    SquareModulus,
    /// `G(w) = |f(w)|²`, `ΔG = 4|f'(w)|²`
    PolyModulusSq { f: Polynomial },
}

impl Subharmonic {
    fn value(&self, w: Complex64) -> f64 {
        match self {
            Subharmonic::SquareModulus => w.norm_sqr(),
            Subharmonic::PolyModulusSq { f } => f.eval(w).norm_sqr(),
        }
    }

    fn laplacian(&self) -> impl Fn(Complex64) -> f64 + '_ {
        let derivative = match self {
            Subharmonic::SquareModulus => None,
            Subharmonic::PolyModulusSq { f } => Some(f.derivative()),
        };
        move |w| match &derivative {
            None => 4.0,
            Some(d) => 4.0 * d.eval(w).norm_sqr(),
        }
    }
}

/// `∫ G(φ*) dm` against `G(φ(0)) + ½ ∫ ΔG · N_φ dA`.
pub fn stanton_check(map: &SchurMap, g: &Subharmonic, quad: &QuadSpec) -> Result<IdentityCheck> {
    quad.validate()?;
    let lhs = periodic_mean(|theta| g.value(map.boundary_value(theta)), quad.boundary_n);
    let area = counting_integral(map, &ConvexDomain::unit_disk(), quad, g.laplacian())?;
    Ok(IdentityCheck::new(lhs, g.value(map.at_zero()) + 0.5 * area.value))
}

/// `‖f∘φ‖²_{H²}` against `|f(φ(0))|² + 2 ∫ |f'|² N_φ dA`.
pub fn littlewood_paley_check(map: &SchurMap, f: &Polynomial, quad: &QuadSpec) -> Result<IdentityCheck> {
    stanton_check(map, &Subharmonic::PolyModulusSq { f: f.clone() }, quad)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChoaKimReport {
    pub w: Complex64,
    pub n_value: f64,
    /// `∫ dm / |1 - w̄φ*|²`
    pub kernel_integral: f64,
    /// `(1 - |w|²)² / (8|w|²) · kernel_integral`
    pub bound: f64,
    /// Smallest `c` with `N_φ(w) ≤ c (1 - |w|²)² / |w|² · kernel_integral`.
    pub best_constant: f64,
    pub exceeds_bound: bool,
}

/// Reports both sides of the kernel bound on `N_φ(w)` without asserting it; the constant `1/8`
/// fails already for the identity near the circle.
pub fn choa_kim_diagnostic(map: &SchurMap, w: Complex64, quad: &QuadSpec) -> Result<ChoaKimReport> {
    quad.validate()?;
    let r = w.norm();
    if !(r > 0.5 && r < 1.0) {
        return Err(Error::Precondition(format!("|w| = {r} must lie in (1/2, 1)")));
    }
    let n_value = counting_function(map, w)?;
    let kernel_integral = periodic_mean(
        |theta| 1.0 / (1.0 - w.conj() * map.boundary_value(theta)).norm_sqr(),
        quad.boundary_n,
    );
    let factor = (1.0 - r * r).powi(2) / (r * r) * kernel_integral;
    let bound = factor / 8.0;
    Ok(ChoaKimReport {
        w,
        n_value,
        kernel_integral,
        bound,
        best_constant: n_value / factor,
        exceeds_bound: n_value > bound,
    })
}

fn precondition(name: &str, h: f64, limit: f64) -> Result<()> {
    if h > 0.0 && h < limit {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{name}: h = {h} must lie in (0, {limit})")))
    }
}

fn unit(xi: Complex64) -> Result<Complex64> {
    if (xi.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!("|ξ| = {} is not 1", xi.norm())));
    }
    Ok(xi)
}

fn warning_text(region: &str, set: &crate::carleson::ArcSet) -> Option<String> {
    set.warning.map(|w| {
        format!(
            "mass of {region} unresolved up to {:.3e} at n_seed = {}",
            w.unresolved_mass, w.n_seed
        )
    })
}

/// Inequality checks for one symbol, sharing a boundary trace across calls.
#[derive(Debug, Clone)]
pub struct Verifier {
    trace: BoundaryTrace,
    config: BoundsConfig,
    base_gap: f64,
}

impl Verifier {
    pub fn new(map: &SchurMap, config: BoundsConfig) -> Self {
        Verifier {
            trace: BoundaryTrace::new(map, config.boundary),
            config,
            base_gap: 1.0 - map.at_zero().norm(),
        }
    }

    pub fn map(&self) -> &SchurMap {
        self.trace.map()
    }

    pub fn config(&self) -> &BoundsConfig {
        &self.config
    }

    /// `1 - |φ(0)|`, the scale that bounds every admissible `h`.
    pub fn base_gap(&self) -> f64 {
        self.base_gap
    }

    pub fn trace(&self) -> &BoundaryTrace {
        &self.trace
    }

    fn window_mass(&self, xi: Complex64, h: f64) -> Result<crate::carleson::ArcSet> {
        Ok(self.trace.window_mass(&CarlesonWindow::new(xi, h)?))
    }

    /// `N_φ(a) ≤ 196 m_φ(W(a/|a|, 12h))` with `h = 1 - |a| < (1 - |φ(0)|)/4`.
    pub fn upper_bound(&self, a: Complex64) -> Result<InequalityRecord> {
        let c = &self.config.constants;
        let h = 1.0 - a.norm();
        precondition("upper_bound", h, self.base_gap / 4.0)?;
        let xi = a / a.norm();
        let lhs = counting_function(self.map(), a)?;
        let mass = self.window_mass(xi, c.upper_dilation * h)?;
        let params = [("a_re", a.re), ("a_im", a.im), ("h", h), ("C", c.upper), ("dilation", c.upper_dilation)];
        Ok(InequalityRecord::new("upper_bound", lhs, c.upper * mass.mass, self.config.tol_ineq, &params)
            .warn(warning_text("W(ξ, 12h)", &mass)))
    }

    /// `sup_{W(ξ,h)} N_φ ≤ 196 m_φ(W(ξ, 24h))` for `h < (1 - |φ(0)|)/4`.
    pub fn window_sup_upper(&self, xi: Complex64, h: f64) -> Result<InequalityRecord> {
        let c = &self.config.constants;
        let xi = unit(xi)?;
        precondition("window_sup_upper", h, self.base_gap / 4.0)?;
        let lhs = nu_window(self.map(), xi, h, self.config.grid)?.value;
        let mass = self.window_mass(xi, c.window_sup_dilation * h)?;
        let params = [
            ("xi_re", xi.re),
            ("xi_im", xi.im),
            ("h", h),
            ("C", c.upper),
            ("dilation", c.window_sup_dilation),
        ];
        Ok(
            InequalityRecord::new("window_sup_upper", lhs, c.upper * mass.mass, self.config.tol_ineq, &params)
                .warn(warning_text("W(ξ, 24h)", &mass)),
        )
    }

    /// `m_φ(W(ξ,h)) ≤ 64 sup_{W(ξ,64h)} N_φ` for `h < (1 - |φ(0)|)/16`.
    pub fn lower_bound(&self, xi: Complex64, h: f64) -> Result<InequalityRecord> {
        let c = &self.config.constants;
        let xi = unit(xi)?;
        precondition("lower_bound", h, self.base_gap / 16.0)?;
        let mass = self.window_mass(xi, h)?;
        let sup = nu_window(self.map(), xi, c.lower_dilation * h, self.config.grid)?.value;
        let params = [
            ("xi_re", xi.re),
            ("xi_im", xi.im),
            ("h", h),
            ("C", c.lower),
            ("dilation", c.lower_dilation),
        ];
        Ok(
            InequalityRecord::new("lower_bound", mass.mass, c.lower * sup, self.config.tol_ineq, &params)
                .warn(warning_text("W(ξ, h)", &mass)),
        )
    }

    /// `m_φ(S(ξ,h)) ≤ 128·17² · mean_{S(ξ,17h) ∩ 𝔻} N_φ` for `h < (1 - |φ(0)|)/8`.
    pub fn average_bound(&self, xi: Complex64, h: f64) -> Result<InequalityRecord> {
        let c = &self.config.constants;
        let xi = unit(xi)?;
        precondition("average_bound", h, self.base_gap / 8.0)?;
        let mass = self.trace.sector_mass(&DiskSector::new(xi, h)?);
        let wide = c.average_dilation * h;
        let area = DiskSector::new(xi, wide)?.normalized_area();
        let integral = counting_integral(self.map(), &ConvexDomain::sector(xi, wide)?, &self.config.quad, |_| 1.0)?;
        let params = [
            ("xi_re", xi.re),
            ("xi_im", xi.im),
            ("h", h),
            ("C", c.average),
            ("dilation", c.average_dilation),
            ("area", area),
            ("integral", integral.value),
        ];
        Ok(InequalityRecord::new(
            "average_bound",
            mass.mass,
            c.average * integral.value / area,
            self.config.tol_ineq,
            &params,
        )
        .warn(warning_text("S(ξ, h)", &mass)))
    }

    /// `(|w|/8)(1 - |z|) ≤ m_φ(S(w/|w|, 6h))` for `w = φ(z)`, `h = 1 - |w| ≤ 1/4`.
    pub fn preparatory_lemma(&self, z: Complex64) -> Result<InequalityRecord> {
        let w = self.map().evaluate(z)?;
        if z.norm() >= 1.0 {
            return Err(Error::Precondition(format!("|z| = {} must be below 1", z.norm())));
        }
        let h = 1.0 - w.norm();
        if !(h > 0.0 && h <= 0.25) {
            return Err(Error::Precondition(format!("h = 1 - |φ(z)| = {h} must lie in (0, 1/4]")));
        }
        let mass = self.trace.sector_mass(&DiskSector::new(w / w.norm(), 6.0 * h)?);
        let lhs = w.norm() / 8.0 * (1.0 - z.norm());
        let params = [("z_re", z.re), ("z_im", z.im), ("h", h)];
        Ok(
            InequalityRecord::new("preparatory_lemma", lhs, mass.mass, self.config.tol_ineq, &params)
                .warn(warning_text("S(w/|w|, 6h)", &mass)),
        )
    }

    /// `1/3 < |φ_a(φ(0))|` for `1 - |a| < (1 - |φ(0)|)/4`, written as `1/3 ≤ |φ_a(φ(0))|`.
    pub fn base_point_lemma(&self, a: Complex64) -> Result<InequalityRecord> {
        precondition("base_point_lemma", 1.0 - a.norm(), self.base_gap / 4.0)?;
        let p = self.map().at_zero();
        let moved = ((a - p) / (1.0 - a.conj() * p)).norm();
        let mut record =
            InequalityRecord::new("base_point_lemma", 1.0 / 3.0, moved, 0.0, &[("a_re", a.re), ("a_im", a.im)]);
        record.pass = moved > 1.0 / 3.0;
        Ok(record)
    }

    /// One row of the two-sided comparison between `ν_φ` and `ρ_φ`.
    pub fn equivalence_row(&self, h: f64) -> Result<EquivalenceRow> {
        let c = &self.config.constants;
        precondition("equivalence_sweep", h, self.base_gap / 16.0)?;
        let res = self.config.centers;
        let rho_h = rho_with_trace(&self.trace, h, res)?.value;
        let rho_small = rho_with_trace(&self.trace, h / c.lower_dilation, res)?.value;
        let rho_large = rho_with_trace(&self.trace, c.window_sup_dilation * h, res)?.value;
        let nu_h = nu(self.map(), h, self.config.grid)?.value;
        let tol = self.config.tol_ineq;
        Ok(EquivalenceRow {
            h,
            rho: rho_h,
            nu: nu_h,
            rho_small,
            rho_large,
            ratio_up: ratio(nu_h, rho_large),
            ratio_down: ratio(rho_small, nu_h),
            lower_pass: rho_small / c.lower <= nu_h * (1.0 + tol),
            upper_pass: nu_h <= c.upper * rho_large * (1.0 + tol),
        })
    }

    pub fn equivalence_sweep(&self, h_list: &[f64]) -> Result<Vec<EquivalenceRow>> {
        for &h in h_list {
            precondition("equivalence_sweep", h, self.base_gap / 16.0)?;
        }
        let mut rows = crate::par::map(h_list, |&h| self.equivalence_row(h))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        rows.sort_by(|a, b| b.h.total_cmp(&a.h));
        Ok(rows)
    }
}

/// `num / den`, with `0/0 = 0` and `None` for a positive numerator over zero.
fn ratio(num: f64, den: f64) -> Option<f64> {
    if den > 0.0 {
        Some(num / den)
    } else if num == 0.0 {
        Some(0.0)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceRow {
    pub h: f64,
    /// `ρ_φ(h)`
    pub rho: f64,
    /// `ν_φ(h)`
    pub nu: f64,
    /// `ρ_φ(h/64)`
    pub rho_small: f64,
    /// `ρ_φ(24h)`
    pub rho_large: f64,
    /// `ν_φ(h) / ρ_φ(24h)`, at most 196 when the upper comparison holds.
    pub ratio_up: Option<f64>,
    /// `ρ_φ(h/64) / ν_φ(h)`, at most 64 when the lower comparison holds.
    pub ratio_down: Option<f64>,
    /// `ρ_φ(h/64)/64 ≤ ν_φ(h)`
    pub lower_pass: bool,
    /// `ν_φ(h) ≤ 196 ρ_φ(24h)`
    pub upper_pass: bool,
}

impl EquivalenceRow {
    pub fn pass(&self) -> bool {
        self.lower_pass && self.upper_pass
    }
}

pub fn upper_bound_check(map: &SchurMap, a: Complex64) -> Result<InequalityRecord> {
    Verifier::new(map, BoundsConfig::default()).upper_bound(a)
}

pub fn window_sup_upper_check(map: &SchurMap, xi: Complex64, h: f64) -> Result<InequalityRecord> {
    Verifier::new(map, BoundsConfig::default()).window_sup_upper(xi, h)
}

pub fn lower_bound_check(map: &SchurMap, xi: Complex64, h: f64) -> Result<InequalityRecord> {
    Verifier::new(map, BoundsConfig::default()).lower_bound(xi, h)
}

pub fn average_bound_check(map: &SchurMap, xi: Complex64, h: f64, quad: &QuadSpec) -> Result<InequalityRecord> {
    let config = BoundsConfig {
        quad: *quad,
        ..BoundsConfig::default()
    };
    Verifier::new(map, config).average_bound(xi, h)
}

pub fn equivalence_sweep(map: &SchurMap, h_list: &[f64]) -> Result<Vec<EquivalenceRow>> {
    Verifier::new(map, BoundsConfig::default()).equivalence_sweep(h_list)
}

/// Default scales for [`slit_example_exponent`]: small enough for the leading term of `h(s)`
/// to dominate, large enough that `|2w - 1|` stays inside the root-exclusion radius.
pub fn slit_default_h_list() -> Vec<f64> {
    (11..=17).map(|k| 2f64.powi(-k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlitPoint {
    pub h: f64,
    pub s: f64,
    pub zeta: f64,
    pub w: Complex64,
    pub n_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlitFit {
    pub alpha: f64,
    pub alpha_hat: f64,
    pub intercept: f64,
    pub residual: f64,
    pub points: Vec<SlitPoint>,
}

/// Points `w = 1/2 + (1/2 - s)e^{iζ}` with `ζ = s^{1/(2α)}` approach the circle at
/// `h ≈ ζ²/4 + 2s` while `N_φ(w) ≈ s`, for `φ = (1+z)/2`. Fits the exponent of `N_φ` in `h`.
pub fn slit_example_exponent(alpha: f64, h_list: &[f64]) -> Result<SlitFit> {
    if !(1.0..=2.5).contains(&alpha) {
        return Err(Error::Precondition(format!("α = {alpha} must lie in [1, 2.5]")));
    }
    if h_list.len() < 2 || h_list.iter().any(|&h| !(h > 0.0 && h < 0.25)) {
        return Err(Error::Precondition("need at least two scales h in (0, 1/4)".into()));
    }
    let map = SchurMap::polynomial_real(&[0.5, 0.5])?;
    let scale = |s: f64| s.powf(1.0 / alpha) / 4.0 + 2.0 * s;
    let mut points = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let (mut lo, mut hi) = (0.0, 0.5);
        while hi - lo > 1e-15 * hi {
            let mid = 0.5 * (lo + hi);
            if scale(mid) < h {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = 0.5 * (lo + hi);
        let zeta = s.powf(0.5 / alpha);
        let w = 0.5 + (0.5 - s) * Complex64::from_polar(1.0, zeta);
        let n_value = counting_function(&map, w)?;
        if !(n_value > 0.0) {
            return Err(Error::Fit(format!("N_φ vanishes at h = {h}; the point left the root-exclusion radius")));
        }
        points.push(SlitPoint { h, s, zeta, w, n_value });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.h.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.n_value.ln()).collect();
    let (alpha_hat, intercept, residual) = crate::carleson::linear_fit(&xs, &ys);
    Ok(SlitFit {
        alpha,
        alpha_hat,
        intercept,
        residual,
        points,
    })
}

#[cfg(test)]
mod tests;
