//! Orlicz functions, the ratio test that separates compact from non-compact composition
//! operators on Hardy–Orlicz spaces, and the homogeneity of `ν_φ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::carleson::check_dyadic;
use crate::error::{Error, Result};
use crate::nevanlinna::{nu, GridSpec};
use crate::symbol::SchurMap;

/// Relative accuracy of [`OrliczFunction::inverse`].
pub const INVERSE_TOL: f64 = 1e-12;

/// Ratio level separating the two verdicts, and the factor a trace must drop or stay within.
pub const VERDICT_LEVEL: f64 = 0.1;
pub const VERDICT_FACTOR: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum OrliczFunction {
    /// `Ψ(x) = x^p`, `p ≥ 1`
    Power { p: f64 },
    /// `Ψ(x) = e^{x^a} - 1`, `a ≥ 1`
    ExpPower { a: f64 },
}

impl OrliczFunction {
    pub fn power(p: f64) -> Result<Self> {
        OrliczFunction::Power { p }.validated()
    }

    /// Convex only for `a ≥ 1`; smaller exponents are rejected.
    pub fn exp_power(a: f64) -> Result<Self> {
        OrliczFunction::ExpPower { a }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            OrliczFunction::Power { p } => p.is_finite() && p >= 1.0,
            OrliczFunction::ExpPower { a } => a.is_finite() && a >= 1.0,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Precondition(format!("{self:?} is not a convex Orlicz function")))
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            OrliczFunction::Power { p } => x.powf(p),
            OrliczFunction::ExpPower { a } => x.powf(a).exp_m1(),
        }
    }

    /// Solves `Ψ(x) = y` by bisection; `inverse(0) = 0`.
    pub fn inverse(&self, y: f64) -> f64 {
        if !(y > 0.0) {
            return 0.0;
        }
        if y.is_infinite() {
            return f64::INFINITY;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        while self.eval(hi) < y {
            lo = hi;
            hi *= 2.0;
        }
        while hi - lo > INVERSE_TOL * hi {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `Ψ(0) = 0` and nonnegative first and second differences on a grid over `[0, x_max]`.
    pub fn shape_check(&self, x_max: f64, n: usize) -> bool {
        let values: Vec<f64> = (0..=n).map(|k| self.eval(x_max * k as f64 / n as f64)).collect();
        let scale = values.iter().cloned().fold(1.0, f64::max);
        values[0] == 0.0
            && values.windows(2).all(|p| p[1] >= p[0])
            && values.windows(3).all(|p| p[2] - 2.0 * p[1] + p[0] >= -1e-12 * scale)
    }
}

fn admissible(map: &SchurMap, h: f64, divisor: f64) -> Result<()> {
    let limit = (1.0 - map.at_zero().norm()) / divisor;
    if h > 0.0 && h < limit {
        Ok(())
    } else {
        Err(Error::Precondition(format!("scale {h} must lie in (0, {limit})")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityRecord {
    pub epsilon: f64,
    /// `ν_φ(εt)`
    pub nu_scaled: f64,
    /// `ν_φ(εt) / (ε ν_φ(t))`
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub t: f64,
    pub nu_t: f64,
    pub k_hat: f64,
    pub records: Vec<HomogeneityRecord>,
}

/// Smallest `K` with `ν_φ(εt) ≤ K ε ν_φ(t)` over the given `ε`, for `t < (1 - |φ(0)|)/64`.
pub fn homogeneity_check(map: &SchurMap, t: f64, eps_list: &[f64], grid: GridSpec) -> Result<HomogeneityReport> {
    admissible(map, t, 64.0)?;
    if eps_list.is_empty() || eps_list.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::Precondition("ε values must lie in (0, 1)".into()));
    }
    let nu_t = nu(map, t, grid)?.value;
    if nu_t <= 0.0 {
        return Err(Error::ZeroMaximal { t });
    }
    let records = crate::par::map(eps_list, |&epsilon| -> Result<HomogeneityRecord> {
        let nu_scaled = nu(map, epsilon * t, grid)?.value;
        Ok(HomogeneityRecord {
            epsilon,
            nu_scaled,
            ratio: nu_scaled / (epsilon * nu_t),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let k_hat = records.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(HomogeneityReport {
        t,
        nu_t,
        k_hat,
        records,
    })
}

/// `Ψ⁻¹(1/h) / Ψ⁻¹(1/ν_φ(h))` from a known `ν_φ(h)`, with `0` when `ν_φ(h) = 0`.
pub fn ratio_from_nu(psi: &OrliczFunction, h: f64, nu_h: f64) -> f64 {
    if nu_h <= 0.0 {
        return 0.0;
    }
    psi.inverse(1.0 / h) / psi.inverse(1.0 / nu_h)
}

/// `Ψ⁻¹(1/h) / Ψ⁻¹(1/ν_φ(h))` for `h < (1 - |φ(0)|)/16`.
pub fn compactness_ratio(map: &SchurMap, psi: &OrliczFunction, h: f64, grid: GridSpec) -> Result<f64> {
    admissible(map, h, 16.0)?;
    Ok(ratio_from_nu(psi, h, nu(map, h, grid)?.value))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CompactConsistent,
    NoncompactConsistent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::CompactConsistent => "compact_consistent",
            Verdict::NoncompactConsistent => "noncompact_consistent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactnessVerdict {
    pub verdict: Verdict,
    /// `(h, ratio)` in decreasing `h`.
    pub ratio_trace: Vec<(f64, f64)>,
    /// Last ratio over first ratio, `0` when the first is `0`.
    pub trend_stat: f64,
}

/// Applies the decision rule to a trace ordered by decreasing `h`:
/// compact when the trace ends at or below 0.1 after dropping by 2 (or is identically 0),
/// non-compact when it stays within a factor 2 and at or above 0.1.
pub fn classify(trace: &[(f64, f64)]) -> CompactnessVerdict {
    let ratios: Vec<f64> = trace.iter().map(|p| p.1).collect();
    let first = ratios.first().copied().unwrap_or(0.0);
    let last = ratios.last().copied().unwrap_or(0.0);
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let all_zero = ratios.iter().all(|&r| r == 0.0);
    let verdict = if last <= VERDICT_LEVEL && (all_zero || first >= VERDICT_FACTOR * last) {
        Verdict::CompactConsistent
    } else if min >= VERDICT_LEVEL && max <= VERDICT_FACTOR * min {
        Verdict::NoncompactConsistent
    } else {
        Verdict::Inconclusive
    };
    CompactnessVerdict {
        verdict,
        ratio_trace: trace.to_vec(),
        trend_stat: if first > 0.0 { last / first } else { 0.0 },
    }
}

/// Default scales: six dyadic steps below `1/32`, admissible whenever `|φ(0)| ≤ 1/2`.
pub fn default_h_list() -> Vec<f64> {
    (6..=11).map(|k| 2f64.powi(-k)).collect()
}

/// Finite-sample reading of `Ψ⁻¹(1/h) / Ψ⁻¹(1/ν_φ(h)) → 0` over a dyadic list.
pub fn compactness_diagnostic(
    map: &SchurMap,
    psi: &OrliczFunction,
    h_list: &[f64],
    grid: GridSpec,
) -> Result<CompactnessVerdict> {
    let hs = check_dyadic(h_list)?;
    admissible(map, hs[0], 16.0)?;
    let ratios = crate::par::map(&hs, |&h| compactness_ratio(map, psi, h, grid))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let trace: Vec<(f64, f64)> = hs.into_iter().zip(ratios).collect();
    Ok(classify(&trace))
}

/// `Ψ⁻¹(1/(1-|z|)) / Ψ⁻¹(1/(1-|φ(z)|))`
pub fn angular_ratio(map: &SchurMap, z: Complex64, psi: &OrliczFunction) -> Result<f64> {
    if !(z.norm() < 1.0) {
        return Err(Error::Precondition(format!("|z| = {} must be below 1", z.norm())));
    }
    let w = map.evaluate(z)?;
    if !(w.norm() < 1.0) {
        return Err(Error::Precondition(format!("|φ(z)| = {} must be below 1", w.norm())));
    }
    Ok(psi.inverse(1.0 / (1.0 - z.norm())) / psi.inverse(1.0 / (1.0 - w.norm())))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularSweep {
    pub xi: Complex64,
    /// `(r, ratio)` for increasing `r`.
    pub points: Vec<(f64, f64)>,
    /// Nondecreasing along the radius and at least doubled from the first radius.
    pub grows: bool,
}

/// [`angular_ratio`] along `z = rξ` for the given radii.
pub fn angular_sweep(map: &SchurMap, xi: Complex64, psi: &OrliczFunction, radii: &[f64]) -> Result<AngularSweep> {
    let mut rs = radii.to_vec();
    rs.sort_by(f64::total_cmp);
    let points = rs
        .iter()
        .map(|&r| Ok((r, angular_ratio(map, xi * r, psi)?)))
        .collect::<Result<Vec<_>>>()?;
    let grows = points.len() >= 2
        && points.windows(2).all(|p| p[1].1 >= p[0].1 * (1.0 - 1e-12))
        && points.last().unwrap().1 >= VERDICT_FACTOR * points[0].1;
    Ok(AngularSweep { xi, points, grows })
}
