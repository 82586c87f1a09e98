//! The counting function `N_φ(w) = Σ log 1/|z|` over preimages `φ(z) = w` in the disk, and
//! its maximal functions over annuli, windows and sectors.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::area::{counting_integral, ConvexDomain, QuadSpec};
use crate::error::{Error, Result};
use crate::geometry::relative_angle;
use crate::par;
use crate::symbol::SchurMap;
use crate::tolerances::{CLUSTER_TOL, EPS_EXCLUSION, TOL_BASE, TOL_ROOT};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Preimage {
    pub z: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreimageSet {
    pub w: Complex64,
    pub roots: Vec<Preimage>,
    /// Solutions with `|z| ≥ 1 - EPS_EXCLUSION`, dropped as boundary points.
    pub excluded: usize,
    pub max_residual: f64,
}

impl PreimageSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn counting_sum(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| r.multiplicity as f64 * -r.z.norm().ln())
            .sum()
    }
}

fn refine(map: &SchurMap, w: Complex64, mut z: Complex64) -> (Complex64, f64) {
    let mut residual = (map.eval(z) - w).norm();
    for _ in 0..20 {
        if residual <= 0.1 * TOL_ROOT {
            break;
        }
        let d = map.eval_derivative(z);
        if d.norm() == 0.0 {
            break;
        }
        let candidate = z - (map.eval(z) - w) / d;
        if candidate.norm() > 1.0 {
            break;
        }
        let r = (map.eval(candidate) - w).norm();
        if !(r < residual) {
            break;
        }
        z = candidate;
        residual = r;
    }
    (z, residual)
}

/// All solutions of `φ(z) = w` in `|z| < 1 - EPS_EXCLUSION`, clustered by multiplicity.
pub fn preimages(map: &SchurMap, w: Complex64, tol_root: f64) -> Result<PreimageSet> {
    if w.norm() >= 1.0 {
        return Err(Error::Domain {
            re: w.re,
            im: w.im,
            modulus: w.norm(),
        });
    }
    let cleared = map.clear_to_polynomial(w)?;
    let raw = cleared.roots()?;
    let tolerance = tol_root * (1.0 + cleared.degree() as f64);

    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    let mut excluded = 0;
    let mut max_residual: f64 = 0.0;
    for z0 in raw {
        if z0.norm() >= 1.0 + 1e-6 {
            excluded += 1;
            continue;
        }
        let (z, residual) = refine(map, w, z0);
        if z.norm() >= 1.0 - EPS_EXCLUSION {
            excluded += 1;
            continue;
        }
        if residual > tolerance {
            return Err(Error::Solver { residual, tolerance });
        }
        max_residual = max_residual.max(residual);
        match clusters.iter_mut().find(|(c, _)| (*c - z).norm() <= CLUSTER_TOL) {
            Some((c, m)) => {
                *c = (*c * *m as f64 + z) / (*m + 1) as f64;
                *m += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    clusters.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    Ok(PreimageSet {
        w,
        roots: clusters
            .into_iter()
            .map(|(z, multiplicity)| Preimage { z, multiplicity })
            .collect(),
        excluded,
        max_residual,
    })
}

/// `N_φ(w)`; undefined within `TOL_BASE` of `φ(0)`.
pub fn counting_function(map: &SchurMap, w: Complex64) -> Result<f64> {
    let base = map.at_zero();
    if (w - base).norm() < TOL_BASE {
        return Err(Error::BasePoint {
            re: w.re,
            im: w.im,
            tolerance: TOL_BASE,
        });
    }
    Ok(preimages(map, w, TOL_ROOT)?.counting_sum())
}

/// Lattice sizes for the maximal-function search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_radial: usize,
    pub n_angular: usize,
    pub refinement_levels: u32,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_radial: 32,
            n_angular: 256,
            refinement_levels: 3,
        }
    }
}

impl GridSpec {
    pub fn new(n_radial: usize, n_angular: usize, refinement_levels: u32) -> Result<Self> {
        if n_radial < 2 || n_angular < 2 || refinement_levels > 8 {
            return Err(Error::Precondition(format!(
                "grid {n_radial}×{n_angular} with {refinement_levels} levels"
            )));
        }
        Ok(GridSpec {
            n_radial,
            n_angular,
            refinement_levels,
        })
    }
}

/// Cells refined per level, and the refinement factor between levels.
const TOP_CELLS: usize = 8;
const REFINE_FACTOR: i64 = 4;
const REFINE_REACH: i64 = 4;
/// Boundary samples used to seed nodes where the image of the circle meets the region.
const GUIDE_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalFunctionSample {
    /// `t` for annuli, `h` for windows and sectors.
    pub parameter: f64,
    pub value: f64,
    pub argmax_w: Complex64,
    pub grid: GridSpec,
    /// Running maximum after the coarse pass and after each refinement level.
    pub level_values: Vec<f64>,
    pub evaluated: usize,
    pub skipped: usize,
}

/// Region swept by a maximal function, parameterized by `(u, v) ∈ [0,1]²` with `u = 0` on
/// the edge farthest from the unit circle.
#[derive(Debug, Clone, Copy)]
enum Sweep {
    Annulus { inner: f64 },
    Window { xi: Complex64, h: f64 },
    Sector { xi: Complex64, h: f64 },
    Disk,
}

impl Sweep {
    fn periodic(&self) -> bool {
        matches!(self, Sweep::Annulus { .. } | Sweep::Disk)
    }

    fn point(&self, u: f64, v: f64) -> Complex64 {
        let outer = 1.0 - EPS_EXCLUSION;
        match *self {
            Sweep::Annulus { inner } => {
                Complex64::from_polar(inner + u * (outer - inner), TAU * v)
            }
            Sweep::Window { xi, h } => {
                let inner = 1.0 - h;
                xi * Complex64::from_polar(inner + u * (outer - inner), h * (2.0 * v - 1.0))
            }
            Sweep::Sector { xi, h } => {
                let psi = PI * (v - 0.5);
                let reach = h.min(2.0 * psi.cos()).max(0.0);
                xi * (1.0 - Complex64::from_polar(reach * (1.0 - u), psi))
            }
            Sweep::Disk => Complex64::from_polar(u * outer, TAU * v),
        }
    }

    /// Angular coordinate `v` of the far-edge node matching a boundary value `p` that reaches
    /// the region.
    fn guide(&self, p: Complex64) -> Option<f64> {
        match *self {
            Sweep::Annulus { inner } => (p.norm() >= inner).then(|| p.arg().rem_euclid(TAU) / TAU),
            Sweep::Window { xi, h } => {
                let a = relative_angle(p, xi);
                (p.norm() >= 1.0 - h && a.abs() <= h).then(|| 0.5 * (a / h + 1.0))
            }
            Sweep::Sector { xi, h } => {
                let q = 1.0 - p * xi.conj();
                (q.norm() <= h && q.norm() > 0.0)
                    .then(|| q.arg().clamp(-FRAC_PI_2, FRAC_PI_2) / PI + 0.5)
            }
            Sweep::Disk => None,
        }
    }
}

struct Lattice {
    sweep: Sweep,
    /// Largest radial index and angular period (or largest index) on the finest lattice.
    j_max: i64,
    k_span: i64,
}

impl Lattice {
    fn new(sweep: Sweep, grid: &GridSpec) -> Self {
        let fine = REFINE_FACTOR.pow(grid.refinement_levels);
        let j_max = (grid.n_radial as i64 - 1) * fine;
        let k_span = if sweep.periodic() {
            grid.n_angular as i64 * fine
        } else {
            (grid.n_angular as i64 - 1) * fine
        };
        Lattice { sweep, j_max, k_span }
    }

    fn normalize(&self, j: i64, k: i64) -> Option<(i64, i64)> {
        if j < 0 || j > self.j_max {
            return None;
        }
        if self.sweep.periodic() {
            Some((j, k.rem_euclid(self.k_span)))
        } else if (0..=self.k_span).contains(&k) {
            Some((j, k))
        } else {
            None
        }
    }

    fn point(&self, j: i64, k: i64) -> Complex64 {
        self.sweep
            .point(j as f64 / self.j_max as f64, k as f64 / self.k_span as f64)
    }
}

/// `(value, k, j)` ordering: larger value first, then smaller angular and radial index.
fn better(a: (f64, i64, i64), b: (f64, i64, i64)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && (a.1, a.2) < (b.1, b.2))
}

fn maximize(map: &SchurMap, sweep: Sweep, parameter: f64, grid: GridSpec) -> MaximalFunctionSample {
    let lattice = Lattice::new(sweep, &grid);
    let fine = REFINE_FACTOR.pow(grid.refinement_levels);
    let mut values: HashMap<(i64, i64), Option<f64>> = HashMap::new();

    let evaluate = |values: &mut HashMap<(i64, i64), Option<f64>>, nodes: Vec<(i64, i64)>| {
        let fresh: Vec<(i64, i64)> = {
            let mut seen = std::collections::HashSet::new();
            nodes
                .into_iter()
                .filter(|n| !values.contains_key(n) && seen.insert(*n))
                .collect()
        };
        let results = par::map(&fresh, |&(j, k)| {
            let w = lattice.point(j, k);
            if w.norm() >= 1.0 - EPS_EXCLUSION {
                return None;
            }
            counting_function(map, w).ok()
        });
        values.extend(fresh.into_iter().zip(results));
    };

    let mut coarse = Vec::with_capacity(grid.n_radial * grid.n_angular);
    for k in 0..grid.n_angular as i64 {
        for j in 0..grid.n_radial as i64 {
            coarse.push((j * fine, k * fine));
        }
    }
    for i in 0..GUIDE_SAMPLES {
        let p = map.boundary_value(TAU * i as f64 / GUIDE_SAMPLES as f64);
        if let Some(v) = sweep.guide(p) {
            let k = (v * lattice.k_span as f64).round() as i64;
            if let Some(node) = lattice.normalize(0, k) {
                coarse.push(node);
            }
        }
    }
    evaluate(&mut values, coarse);

    let best_of = |values: &HashMap<(i64, i64), Option<f64>>| {
        let mut ranked: Vec<(f64, i64, i64)> = values
            .iter()
            .filter_map(|(&(j, k), v)| v.map(|v| (v, k, j)))
            .collect();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
        ranked
    };

    let mut level_values = Vec::with_capacity(grid.refinement_levels as usize + 1);
    level_values.push(best_of(&values).first().map_or(0.0, |b| b.0));
    for level in 1..=grid.refinement_levels {
        let step = fine / REFINE_FACTOR.pow(level);
        let ranked = best_of(&values);
        let mut nodes = Vec::new();
        for &(_, k, j) in ranked.iter().take(TOP_CELLS) {
            for a in -REFINE_REACH..=REFINE_REACH {
                for b in -REFINE_REACH..=REFINE_REACH {
                    if let Some(node) = lattice.normalize(j + a * step, k + b * step) {
                        nodes.push(node);
                    }
                }
            }
        }
        evaluate(&mut values, nodes);
        level_values.push(best_of(&values).first().map_or(0.0, |b| b.0));
    }

    let mut best: Option<(f64, i64, i64)> = None;
    let mut skipped = 0;
    for (&(j, k), v) in &values {
        match v {
            Some(v) => {
                let cand = (*v, k, j);
                if best.map_or(true, |b| better(cand, b)) {
                    best = Some(cand);
                }
            }
            None => skipped += 1,
        }
    }
    let (mut value, k, j) = best.unwrap_or((0.0, 0, 0));
    let mut argmax_w = lattice.point(j, k);
    if value > 0.0 {
        let eval = |u: f64, v: f64| {
            let w = sweep.point(u, v);
            let n = if w.norm() < 1.0 - EPS_EXCLUSION {
                counting_function(map, w).unwrap_or(0.0)
            } else {
                0.0
            };
            (n, w)
        };
        let u0 = j as f64 / lattice.j_max as f64;
        let v0 = k as f64 / lattice.k_span as f64;
        let du = 1.0 / lattice.j_max as f64;
        let dv = 1.0 / lattice.k_span as f64;
        let mut edges: Vec<Box<dyn Fn(f64) -> (f64, Complex64) + '_>> = Vec::new();
        let (v_lo, v_hi) = if sweep.periodic() { (v0 - dv, v0 + dv) } else { ((v0 - dv).max(0.0), (v0 + dv).min(1.0)) };
        if j == 0 {
            edges.push(Box::new(move |x| eval(0.0, v_lo + x * (v_hi - v_lo))));
        }
        if !sweep.periodic() && (k == 0 || k == lattice.k_span) {
            let (u_lo, u_hi) = ((u0 - du).max(0.0), (u0 + du).min(1.0));
            edges.push(Box::new(move |x| eval(u_lo + x * (u_hi - u_lo), v0)));
        }
        for edge in &edges {
            let (n, w) = golden_max(edge);
            if n > value {
                value = n;
                argmax_w = w;
            }
        }
    }
    MaximalFunctionSample {
        parameter,
        value,
        argmax_w,
        grid,
        level_values,
        evaluated: values.len(),
        skipped,
    }
}

/// Golden-section search for the maximum of `f` on `[0, 1]`, returning the best point seen.
/// The lattice leaves the supremum on the region boundary within one fine step; this pins it
/// down to rounding.
fn golden_max(f: &dyn Fn(f64) -> (f64, Complex64)) -> (f64, Complex64) {
    const RATIO: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (0.0, 1.0);
    let mut best = f(0.0);
    for x in [1.0, 0.5] {
        let y = f(x);
        if y.0 > best.0 {
            best = y;
        }
    }
    let mut x1 = b - RATIO * (b - a);
    let mut x2 = a + RATIO * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        for y in [f1, f2] {
            if y.0 > best.0 {
                best = y;
            }
        }
        if f1.0 >= f2.0 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - RATIO * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + RATIO * (b - a);
            f2 = f(x2);
        }
        if b - a <= 1e-15 {
            break;
        }
    }
    for y in [f1, f2] {
        if y.0 > best.0 {
            best = y;
        }
    }
    best
}

fn check_unit(xi: Complex64) -> Result<()> {
    if (xi.norm() - 1.0).abs() <= 1e-12 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("|ξ| = {} is not 1", xi.norm())))
    }
}

/// `ν_φ(t) = sup_{|w| ≥ 1-t} N_φ(w)`, as a lower bound from a refined lattice search.
pub fn nu(map: &SchurMap, t: f64, grid: GridSpec) -> Result<MaximalFunctionSample> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Precondition(format!("t = {t} must lie in (0, 1)")));
    }
    Ok(maximize(map, Sweep::Annulus { inner: 1.0 - t }, t, grid))
}

/// Supremum of `N_φ` over `W(ξ, h) ∩ 𝔻`.
pub fn nu_window(map: &SchurMap, xi: Complex64, h: f64, grid: GridSpec) -> Result<MaximalFunctionSample> {
    check_unit(xi)?;
    if !(h > 0.0) {
        return Err(Error::Precondition(format!("h = {h} must be positive")));
    }
    let sweep = if h >= 1.0 { Sweep::Disk } else { Sweep::Window { xi, h } };
    Ok(maximize(map, sweep, h, grid))
}

/// Supremum of `N_φ` over `S(ξ, h) ∩ 𝔻`.
pub fn nu_sector(map: &SchurMap, xi: Complex64, h: f64, grid: GridSpec) -> Result<MaximalFunctionSample> {
    check_unit(xi)?;
    if !(h > 0.0) {
        return Err(Error::Precondition(format!("h = {h} must be positive")));
    }
    let sweep = if h >= 2.0 { Sweep::Disk } else { Sweep::Sector { xi, h } };
    Ok(maximize(map, sweep, h, grid))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubaveragingRecord {
    /// `N_φ(w₀)`
    pub lhs: f64,
    /// Mean of `N_φ` over the disc `Δ(w₀, radius)`.
    pub rhs: f64,
    pub pass: bool,
}

/// Compares `N_φ(w₀)` with its mean over a disc that avoids `φ(0)`.
pub fn subaveraging_check(map: &SchurMap, w0: Complex64, radius: f64, quad: &QuadSpec) -> Result<SubaveragingRecord> {
    let domain = ConvexDomain::disc(w0, radius)?;
    if (map.at_zero() - w0).norm() <= radius {
        return Err(Error::Precondition(format!(
            "φ(0) = {} lies in the disc of radius {radius} about {w0}",
            map.at_zero()
        )));
    }
    let lhs = counting_function(map, w0)?;
    let integral = counting_integral(map, &domain, quad, |_| 1.0)?;
    let rhs = integral.value / (radius * radius);
    Ok(SubaveragingRecord {
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + quad.tol_quad),
    })
}
