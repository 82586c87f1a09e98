//! Pull-back measure `m_φ` of boundary neighbourhoods, computed as the normalized length of
//! the arcs `{θ : φ*(e^{iθ}) ∈ region}`, and the Carleson function
//! `ρ_φ(h) = sup_ξ m_φ(W(ξ, h))`.
//!
//! Arcs are certified rather than sampled. Each seed cell is tested against a Lipschitz bound
//! on `θ ↦ φ*(e^{iθ})`: a cell whose midpoint image lies farther from the region boundary than
//! the bound allows is wholly inside or wholly outside. Other cells are halved, and the
//! membership transitions left at the finest level are located by bisection.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CarlesonWindow, DiskSector, Region};
use crate::par;
use crate::symbol::SchurMap;
use crate::tolerances::{DEFAULT_SEED, TOL_THETA};

/// Width below which cells are no longer halved.
const LEAF_WIDTH: f64 = 4.0 * TOL_THETA;
/// Node budget per seed cell; cells that exhaust it are reported as unresolved.
const CELL_BUDGET: usize = 1 << 14;
/// Unresolved measure above which a mass carries a [`ResolutionWarning`].
const WARN_MASS: f64 = 1e-9;
/// Safety factor on the sampled maximum of `|φ'|` over the circle.
const LIPSCHITZ_MARGIN: f64 = 1.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRes {
    pub n_seed: usize,
}

impl Default for BoundaryRes {
    fn default() -> Self {
        BoundaryRes { n_seed: 4096 }
    }
}

/// Raised when part of the circle could not be classified at the finest cell width, so a
/// mass may be off by up to `unresolved_mass`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolutionWarning {
    pub unresolved_mass: f64,
    pub n_seed: usize,
}

/// Disjoint arcs `(start, end)` with `start ∈ [0, 2π)` and `start < end ≤ start + 2π`; an arc
/// through angle 0 has `end > 2π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSet {
    pub arcs: Vec<(f64, f64)>,
    pub mass: f64,
    /// Normalized length of cells left unclassified at the finest width.
    pub unresolved_mass: f64,
    pub warning: Option<ResolutionWarning>,
}

impl ArcSet {
    pub fn contains_angle(&self, theta: f64) -> bool {
        let t = theta.rem_euclid(TAU);
        self.arcs
            .iter()
            .any(|&(a, b)| (t >= a && t <= b) || (t + TAU >= a && t + TAU <= b))
    }
}

/// Membership test with one-sided distance bounds, as used by the certified scan.
trait Indicator: Sync {
    fn inside(&self, p: Complex64) -> bool;
    /// Lower bound on the distance to the region, for `p` outside.
    fn gap_outside(&self, p: Complex64) -> f64;
    /// Lower bound on the distance to the complement, for `p` inside.
    fn gap_inside(&self, p: Complex64) -> f64;
}

impl Indicator for Region {
    fn inside(&self, p: Complex64) -> bool {
        self.contains(p)
    }
    fn gap_outside(&self, p: Complex64) -> f64 {
        self.distance_lower_bound(p)
    }
    fn gap_inside(&self, p: Complex64) -> f64 {
        self.margin_lower_bound(p)
    }
}

/// `{|w| ≥ inner}`
struct OuterAnnulus {
    inner: f64,
}

impl Indicator for OuterAnnulus {
    fn inside(&self, p: Complex64) -> bool {
        p.norm() >= self.inner
    }
    fn gap_outside(&self, p: Complex64) -> f64 {
        (self.inner - p.norm()).max(0.0)
    }
    fn gap_inside(&self, p: Complex64) -> f64 {
        (p.norm() - self.inner).max(0.0)
    }
}

/// Boundary values of a map on a uniform seed grid, with a Lipschitz bound for
/// `θ ↦ φ*(e^{iθ})`. Seed `k` sits at the centre of the cell `[θ_k - step/2, θ_k + step/2]`.
#[derive(Debug, Clone)]
pub struct BoundaryTrace {
    map: SchurMap,
    step: f64,
    seeds: Vec<Complex64>,
    lipschitz: f64,
}

impl BoundaryTrace {
    pub fn new(map: &SchurMap, res: BoundaryRes) -> Self {
        let n = res.n_seed.max(16);
        let step = TAU / n as f64;
        let seeds: Vec<Complex64> = (0..n).map(|k| map.boundary_value(step * k as f64)).collect();
        let max_derivative = (0..n)
            .map(|k| map.eval_derivative(Complex64::from_polar(1.0, step * k as f64)).norm())
            .fold(0.0, f64::max);
        BoundaryTrace {
            map: map.clone(),
            step,
            seeds,
            lipschitz: LIPSCHITZ_MARGIN * max_derivative + 1e-12,
        }
    }

    pub fn map(&self) -> &SchurMap {
        &self.map
    }

    pub fn n_seed(&self) -> usize {
        self.seeds.len()
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Edges of seed cell `k`, computed identically for neighbouring cells so they meet exactly.
    fn cell(&self, k: usize) -> (f64, f64) {
        (self.step * (k as f64 - 0.5), self.step * (k as f64 + 0.5))
    }

    fn value(&self, theta: f64) -> Complex64 {
        self.map.boundary_value(theta)
    }

    /// Classifies one seed cell, appending inside intervals in increasing order and returning
    /// the unresolved length.
    fn scan_cell<I: Indicator + ?Sized>(&self, ind: &I, k: usize, out: &mut Vec<(f64, f64)>) -> f64 {
        let (lo, hi) = self.cell(k);
        let mut stack = vec![(lo, hi, self.seeds[k])];
        let mut budget = CELL_BUDGET;
        let mut unresolved = 0.0;
        while let Some((a, b, p)) = stack.pop() {
            let slack = self.lipschitz * 0.5 * (b - a);
            let inside = ind.inside(p);
            if inside && ind.gap_inside(p) > slack {
                out.push((a, b));
                continue;
            }
            if !inside && ind.gap_outside(p) > slack {
                continue;
            }
            let c = 0.5 * (a + b);
            if b - a <= LEAF_WIDTH || budget < 2 {
                unresolved += self.resolve_leaf(ind, a, c, b, inside, out);
                continue;
            }
            budget -= 2;
            stack.push((c, b, self.value(0.5 * (c + b))));
            stack.push((a, c, self.value(0.5 * (a + c))));
        }
        unresolved
    }

    /// Splits a leaf at the transitions between its endpoints and midpoint; returns the leaf
    /// width when no transition is seen, since a short arc could still hide inside.
    fn resolve_leaf<I: Indicator + ?Sized>(
        &self,
        ind: &I,
        a: f64,
        c: f64,
        b: f64,
        mid_inside: bool,
        out: &mut Vec<(f64, f64)>,
    ) -> f64 {
        let at_a = ind.inside(self.value(a));
        let at_b = ind.inside(self.value(b));
        for (lo, hi, m_lo, m_hi) in [(a, c, at_a, mid_inside), (c, b, mid_inside, at_b)] {
            if m_lo == m_hi {
                if m_lo {
                    out.push((lo, hi));
                }
            } else {
                let t = self.bisect(ind, lo, hi, m_lo);
                if m_lo {
                    out.push((lo, t));
                } else {
                    out.push((t, hi));
                }
            }
        }
        if at_a == mid_inside && mid_inside == at_b {
            b - a
        } else {
            0.0
        }
    }

    fn bisect<I: Indicator + ?Sized>(&self, ind: &I, mut lo: f64, mut hi: f64, m_lo: bool) -> f64 {
        while hi - lo > TOL_THETA {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if ind.inside(self.value(mid)) == m_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn arcs_over<I: Indicator + ?Sized>(&self, ind: &I, cells: impl Iterator<Item = usize>) -> ArcSet {
        let mut pieces = Vec::new();
        let mut unresolved = 0.0;
        for k in cells {
            unresolved += self.scan_cell(ind, k, &mut pieces);
        }
        let unresolved_mass = unresolved / TAU;
        let seam = (self.cell(0).0, self.cell(self.seeds.len() - 1).1);
        assemble(pieces, seam, unresolved_mass, self.n_seed())
    }

    fn arcs_all<I: Indicator + ?Sized>(&self, ind: &I) -> ArcSet {
        self.arcs_over(ind, 0..self.seeds.len())
    }

    pub fn window_mass(&self, w: &CarlesonWindow) -> ArcSet {
        let region = Region::Window(*w);
        if w.is_whole_disk() {
            return self.arcs_all(&region);
        }
        let index = WindowIndex::new(self, w.h);
        self.arcs_over(&region, index.cells(w.xi.arg()))
    }

    pub fn sector_mass(&self, s: &DiskSector) -> ArcSet {
        let region = Region::Sector(*s);
        let slack = self.lipschitz * 0.5 * self.step;
        let cells: Vec<usize> = (0..self.seeds.len())
            .filter(|&k| region.distance_lower_bound(self.seeds[k]) <= slack)
            .collect();
        self.arcs_over(&region, cells.into_iter())
    }

    pub fn region_mass(&self, region: &Region) -> ArcSet {
        match region {
            Region::Window(w) => self.window_mass(w),
            Region::Sector(s) => self.sector_mass(s),
        }
    }

    /// `{θ : |φ*(e^{iθ})| ≥ 1 - h}`
    fn radially_active(&self, h: f64) -> ArcSet {
        let ind = OuterAnnulus { inner: 1.0 - h };
        let slack = self.lipschitz * 0.5 * self.step;
        let cells: Vec<usize> = (0..self.seeds.len())
            .filter(|&k| ind.gap_outside(self.seeds[k]) <= slack)
            .collect();
        self.arcs_over(&ind, cells.into_iter())
    }
}

/// Merges sorted pieces into arcs, joining the last arc to the first across the seam.
fn assemble(pieces: Vec<(f64, f64)>, seam: (f64, f64), unresolved_mass: f64, n_seed: usize) -> ArcSet {
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (a, b) in pieces {
        match merged.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    if merged.len() > 1 && merged[0].0 <= seam.0 && merged.last().unwrap().1 >= seam.1 {
        let first = merged.remove(0);
        let last = merged.last_mut().unwrap();
        last.1 = first.1 + (seam.1 - seam.0);
    }
    merged.retain(|&(a, b)| b - a > TOL_THETA);
    let total: f64 = merged.iter().map(|&(a, b)| b - a).sum();
    let mass = (total / TAU).clamp(0.0, 1.0);
    let arcs = merged
        .into_iter()
        .map(|(a, b)| {
            let start = a.rem_euclid(TAU);
            (start, start + (b - a).min(TAU))
        })
        .collect();
    ArcSet {
        arcs,
        mass,
        unresolved_mass,
        warning: (unresolved_mass > WARN_MASS).then_some(ResolutionWarning {
            unresolved_mass,
            n_seed,
        }),
    }
}

/// Seeds whose image may reach `|w| ≥ 1 - h`, sorted by argument, so that the cells a window
/// can touch are found by binary search.
struct WindowIndex {
    sorted: Vec<(f64, usize)>,
    h: f64,
    pad: f64,
}

impl WindowIndex {
    fn new(trace: &BoundaryTrace, h: f64) -> Self {
        let slack = trace.lipschitz * 0.5 * trace.step;
        let floor = 1.0 - h - slack;
        let mut sorted: Vec<(f64, usize)> = trace
            .seeds
            .iter()
            .enumerate()
            .filter(|(_, p)| p.norm() >= floor)
            .map(|(k, p)| (p.arg().rem_euclid(TAU), k))
            .collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        // a seed outside the cone by more than `pad` in angle is farther than `slack` from it
        let pad = if floor > 0.0 && slack < floor {
            (slack / floor).asin() + 1e-12
        } else {
            PI
        };
        WindowIndex { sorted, h, pad }
    }

    fn cells(&self, angle: f64) -> impl Iterator<Item = usize> {
        let reach = self.h + self.pad;
        let mut out: Vec<usize> = if reach >= PI {
            self.sorted.iter().map(|&(_, k)| k).collect()
        } else {
            let lo = (angle - reach).rem_euclid(TAU);
            let hi = (angle + reach).rem_euclid(TAU);
            let pick = |from: f64, to: f64| {
                let i = self.sorted.partition_point(|&(a, _)| a < from);
                let j = self.sorted.partition_point(|&(a, _)| a <= to);
                self.sorted[i..j].iter().map(|&(_, k)| k).collect::<Vec<_>>()
            };
            if lo <= hi {
                pick(lo, hi)
            } else {
                let mut v = pick(lo, TAU);
                v.extend(pick(0.0, hi));
                v
            }
        };
        out.sort_unstable();
        out.into_iter()
    }
}

pub fn pullback_window_mass(map: &SchurMap, w: &CarlesonWindow, res: BoundaryRes) -> ArcSet {
    BoundaryTrace::new(map, res).window_mass(w)
}

pub fn pullback_sector_mass(map: &SchurMap, s: &DiskSector, res: BoundaryRes) -> ArcSet {
    BoundaryTrace::new(map, res).sector_mass(s)
}

/// `m_φ(W(1, 1))`, which is the total mass 1 of a probability measure.
pub fn total_mass_check(map: &SchurMap) -> f64 {
    let whole = CarlesonWindow::new(Complex64::new(1.0, 0.0), 1.0).expect("valid window");
    pullback_window_mass(map, &whole, BoundaryRes::default()).mass
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterRes {
    pub n_centers: usize,
    pub n_seed: usize,
    pub refinement: u32,
}

impl Default for CenterRes {
    fn default() -> Self {
        CenterRes {
            n_centers: 512,
            n_seed: 4096,
            refinement: 2,
        }
    }
}

const REFINE_TOP: usize = 4;
const REFINE_FACTOR: f64 = 8.0;
const REFINE_REACH: i32 = 8;
/// Cap on the angle samples used to locate dense windows.
const MAX_DENSITY_SAMPLES: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlesonSample {
    pub h: f64,
    pub value: f64,
    pub argmax_xi: Complex64,
    pub resolution: CenterRes,
    pub warning: Option<ResolutionWarning>,
}

/// `ρ_φ(h) = sup_ξ m_φ(W(ξ, h))`.
pub fn rho(map: &SchurMap, h: f64, res: CenterRes) -> Result<CarlesonSample> {
    let trace = BoundaryTrace::new(map, BoundaryRes { n_seed: res.n_seed });
    rho_with_trace(&trace, h, res)
}

/// As [`rho`], reusing a precomputed boundary trace.
pub fn rho_with_trace(trace: &BoundaryTrace, h: f64, res: CenterRes) -> Result<CarlesonSample> {
    if !(h > 0.0) {
        return Err(Error::Precondition(format!("h = {h} must be positive")));
    }
    let one = Complex64::new(1.0, 0.0);
    if h >= 1.0 {
        return Ok(CarlesonSample {
            h,
            value: 1.0,
            argmax_xi: one,
            resolution: res,
            warning: None,
        });
    }
    let active = trace.radially_active(h);
    if active.arcs.is_empty() {
        return Ok(CarlesonSample {
            h,
            value: 0.0,
            argmax_xi: one,
            resolution: res,
            warning: active.warning,
        });
    }

    let index = WindowIndex::new(trace, h);
    let mass_at = |angle: &f64| {
        let w = CarlesonWindow::at_angle(*angle, h).expect("unit centre");
        let region = Region::Window(w);
        let arcs = trace.arcs_over(&region, index.cells(*angle));
        (arcs.mass, arcs.warning)
    };

    // uniform centres, plus the centres of the densest windows in the distribution of
    // arg φ* over the radially active arcs
    let coarse_step = TAU / res.n_centers.max(1) as f64;
    let mut centres: Vec<f64> = (0..res.n_centers).map(|j| coarse_step * j as f64).collect();
    centres.extend(dense_window_centres(trace, &active, h, REFINE_TOP));

    let mut evaluated: Vec<(f64, f64)> = Vec::new();
    let mut warning: Option<ResolutionWarning> = None;
    let mut run = |angles: Vec<f64>, evaluated: &mut Vec<(f64, f64)>| {
        let angles: Vec<f64> = angles.into_iter().map(|a| a.rem_euclid(TAU)).collect();
        let results = par::map(&angles, mass_at);
        for (a, (m, w)) in angles.into_iter().zip(results) {
            if let Some(w) = w {
                let worst = warning.map_or(0.0, |x: ResolutionWarning| x.unresolved_mass);
                if w.unresolved_mass > worst {
                    warning = Some(w);
                }
            }
            evaluated.push((m, a));
        }
    };
    run(centres, &mut evaluated);

    let mut spacing = coarse_step.min(0.5 * h);
    for _ in 0..res.refinement {
        spacing /= REFINE_FACTOR;
        let top = top_distinct(&evaluated, REFINE_TOP);
        let mut next = Vec::new();
        for a in top {
            for j in -REFINE_REACH..=REFINE_REACH {
                if j != 0 {
                    next.push(a + spacing * j as f64);
                }
            }
        }
        run(next, &mut evaluated);
    }

    let (value, angle) = top_distinct(&evaluated, 1)
        .first()
        .map(|&a| (evaluated.iter().find(|e| e.1 == a).unwrap().0, a))
        .unwrap_or((0.0, 0.0));
    Ok(CarlesonSample {
        h,
        value,
        argmax_xi: Complex64::from_polar(1.0, angle),
        resolution: res,
        warning,
    })
}

/// Angles of the `count` best entries, larger mass first and smaller angle on ties.
fn top_distinct(evaluated: &[(f64, f64)], count: usize) -> Vec<f64> {
    let mut sorted: Vec<(f64, f64)> = evaluated.to_vec();
    sorted.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.total_cmp(&y.1)));
    sorted.dedup_by(|x, y| x.1 == y.1);
    sorted.into_iter().take(count).map(|e| e.1).collect()
}

/// Centres of the heaviest angular windows of width `2h` for the sampled distribution of
/// `arg φ*` on the active arcs.
fn dense_window_centres(trace: &BoundaryTrace, active: &ArcSet, h: f64, count: usize) -> Vec<f64> {
    let total: f64 = active.arcs.iter().map(|&(a, b)| b - a).sum();
    let spacing = (0.25 * h).min(trace.step).max(total / MAX_DENSITY_SAMPLES as f64);
    let mut samples: Vec<(f64, f64)> = Vec::new();
    for &(a, b) in &active.arcs {
        let n = ((b - a) / spacing).ceil().max(1.0) as usize;
        let weight = (b - a) / n as f64;
        for i in 0..n {
            let theta = a + (i as f64 + 0.5) * weight;
            samples.push((trace.value(theta).arg().rem_euclid(TAU), weight));
        }
    }
    samples.sort_by(|x, y| x.0.total_cmp(&y.0));
    let n = samples.len();
    // weights of samples in [a_i, a_i + 2h], with the list unrolled once for wraparound
    let angle = |j: usize| if j < n { samples[j].0 } else { samples[j - n].0 + TAU };
    let mut sums = Vec::with_capacity(n);
    let mut j = 0;
    let mut acc = 0.0;
    for i in 0..n {
        if j < i {
            j = i;
            acc = 0.0;
        }
        while j < i + n && angle(j) <= samples[i].0 + 2.0 * h {
            acc += samples[j % n].1;
            j += 1;
        }
        sums.push((acc, samples[i].0 + h));
        acc -= samples[i].1;
    }
    let mut out = Vec::new();
    sums.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.total_cmp(&y.1)));
    for (_, centre) in sums {
        if out.iter().all(|&c: &f64| {
            let d = (c - centre).rem_euclid(TAU);
            d.min(TAU - d) > 0.5 * h
        }) {
            out.push(centre);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub alpha: f64,
    /// `C` in `ρ_φ(h) ≈ C h^α`.
    pub c: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
}

/// Checks that `h_list` has at least six entries and consecutive ratios of exactly 2.
pub fn check_dyadic(h_list: &[f64]) -> Result<Vec<f64>> {
    if h_list.len() < 6 {
        return Err(Error::Precondition(format!(
            "need at least 6 scales, got {}",
            h_list.len()
        )));
    }
    let mut sorted = h_list.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    for pair in sorted.windows(2) {
        if !(pair[1] > 0.0) || ((pair[0] / pair[1]) - 2.0).abs() > 1e-12 {
            return Err(Error::Precondition(format!(
                "scales {} and {} are not dyadic neighbours",
                pair[0], pair[1]
            )));
        }
    }
    Ok(sorted)
}

/// Least-squares slope and intercept of `ys` against `xs`, with the RMS residual.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    (slope, intercept, (rss / n).sqrt())
}

/// Fits `log ρ_φ(h) = α log h + log C` over dyadic scales below `1 - |φ(0)|`.
pub fn carleson_exponent_fit(map: &SchurMap, h_list: &[f64], res: CenterRes) -> Result<ExponentFit> {
    let hs = check_dyadic(h_list)?;
    let limit = 1.0 - map.at_zero().norm();
    if hs[0] >= limit {
        return Err(Error::Precondition(format!(
            "scale {} is not below 1 - |φ(0)| = {limit}",
            hs[0]
        )));
    }
    let trace = BoundaryTrace::new(map, BoundaryRes { n_seed: res.n_seed });
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &h in &hs {
        let r = rho_with_trace(&trace, h, res)?;
        if r.value <= 0.0 {
            return Err(Error::Fit(format!(
                "ρ_φ({h}) = 0: the boundary values stay away from the circle"
            )));
        }
        xs.push(h.ln());
        ys.push(r.value.ln());
    }
    let (alpha, intercept, residual) = linear_fit(&xs, &ys);
    Ok(ExponentFit {
        alpha,
        c: intercept.exp(),
        intercept,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloMass {
    pub mass: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Fractions of `n` seeded uniform boundary angles whose images fall in each region.
pub fn pushforward_monte_carlo(map: &SchurMap, regions: &[Region], n: usize, seed: u64) -> Vec<MonteCarloMass> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = vec![0usize; regions.len()];
    for _ in 0..n {
        let p = map.boundary_value(rng.gen_range(0.0..TAU));
        for (count, region) in hits.iter_mut().zip(regions) {
            if region.contains(p) {
                *count += 1;
            }
        }
    }
    hits.into_iter()
        .map(|h| MonteCarloMass {
            mass: h as f64 / n as f64,
            samples: n,
            seed,
        })
        .collect()
}

/// Default seed for [`pushforward_monte_carlo`].
pub const MONTE_CARLO_SEED: u64 = DEFAULT_SEED;
