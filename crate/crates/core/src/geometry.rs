//! Boundary neighbourhoods of the closed disk: Carleson windows `W(ξ, h)` and the
//! chordal sectors `S(ξ, h)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, Tolerance};

const UNIT_TOL: f64 = 1e-12;

fn check_unit(xi: Complex64) -> Result<()> {
    if (xi.norm() - 1.0).abs() <= UNIT_TOL {
        Ok(())
    } else {
        Err(Error::Precondition(format!("|ξ| = {} is not 1", xi.norm())))
    }
}

fn check_size(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("size h = {h} must be positive")))
    }
}

/// `arg(z ξ̄)` in `(-π, π]`.
pub fn relative_angle(z: Complex64, xi: Complex64) -> f64 {
    let a = (z * xi.conj()).arg();
    if a == -PI {
        PI
    } else {
        a
    }
}

/// `W(ξ, h) = {z ∈ 𝔻̄ : |z| ≥ 1 - h, |arg(z ξ̄)| ≤ h}`; the whole closed disk once `h ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonWindow {
    pub xi: Complex64,
    pub h: f64,
}

/// `S(ξ, h) = {z ∈ 𝔻̄ : |z - ξ| ≤ h}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskSector {
    pub xi: Complex64,
    pub h: f64,
}

impl CarlesonWindow {
    pub fn new(xi: Complex64, h: f64) -> Result<Self> {
        check_unit(xi)?;
        check_size(h)?;
        Ok(CarlesonWindow { xi, h })
    }

    pub fn at_angle(angle: f64, h: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(1.0, angle), h)
    }

    pub fn is_whole_disk(&self) -> bool {
        self.h >= 1.0
    }

    pub fn contains(&self, z: Complex64) -> bool {
        if self.is_whole_disk() {
            return true;
        }
        // the modulus clause is tested first so z = 0 never reaches the argument
        z.norm() >= 1.0 - self.h && relative_angle(z, self.xi).abs() <= self.h
    }

    pub fn normalized_area(&self) -> f64 {
        if self.is_whole_disk() {
            return 1.0;
        }
        let inner = 1.0 - self.h;
        polar_area(|_| Some((inner, 1.0)), -self.h, self.h, &[])
    }
}

impl DiskSector {
    pub fn new(xi: Complex64, h: f64) -> Result<Self> {
        check_unit(xi)?;
        check_size(h)?;
        Ok(DiskSector { xi, h })
    }

    pub fn at_angle(angle: f64, h: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(1.0, angle), h)
    }

    pub fn is_whole_disk(&self) -> bool {
        self.h >= 2.0
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.xi).norm() <= self.h
    }

    pub fn normalized_area(&self) -> f64 {
        if self.is_whole_disk() {
            return 1.0;
        }
        let h = self.h;
        // rotated so that ξ = 1; along the ray at angle θ the sector is an r-interval
        let extent = |theta: f64| {
            let (s, c) = theta.sin_cos();
            let disc = h * h - s * s;
            if disc < 0.0 {
                return None;
            }
            let root = disc.sqrt();
            let lo = (c - root).max(0.0);
            let hi = (c + root).min(1.0);
            (hi > lo).then_some((lo, hi))
        };
        let mut breaks = vec![2.0 * (0.5 * h).asin(), -2.0 * (0.5 * h).asin()];
        if h < 1.0 {
            breaks.extend([h.asin(), -h.asin()]);
        }
        polar_area(extent, -PI, PI, &breaks)
    }
}

/// Either kind of boundary neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region {
    Window(CarlesonWindow),
    Sector(DiskSector),
}

impl Region {
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            Region::Window(w) => w.contains(z),
            Region::Sector(s) => s.contains(z),
        }
    }

    pub fn normalized_area(&self) -> f64 {
        match self {
            Region::Window(w) => w.normalized_area(),
            Region::Sector(s) => s.normalized_area(),
        }
    }

    pub fn xi(&self) -> Complex64 {
        match self {
            Region::Window(w) => w.xi,
            Region::Sector(s) => s.xi,
        }
    }

    pub fn h(&self) -> f64 {
        match self {
            Region::Window(w) => w.h,
            Region::Sector(s) => s.h,
        }
    }

    pub fn is_whole_disk(&self) -> bool {
        match self {
            Region::Window(w) => w.is_whole_disk(),
            Region::Sector(s) => s.is_whole_disk(),
        }
    }

    /// A lower bound for the Euclidean distance from `p` to the region (0 inside).
    pub fn distance_lower_bound(&self, p: Complex64) -> f64 {
        match self {
            Region::Window(w) => {
                if w.is_whole_disk() {
                    return 0.0;
                }
                let modulus = p.norm();
                let radial = (1.0 - w.h) - modulus;
                let excess = relative_angle(p, w.xi).abs() - w.h;
                let angular = if excess <= 0.0 {
                    0.0
                } else if excess >= 0.5 * PI {
                    modulus
                } else {
                    modulus * excess.sin()
                };
                radial.max(angular).max(0.0)
            }
            Region::Sector(s) => ((p - s.xi).norm() - s.h).max(0.0),
        }
    }

    /// A lower bound for the distance from `p` to the complement of the region within the
    /// closed disk (0 outside).
    pub fn margin_lower_bound(&self, p: Complex64) -> f64 {
        if !self.contains(p) {
            return 0.0;
        }
        match self {
            Region::Window(w) => {
                if w.is_whole_disk() {
                    return f64::INFINITY;
                }
                let modulus = p.norm();
                let radial = modulus - (1.0 - w.h);
                let angular = modulus * (w.h - relative_angle(p, w.xi).abs()).sin();
                radial.min(angular).max(0.0)
            }
            Region::Sector(s) => {
                if s.is_whole_disk() {
                    return f64::INFINITY;
                }
                (s.h - (p - s.xi).norm()).max(0.0)
            }
        }
    }
}

impl From<CarlesonWindow> for Region {
    fn from(w: CarlesonWindow) -> Self {
        Region::Window(w)
    }
}

impl From<DiskSector> for Region {
    fn from(s: DiskSector) -> Self {
        Region::Sector(s)
    }
}

/// Normalized area `(1/π) ∫∫ r dr dθ` of a region given by its radial extent along each ray.
fn polar_area<E: Fn(f64) -> Option<(f64, f64)>>(extent: E, t0: f64, t1: f64, breaks: &[f64]) -> f64 {
    let integrand = |theta: f64| match extent(theta) {
        Some((lo, hi)) => 0.5 * (hi * hi - lo * lo),
        None => 0.0,
    };
    let r = quadrature::integrate(integrand, t0, t1, breaks, Tolerance::new(1e-14, 1e-12));
    r.value / PI
}

/// `|1 - āz|² - ¼(h² + |z - ξ|²)` for `a = (1 - h)ξ`; nonnegative on the closed disk when
/// `0 < h ≤ 1/2`.
pub fn kernel_lemma_margin(xi: Complex64, h: f64, z: Complex64) -> f64 {
    let a = xi * (1.0 - h);
    (1.0 - a.conj() * z).norm_sqr() - 0.25 * (h * h + (z - xi).norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContainmentReport {
    /// `W(ζ, s) ⊆ W(ξ, 2t)`
    pub window_nesting: bool,
    /// `S(ξ, 6s) ⊆ W(ξ, 12s)`
    pub sector_in_window: bool,
    /// `W(ξ, t) ⊆ S(ξ, 2t)`
    pub window_in_sector: bool,
    pub samples: usize,
}

impl ContainmentReport {
    pub fn pass(&self) -> bool {
        self.window_nesting && self.sector_in_window && self.window_in_sector
    }
}

fn sample_window(rng: &mut ChaCha8Rng, w: &CarlesonWindow) -> Complex64 {
    if w.is_whole_disk() {
        let r = rng.gen::<f64>().sqrt();
        return Complex64::from_polar(r, rng.gen_range(0.0..TAU));
    }
    let r0 = 1.0 - w.h;
    let r = (r0 * r0 + rng.gen::<f64>() * (1.0 - r0 * r0)).sqrt();
    let theta = w.xi.arg() + rng.gen_range(-w.h..=w.h);
    Complex64::from_polar(r, theta)
}

fn sample_sector(rng: &mut ChaCha8Rng, s: &DiskSector) -> Complex64 {
    loop {
        let z = s.xi + Complex64::new(rng.gen_range(-s.h..=s.h), rng.gen_range(-s.h..=s.h));
        if z.norm() <= 1.0 && s.contains(z) {
            return z;
        }
    }
}

/// Checks by sampling that `W(ζ,s) ⊆ W(ξ,2t)`, `S(ξ,6s) ⊆ W(ξ,12s)` and `W(ξ,t) ⊆ S(ξ,2t)`.
pub fn containment_selftest(
    xi: Complex64,
    t: f64,
    s: f64,
    zeta: Complex64,
    samples: usize,
    seed: u64,
) -> Result<ContainmentReport> {
    if !(0.0 < s && s <= t) {
        return Err(Error::Precondition(format!("need 0 < s ≤ t, got s = {s}, t = {t}")));
    }
    let outer = CarlesonWindow::new(xi, t)?;
    check_unit(zeta)?;
    if !outer.contains(zeta) {
        return Err(Error::Precondition("ζ must lie in W(ξ, t)".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let small = CarlesonWindow::new(zeta, s)?;
    let doubled = CarlesonWindow::new(xi, 2.0 * t)?;
    let window_nesting = (0..samples).all(|_| doubled.contains(sample_window(&mut rng, &small)));

    let sector = DiskSector::new(xi, 6.0 * s)?;
    let window = CarlesonWindow::new(xi, 12.0 * s)?;
    let sector_in_window = (0..samples).all(|_| window.contains(sample_sector(&mut rng, &sector)));

    let wide = DiskSector::new(xi, 2.0 * t)?;
    let window_in_sector = (0..samples).all(|_| wide.contains(sample_window(&mut rng, &outer)));

    Ok(ContainmentReport {
        window_nesting,
        sector_in_window,
        window_in_sector,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn window_membership_examples() {
        let w = CarlesonWindow::new(ONE, 0.1).unwrap();
        assert!(w.contains(c(0.95, 0.0)));
        assert!(!w.contains(Complex64::from_polar(0.95, 0.2)));
        assert!(!w.contains(c(0.0, 0.0)));
        assert!(CarlesonWindow::new(ONE, 1.5).unwrap().contains(c(0.0, 0.0)));
    }

    #[test]
    fn window_across_the_negative_axis() {
        let w = CarlesonWindow::at_angle(PI, 0.1).unwrap();
        assert!(w.contains(Complex64::from_polar(0.95, PI - 0.05)));
        assert!(w.contains(Complex64::from_polar(0.95, -PI + 0.05)));
        assert!(!w.contains(Complex64::from_polar(0.95, -PI + 0.2)));
    }

    #[test]
    fn sector_membership_examples() {
        let s = DiskSector::new(ONE, 0.2).unwrap();
        assert!(s.contains(c(0.9, 0.0)));
        assert!(!s.contains(c(0.0, 0.0)));
        assert!(DiskSector::new(ONE, 2.0).unwrap().contains(c(-1.0, 0.0)));
    }

    #[test]
    fn invalid_parameters() {
        assert!(CarlesonWindow::new(c(0.5, 0.0), 0.1).is_err());
        assert!(CarlesonWindow::new(ONE, 0.0).is_err());
        assert!(DiskSector::new(ONE, -1.0).is_err());
    }

    #[test]
    fn area_examples() {
        assert_eq!(DiskSector::new(ONE, 2.0).unwrap().normalized_area(), 1.0);
        assert_eq!(CarlesonWindow::new(ONE, 1.0).unwrap().normalized_area(), 1.0);
        let a = DiskSector::new(ONE, 0.1).unwrap().normalized_area();
        assert!(a > 0.0 && a <= 0.01);
    }

    /// Area of the lens between the unit disk and the disk of radius h about 1.
    fn lens_area(h: f64) -> f64 {
        let d: f64 = 1.0;
        let (r1, r2) = (1.0f64, h);
        let a1 = r1 * r1 * ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).acos();
        let a2 = r2 * r2 * ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).acos();
        let k = 0.5 * ((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)).sqrt();
        (a1 + a2 - k) / PI
    }

    #[test]
    fn areas_match_closed_forms() {
        for h in [0.01, 0.1, 0.3, 0.7, 1.0, 1.3, 1.9] {
            let a = DiskSector::new(ONE, h).unwrap().normalized_area();
            let exact = lens_area(h);
            assert!((a - exact).abs() <= 1e-9 * exact, "h={h}: {a} vs {exact}");
            assert!(a <= h * h);
        }
        for h in [0.01, 0.2, 0.9] {
            let a = CarlesonWindow::new(ONE, h).unwrap().normalized_area();
            let exact = h * (2.0 * h - h * h) / PI;
            assert!((a - exact).abs() <= 1e-12, "h={h}");
        }
    }

    #[test]
    fn areas_agree_with_monte_carlo() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let n = 1_000_000usize;
        let points: Vec<Complex64> = (0..n)
            .map(|_| {
                let r = rng.gen::<f64>().sqrt();
                Complex64::from_polar(r, rng.gen_range(0.0..TAU))
            })
            .collect();
        for k in 0..20 {
            let angle = rng.gen_range(0.0..TAU);
            let h = rng.gen_range(0.05..1.5);
            let region: Region = if k % 2 == 0 {
                CarlesonWindow::at_angle(angle, h).unwrap().into()
            } else {
                DiskSector::at_angle(angle, h).unwrap().into()
            };
            let area = region.normalized_area();
            let hits = points.iter().filter(|&&z| region.contains(z)).count() as f64;
            let estimate = hits / n as f64;
            let se = (area * (1.0 - area) / n as f64).sqrt();
            assert!((estimate - area).abs() <= 3.0 * se + 1e-12, "{region:?}: {estimate} vs {area}");
        }
    }

    #[test]
    fn containment_examples() {
        let r = containment_selftest(ONE, 0.1, 0.05, Complex64::from_polar(1.0, 0.08), 100_000, 7)
            .unwrap();
        assert!(r.pass(), "{r:?}");
        let r = containment_selftest(ONE, 0.1, 0.01, ONE, 100_000, 8).unwrap();
        assert!(r.pass(), "{r:?}");
        let r = containment_selftest(Complex64::from_polar(1.0, 2.0), 0.6, 0.4, Complex64::from_polar(1.0, 2.5), 100_000, 9)
            .unwrap();
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn containment_preconditions() {
        assert!(containment_selftest(ONE, 0.1, 0.2, ONE, 10, 0).is_err());
        assert!(containment_selftest(ONE, 0.1, 0.05, Complex64::from_polar(1.0, 0.5), 10, 0).is_err());
    }

    #[test]
    fn kernel_lemma_has_no_violations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut violations = 0;
        for _ in 0..100_000 {
            let xi = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
            let h = rng.gen_range(1e-6..=0.5);
            let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
            if kernel_lemma_margin(xi, h, z) < -1e-15 {
                violations += 1;
            }
        }
        assert_eq!(violations, 0);
    }

    fn unit() -> impl Strategy<Value = Complex64> {
        (0.0..TAU).prop_map(|t| Complex64::from_polar(1.0, t))
    }

    fn disk() -> impl Strategy<Value = Complex64> {
        (0.0..=1.0f64, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn membership_is_monotone(xi in unit(), z in disk(), h in 0.001..2.5f64, dh in 0.0..1.0f64) {
            let (w, w2) = (CarlesonWindow::new(xi, h).unwrap(), CarlesonWindow::new(xi, h + dh).unwrap());
            prop_assert!(!w.contains(z) || w2.contains(z));
            let (s, s2) = (DiskSector::new(xi, h).unwrap(), DiskSector::new(xi, h + dh).unwrap());
            prop_assert!(!s.contains(z) || s2.contains(z));
        }

        #[test]
        fn window_is_rotation_equivariant(xi in unit(), z in disk(), h in 0.001..1.2f64) {
            let w = CarlesonWindow::new(xi, h).unwrap();
            let w1 = CarlesonWindow::new(ONE, h).unwrap();
            // skip points within rounding distance of the window edges
            let near_edge = ((z.norm() - (1.0 - h)).abs() < 1e-12)
                || ((relative_angle(z, xi).abs() - h).abs() < 1e-12);
            prop_assume!(!near_edge);
            prop_assert_eq!(w.contains(z), w1.contains(z * xi.conj()));
        }

        #[test]
        fn distance_bound_vanishes_inside(xi in unit(), z in disk(), h in 0.001..1.2f64) {
            for region in [Region::from(CarlesonWindow::new(xi, h).unwrap()), DiskSector::new(xi, h).unwrap().into()] {
                if region.contains(z) {
                    prop_assert_eq!(region.distance_lower_bound(z), 0.0);
                } else {
                    prop_assert_eq!(region.margin_lower_bound(z), 0.0);
                }
            }
        }

        #[test]
        fn distance_bounds_are_sound(xi in unit(), z in disk(), d in 0.0..0.3f64, dt in 0.0..TAU, h in 0.001..1.2f64) {
            // no point of the region is closer to z than the lower bound, and no point
            // within the margin leaves the region
            let q = z + Complex64::from_polar(d, dt);
            prop_assume!(q.norm() <= 1.0);
            for region in [Region::from(CarlesonWindow::new(xi, h).unwrap()), DiskSector::new(xi, h).unwrap().into()] {
                let gap = (q - z).norm();
                if region.contains(q) {
                    prop_assert!(region.distance_lower_bound(z) <= gap + 1e-15);
                } else {
                    prop_assert!(region.margin_lower_bound(z) <= gap + 1e-15);
                }
            }
        }
    }
}
