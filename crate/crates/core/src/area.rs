//! Area integrals `∫ g(w) N_φ(w) dA(w)` over convex pieces of the disk, with `dA` the
//! normalized area measure `dx dy / π`.
//!
//! Integration is polar about an origin inside the domain. When `φ(0)` lies in the domain it is
//! taken as the origin, so the logarithmic pole of `N_φ` sits at `ρ = 0`, where the substitution
//! `ρ = R s²` makes the radial integrand bounded.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nevanlinna::counting_function;
use crate::quadrature::{self, Tolerance};
use crate::symbol::SchurMap;
use crate::tolerances::TOL_QUAD;

/// Quadrature resolution: initial radial and angular panel counts for the adaptive area rule,
/// the trapezoid size for boundary means, and the target relative accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub n_radial: usize,
    pub n_angular: usize,
    pub boundary_n: usize,
    pub tol_quad: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            n_radial: 2,
            n_angular: 16,
            boundary_n: 4096,
            tol_quad: TOL_QUAD,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_radial == 0 || self.n_angular == 0 || self.boundary_n == 0 {
            return Err(Error::Precondition("quadrature sizes must be positive".into()));
        }
        if !(self.tol_quad > 0.0 && self.tol_quad <= 1e-2) {
            return Err(Error::Precondition(format!(
                "tol_quad = {} must lie in (0, 1e-2]",
                self.tol_quad
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub center: Complex64,
    pub radius: f64,
}

impl Disc {
    fn contains(&self, w: Complex64) -> bool {
        (w - self.center).norm() <= self.radius
    }

    /// Distance from `o` (inside) to the circle along the unit direction `e`.
    fn exit(&self, o: Complex64, e: Complex64) -> f64 {
        let d = o - self.center;
        let b = (d * e.conj()).re;
        let disc = b * b - d.norm_sqr() + self.radius * self.radius;
        (-b + disc.max(0.0).sqrt()).max(0.0)
    }
}

/// Intersection of the unit disk with further closed discs, plus a fallback interior point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexDomain {
    pub discs: Vec<Disc>,
    pub anchor: Complex64,
}

const UNIT: Disc = Disc {
    center: Complex64::new(0.0, 0.0),
    radius: 1.0,
};

impl ConvexDomain {
    pub fn unit_disk() -> Self {
        ConvexDomain {
            discs: vec![UNIT],
            anchor: Complex64::new(0.0, 0.0),
        }
    }

    /// A closed disc contained in the unit disk.
    pub fn disc(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || center.norm() + radius >= 1.0 {
            return Err(Error::Precondition(format!(
                "disc of radius {radius} about {center} is not inside the unit disk"
            )));
        }
        Ok(ConvexDomain {
            discs: vec![Disc { center, radius }],
            anchor: center,
        })
    }

    /// `S(ξ, h) ∩ 𝔻`
    pub fn sector(xi: Complex64, h: f64) -> Result<Self> {
        if !(h > 0.0) || (xi.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Precondition(format!("sector S({xi}, {h})")));
        }
        if h >= 2.0 {
            return Ok(Self::unit_disk());
        }
        Ok(ConvexDomain {
            discs: vec![UNIT, Disc { center: xi, radius: h }],
            anchor: xi * (1.0 - 0.5 * h),
        })
    }

    pub fn contains(&self, w: Complex64) -> bool {
        self.discs.iter().all(|d| d.contains(w))
    }

    fn exit(&self, o: Complex64, e: Complex64) -> f64 {
        self.discs.iter().map(|d| d.exit(o, e)).fold(f64::INFINITY, f64::min)
    }

    /// Directions from `o` to the corners where two boundary circles meet.
    fn corner_angles(&self, o: Complex64) -> Vec<f64> {
        let mut angles = Vec::new();
        for (i, a) in self.discs.iter().enumerate() {
            for b in &self.discs[i + 1..] {
                let d = b.center - a.center;
                let dist = d.norm();
                if dist == 0.0 || dist > a.radius + b.radius || dist < (a.radius - b.radius).abs() {
                    continue;
                }
                let x = (dist * dist + a.radius * a.radius - b.radius * b.radius) / (2.0 * dist);
                let y = (a.radius * a.radius - x * x).max(0.0).sqrt();
                let u = d / dist;
                for sign in [1.0, -1.0] {
                    let p = a.center + u * Complex64::new(x, sign * y);
                    if (p - o).norm() > 0.0 {
                        angles.push((p - o).arg().rem_euclid(TAU));
                    }
                }
            }
        }
        angles
    }

    /// Normalized area of the domain.
    pub fn area(&self) -> f64 {
        polar_integral(self, self.anchor, &QuadSpec::default(), None, |_| 1.0).0
    }
}

/// Distances `ρ ∈ (0, reach)` at which the ray `o + ρe` crosses the closed polyline `trace`.
fn ray_crossings(trace: &[Complex64], o: Complex64, e: Complex64, reach: f64) -> impl Iterator<Item = f64> + '_ {
    let rot = e.conj();
    trace.windows(2).filter_map(move |seg| {
        let p = (seg[0] - o) * rot;
        let q = (seg[1] - o) * rot;
        if (p.im > 0.0) == (q.im > 0.0) || p.im == q.im {
            return None;
        }
        let t = p.im / (p.im - q.im);
        let x = p.re + t * (q.re - p.re);
        (x > 0.0 && x < reach).then_some(x)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaIntegral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// `(1/π) ∫∫ F(o + ρe^{iψ}) ρ dρ dψ` with the square-root substitution on `ρ`.
fn polar_integral<F: Fn(Complex64) -> f64>(
    domain: &ConvexDomain,
    origin: Complex64,
    quad: &QuadSpec,
    edges: Option<&[Complex64]>,
    f: F,
) -> (f64, f64, usize) {
    let inner_tol = Tolerance::new(1e-15, 0.01 * quad.tol_quad).with_max_intervals(400);
    let outer_tol = Tolerance::new(1e-14, 0.1 * quad.tol_quad);
    let mut evaluations = 0usize;
    let mut inner_error = 0.0;
    let radial_breaks: Vec<f64> = (1..quad.n_radial)
        .map(|k| k as f64 / quad.n_radial as f64)
        .collect();
    let mut angular_breaks: Vec<f64> = (1..quad.n_angular)
        .map(|k| TAU * k as f64 / quad.n_angular as f64)
        .collect();
    angular_breaks.extend(domain.corner_angles(origin));

    let outer = quadrature::integrate(
        |psi| {
            let e = Complex64::from_polar(1.0, psi);
            let reach = domain.exit(origin, e);
            if reach == 0.0 {
                return 0.0;
            }
            let mut breaks = radial_breaks.clone();
            if let Some(trace) = edges {
                breaks.extend(ray_crossings(trace, origin, e, reach).map(|rho| (rho / reach).sqrt()));
            }
            let r = quadrature::integrate(
                |s| {
                    let w = origin + e * (reach * s * s);
                    f(w) * s * s * s
                },
                0.0,
                1.0,
                &breaks,
                inner_tol,
            );
            evaluations += r.evaluations;
            inner_error += r.error;
            2.0 * reach * reach * r.value
        },
        0.0,
        TAU,
        &angular_breaks,
        outer_tol,
    );
    (outer.value / std::f64::consts::PI, outer.error / std::f64::consts::PI, evaluations)
}

/// `∫_D g(w) N_φ(w) dA(w)` over a convex domain `D`. Points where `N_φ` is undefined or the
/// solver fails contribute zero; they form a null set for the quadrature.
pub fn counting_integral<G: Fn(Complex64) -> f64>(
    map: &SchurMap,
    domain: &ConvexDomain,
    quad: &QuadSpec,
    weight: G,
) -> Result<AreaIntegral> {
    quad.validate()?;
    let base = map.at_zero();
    let origin = if domain.contains(base) && base.norm() < 1.0 {
        base
    } else {
        domain.anchor
    };
    // N_φ is real-analytic off φ(0) and the boundary curve φ(𝕋); rays are split where they
    // cross a fine polyline of that curve so no panel straddles a kink unseen
    let trace: Vec<Complex64> = (0..=quad.boundary_n)
        .map(|k| map.boundary_value(TAU * k as f64 / quad.boundary_n as f64))
        .collect();
    let (value, error, evaluations) = polar_integral(domain, origin, quad, Some(&trace), |w| {
        match counting_function(map, w) {
            Ok(n) if n > 0.0 => weight(w) * n,
            _ => 0.0,
        }
    });
    Ok(AreaIntegral {
        value,
        error,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::geometry::DiskSector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn areas_of_domains() {
        assert!((ConvexDomain::unit_disk().area() - 1.0).abs() < 1e-12);
        let d = ConvexDomain::disc(c(0.3, 0.2), 0.4).unwrap();
        assert!((d.area() - 0.16).abs() < 1e-12);
        for h in [0.05, 0.3, 1.0, 1.7] {
            let s = ConvexDomain::sector(c(0.0, 1.0), h).unwrap();
            let exact = DiskSector::new(c(0.0, 1.0), h).unwrap().normalized_area();
            assert!((s.area() - exact).abs() < 1e-10 * exact, "h={h}");
        }
    }

    #[test]
    fn log_weight_over_the_disk() {
        // 2∫ log(1/|w|) dA = 1 for the identity
        let r = counting_integral(&corpus::identity(), &ConvexDomain::unit_disk(), &QuadSpec::default(), |_| 1.0)
            .unwrap();
        assert!((2.0 * r.value - 1.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn off_center_base_point() {
        // (1+z)/2: N(w) = log 1/|2w-1| on |w - 1/2| < 1/2, so 2∫N dA = 1/4
        let r = counting_integral(&corpus::lens(), &ConvexDomain::unit_disk(), &QuadSpec::default(), |_| 1.0)
            .unwrap();
        assert!((2.0 * r.value - 0.25).abs() < 0.25 * 1e-6, "{}", r.value);
        let fine = QuadSpec {
            tol_quad: 1e-10,
            ..QuadSpec::default()
        };
        let r = counting_integral(&corpus::lens(), &ConvexDomain::unit_disk(), &fine, |_| 1.0).unwrap();
        assert!((2.0 * r.value - 0.25).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn invalid_domains() {
        assert!(ConvexDomain::disc(c(0.8, 0.0), 0.3).is_err());
        assert!(ConvexDomain::sector(c(0.5, 0.0), 0.3).is_err());
        let bad = QuadSpec {
            tol_quad: 0.5,
            ..QuadSpec::default()
        };
        assert!(counting_integral(&corpus::identity(), &ConvexDomain::unit_disk(), &bad, |_| 1.0).is_err());
    }
}
