//! Analytic self-maps of the unit disk drawn from a closed rational class: polynomials, disk
//! automorphisms, finite Blaschke products, and their compositions.
//!
//! Every map in the class is holomorphic on a neighbourhood of the closed disk, so boundary
//! values are plain evaluations on the unit circle and the preimage problem `φ(z) = w`
//! reduces to the roots of a single polynomial once denominators are cleared.

mod spec;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::tolerances::{MAX_DEGREE, TOL_SELFMAP};

pub use spec::SymbolSpec;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative threshold below which coefficients of a cleared polynomial count as zero.
const CLEAR_REL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub enum SymbolKind {
    Polynomial(Polynomial),
    /// `e^{i rotation} (a - z) / (1 - ā z)`
    Moebius { a: Complex64, rotation: f64 },
    /// `e^{i rotation} ∏ (z - aₖ) / (1 - āₖ z)`
    Blaschke { zeros: Vec<Complex64>, rotation: f64 },
    /// `outer ∘ inner`
    Composition { outer: SchurMap, inner: SchurMap },
}

#[derive(Debug, Clone, PartialEq)]
struct Inner {
    kind: SymbolKind,
    numerator: Polynomial,
    denominator: Polynomial,
    at_zero: Complex64,
    degree: usize,
}

/// An analytic self-map of the disk. Immutable and cheap to clone.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurMap(Arc<Inner>);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub max_boundary_modulus: f64,
    pub n_samples: usize,
    pub tol: f64,
    pub pass: bool,
}

impl SchurMap {
    fn build(kind: SymbolKind) -> Result<Self> {
        let (numerator, denominator) = match &kind {
            SymbolKind::Polynomial(p) => (p.clone(), Polynomial::constant(ONE)),
            SymbolKind::Moebius { a, rotation } => {
                let rot = Complex64::from_polar(1.0, *rotation);
                (
                    Polynomial::new(vec![*a * rot, -rot]),
                    Polynomial::new(vec![ONE, -a.conj()]),
                )
            }
            SymbolKind::Blaschke { zeros, rotation } => {
                let rot = Complex64::from_polar(1.0, *rotation);
                let num = zeros
                    .iter()
                    .fold(Polynomial::constant(rot), |acc, &a| {
                        acc.mul(&Polynomial::new(vec![-a, ONE]))
                    });
                let den = zeros
                    .iter()
                    .fold(Polynomial::constant(ONE), |acc, &a| {
                        acc.mul(&Polynomial::new(vec![ONE, -a.conj()]))
                    });
                (num, den)
            }
            SymbolKind::Composition { outer, inner } => {
                let (pf, qf) = (&outer.0.numerator, &outer.0.denominator);
                let (pg, qg) = (&inner.0.numerator, &inner.0.denominator);
                let d = pf.degree().max(qf.degree());
                let mut num = Polynomial::zero();
                let mut den = Polynomial::zero();
                for k in 0..=d {
                    let basis = pg.pow(k).mul(&qg.pow(d - k));
                    if let Some(&c) = pf.coeffs().get(k) {
                        num = num.add(&basis.scale(c));
                    }
                    if let Some(&c) = qf.coeffs().get(k) {
                        den = den.add(&basis.scale(c));
                    }
                }
                (num, den)
            }
        };
        let degree = numerator.degree().max(denominator.degree());
        if degree > MAX_DEGREE {
            return Err(Error::InvalidSymbol(format!(
                "degree {degree} exceeds the limit of {MAX_DEGREE}"
            )));
        }
        let at_zero = eval_kind(&kind, ZERO);
        Ok(SchurMap(Arc::new(Inner {
            kind,
            numerator,
            denominator,
            at_zero,
            degree,
        })))
    }

    /// Polynomial with coefficients in ascending order.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSymbol("non-finite coefficient".into()));
        }
        Self::build(SymbolKind::Polynomial(Polynomial::new(coeffs)))
    }

    pub fn polynomial_real(coeffs: &[f64]) -> Result<Self> {
        Self::polynomial(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `φ(z) = z`
    pub fn identity() -> Self {
        Self::polynomial_real(&[0.0, 1.0]).expect("identity is valid")
    }

    /// `e^{i rotation} (a - z) / (1 - ā z)`, an automorphism of the disk.
    pub fn moebius(a: Complex64, rotation: f64) -> Result<Self> {
        if !(a.norm() < 1.0) || !rotation.is_finite() {
            return Err(Error::InvalidSymbol(format!(
                "Möbius parameter must satisfy |a| < 1, got |a| = {}",
                a.norm()
            )));
        }
        Self::build(SymbolKind::Moebius { a, rotation })
    }

    /// The involution `φ_a(z) = (a - z) / (1 - ā z)` exchanging `a` and `0`.
    pub fn involution(a: Complex64) -> Result<Self> {
        Self::moebius(a, 0.0)
    }

    pub fn blaschke(zeros: Vec<Complex64>, rotation: f64) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::InvalidSymbol(
                "a Blaschke product needs at least one zero".into(),
            ));
        }
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidSymbol(format!(
                "Blaschke zero {a} does not lie in the open disk"
            )));
        }
        if !rotation.is_finite() {
            return Err(Error::InvalidSymbol("non-finite rotation".into()));
        }
        Self::build(SymbolKind::Blaschke { zeros, rotation })
    }

    /// `outer ∘ inner`
    pub fn compose(outer: SchurMap, inner: SchurMap) -> Result<Self> {
        let degree = outer.degree().max(1) * inner.degree().max(1);
        if degree > MAX_DEGREE {
            return Err(Error::InvalidSymbol(format!(
                "composition degree {degree} exceeds the limit of {MAX_DEGREE}"
            )));
        }
        Self::build(SymbolKind::Composition { outer, inner })
    }

    /// `e^{iα} φ`
    pub fn rotated(&self, alpha: f64) -> Result<Self> {
        Self::compose(Self::blaschke(vec![ZERO], alpha)?, self.clone())
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.0.kind
    }

    /// `φ(0)`
    pub fn at_zero(&self) -> Complex64 {
        self.0.at_zero
    }

    /// Algebraic degree of the cleared equation `φ(z) = w`.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Numerator and denominator of `φ` as a rational function.
    pub fn rational_form(&self) -> (&Polynomial, &Polynomial) {
        (&self.0.numerator, &self.0.denominator)
    }

    /// True when boundary values are unimodular by construction.
    pub fn is_inner(&self) -> bool {
        match &self.0.kind {
            SymbolKind::Polynomial(_) => false,
            SymbolKind::Moebius { .. } | SymbolKind::Blaschke { .. } => true,
            SymbolKind::Composition { outer, inner } => outer.is_inner() && inner.is_inner(),
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        check_domain(z)?;
        Ok(eval_kind(&self.0.kind, z))
    }

    pub fn evaluate_derivative(&self, z: Complex64) -> Result<Complex64> {
        check_domain(z)?;
        Ok(derivative_kind(&self.0.kind, z))
    }

    /// Evaluation without the domain check, for callers that already know `|z| ≤ 1`.
    pub(crate) fn eval(&self, z: Complex64) -> Complex64 {
        eval_kind(&self.0.kind, z)
    }

    pub(crate) fn eval_derivative(&self, z: Complex64) -> Complex64 {
        derivative_kind(&self.0.kind, z)
    }

    /// `φ*(e^{iθ})`
    pub fn boundary_value(&self, theta: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, theta.rem_euclid(std::f64::consts::TAU)))
    }

    /// Coefficients of a polynomial vanishing exactly where `φ(z) = w` on the closed disk.
    pub fn clear_to_polynomial(&self, w: Complex64) -> Result<Polynomial> {
        let (num, den) = self.rational_form();
        let cleared = num.sub(&den.scale(w));
        let scale = num
            .coeffs()
            .iter()
            .chain(den.coeffs())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            * w.norm().max(1.0);
        let threshold = CLEAR_REL_TOL * scale;
        let mut coeffs = cleared.coeffs().to_vec();
        while matches!(coeffs.last(), Some(c) if c.norm() <= threshold) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Degenerate);
        }
        Ok(Polynomial::new(coeffs))
    }

    /// Maximum of `|φ(e^{iθ})|` over a uniform grid of `n_samples ≥ 64` angles.
    pub fn validate_self_map(&self, n_samples: usize, tol: f64) -> ValidationReport {
        let n = n_samples.max(64);
        let max_boundary_modulus = (0..n)
            .map(|k| self.boundary_value(std::f64::consts::TAU * k as f64 / n as f64).norm())
            .fold(0.0, f64::max);
        ValidationReport {
            max_boundary_modulus,
            n_samples: n,
            tol,
            pass: max_boundary_modulus <= 1.0 + tol,
        }
    }

    pub fn to_spec(&self) -> SymbolSpec {
        SymbolSpec::from_map(self)
    }

    /// Parses the JSON symbol format without certifying the self-map property.
    pub fn parse_json(text: &str) -> Result<Self> {
        SymbolSpec::parse(text)?.build()
    }

    /// Parses a symbol and rejects it unless it passes self-map validation at the default
    /// tolerance on 4096 boundary samples.
    pub fn load_json(text: &str) -> Result<Self> {
        let map = Self::parse_json(text)?;
        map.certified()
    }

    /// Returns the map if it passes self-map validation, else [`Error::NotSelfMap`].
    pub fn certified(self) -> Result<Self> {
        let report = self.validate_self_map(4096, TOL_SELFMAP);
        if report.pass {
            Ok(self)
        } else {
            Err(Error::NotSelfMap {
                max_boundary_modulus: report.max_boundary_modulus,
            })
        }
    }
}

fn check_domain(z: Complex64) -> Result<()> {
    let modulus = z.norm();
    if modulus <= 1.0 + TOL_SELFMAP {
        Ok(())
    } else {
        Err(Error::Domain {
            re: z.re,
            im: z.im,
            modulus,
        })
    }
}

fn eval_kind(kind: &SymbolKind, z: Complex64) -> Complex64 {
    match kind {
        SymbolKind::Polynomial(p) => p.eval(z),
        SymbolKind::Moebius { a, rotation } => {
            Complex64::from_polar(1.0, *rotation) * (*a - z) / (ONE - a.conj() * z)
        }
        SymbolKind::Blaschke { zeros, rotation } => zeros
            .iter()
            .fold(Complex64::from_polar(1.0, *rotation), |acc, &a| {
                acc * (z - a) / (ONE - a.conj() * z)
            }),
        SymbolKind::Composition { outer, inner } => outer.eval(inner.eval(z)),
    }
}

fn derivative_kind(kind: &SymbolKind, z: Complex64) -> Complex64 {
    match kind {
        SymbolKind::Polynomial(p) => p.derivative().eval(z),
        SymbolKind::Moebius { a, rotation } => {
            let d = ONE - a.conj() * z;
            Complex64::from_polar(1.0, *rotation) * (a.norm_sqr() - 1.0) / (d * d)
        }
        SymbolKind::Blaschke { zeros, rotation } => {
            let factors: Vec<Complex64> = zeros
                .iter()
                .map(|&a| (z - a) / (ONE - a.conj() * z))
                .collect();
            let n = factors.len();
            // prefix[k] = ∏_{j<k} b_j, suffix[k] = ∏_{j≥k} b_j
            let mut prefix = vec![ONE; n + 1];
            for k in 0..n {
                prefix[k + 1] = prefix[k] * factors[k];
            }
            let mut suffix = vec![ONE; n + 1];
            for k in (0..n).rev() {
                suffix[k] = suffix[k + 1] * factors[k];
            }
            let sum = zeros.iter().enumerate().fold(ZERO, |acc, (k, &a)| {
                let d = ONE - a.conj() * z;
                acc + prefix[k] * suffix[k + 1] * (1.0 - a.norm_sqr()) / (d * d)
            });
            Complex64::from_polar(1.0, *rotation) * sum
        }
        SymbolKind::Composition { outer, inner } => {
            outer.eval_derivative(inner.eval(z)) * inner.eval_derivative(z)
        }
    }
}

impl fmt::Display for SchurMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn c(z: &Complex64) -> String {
            if z.im == 0.0 {
                format!("{}", z.re)
            } else {
                format!("{}{:+}i", z.re, z.im)
            }
        }
        match &self.0.kind {
            SymbolKind::Polynomial(p) => {
                let parts: Vec<String> = p.coeffs().iter().map(c).collect();
                write!(f, "poly[{}]", parts.join(", "))
            }
            SymbolKind::Moebius { a, rotation } => write!(f, "moebius(a={}, rot={rotation})", c(a)),
            SymbolKind::Blaschke { zeros, rotation } => {
                let parts: Vec<String> = zeros.iter().map(c).collect();
                write!(f, "blaschke([{}], rot={rotation})", parts.join(", "))
            }
            SymbolKind::Composition { outer, inner } => write!(f, "({outer}) ∘ ({inner})"),
        }
    }
}
