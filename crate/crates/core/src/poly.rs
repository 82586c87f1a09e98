//! Dense complex polynomials and root finding through companion-matrix eigenvalues.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial with complex coefficients stored in ascending order: `c[0] + c[1] z + ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim_exact();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// `z`
    pub fn identity() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim_exact(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if *c == Complex64::new(0.0, 0.0)) {
            self.coeffs.pop();
        }
    }

    /// Drops leading coefficients whose modulus is below `rel_tol` times the largest one.
    pub fn trimmed(&self, rel_tol: f64) -> Polynomial {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut coeffs = self.coeffs.clone();
        while matches!(coeffs.last(), Some(c) if c.norm() <= rel_tol * scale) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Polynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(zero)
                        + other.coeffs.get(k).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        (0..k).fold(Polynomial::constant(Complex64::new(1.0, 0.0)), |acc, _| {
            acc.mul(self)
        })
    }

    /// All complex roots, as eigenvalues of the companion matrix, each polished by Newton steps
    /// on the polynomial itself.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = self.degree();
        if self.is_zero() {
            return Err(Error::Degenerate);
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = self.coeffs[n];
        let monic: Vec<Complex64> = self.coeffs[..n].iter().map(|&c| c / lead).collect();
        if n == 1 {
            return Ok(vec![-monic[0]]);
        }
        let mut h = companion(&monic);
        let mut roots = hessenberg_eigenvalues(&mut h, n)?;
        let dp = self.derivative();
        for z in roots.iter_mut() {
            *z = newton_polish(self, &dp, *z);
        }
        Ok(roots)
    }
}

/// Row-major companion matrix of the monic polynomial `z^n + c[n-1] z^{n-1} + ... + c[0]`.
fn companion(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len();
    let mut h = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 1..n {
        h[i * n + (i - 1)] = Complex64::new(1.0, 0.0);
    }
    for (i, &c) in monic.iter().enumerate() {
        h[i * n + (n - 1)] = -c;
    }
    h
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift complex QR with Wilkinson shifts
/// and deflation. `h` is overwritten.
fn hessenberg_eigenvalues(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let max_iter = 60 * n;
    let mut rotations: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);

    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let sub = h[idx(l, l - 1)].norm();
            let diag = h[idx(l, l)].norm() + h[idx(l - 1, l - 1)].norm();
            if sub <= f64::EPSILON * diag || sub < 1e-300 {
                h[idx(l, l - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[idx(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > max_iter {
            return Err(Error::Solver {
                residual: h[idx(hi, hi - 1)].norm(),
                tolerance: f64::EPSILON,
            });
        }

        let a = h[idx(hi - 1, hi - 1)];
        let b = h[idx(hi - 1, hi)];
        let c = h[idx(hi, hi - 1)];
        let d = h[idx(hi, hi)];
        let shift = if iter % 11 == 0 {
            // exceptional shift to break cycles
            d + Complex64::new(0.75 * c.norm(), 0.4375 * c.norm())
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let mu1 = d - b * c / (half + disc);
            let mu2 = d - b * c / (half - disc);
            let pick = |m: Complex64| if m.is_finite() { Some(m) } else { None };
            match (pick(mu1), pick(mu2)) {
                (Some(m1), Some(m2)) => {
                    if (m1 - d).norm() <= (m2 - d).norm() {
                        m1
                    } else {
                        m2
                    }
                }
                (Some(m), None) | (None, Some(m)) => m,
                (None, None) => d,
            }
        };

        for k in l..=hi {
            h[idx(k, k)] -= shift;
        }
        rotations.clear();
        for k in l..hi {
            let x = h[idx(k, k)];
            let y = h[idx(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (x / r, y / r)
            };
            for j in k..=hi {
                let u = h[idx(k, j)];
                let v = h[idx(k + 1, j)];
                h[idx(k, j)] = cs.conj() * u + sn.conj() * v;
                h[idx(k + 1, j)] = -sn * u + cs * v;
            }
            rotations.push((cs, sn));
        }
        for (offset, &(cs, sn)) in rotations.iter().enumerate() {
            let k = l + offset;
            let last = (k + 2).min(hi);
            for i in l..=last {
                let u = h[idx(i, k)];
                let v = h[idx(i, k + 1)];
                h[idx(i, k)] = u * cs + v * sn;
                h[idx(i, k + 1)] = -u * sn.conj() + v * cs.conj();
            }
        }
        for k in l..=hi {
            h[idx(k, k)] += shift;
        }
    }
    eig[0] = h[idx(0, 0)];
    Ok(eig)
}

fn newton_polish(p: &Polynomial, dp: &Polynomial, mut z: Complex64) -> Complex64 {
    let mut residual = p.eval(z).norm();
    for _ in 0..8 {
        if residual == 0.0 {
            break;
        }
        let d = dp.eval(z);
        if d.norm() == 0.0 {
            break;
        }
        let candidate = z - p.eval(z) / d;
        let r = p.eval(candidate).norm();
        if !(r < residual) {
            break;
        }
        z = candidate;
        residual = r;
    }
    z
}
