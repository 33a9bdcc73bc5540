//! Root finding for integer polynomials.
//!
//! Full root sets come from the Aberth–Ehrlich simultaneous iteration with a
//! deterministic start on a circle, followed by a residual check. Leading
//! roots in `(1, 2]` are isolated exactly with Sturm sequences and refined by
//! bisection, so they do not depend on the simultaneous iteration at all.

use num_complex::Complex64;

use num_traits::ToPrimitive;

use crate::algebraic::{self, AlgebraicReal, LeadingRoot};
use crate::error::{Error, Result};
use crate::parry::IntPolynomial;

/// Default backward-error tolerance for [`all_roots`].
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

const MAX_ITERATIONS: usize = 2000;

/// All complex roots of a polynomial with their residuals.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub polynomial: IntPolynomial,
    pub roots: Vec<Complex64>,
    /// `|P(root)|` for each root.
    pub residuals: Vec<f64>,
    /// Set for repeated roots and for roots within `10 · tol` of another.
    pub clustered: Vec<bool>,
    pub tolerance: f64,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Horner evaluation of `p` and `p'` together with `Σ |a_i| |z|^i`.
fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let r = z.norm();
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        scale = scale * r + a.abs();
    }
    (p, dp, scale)
}

fn aberth(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    let radius = (coeffs[0].abs() / lead).powf(1.0 / n as f64).max(0.05);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp, scale) = horner(coeffs, z[i]);
            if p.norm() <= 4.0 * f64::EPSILON * scale {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Perturb a stuck iterate deterministically.
                z[i] += Complex64::new(1e-3, 1e-3);
                all_done = false;
                continue;
            }
            z[i] -= step;
            if step.norm() <= 2.0 * f64::EPSILON * z[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            return Some(z);
        }
    }
    None
}

fn simple_roots(coeffs: &[f64], tol: f64) -> Result<Vec<Complex64>> {
    let zeros_at_origin = coeffs.iter().take_while(|&&c| c == 0.0).count();
    let rest = &coeffs[zeros_at_origin..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    match rest.len() - 1 {
        0 => {}
        1 => roots.push(Complex64::new(-rest[0] / rest[1], 0.0)),
        _ => roots.extend(aberth(rest).ok_or(Error::NonConvergence(MAX_ITERATIONS))?),
    }
    for z in &roots {
        let (value, _, scale) = horner(coeffs, *z);
        if value.norm() > tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NonConvergence(MAX_ITERATIONS));
        }
    }
    Ok(roots)
}

/// All roots of `p` with multiplicity. Repeated factors are split off
/// exactly first, so each root is computed as a simple root of its
/// squarefree factor `f` and satisfies `|f(root)| ≤ tol · Σ |f_i| |root|^i`.
pub fn all_roots(p: &IntPolynomial, tol: f64) -> Result<RootSet> {
    let degree = p.degree().ok_or(Error::ConstantPolynomial)?;
    if degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut roots = Vec::with_capacity(degree);
    let mut repeated = Vec::with_capacity(degree);
    for (factor, multiplicity) in algebraic::squarefree_decomposition(&p.to_big()) {
        let coeffs: Vec<f64> = factor.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        for z in simple_roots(&coeffs, tol)? {
            for _ in 0..multiplicity {
                roots.push(z);
                repeated.push(multiplicity > 1);
            }
        }
    }
    let coeffs: Vec<f64> = p.coefficients().iter().map(|&c| c as f64).collect();
    let residuals = roots.iter().map(|z| horner(&coeffs, *z).0.norm()).collect();
    let clustered = roots
        .iter()
        .enumerate()
        .map(|(i, a)| {
            repeated[i]
                || roots
                    .iter()
                    .enumerate()
                    .any(|(j, b)| i != j && (a - b).norm() <= 10.0 * tol * a.norm().max(1.0))
        })
        .collect();
    Ok(RootSet { polynomial: p.clone(), roots, residuals, clustered, tolerance: tol })
}

/// The largest real root in `(1, 2]`, to full `f64` precision.
pub fn leading_root(p: &IntPolynomial) -> Result<Option<f64>> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(
        AlgebraicReal::leading_root_in_unit_to_two(&p.to_big()).map(|root| match root {
            LeadingRoot::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            LeadingRoot::Algebraic(mut a) => {
                a.refine_to(64);
                a.approx()
            }
        }),
    )
}

/// Roots with modulus at most `radius`, unit-circle roots included.
pub fn conjugates_in_disk(p: &IntPolynomial, radius: f64) -> Result<Vec<Complex64>> {
    if radius <= 0.0 {
        return Ok(Vec::new());
    }
    let set = all_roots(p, DEFAULT_TOLERANCE)?;
    Ok(set
        .roots
        .into_iter()
        .filter(|z| z.norm() <= radius * (1.0 + 1e-9))
        .collect())
}
