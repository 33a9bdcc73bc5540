//! Exact real algebraic numbers.
//!
//! A real root of an integer polynomial is held as an isolating interval
//! `(lo, hi)` with dyadic rational endpoints: the squarefree part of the
//! polynomial has exactly one root there and opposite signs at the two
//! ends. Signs of other integer polynomials at the root are decided by
//! interval evaluation, with a gcd test for exact zeros.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial with ascending coefficients and no trailing zeros.
pub type BigPoly = Vec<BigInt>;

/// Width below which refinement gives up.
pub const MAX_REFINE_BITS: u64 = 1 << 14;

pub fn trim(mut p: BigPoly) -> BigPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn from_i64(coeffs: &[i64]) -> BigPoly {
    trim(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

fn lc(p: &[BigInt]) -> &BigInt {
    p.last().expect("nonzero polynomial")
}

pub fn eval(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn sign_at(p: &[BigInt], x: &BigRational) -> Ordering {
    eval(p, x).cmp(&BigRational::zero())
}

fn derivative(p: &[BigInt]) -> BigPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive(p: BigPoly) -> BigPoly {
    let p = trim(p);
    if p.is_empty() {
        return p;
    }
    let mut g = content(&p);
    if lc(&p).is_negative() {
        g = -g;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder `lc(b)^k · a mod b`, returned with the exponent `k`
/// actually applied.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> (BigPoly, usize) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: BigPoly = a.to_vec();
    let lb = lc(b).clone();
    let mut steps = 0;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = lc(&r).clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        r = trim(r);
        steps += 1;
    }
    (r, steps)
}

/// Remainder of `a` modulo a monic `m`, exact over the integers.
pub fn rem_monic(a: &[BigInt], m: &[BigInt]) -> BigPoly {
    debug_assert!(lc(m).is_one());
    let dm = m.len() - 1;
    let mut r: BigPoly = a.to_vec();
    while r.len() > dm {
        let top = r.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = r.len() - dm;
        for (i, c) in m[..dm].iter().enumerate() {
            r[i + shift] -= &top * c;
        }
    }
    trim(r)
}

pub fn gcd(a: &[BigInt], b: &[BigInt]) -> BigPoly {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_remainder(&a, &b).0);
        a = b;
        b = r;
    }
    primitive(a)
}

/// Exact division of `a` by `b`, assuming `b` divides `a` over the rationals.
fn exact_quotient(a: &[BigInt], b: &[BigInt]) -> BigPoly {
    let db = b.len() - 1;
    let lb = BigRational::from_integer(lc(b).clone());
    let mut r: Vec<BigRational> = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db)];
    for k in (0..q.len()).rev() {
        let coeff = &r[k + db] / &lb;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &coeff * BigRational::from_integer(c.clone());
        }
        q[k] = coeff;
    }
    let den = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    primitive(q.into_iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect())
}

pub fn squarefree_part(p: &[BigInt]) -> BigPoly {
    let p = primitive(p.to_vec());
    if p.len() <= 2 {
        return p;
    }
    let g = gcd(&p, &derivative(&p));
    if g.len() <= 1 {
        p
    } else {
        exact_quotient(&p, &g)
    }
}

/// Decomposition `p = c · Π f_m^m` into squarefree, pairwise coprime
/// primitive factors `f_m`, each listed with its multiplicity `m`.
pub fn squarefree_decomposition(p: &[BigInt]) -> Vec<(BigPoly, usize)> {
    let mut rest = primitive(p.to_vec());
    let mut out = Vec::new();
    if rest.len() <= 1 {
        return out;
    }
    // at_least is the product of the factors of multiplicity >= m.
    let mut at_least = squarefree_part(&rest);
    let mut m = 1;
    while at_least.len() >= 2 {
        rest = exact_quotient(&rest, &at_least);
        let next = if rest.len() >= 2 { squarefree_part(&rest) } else { vec![BigInt::one()] };
        let exact = exact_quotient(&at_least, &next);
        if exact.len() >= 2 {
            out.push((exact, m));
        }
        at_least = next;
        m += 1;
    }
    out
}

/// Sturm chain of a squarefree polynomial, scaled by positive factors only.
fn sturm_chain(p: &[BigInt]) -> Vec<BigPoly> {
    let mut chain = vec![p.to_vec(), primitive(derivative(p))];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.len() <= 1 {
            break;
        }
        let (r, k) = pseudo_remainder(a, b);
        if r.is_empty() {
            break;
        }
        // prem = lc(b)^k · rem; the next chain element is -rem.
        let multiplier_negative = lc(b).is_negative() && k % 2 == 1;
        let next: BigPoly = if multiplier_negative { r } else { r.into_iter().map(|c| -c).collect() };
        let g = content(&next);
        chain.push(next.into_iter().map(|c| c / &g).collect());
    }
    chain
}

fn sign_variations(chain: &[BigPoly], x: &BigRational) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for p in chain {
        let s = sign_at(p, x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots in `(a, b]`.
fn count_roots(chain: &[BigPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(chain, a).saturating_sub(sign_variations(chain, b))
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Result of isolating the largest real root in `(1, 2]`.
#[derive(Debug, Clone)]
pub enum LeadingRoot {
    Rational(BigRational),
    Algebraic(AlgebraicReal),
}

/// A real root of an integer polynomial, with an isolating interval.
#[derive(Debug, Clone)]
pub struct AlgebraicReal {
    poly: BigPoly,
    sqfree: BigPoly,
    lo: BigRational,
    hi: BigRational,
    sign_lo: Ordering,
}

impl AlgebraicReal {
    /// The largest real root of `p` in `(1, 2]`, or `None`.
    pub fn leading_root_in_unit_to_two(p: &[BigInt]) -> Option<LeadingRoot> {
        let p = primitive(p.to_vec());
        if p.len() < 2 {
            return None;
        }
        let sq = squarefree_part(&p);
        let one = BigRational::one();
        let two = BigRational::from_integer(BigInt::from(2));
        if sign_at(&sq, &two) == Ordering::Equal {
            return Some(LeadingRoot::Rational(two));
        }
        let chain = sturm_chain(&sq);
        if count_roots(&chain, &one, &two) == 0 {
            return None;
        }
        let (mut lo, mut hi) = (one, two);
        // Keep (lo, hi] containing the top root and nothing above hi.
        while count_roots(&chain, &lo, &hi) > 1 {
            let mid = midpoint(&lo, &hi);
            if sign_at(&sq, &mid) == Ordering::Equal && count_roots(&chain, &mid, &hi) == 0 {
                return Some(LeadingRoot::Rational(mid));
            }
            if count_roots(&chain, &mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if sign_at(&sq, &hi) == Ordering::Equal {
            return Some(LeadingRoot::Rational(hi));
        }
        // lo may itself be a root below the isolated one; nudge it upwards
        // without stepping past the isolated root.
        let mut step = (&hi - &lo) / BigRational::from_integer(BigInt::from(2));
        while sign_at(&sq, &lo) == Ordering::Equal {
            let candidate = &lo + &step;
            if sign_at(&sq, &candidate) != Ordering::Equal && count_roots(&chain, &candidate, &hi) == 1 {
                lo = candidate;
            } else {
                step /= BigRational::from_integer(BigInt::from(2));
            }
        }
        let sign_lo = sign_at(&sq, &lo);
        Some(LeadingRoot::Algebraic(AlgebraicReal { poly: p, sqfree: sq, lo, hi, sign_lo }))
    }

    pub fn poly(&self) -> &BigPoly {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// `-log2(hi - lo)`, rounded down.
    pub fn precision_bits(&self) -> u64 {
        let w = &self.hi - &self.lo;
        let (n, d) = (w.numer().bits() as i64, w.denom().bits() as i64);
        (d - n).max(0) as u64
    }

    pub fn approx(&self) -> f64 {
        rational_to_f64(&midpoint(&self.lo, &self.hi))
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        let mid = midpoint(&self.lo, &self.hi);
        let s = sign_at(&self.sqfree, &mid);
        if s == Ordering::Equal {
            // An exact rational root; shrink to a tiny interval around it
            // that still has nonzero endpoint signs.
            let quarter = (&self.hi - &self.lo) / BigRational::from_integer(BigInt::from(4));
            self.lo = &mid - &quarter;
            self.hi = &mid + &quarter;
            self.sign_lo = sign_at(&self.sqfree, &self.lo);
        } else if s == self.sign_lo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_to(&mut self, bits: u64) {
        while self.precision_bits() < bits {
            self.bisect();
        }
    }

    /// Interval enclosure of `q` at the root; requires `lo > 0`.
    pub fn enclose(&self, q: &[BigInt]) -> (BigRational, BigRational) {
        debug_assert!(self.lo.is_positive());
        let mut lower = BigRational::zero();
        let mut upper = BigRational::zero();
        let mut plo = BigRational::one();
        let mut phi = BigRational::one();
        for c in q {
            if !c.is_zero() {
                let c = BigRational::from_integer(c.clone());
                let (a, b) = (&c * &plo, &c * &phi);
                if c.is_positive() {
                    lower += a;
                    upper += b;
                } else {
                    lower += b;
                    upper += a;
                }
            }
            plo = &plo * &self.lo;
            phi = &phi * &self.hi;
        }
        (lower, upper)
    }

    /// Exact sign of `q` at the root. Refines a private copy of the interval.
    pub fn sign_of(&self, q: &[BigInt], step: usize) -> Result<Ordering> {
        let q = trim(q.to_vec());
        if q.is_empty() {
            return Ok(Ordering::Equal);
        }
        let mut work = self.clone();
        let mut gcd_checked = false;
        loop {
            let (lower, upper) = work.enclose(&q);
            if lower.is_positive() {
                return Ok(Ordering::Greater);
            }
            if upper.is_negative() {
                return Ok(Ordering::Less);
            }
            if !gcd_checked && work.precision_bits() >= self.precision_bits() + 64 {
                gcd_checked = true;
                let g = gcd(&work.sqfree, &q);
                if g.len() >= 2 {
                    let (a, b) = (sign_at(&g, &work.lo), sign_at(&g, &work.hi));
                    if a != b {
                        return Ok(Ordering::Equal);
                    }
                }
            }
            let bits = work.precision_bits();
            if bits >= MAX_REFINE_BITS {
                return Err(Error::PrecisionExhausted { step, bits });
            }
            let target = (bits * 2).clamp(bits + 32, MAX_REFINE_BITS);
            work.refine_to(target);
        }
    }

    /// Compares the root with a rational number.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let mut work = self.clone();
        loop {
            if *r <= work.lo {
                return Ordering::Greater;
            }
            if *r >= work.hi {
                return Ordering::Less;
            }
            if sign_at(&work.sqfree, r) == Ordering::Equal {
                return Ordering::Equal;
            }
            work.bisect();
        }
    }

    /// The square of a positive root, as a root of `P(z)P(-z)` in `y = z²`.
    pub fn square(&self) -> AlgebraicReal {
        assert!(self.lo.is_positive(), "square() expects a positive root");
        let neg: BigPoly = self
            .poly
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        let prod = mul(&self.poly, &neg);
        let even = primitive(prod.into_iter().step_by(2).collect());
        let sq = squarefree_part(&even);
        let chain = sturm_chain(&sq);
        let mut work = self.clone();
        loop {
            let lo2 = &work.lo * &work.lo;
            let hi2 = &work.hi * &work.hi;
            if sign_at(&sq, &lo2) != Ordering::Equal
                && sign_at(&sq, &hi2) != Ordering::Equal
                && count_roots(&chain, &lo2, &hi2) == 1
            {
                let sign_lo = sign_at(&sq, &lo2);
                return AlgebraicReal { poly: even, sqfree: sq, lo: lo2, hi: hi2, sign_lo };
            }
            work.bisect();
        }
    }
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> BigPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}
