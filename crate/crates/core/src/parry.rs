//! Integer polynomials, the iterated maps `f_{0,z}(x) = zx` and
//! `f_{1,z}(x) = 2 - zx`, Parry polynomials, and the kneading power series
//! `G` (in `z`) and `H` (in `z^{-1}`) with explicit tail bounds.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::algebraic::BigPoly;
use crate::error::{Error, Result};
use crate::symbolic::{Sign, Word};

/// Unit roundoff of `f64`.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> IntPolynomial {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial::default()
    }

    pub fn monomial(degree: usize, c: i64) -> IntPolynomial {
        let mut v = vec![0; degree + 1];
        v[degree] = c;
        IntPolynomial::new(v)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i64)
                .collect(),
        )
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0) + other.coeffs.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// `p(z²)`.
    pub fn compose_square(&self) -> IntPolynomial {
        let mut out = vec![0i64; 2 * self.coeffs.len()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c;
        }
        IntPolynomial::new(out)
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// Exact division by `z - r` for an integer root `r`; `None` if `r` is
    /// not a root.
    pub fn deflate(&self, r: i64) -> Option<IntPolynomial> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut q = vec![0i64; n - 1];
        let mut carry = 0i64;
        for k in (0..n).rev() {
            let v = self.coeffs[k] + carry * r;
            if k == 0 {
                return (v == 0).then(|| IntPolynomial::new(q));
            }
            q[k - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    pub fn to_big(&self) -> BigPoly {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn try_from_big(p: &[BigInt]) -> Option<IntPolynomial> {
        p.iter()
            .map(|c| i64::try_from(c).ok())
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }

    /// Largest coefficient magnitude.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("z")?,
                (1, _) => write!(f, "{a}z")?,
                (_, 1) => write!(f, "z^{i}")?,
                _ => write!(f, "{a}z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// `F(w, z) = f_{w_n,z} ∘ ... ∘ f_{w_1,z}(1)`.
pub fn f_eval(w: &Word, z: Complex64) -> Complex64 {
    w.letters().fold(Complex64::new(1.0, 0.0), |x, a| {
        if a == 0 {
            z * x
        } else {
            2.0 - z * x
        }
    })
}

/// `F(w, ·)` as an integer polynomial.
pub fn f_polynomial(w: &Word) -> IntPolynomial {
    let mut c: Vec<i64> = vec![1];
    for a in w.letters() {
        let mut next = Vec::with_capacity(c.len() + 1);
        next.push(0);
        next.extend_from_slice(&c);
        if a == 1 {
            for x in next.iter_mut() {
                *x = -*x;
            }
            next[0] += 2;
        }
        c = next;
    }
    IntPolynomial::new(c)
}

/// `P_w(z) = F(w, z) - 1`, defined for words of positive cumulative sign.
pub fn parry_polynomial(w: &Word) -> Result<IntPolynomial> {
    if w.sign() != Sign::Plus {
        return Err(Error::NegativeSignWord(w.to_string()));
    }
    Ok(f_polynomial(w).sub(&IntPolynomial::new(vec![1])))
}

/// Which variable a partial sum is a polynomial in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesVariable {
    /// Terms `c_k z^k`, evaluated for `|z| < 1`.
    Z,
    /// Terms `c_k z^{-k}`, evaluated for `|z| > 1`.
    ZInverse,
}

/// A partial sum of a kneading series with integer coefficients bounded by 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPartial {
    pub variable: SeriesVariable,
    pub coefficients: Vec<i64>,
    /// Number of sequence letters consumed.
    pub letters: usize,
}

impl SeriesPartial {
    /// Modulus of the expansion variable (`|z|` or `|z|^{-1}`).
    fn expansion_modulus(&self, z: Complex64) -> f64 {
        match self.variable {
            SeriesVariable::Z => z.norm(),
            SeriesVariable::ZInverse => 1.0 / z.norm(),
        }
    }

    fn expansion_point(&self, z: Complex64) -> Complex64 {
        match self.variable {
            SeriesVariable::Z => z,
            SeriesVariable::ZInverse => z.inv(),
        }
    }

    /// Value of the partial sum.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_with_error(z).0
    }

    /// Value together with a bound on its floating-point evaluation error.
    pub fn eval_with_error(&self, z: Complex64) -> (Complex64, f64) {
        let u = self.expansion_point(z);
        let r = u.norm();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        let mut r_pow = 1.0;
        for &c in self.coefficients.iter() {
            abs_sum += (c.abs() as f64) * r_pow;
            r_pow *= r;
        }
        for &c in self.coefficients.iter().rev() {
            acc = acc * u + c as f64;
        }
        let n = self.coefficients.len() as f64;
        (acc, (8.0 * n + 16.0) * UNIT_ROUNDOFF * abs_sum)
    }

    /// Bound on `|full series - partial sum|`, from coefficients bounded by 2.
    pub fn tail_bound(&self, z: Complex64) -> f64 {
        let r = self.expansion_modulus(z);
        if r >= 1.0 {
            return f64::INFINITY;
        }
        2.0 * r.powi(self.coefficients.len() as i32) / (1.0 - r)
    }

    /// The partial sum as a polynomial in the expansion variable.
    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.clone())
    }
}

/// Partial sum of `G(w, z) = Σ_k 2 w_k s_{k-1} z^{k-1}` from the first `n`
/// letters, `s_{k-1}` being the sign of `Prefix_{k-1}(w)`.
pub fn g_series<I: IntoIterator<Item = u8>>(letters: I, n: usize) -> SeriesPartial {
    let mut sign = 1i64;
    let mut coefficients = Vec::with_capacity(n);
    for a in letters.into_iter().take(n) {
        coefficients.push(2 * a as i64 * sign);
        if a == 1 {
            sign = -sign;
        }
    }
    SeriesPartial {
        variable: SeriesVariable::Z,
        letters: coefficients.len(),
        coefficients,
    }
}

/// Partial sum of `H(w, z) = 1 - Σ_k 2 w_k s_{k-1} z^{-k}` from the first
/// `n` letters (`n + 1` coefficients).
pub fn h_series<I: IntoIterator<Item = u8>>(letters: I, n: usize) -> SeriesPartial {
    let mut sign = 1i64;
    let mut coefficients = Vec::with_capacity(n + 1);
    coefficients.push(1);
    for a in letters.into_iter().take(n) {
        coefficients.push(-2 * a as i64 * sign);
        if a == 1 {
            sign = -sign;
        }
    }
    SeriesPartial {
        variable: SeriesVariable::ZInverse,
        letters: coefficients.len() - 1,
        coefficients,
    }
}

/// Number of terms after which the geometric tail at modulus `r < 1` drops
/// below `target`.
fn terms_for_tail(r: f64, target: f64) -> usize {
    let mut n = 1usize;
    while 2.0 * r.powi(n as i32) / (1.0 - r) > target && n < 1 << 16 {
        n *= 2;
    }
    n
}

/// Largest relative discrepancy between `P_w(z)` and the series side of
/// `P_w(z) = (1 - z^n) (G(Reverse(w)^∞, z) - 1) = z^n (1 - z^{-n}) H(w^∞, z)`,
/// each series evaluated on its convergent side (`|z| < 1` for `G`,
/// `|z| > 1` for `H`). Truncation and rounding bounds are included in the
/// returned residual.
pub fn verify_ghp(w: &Word, z: Complex64) -> Result<f64> {
    let p = parry_polynomial(w)?;
    if (z.norm() - 1.0).abs() < 1e-12 {
        return Err(Error::Domain("verify_ghp requires |z| != 1".into()));
    }
    let n = w.len() as i32;
    let direct = p.eval(z);
    let scale = direct.norm().max(1.0);
    let zn = z.powi(n);
    let (series_side, bound) = if z.norm() < 1.0 {
        let rev = w.reverse();
        let m = terms_for_tail(z.norm(), 1e-18);
        let g = g_series((0..).map(|i| rev.letter(i % rev.len())), m);
        let (value, err) = g.eval_with_error(z);
        let factor = Complex64::new(1.0, 0.0) - zn;
        (factor * (value - 1.0), factor.norm() * (err + g.tail_bound(z)))
    } else {
        let m = terms_for_tail(1.0 / z.norm(), 1e-18);
        let h = h_series((0..).map(|i| w.letter(i % w.len())), m);
        let (value, err) = h.eval_with_error(z);
        let factor = zn - 1.0;
        (factor * value, factor.norm() * (err + h.tail_bound(z)))
    };
    Ok(((direct - series_side).norm() + bound) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_word(rng: &mut StdRng, max_len: usize) -> Word {
        let n = rng.random_range(1..=max_len);
        Word::from_letters((0..n).map(|_| rng.random_range(0..2u8)))
    }

    fn random_positive_word(rng: &mut StdRng, max_len: usize) -> Word {
        loop {
            let u = random_word(rng, max_len);
            if u.sign() == Sign::Plus {
                return u;
            }
        }
    }

    #[test]
    fn f_eval_examples() {
        // 1 → 2 - z → z(2 - z) → z²(2 - z) → 2 - z³(2 - z)
        assert!((f_eval(&w("1001"), c(2.0, 0.0)) - c(2.0, 0.0)).norm() < 1e-12);
        assert_eq!(f_polynomial(&w("1001")), IntPolynomial::new(vec![2, 0, 0, -2, 1]));
        assert_eq!(f_polynomial(&w("10")), IntPolynomial::new(vec![0, 2, -1]));
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let u = random_word(&mut rng, 16);
            assert!((f_eval(&u, c(1.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-12);
            let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            assert!((f_eval(&u, z) - f_polynomial(&u).eval(z)).norm() < 1e-9);
        }
    }

    #[test]
    fn parry_examples() {
        let p = parry_polynomial(&w("1001")).unwrap();
        assert_eq!(p, IntPolynomial::new(vec![1, 0, 0, -2, 1]));
        assert_eq!(p.to_string(), "z^4 - 2z^3 + 1");
        let cubic = p.deflate(1).unwrap();
        assert_eq!(cubic, IntPolynomial::new(vec![-1, -1, -1, 1]));
        assert_eq!(cubic.mul(&IntPolynomial::new(vec![-1, 1])), p);
        assert!(matches!(parry_polynomial(&w("10")), Err(Error::NegativeSignWord(_))));
    }

    #[test]
    fn parry_vanishes_at_one() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let u = random_positive_word(&mut rng, 20);
            assert_eq!(parry_polynomial(&u).unwrap().eval_int(1), 0, "{u}");
        }
    }

    #[test]
    fn coefficient_recursion_matches_symbolic_expansion() {
        // Symbolic expansion: F(w, z) = Σ_k (2 w_k s_k') z^{n-k} + s(w) z^n where the
        // contribution of letter k is read off by composing the affine maps.
        for n in 0..=10 {
            for bits in 0..1u64 << n {
                let u = Word::from_bits(bits, n);
                let mut expected = vec![0i64; n + 1];
                // F = a z^n + Σ b_k z^{n-k}: letter k contributes 2 w_k times the sign
                // of the letters after it.
                let total = u.ones();
                expected[n] = if total.is_multiple_of(2) { 1 } else { -1 };
                for k in 0..n {
                    if u.letter(k) == 1 {
                        let after = total - u.prefix_ones(k + 1);
                        expected[n - k - 1] += if after.is_multiple_of(2) { 2 } else { -2 };
                    }
                }
                assert_eq!(f_polynomial(&u), IntPolynomial::new(expected), "{u}");
            }
        }
    }

    #[test]
    fn doubling_identity() {
        use crate::symbolic::Doubling;
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let u = random_positive_word(&mut rng, 10);
            let lhs = parry_polynomial(&u.double())
                .unwrap()
                .mul(&IntPolynomial::new(vec![1, 1]));
            let rhs = parry_polynomial(&u)
                .unwrap()
                .compose_square()
                .mul(&IntPolynomial::new(vec![-1, 1]));
            assert_eq!(lhs, rhs, "{u}");
        }
    }

    #[test]
    fn g_series_examples() {
        let ones = g_series(std::iter::repeat(1), 60);
        assert!(ones.coefficients.iter().enumerate().all(|(k, &c)| c == if k % 2 == 0 { 2 } else { -2 }));
        let v = ones.eval(c(0.5, 0.0));
        assert!((v.re - 4.0 / 3.0).abs() < 1e-15 + ones.tail_bound(c(0.5, 0.0)));
        let zeros = g_series(std::iter::repeat(0), 30);
        assert!(zeros.coefficients.iter().all(|&c| c == 0));
    }

    #[test]
    fn g_series_matches_nested_composition() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let letters: Vec<u8> = (0..30).map(|_| rng.random_range(0..2u8)).collect();
            let r = rng.random_range(0.0..0.9);
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            let z = Complex64::from_polar(r, t);
            let g = g_series(letters.iter().copied(), 30);
            assert!(g.coefficients.iter().all(|c| [0, 2, -2].contains(c)));
            let nested = f_eval(&Word::from_letters(letters.iter().rev().copied()), z);
            let (value, err) = g.eval_with_error(z);
            assert!((nested - value).norm() <= g.tail_bound(z) + err + 1e-13);
        }
    }

    #[test]
    fn h_series_examples() {
        let it2 = h_series([1u8].into_iter().chain(std::iter::repeat(0)), 40);
        assert_eq!(&it2.coefficients[..3], &[1, -2, 0]);
        assert!(it2.coefficients[2..].iter().all(|&c| c == 0));
        assert!(it2.eval(c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn h_series_matches_definition_exactly() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..20 {
            let n = rng.random_range(1..=25);
            let prefix = random_word(&mut rng, n);
            let h = h_series(prefix.letters(), prefix.len());
            assert!(h.coefficients[0] == 1 && h.coefficients[1..].iter().all(|c| [0, 2, -2].contains(c)));
            // s(Prefix_n) z^{-n} F(Prefix_n, z), read as a polynomial in z^{-1}
            let f = f_polynomial(&prefix);
            let s = prefix.sign().value() as i64;
            let m = prefix.len();
            let mut expected = vec![0i64; m + 1];
            for (i, &coef) in f.coefficients().iter().enumerate() {
                expected[m - i] = s * coef;
            }
            assert_eq!(h.polynomial(), IntPolynomial::new(expected), "{prefix}");
            let z = Complex64::from_polar(rng.random_range(1.1..3.0), rng.random_range(0.0..std::f64::consts::TAU));
            let definitional = f_eval(&prefix, z) * z.powi(-(m as i32)) * s as f64;
            assert!((definitional - h.eval(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn h_series_recovers_parry_polynomial() {
        let word = w("1001");
        let p = parry_polynomial(&word).unwrap();
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..10 {
            let z = Complex64::from_polar(rng.random_range(1.05..3.0), rng.random_range(0.0..std::f64::consts::TAU));
            let h = h_series((0..).map(|i| word.letter(i % 4)), 400);
            let lhs = h.eval(z) * (z.powi(4) - 1.0);
            let bound = (h.tail_bound(z) + h.eval_with_error(z).1) * (z.powi(4) - 1.0).norm();
            assert!((lhs - p.eval(z)).norm() <= bound + 1e-12 * p.eval(z).norm().max(1.0));
        }
    }

    #[test]
    fn ghp_examples() {
        assert!(verify_ghp(&w("1001"), c(0.5, 0.0)).unwrap() < 1e-9);
        assert!(verify_ghp(&w("1001"), c(1.5, 0.0)).unwrap() < 1e-9);
        assert!(verify_ghp(&w("1001"), c(1.0, 0.0)).is_err());
        assert_eq!(parry_polynomial(&w("1001")).unwrap().eval_int(1), 0);
    }

    #[test]
    fn ghp_random_samples() {
        let mut rng = StdRng::seed_from_u64(17);
        for i in 0..100 {
            let u = random_positive_word(&mut rng, 12);
            let r = if i % 2 == 0 { rng.random_range(0.3..0.9) } else { rng.random_range(1.1..2.0) };
            let z = Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU));
            assert!(verify_ghp(&u, z).unwrap() < 1e-9, "{u} at {z}");
        }
    }
}
