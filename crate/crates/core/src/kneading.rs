//! Tent-map orbits and itineraries.
//!
//! Orbit points of `1` under `f_λ` are kept exactly: as rationals when `λ`
//! is rational, and as integer polynomials in `λ` reduced modulo its
//! defining polynomial when `λ` is algebraic. Whether a point lies left of,
//! right of, or exactly on the critical point `1/λ` is therefore decided
//! exactly, never guessed from a rounded value.
//!
//! Since `f_λ(x) = 1` only for `x = 1/λ`, the orbit of `1` is periodic
//! exactly when it hits the critical point, so periodicity detection is the
//! same exact test.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebraic::{self, AlgebraicReal, BigPoly, LeadingRoot};
use crate::error::{Error, Result};
use crate::parry::{parry_polynomial, IntPolynomial};
use crate::symbolic::{Sign, Word};

#[derive(Clone, Debug)]
enum Repr {
    Rational(BigRational),
    Algebraic {
        root: AlgebraicReal,
        /// Monic squarefree polynomial vanishing at the root; orbit points
        /// are reduced modulo it.
        reducer: BigPoly,
    },
}

/// A growth rate `λ ∈ (1, 2]`, exact.
#[derive(Clone, Debug)]
pub struct GrowthRate {
    repr: Repr,
    value: f64,
    defining: Option<IntPolynomial>,
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GrowthRate {
    pub fn from_rational(r: BigRational) -> Result<GrowthRate> {
        let value = r.to_f64().unwrap_or(f64::NAN);
        if r <= BigRational::one() || r > rational(2, 1) {
            return Err(Error::GrowthRateOutOfRange(r.to_string()));
        }
        Ok(GrowthRate { repr: Repr::Rational(r), value, defining: None })
    }

    /// The binary value of `v`, taken exactly.
    pub fn from_f64(v: f64) -> Result<GrowthRate> {
        let r = BigRational::from_float(v).ok_or_else(|| Error::GrowthRateOutOfRange(v.to_string()))?;
        GrowthRate::from_rational(r)
    }

    pub fn two() -> GrowthRate {
        GrowthRate::from_rational(rational(2, 1)).expect("2 is a growth rate")
    }

    /// Exact value of a decimal literal such as `1.82` (that is, 91/50).
    pub fn from_decimal(s: &str) -> Result<GrowthRate> {
        GrowthRate::from_rational(parse_decimal(s)?)
    }

    /// The largest real root in `(1, 2]` of a monic integer polynomial.
    pub fn leading_root_of(p: &IntPolynomial) -> Result<GrowthRate> {
        let p = if p.leading_coefficient() < 0 { p.scale(-1) } else { p.clone() };
        if p.leading_coefficient() != 1 {
            return Err(Error::NonMonic(p.leading_coefficient()));
        }
        match AlgebraicReal::leading_root_in_unit_to_two(&p.to_big()) {
            None => Err(Error::NoLeadingRoot(p.to_string())),
            Some(LeadingRoot::Rational(r)) => {
                let mut g = GrowthRate::from_rational(r)?;
                g.defining = Some(p);
                Ok(g)
            }
            Some(LeadingRoot::Algebraic(root)) => Ok(GrowthRate::from_root(root, Some(p))),
        }
    }

    fn from_root(mut root: AlgebraicReal, defining: Option<IntPolynomial>) -> GrowthRate {
        root.refine_to(64);
        let reducer = algebraic::squarefree_part(root.poly());
        GrowthRate { value: root.approx(), repr: Repr::Algebraic { root, reducer }, defining }
    }

    /// Parses `poly:c0,c1,...` (ascending coefficients, leading root taken)
    /// or a decimal literal.
    pub fn parse(s: &str) -> Result<GrowthRate> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("poly:") {
            let coeffs = rest
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Domain(format!("bad polynomial coefficient list {rest:?}: {e}")))?;
            return GrowthRate::leading_root_of(&IntPolynomial::new(coeffs));
        }
        GrowthRate::from_decimal(s)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// The polynomial this rate was specified by, when it was given as a root.
    pub fn defining_polynomial(&self) -> Option<&IntPolynomial> {
        self.defining.as_ref()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(r) => Some(r),
            Repr::Algebraic { .. } => None,
        }
    }

    /// `None` for exact rationals; otherwise the width of the isolating
    /// interval in bits.
    pub fn precision_bits(&self) -> Option<u64> {
        match &self.repr {
            Repr::Rational(_) => None,
            Repr::Algebraic { root, .. } => Some(root.precision_bits()),
        }
    }

    pub fn is_two(&self) -> bool {
        self.cmp_rational(&rational(2, 1)) == Ordering::Equal
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        match &self.repr {
            Repr::Rational(x) => x.cmp(r),
            Repr::Algebraic { root, .. } => root.cmp_rational(r),
        }
    }

    /// `λ²`, unchecked against the `(1, 2]` range.
    fn square_unchecked(&self) -> GrowthRate {
        match &self.repr {
            Repr::Rational(r) => {
                let sq = r * r;
                GrowthRate { value: sq.to_f64().unwrap_or(f64::NAN), repr: Repr::Rational(sq), defining: None }
            }
            Repr::Algebraic { root, .. } => {
                let sq = root.square();
                let defining = IntPolynomial::try_from_big(sq.poly());
                GrowthRate::from_root(sq, defining)
            }
        }
    }

    /// `λ²`, when it is still at most 2.
    pub fn square(&self) -> Result<GrowthRate> {
        let sq = self.square_unchecked();
        if sq.cmp_rational(&rational(2, 1)) == Ordering::Greater {
            return Err(Error::GrowthRateOutOfRange(format!("{}^2", self)));
        }
        Ok(sq)
    }

    /// Whether `λ < √2`, decided exactly as `λ² < 2`.
    pub fn below_sqrt2(&self) -> bool {
        self.square_unchecked().cmp_rational(&rational(2, 1)) == Ordering::Less
    }

    /// Exact sign of `q(λ)`.
    pub fn sign_of(&self, q: &IntPolynomial) -> Result<Ordering> {
        match &self.repr {
            Repr::Rational(r) => Ok(algebraic::eval(&q.to_big(), r).cmp(&BigRational::zero())),
            Repr::Algebraic { root, reducer } => {
                let reduced = algebraic::rem_monic(&q.to_big(), reducer);
                root.sign_of(&reduced, 0)
            }
        }
    }

    fn sign_of_big(&self, q: &BigPoly) -> Result<Ordering> {
        match &self.repr {
            Repr::Rational(r) => Ok(algebraic::eval(q, r).cmp(&BigRational::zero())),
            Repr::Algebraic { root, reducer } => root.sign_of(&algebraic::rem_monic(q, reducer), 0),
        }
    }

    /// Exact comparison of two growth rates.
    pub fn cmp_exact(&self, other: &GrowthRate) -> Result<Ordering> {
        match (&self.repr, &other.repr) {
            (_, Repr::Rational(r)) => Ok(self.cmp_rational(r)),
            (Repr::Rational(r), _) => Ok(other.cmp_rational(r).reverse()),
            (Repr::Algebraic { root: a, .. }, Repr::Algebraic { root: b, .. }) => {
                // b's interval isolates a single root of its squarefree
                // polynomial, so equality is a root test plus containment.
                let sqfree_b = algebraic::squarefree_part(b.poly());
                if self.sign_of_big(&sqfree_b)? == Ordering::Equal
                    && a.cmp_rational(b.lo()) == Ordering::Greater
                    && a.cmp_rational(b.hi()) == Ordering::Less
                {
                    return Ok(Ordering::Equal);
                }
                let (mut a, mut b) = (a.clone(), b.clone());
                loop {
                    if a.hi() <= b.lo() {
                        return Ok(Ordering::Less);
                    }
                    if b.hi() <= a.lo() {
                        return Ok(Ordering::Greater);
                    }
                    if a.precision_bits() >= algebraic::MAX_REFINE_BITS {
                        return Err(Error::PrecisionExhausted { step: 0, bits: a.precision_bits() });
                    }
                    a.bisect();
                    b.bisect();
                }
            }
        }
    }

    /// Whether `λ` is a root of the Parry polynomial of `w`.
    pub fn is_parry_root(&self, w: &Word) -> Result<bool> {
        Ok(self.sign_of(&parry_polynomial(w)?)? == Ordering::Equal)
    }
}

impl fmt::Display for GrowthRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.repr, &self.defining) {
            (Repr::Rational(r), None) => write!(f, "{r}"),
            (_, Some(p)) => write!(f, "root({p}) ≈ {}", self.value),
            (Repr::Algebraic { .. }, None) => write!(f, "≈ {}", self.value),
        }
    }
}

impl FromStr for GrowthRate {
    type Err = Error;
    fn from_str(s: &str) -> Result<GrowthRate> {
        GrowthRate::parse(s)
    }
}

/// Exact rational value of a decimal literal (`[-]digits[.digits][e±exp]`).
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("not a decimal number: {s:?}"));
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Exact orbit point.
#[derive(Clone, Debug)]
enum Point {
    Rational(BigRational),
    Algebraic(BigPoly),
}

impl Point {
    fn one(rate: &GrowthRate) -> Point {
        match rate.repr {
            Repr::Rational(_) => Point::Rational(BigRational::one()),
            Repr::Algebraic { .. } => Point::Algebraic(vec![BigInt::one()]),
        }
    }
}

/// Position of an orbit point relative to the critical point `1/λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Critical,
    Right,
}

struct Orbit<'a> {
    rate: &'a GrowthRate,
}

impl Orbit<'_> {
    /// `λ · x` as an exact point.
    fn times_lambda(&self, x: &Point) -> Point {
        match (&self.rate.repr, x) {
            (Repr::Rational(l), Point::Rational(v)) => Point::Rational(l * v),
            (Repr::Algebraic { reducer, .. }, Point::Algebraic(c)) => {
                let mut shifted = Vec::with_capacity(c.len() + 1);
                shifted.push(BigInt::zero());
                shifted.extend(c.iter().cloned());
                Point::Algebraic(algebraic::rem_monic(&shifted, reducer))
            }
            _ => unreachable!("point kind matches rate kind"),
        }
    }

    fn side(&self, x: &Point, step: usize) -> Result<Side> {
        let lx = self.times_lambda(x);
        let ord = match (&self.rate.repr, lx) {
            (Repr::Rational(_), Point::Rational(v)) => v.cmp(&BigRational::one()),
            (Repr::Algebraic { root, .. }, Point::Algebraic(mut c)) => {
                if c.is_empty() {
                    c.push(BigInt::zero());
                }
                c[0] -= 1;
                root.sign_of(&c, step)?
            }
            _ => unreachable!(),
        };
        Ok(match ord {
            Ordering::Less => Side::Left,
            Ordering::Equal => Side::Critical,
            Ordering::Greater => Side::Right,
        })
    }

    fn next(&self, x: &Point, side: Side) -> Point {
        match side {
            Side::Critical => Point::one(self.rate),
            Side::Left => self.times_lambda(x),
            Side::Right => match self.times_lambda(x) {
                Point::Rational(v) => Point::Rational(rational(2, 1) - v),
                Point::Algebraic(c) => {
                    let mut out: BigPoly = c.into_iter().map(|a| -a).collect();
                    if out.is_empty() {
                        out.push(BigInt::zero());
                    }
                    out[0] += 2;
                    Point::Algebraic(algebraic::trim(out))
                }
            },
        }
    }

    fn sample(&self, x: &Point) -> OrbitSample {
        match (&self.rate.repr, x) {
            (Repr::Rational(_), Point::Rational(v)) => {
                let value = v.to_f64().unwrap_or(f64::NAN);
                OrbitSample { value, error_bound: value.abs() * f64::EPSILON }
            }
            (Repr::Algebraic { root, .. }, Point::Algebraic(c)) => {
                let height = c.iter().map(|a| a.bits()).max().unwrap_or(0);
                let mut work = root.clone();
                work.refine_to(64 + height + c.len() as u64);
                let (lo, hi) = work.enclose(c);
                let mid = ((&lo + &hi) / rational(2, 1)).to_f64().unwrap_or(f64::NAN);
                let half = ((&hi - &lo) / rational(2, 1)).to_f64().unwrap_or(f64::NAN);
                OrbitSample { value: mid, error_bound: half + mid.abs() * f64::EPSILON }
            }
            _ => unreachable!(),
        }
    }
}

/// A rounded orbit point with a bound on its distance to the exact value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSample {
    pub value: f64,
    pub error_bound: f64,
}

/// `x_k = f_λ^k(1)` for `k = 0..=n`.
pub fn tent_orbit(rate: &GrowthRate, n: usize) -> Result<Vec<OrbitSample>> {
    let orbit = Orbit { rate };
    let mut x = Point::one(rate);
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        out.push(orbit.sample(&x));
        if k < n {
            let side = orbit.side(&x, k)?;
            x = orbit.next(&x, side);
        }
    }
    Ok(out)
}

/// The first `N` letters of `It_λ`.
#[derive(Debug, Clone)]
pub struct ItineraryPrefix {
    pub lambda: GrowthRate,
    pub letters: Word,
    /// Letter indices (from 0) whose orbit point was exactly `1/λ`; the
    /// letter there was chosen to minimise the sequence.
    pub ambiguity_resolved_at: Vec<usize>,
}

impl ItineraryPrefix {
    /// The minimal period word `w_0` with `It_λ = w_0^∞`, when the orbit
    /// returned to `1` within the prefix.
    pub fn period(&self) -> Option<Word> {
        self.ambiguity_resolved_at
            .first()
            .map(|&k| self.letters.prefix(k + 1))
    }
}

/// `It_λ` up to length `n`. At a critical hit both branches lead to `1`, so
/// only the letter differs; choosing 1 after a prefix of sign −1 and 0 after
/// sign +1 gives the `≤_E`-least coding.
pub fn itinerary_prefix(rate: &GrowthRate, n: usize) -> Result<ItineraryPrefix> {
    let orbit = Orbit { rate };
    let mut x = Point::one(rate);
    let mut letters = Word::empty();
    let mut hits = Vec::new();
    // After the first critical hit the orbit repeats; copy instead of recomputing.
    let mut period: Option<usize> = None;
    for k in 0..n {
        if let Some(p) = period {
            letters.push(letters.letter(k % p));
            if k % p == p - 1 {
                hits.push(k);
            }
            continue;
        }
        let side = orbit.side(&x, k)?;
        let letter = match side {
            Side::Left => 0,
            Side::Right => 1,
            Side::Critical => {
                hits.push(k);
                period = Some(k + 1);
                match letters.sign() {
                    Sign::Minus => 1,
                    Sign::Plus => 0,
                }
            }
        };
        letters.push(letter);
        x = orbit.next(&x, side);
    }
    Ok(ItineraryPrefix { lambda: rate.clone(), letters, ambiguity_resolved_at: hits })
}

/// The first `n` letters of `It⁺_λ = lim_{λ'→λ⁺} It_{λ'}`: equal to `It_λ`
/// unless `It_λ = w_0^∞`, in which case it is `w_0'^∞` with the last letter
/// of `w_0` flipped.
pub fn right_limit_itinerary(rate: &GrowthRate, n: usize) -> Result<Word> {
    let it = itinerary_prefix(rate, n).map_err(|e| match e {
        Error::PrecisionExhausted { step, bits } => Error::PeriodUndetected(format!(
            "orbit point {step} not separated from the critical point at {bits} bits"
        )),
        other => other,
    })?;
    match it.period() {
        None => Ok(it.letters),
        Some(w0) => {
            let p = w0.len();
            let flipped = Word::from_letters(
                (0..p).map(|i| if i == p - 1 { 1 - w0.letter(i) } else { w0.letter(i) }),
            );
            Ok(Word::from_letters((0..n).map(|i| flipped.letter(i % p))))
        }
    }
}

/// The `k` with `It⁺_λ = 1·0^k·1…`, for `λ < 2`.
pub fn zero_run_bound(rate: &GrowthRate) -> Result<usize> {
    if rate.is_two() {
        return Err(Error::Domain("zero_run_bound requires λ < 2".into()));
    }
    let mut n = 16;
    loop {
        let w = right_limit_itinerary(rate, n)?;
        if let Some(j) = (1..n).find(|&i| w.letter(i) == 1) {
            return Ok(j - 1);
        }
        n *= 2;
    }
}
