//! Certifying that points lie outside a slice `Ξ_λ`.
//!
//! * `|z| > 1`: partial sums of `H(It_λ, ·)` in `u = 1/z`. A partial sum
//!   whose modulus exceeds the tail bound shows `H(It_λ, z) ≠ 0`.
//! * `|z| < 1`: every word of `M_{N,λ}`, read backwards through the inverse
//!   branches starting from 1, escapes the disc of radius `2/(1-|z|)`.
//!   Once a branch escapes, all its extensions do as well, so escaped
//!   branches are dropped and the enumeration becomes a pruned search.
//! * `|z| < 1/2` is never in a slice; `|z| = 1` always is.
//! * `λ < √2` is reduced to `[√2, 2)` by squaring both `z` and `λ`.
//!
//! Every decisive inequality is required to hold with slack exceeding a
//! bound on the floating-point error, including the error of the squared
//! point when a reduction took place. When it does not, the answer is
//! [`Verdict::Inconclusive`]. The error is tracked as a disc radius, so the
//! same tests certify a whole disc of points ([`MembershipTester::test_disk`]).

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::kneading::{itinerary_prefix, GrowthRate};
use crate::parry::{h_series, UNIT_ROUNDOFF};
use crate::suitability::{PrefixState, SuitabilityContext, MAX_PREFIX};
use crate::symbolic::Word;

const U: f64 = UNIT_ROUNDOFF;

/// What a certificate asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The point is outside the slice.
    CertifiedOut,
    /// The point is in the slice (only asserted on the unit circle).
    Member,
    /// Nothing was proved within the budget.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedOut => "certified-out",
            Verdict::Member => "member",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Which test produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    OutsideSeries,
    InsideEnumeration,
    FastPathHalfDisk,
    UnitCircle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::OutsideSeries => "outside-series",
            Method::InsideEnumeration => "inside-enumeration",
            Method::FastPathHalfDisk => "fast-path-half-disk",
            Method::UnitCircle => "unit-circle",
        })
    }
}

/// Outcome of a membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub method: Method,
    /// Series terms (outside) or word length `N` (inside) used.
    pub depth: usize,
    /// Slack in the decisive inequality after error bounds; positive
    /// exactly when the verdict is `CertifiedOut`.
    pub margin: f64,
    /// `k` such that the test ran on `(z^{2^k}, λ^{2^k})`.
    pub reduction_exponent: u32,
    /// The point actually tested, `z^{2^k}` rounded.
    pub tested_point: Complex64,
    /// Isolation precision of `λ` in bits, `None` when `λ` is rational.
    pub precision_bits: Option<u64>,
}

/// Work limits for [`test_point`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    /// Largest number of series terms for `|z| > 1`.
    pub max_terms: usize,
    /// Largest word length for `|z| < 1`.
    pub max_depth: usize,
    /// Points with `||z| - 1|` below this, but not exactly on the circle,
    /// are rejected as ambiguous.
    pub unit_tolerance: f64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_terms: 200, max_depth: 20, unit_tolerance: 1e-12 }
    }
}

/// A point and rate moved into the fundamental range `λ ∈ [√2, 2]`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub z: Complex64,
    /// Bound on `|z - (input)^{2^k}|`.
    pub z_error: f64,
    pub lambda: GrowthRate,
    pub k: u32,
}

/// Squares `(z, λ)` until `λ ≥ √2`; `z ∈ Ξ_λ ⟺ z² ∈ Ξ_{λ²}`.
pub fn reduce_to_fundamental(z: Complex64, lambda: &GrowthRate) -> Result<Reduction> {
    let mut out = Reduction { z, z_error: 0.0, lambda: lambda.clone(), k: 0 };
    while out.lambda.below_sqrt2() {
        let r = out.z.norm();
        out.lambda = out.lambda.square()?;
        out.z = out.z * out.z;
        out.z_error = (2.0 * r + out.z_error) * out.z_error + 4.0 * U * out.z.norm();
        out.k += 1;
    }
    Ok(out)
}

/// Radius of a disc around `z` certified outside the slice, given an
/// inside certificate of depth `n` whose margin is at least `epsilon`.
pub fn ball_radius(modulus: f64, n: usize, epsilon: f64) -> f64 {
    let a = (1.0 - modulus) / 2.0;
    let b = (1.0 - modulus).powi(2) * epsilon / 16.0;
    let c = modulus - 0.5;
    let d = epsilon / (n as f64 * 2f64.powi(n as i32 + 1));
    a.min(b).min(c).min(d)
}

/// [`ball_radius`] for a certificate produced by [`certify_inside`].
pub fn certify_ball(cert: &Certificate, epsilon: f64) -> Result<f64> {
    let r = cert.tested_point.norm();
    if cert.verdict != Verdict::CertifiedOut
        || cert.method != Method::InsideEnumeration
        || cert.reduction_exponent != 0
        || !(0.5 < r && r < 1.0)
    {
        return Err(Error::Domain(
            "a ball needs an unreduced inside-enumeration certificate with 1/2 < |z| < 1".into(),
        ));
    }
    if cert.margin < epsilon {
        return Err(Error::MarginInsufficient { margin: cert.margin, epsilon });
    }
    Ok(ball_radius(r, cert.depth, epsilon))
}

/// Per-`λ` state for testing many points: the reduced rate, the
/// suitability context and (on first use) the itinerary prefix are
/// computed once.
#[derive(Debug, Clone)]
pub struct MembershipTester {
    lambda: GrowthRate,
    k: u32,
    budget: Budget,
    ctx: SuitabilityContext,
    itinerary: OnceLock<Result<Word>>,
    execution: Execution,
}

impl MembershipTester {
    pub fn new(lambda: &GrowthRate, budget: Budget) -> Result<MembershipTester> {
        if budget.max_depth > MAX_PREFIX {
            return Err(Error::PrefixTooLong { len: budget.max_depth, max: MAX_PREFIX });
        }
        let mut reduced = lambda.clone();
        let mut k = 0;
        while reduced.below_sqrt2() {
            reduced = reduced.square()?;
            k += 1;
        }
        let ctx = SuitabilityContext::new(&reduced, budget.max_depth)?;
        Ok(MembershipTester {
            lambda: lambda.clone(),
            k,
            budget,
            ctx,
            itinerary: OnceLock::new(),
            execution: Execution::Sequential,
        })
    }

    /// Schedule for the search inside a single point (default sequential,
    /// since batches are usually parallel over points).
    pub fn with_execution(mut self, execution: Execution) -> MembershipTester {
        self.execution = execution;
        self
    }

    pub fn lambda(&self) -> &GrowthRate {
        &self.lambda
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    fn certificate(&self, verdict: Verdict, method: Method, depth: usize, margin: f64, z: Complex64) -> Certificate {
        Certificate {
            verdict,
            method,
            depth,
            margin,
            reduction_exponent: self.k,
            tested_point: z,
            precision_bits: self.lambda.precision_bits(),
        }
    }

    /// Dispatches on `|z|`.
    pub fn test_point(&self, z: Complex64) -> Result<Certificate> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!("point {z} is not finite")));
        }
        if on_unit_circle(z) {
            return Ok(Certificate {
                verdict: Verdict::Member,
                method: Method::UnitCircle,
                depth: 0,
                margin: 0.0,
                reduction_exponent: 0,
                tested_point: z,
                precision_bits: self.lambda.precision_bits(),
            });
        }
        let r = z.norm();
        if (r - 1.0).abs() <= self.budget.unit_tolerance {
            return Err(Error::AmbiguousModulus(r));
        }
        self.test_disk_unchecked(z, 0.0)
    }

    /// Tests every point of the closed disc of the given radius at once.
    /// `CertifiedOut` means no point of the disc lies in the slice. Discs
    /// meeting the unit circle are inconclusive.
    pub fn test_disk(&self, center: Complex64, radius: f64) -> Result<Certificate> {
        if !center.re.is_finite() || !center.im.is_finite() || radius.is_nan() || radius < 0.0 || !radius.is_finite() {
            return Err(Error::Domain(format!("disc around {center} with radius {radius} is not finite")));
        }
        if radius == 0.0 {
            return self.test_point(center);
        }
        let r = center.norm();
        let tol = self.budget.unit_tolerance;
        if r - radius <= 1.0 + tol && r + radius >= 1.0 - tol {
            return Ok(self.certificate(Verdict::Inconclusive, Method::UnitCircle, 0, f64::NEG_INFINITY, center));
        }
        self.test_disk_unchecked(center, radius)
    }

    fn test_disk_unchecked(&self, z: Complex64, radius: f64) -> Result<Certificate> {
        let (mut w, mut err) = (z, radius);
        for _ in 0..self.k {
            let m = w.norm();
            w = w * w;
            err = (2.0 * m + err) * err + 4.0 * U * w.norm();
        }
        if z.norm() > 1.0 {
            self.outside(w, err)
        } else {
            Ok(self.inside(w, err))
        }
    }

    /// The outside test on an already reduced point with error bound `delta`.
    fn outside(&self, z: Complex64, delta: f64) -> Result<Certificate> {
        let itinerary = self
            .itinerary
            .get_or_init(|| {
                let reduced = self.ctx.lambda();
                itinerary_prefix(reduced, self.budget.max_terms.max(2)).map(|it| it.letters)
            })
            .as_ref()
            .map_err(Clone::clone)?;
        let r_lo = z.norm() * (1.0 - 2.0 * U) - delta;
        if r_lo <= 1.0 {
            return Ok(self.certificate(Verdict::Inconclusive, Method::OutsideSeries, 0, f64::NEG_INFINITY, z));
        }
        let rho = (1.0 + 4.0 * U) / r_lo;
        let u_delta = delta / (r_lo * r_lo);
        let mut best = f64::NEG_INFINITY;
        let max_n = self.budget.max_terms;
        for n in 2..=max_n {
            let partial = h_series(itinerary.letters(), n - 1);
            let (value, rounding) = partial.eval_with_error(z);
            let tail = 2.0 * rho.powi(n as i32) / (1.0 - rho) * (1.0 + 1e-10);
            let slope: f64 = partial
                .coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c.abs() as f64 * rho.powi(k as i32 - 1))
                .sum();
            let margin = value.norm() - tail - rounding - slope * u_delta * (1.0 + 1e-10);
            if margin > 0.0 {
                return Ok(self.certificate(Verdict::CertifiedOut, Method::OutsideSeries, n, margin, z));
            }
            best = best.max(margin);
        }
        Ok(self.certificate(Verdict::Inconclusive, Method::OutsideSeries, max_n, best, z))
    }

    /// The inside test on an already reduced point with error bound `delta`.
    fn inside(&self, z: Complex64, delta: f64) -> Certificate {
        let r = z.norm();
        let r_hi = r * (1.0 + 2.0 * U) + delta;
        if r_hi < 0.5 {
            return self.certificate(Verdict::CertifiedOut, Method::FastPathHalfDisk, 0, 0.5 - r_hi, z);
        }
        let r_lo = r * (1.0 - 2.0 * U) - delta;
        if r_hi >= 1.0 || r_lo <= 0.0 {
            return self.certificate(Verdict::Inconclusive, Method::InsideEnumeration, 0, f64::NEG_INFINITY, z);
        }
        let v = z.inv();
        let search = Search {
            ctx: &self.ctx,
            v,
            v_err: delta / (r * r_lo) + 4.0 * U * v.norm(),
            threshold: 2.0 / (1.0 - r_hi) * (1.0 + 8.0 * U),
            max_depth: self.budget.max_depth,
        };
        let summary = search.run(self.execution);
        match summary.survivor {
            Some(slack) => self.certificate(
                Verdict::Inconclusive,
                Method::InsideEnumeration,
                self.budget.max_depth,
                slack,
                z,
            ),
            None => self.certificate(
                Verdict::CertifiedOut,
                Method::InsideEnumeration,
                summary.deepest_alive + 1,
                summary.min_escape,
                z,
            ),
        }
    }
}

/// Whether `re² + im² = 1` exactly, or `|z|` rounds to exactly 1 (as for
/// decimal inputs such as `0.6 + 0.8i`).
fn on_unit_circle(z: Complex64) -> bool {
    if z.norm() == 1.0 {
        return true;
    }
    match (BigRational::from_float(z.re), BigRational::from_float(z.im)) {
        (Some(a), Some(b)) => &a * &a + &b * &b == BigRational::one(),
        _ => false,
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    state: PrefixState,
    y: Complex64,
    /// Radius of a disc around `y` containing every value the branch
    /// takes on the tested disc, rounding included.
    err: f64,
}

#[derive(Debug, Clone, Copy)]
struct Summary {
    deepest_alive: usize,
    min_escape: f64,
    /// Slack of the first word found alive at full depth.
    survivor: Option<f64>,
}

impl Summary {
    fn empty() -> Summary {
        Summary { deepest_alive: 0, min_escape: f64::INFINITY, survivor: None }
    }

    fn merge(self, other: Summary) -> Summary {
        Summary {
            deepest_alive: self.deepest_alive.max(other.deepest_alive),
            min_escape: self.min_escape.min(other.min_escape),
            survivor: self.survivor.or(other.survivor),
        }
    }
}

struct Search<'a> {
    ctx: &'a SuitabilityContext,
    /// `1/z` at the centre and a radius covering `1/z` on the whole disc.
    v: Complex64,
    v_err: f64,
    threshold: f64,
    max_depth: usize,
}

enum Step {
    Escaped(f64),
    Alive(Node),
}

impl Search<'_> {
    fn step(&self, node: &Node, letter: u8) -> Option<Step> {
        let state = self.ctx.extend(node.state, letter)?;
        let n = if letter == 0 { node.y } else { 2.0 - node.y };
        let y = n * self.v;
        let m = y.norm();
        let spread = n.norm() * self.v_err + self.v.norm() * node.err + node.err * self.v_err;
        let err = spread * (1.0 + 16.0 * U) + 8.0 * U * m;
        let slack = m - err - self.threshold;
        Some(if slack > 0.0 {
            Step::Escaped(slack)
        } else {
            Step::Alive(Node { state, y, err })
        })
    }

    /// Sequential search below `start`, stopping at the first survivor.
    fn explore(&self, start: Node) -> Summary {
        let mut summary = Summary { deepest_alive: start.state.len(), ..Summary::empty() };
        let mut stack = vec![start];
        while let Some(node) = stack.pop() {
            let depth = node.state.len();
            summary.deepest_alive = summary.deepest_alive.max(depth);
            if depth == self.max_depth {
                summary.survivor = Some(node.y.norm() - self.threshold);
                return summary;
            }
            for letter in [1u8, 0] {
                match self.step(&node, letter) {
                    None => {}
                    Some(Step::Escaped(slack)) => summary.min_escape = summary.min_escape.min(slack),
                    Some(Step::Alive(child)) => stack.push(child),
                }
            }
        }
        summary
    }

    fn run(&self, execution: Execution) -> Summary {
        let root = Node { state: self.ctx.root(), y: Complex64::new(1.0, 0.0), err: 0.0 };
        if !execution.is_parallel() {
            return self.explore(root);
        }
        // Expand a few levels breadth-first, then search the subtrees in
        // parallel. Subtree order is fixed, so the summary is too.
        let split = self.max_depth.min(8);
        let mut head = Summary::empty();
        let mut layer = vec![root];
        for _ in 0..split {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for node in &layer {
                head.deepest_alive = head.deepest_alive.max(node.state.len());
                for letter in [0u8, 1] {
                    match self.step(node, letter) {
                        None => {}
                        Some(Step::Escaped(slack)) => head.min_escape = head.min_escape.min(slack),
                        Some(Step::Alive(child)) => next.push(child),
                    }
                }
            }
            layer = next;
        }
        exec::map_slice(execution, &layer, |node| self.explore(*node))
            .into_iter()
            .fold(head, Summary::merge)
    }
}

/// The outside test for `|z| > 1` with at most `max_n` series terms.
pub fn certify_outside(z: Complex64, lambda: &GrowthRate, max_n: usize) -> Result<Certificate> {
    if z.norm() <= 1.0 {
        return Err(Error::Domain("certify_outside requires |z| > 1".into()));
    }
    let budget = Budget { max_terms: max_n, max_depth: 1, ..Budget::default() };
    MembershipTester::new(lambda, budget)?.test_point(z)
}

/// The inside test for `|z| < 1` with words of length at most `max_depth`.
/// `λ` must already lie in `[√2, 2]`.
pub fn certify_inside(z: Complex64, lambda: &GrowthRate, max_depth: usize) -> Result<Certificate> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain("certify_inside requires |z| < 1".into()));
    }
    if lambda.below_sqrt2() {
        return Err(Error::GrowthRateOutOfRange(format!("{lambda} is below √2; reduce first")));
    }
    let budget = Budget { max_terms: 2, max_depth, ..Budget::default() };
    MembershipTester::new(lambda, budget)?.with_execution(Execution::Parallel).test_point(z)
}

/// Tests one point.
pub fn test_point(z: Complex64, lambda: &GrowthRate, budget: Budget) -> Result<Certificate> {
    MembershipTester::new(lambda, budget)?.test_point(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parry::IntPolynomial;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn dec(s: &str) -> GrowthRate {
        GrowthRate::from_decimal(s).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tribonacci() -> GrowthRate {
        GrowthRate::leading_root_of(&IntPolynomial::new(vec![-1, -1, -1, 1])).unwrap()
    }

    #[test]
    fn disks_cover_their_points() {
        let tester = MembershipTester::new(&dec("1.8"), Budget { max_depth: 14, ..Budget::default() }).unwrap();
        let z = Complex64::new(-0.3, 0.55);
        let point = tester.test_point(z).unwrap();
        assert_eq!(point.verdict, Verdict::CertifiedOut);
        let small = tester.test_disk(z, 1e-4).unwrap();
        assert_eq!(small.verdict, Verdict::CertifiedOut);
        assert!(small.margin <= point.margin);
        for k in 0..16 {
            let w = z + Complex64::from_polar(1e-4, k as f64 * 0.4);
            assert_eq!(tester.test_point(w).unwrap().verdict, Verdict::CertifiedOut);
        }
        // a disc reaching a slice point is never certified
        let member = Complex64::new(-0.419643377607080, 0.606290729207199);
        let high = MembershipTester::new(&dec("1.9"), Budget { max_depth: 14, ..Budget::default() }).unwrap();
        let far = high.test_disk(member + 0.02, 0.021).unwrap();
        assert_ne!(far.verdict, Verdict::CertifiedOut);
        assert_eq!(tester.test_disk(Complex64::new(0.9, 0.0), 0.2).unwrap().method, Method::UnitCircle);
        assert_eq!(tester.test_disk(Complex64::new(0.2, 0.1), 0.1).unwrap().method, Method::FastPathHalfDisk);
    }

    #[test]
    fn reduction() {
        let r = reduce_to_fundamental(c(0.5, 0.5), &dec("1.3")).unwrap();
        assert_eq!(r.k, 1);
        assert_eq!(r.lambda.as_rational().unwrap(), &BigRational::new(169.into(), 100.into()));
        assert!((r.z - c(0.0, 0.5)).norm() < 1e-15);
        let r = reduce_to_fundamental(c(0.9, 0.0), &dec("1.15")).unwrap();
        assert_eq!(r.k, 2);
        assert!((r.lambda.value() - 1.74900625).abs() < 1e-15);
        assert_eq!(reduce_to_fundamental(c(0.9, 0.0), &dec("1.8")).unwrap().k, 0);
    }

    #[test]
    fn ball_radii() {
        let r = ball_radius(0.75, 20, 0.1);
        assert!((r - 0.1 / (20.0 * 2f64.powi(21))).abs() < 1e-20);
        assert_eq!(ball_radius(0.75, 20, 0.0), 0.0);
        assert!(ball_radius(0.5 + 1e-9, 3, 1.0) <= 1e-9);
    }

    #[test]
    fn outside_examples() {
        let t = tribonacci();
        let cert = certify_outside(c(1.5, 0.0), &t, 60).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedOut);
        assert!(cert.margin > 0.0 && cert.depth <= 60);
        let cert = certify_outside(c(1.839286755214161, 0.0), &t, 200).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        let cert = certify_outside(c(3.0, 0.0), &dec("1.7"), 20).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedOut);
        assert!(cert.depth <= 4);
        assert!(certify_outside(c(0.5, 0.0), &t, 10).is_err());
    }

    #[test]
    fn inside_examples() {
        let cert = certify_inside(c(0.3, 0.0), &dec("1.8"), 10).unwrap();
        assert_eq!((cert.verdict, cert.method), (Verdict::CertifiedOut, Method::FastPathHalfDisk));
        let cert = certify_inside(c(-0.419643377607080, 0.606290729207199), &dec("1.85"), 20).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert!(certify_inside(c(0.7, 0.0), &dec("1.3"), 10).is_err());
    }

    #[test]
    fn dispatch_examples() {
        let budget = Budget::default();
        let cert = test_point(c(1.0, 0.0), &dec("1.5"), budget).unwrap();
        assert_eq!((cert.verdict, cert.method), (Verdict::Member, Method::UnitCircle));
        let cert = test_point(c(0.6, 0.8), &dec("1.5"), budget).unwrap();
        assert_eq!(cert.verdict, Verdict::Member);
        assert!(matches!(test_point(c(1.0 + 1e-13, 0.0), &dec("1.5"), budget), Err(Error::AmbiguousModulus(_))));
        let cert = test_point(c(0.0, 0.5), &dec("1.3"), budget).unwrap();
        assert_eq!(cert.reduction_exponent, 1);
        assert!((cert.tested_point - c(-0.25, 0.0)).norm() < 1e-15);
        assert_eq!((cert.verdict, cert.method), (Verdict::CertifiedOut, Method::FastPathHalfDisk));
        let cert = test_point(c(1.5, 0.0), &tribonacci(), budget).unwrap();
        assert_eq!((cert.verdict, cert.method), (Verdict::CertifiedOut, Method::OutsideSeries));
        assert!(cert.precision_bits.unwrap() >= 64);
    }

    #[test]
    fn parallel_search_agrees() {
        let lambda = dec("1.82");
        let seq = MembershipTester::new(&lambda, Budget { max_depth: 18, ..Budget::default() }).unwrap();
        let par = seq.clone().with_execution(Execution::Parallel);
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..40 {
            let z = Complex64::from_polar(rng.random_range(0.5..0.95), rng.random_range(0.0..std::f64::consts::TAU));
            assert_eq!(seq.test_point(z).unwrap(), par.test_point(z).unwrap(), "{z}");
        }
    }

    #[test]
    fn ball_from_certificate() {
        let cert = certify_inside(c(0.52, 0.0), &dec("1.8"), 20).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedOut);
        let radius = certify_ball(&cert, cert.margin.min(0.01)).unwrap();
        assert!(radius > 0.0);
        assert!(matches!(certify_ball(&cert, cert.margin * 2.0), Err(Error::MarginInsufficient { .. })));
    }

    #[test]
    fn disc_is_forward_invariant() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..2000 {
            let z = Complex64::from_polar(rng.random_range(0.0..0.99), rng.random_range(0.0..std::f64::consts::TAU));
            let t = 2.0 / (1.0 - z.norm());
            let x = Complex64::from_polar(t * rng.random_range(0.0f64..1.0).sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
            assert!((z * x).norm() <= t * (1.0 + 1e-12));
            assert!((2.0 - z * x).norm() <= t * (1.0 + 1e-12));
        }
    }

    #[test]
    fn escape_is_monotone() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..2000 {
            let z = Complex64::from_polar(rng.random_range(0.01..0.99), rng.random_range(0.0..std::f64::consts::TAU));
            let t = 2.0 / (1.0 - z.norm());
            let y = Complex64::from_polar(t * rng.random_range(1.0001..5.0), rng.random_range(0.0..std::f64::consts::TAU));
            assert!((y / z).norm() > y.norm());
            assert!(((2.0 - y) / z).norm() > y.norm());
        }
    }

    #[test]
    fn squaring_reduction_is_consistent() {
        let budget = Budget { max_depth: 16, max_terms: 120, ..Budget::default() };
        let mut rng = StdRng::seed_from_u64(13);
        for rate in ["1.2", "1.3", "1.38"] {
            let lambda = dec(rate);
            let squared = lambda.square().unwrap();
            let a = MembershipTester::new(&lambda, budget).unwrap();
            let b = MembershipTester::new(&squared, budget).unwrap();
            for _ in 0..25 {
                let r = if rng.random_bool(0.5) { rng.random_range(0.72..0.99) } else { rng.random_range(1.02..1.6) };
                let z = Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU));
                let ca = a.test_point(z).unwrap();
                let cb = b.test_point(z * z).unwrap();
                assert_eq!(ca.verdict, cb.verdict, "{z} at {rate}");
            }
        }
    }

    #[test]
    fn conjugate_points_agree() {
        let tester = MembershipTester::new(&dec("1.82"), Budget { max_depth: 16, ..Budget::default() }).unwrap();
        let mut rng = StdRng::seed_from_u64(14);
        for _ in 0..60 {
            let z = Complex64::from_polar(rng.random_range(0.5..1.8), rng.random_range(0.0..std::f64::consts::TAU));
            if (z.norm() - 1.0).abs() < 1e-3 {
                continue;
            }
            assert_eq!(tester.test_point(z).unwrap().verdict, tester.test_point(z.conj()).unwrap().verdict);
        }
    }
}
