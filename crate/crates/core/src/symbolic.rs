//! Words and eventually periodic sequences over `{0, 1}`.
//!
//! Letters are indexed from 0 in this API; the mathematical convention
//! `w = w_1 w_2 ...` maps `w_k` to `letter(k - 1)`.
//!
//! The order used throughout is the twisted lexicographic order: at the
//! first index where two sequences differ, the larger letter wins when the
//! common prefix has an even number of 1s, and the smaller letter wins when
//! it has an odd number.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Cumulative sign `(-1)^(number of 1s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(ones: usize) -> Sign {
        if ones.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Decides the twisted order from the first difference. `a_letter` and
/// `b_letter` are the letters at the first differing index and
/// `prefix_sign` the sign of the common prefix before it.
fn decide(a_letter: u8, b_letter: u8, prefix_sign: Sign) -> Ordering {
    debug_assert_ne!(a_letter, b_letter);
    let natural = a_letter.cmp(&b_letter);
    match prefix_sign {
        Sign::Plus => natural,
        Sign::Minus => natural.reverse(),
    }
}

const CHUNK: usize = 64;

/// A finite word, packed 64 letters per limb, with its count of 1s cached.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    limbs: Vec<u64>,
    len: usize,
    ones: usize,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = u8>>(letters: I) -> Word {
        let mut w = Word::empty();
        for a in letters {
            w.push(a);
        }
        w
    }

    /// Builds a word from the low `len` bits of `bits`; bit `i` is letter `i`.
    pub fn from_bits(bits: u64, len: usize) -> Word {
        assert!(len <= 64, "from_bits takes at most 64 letters");
        let masked = if len == 64 { bits } else { bits & ((1u64 << len) - 1) };
        Word {
            limbs: if len == 0 { Vec::new() } else { vec![masked] },
            len,
            ones: masked.count_ones() as usize,
        }
    }

    /// Low-bit packing of a word of at most 64 letters.
    pub fn to_bits(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn push(&mut self, letter: u8) {
        debug_assert!(letter <= 1);
        let (limb, off) = (self.len / CHUNK, self.len % CHUNK);
        if off == 0 {
            self.limbs.push(0);
        }
        if letter != 0 {
            self.limbs[limb] |= 1u64 << off;
            self.ones += 1;
        }
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn letter(&self, i: usize) -> u8 {
        assert!(i < self.len, "letter index {i} out of range for length {}", self.len);
        ((self.limbs[i / CHUNK] >> (i % CHUNK)) & 1) as u8
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.letter(i))
    }

    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.ones)
    }

    /// Number of 1s among the first `n` letters.
    pub fn prefix_ones(&self, n: usize) -> usize {
        assert!(n <= self.len);
        let full = n / CHUNK;
        let mut count: usize = self.limbs[..full].iter().map(|l| l.count_ones() as usize).sum();
        let rest = n % CHUNK;
        if rest > 0 {
            count += (self.limbs[full] & ((1u64 << rest) - 1)).count_ones() as usize;
        }
        count
    }

    /// Sign of `Prefix_n(w)`.
    pub fn prefix_sign(&self, n: usize) -> Sign {
        Sign::from_parity(self.prefix_ones(n))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for a in other.letters() {
            w.push(a);
        }
        w
    }

    pub fn prefix(&self, n: usize) -> Word {
        assert!(n <= self.len);
        Word::from_letters((0..n).map(|i| self.letter(i)))
    }

    /// The last `n` letters.
    pub fn suffix(&self, n: usize) -> Word {
        assert!(n <= self.len);
        Word::from_letters((self.len - n..self.len).map(|i| self.letter(i)))
    }

    pub fn reverse(&self) -> Word {
        Word::from_letters((0..self.len).rev().map(|i| self.letter(i)))
    }

    /// Cyclic rotation: the word `w_{k+1} ... w_n w_1 ... w_k`.
    pub fn rotate_left(&self, k: usize) -> Word {
        if self.len == 0 {
            return self.clone();
        }
        let k = k % self.len;
        Word::from_letters((0..self.len).map(|i| self.letter((i + k) % self.len)))
    }

    /// The periodic sequence `w^∞`.
    pub fn periodic(&self) -> Result<SymbolSeq> {
        SymbolSeq::new(Word::empty(), self.clone())
    }

    /// Index of the first differing letter, for words of equal length.
    fn first_difference(&self, other: &Word) -> Option<usize> {
        debug_assert_eq!(self.len, other.len);
        self.limbs
            .iter()
            .zip(&other.limbs)
            .enumerate()
            .find_map(|(j, (a, b))| {
                let x = a ^ b;
                (x != 0).then(|| j * CHUNK + x.trailing_zeros() as usize)
            })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.letters() {
            f.write_str(if a == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Word> {
        let mut w = Word::empty();
        for c in s.chars() {
            match c {
                '0' => w.push(0),
                '1' => w.push(1),
                other => return Err(Error::InvalidLetter(other)),
            }
        }
        Ok(w)
    }
}

/// Cumulative sign of a word.
pub fn cumulative_sign(w: &Word) -> Sign {
    w.sign()
}

/// Twisted lexicographic comparison of two words of equal length.
pub fn twisted_compare(a: &Word, b: &Word) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(match a.first_difference(b) {
        None => Ordering::Equal,
        Some(i) => decide(a.letter(i), b.letter(i), a.prefix_sign(i)),
    })
}

/// Twisted comparison of the first `n` letters of two low-bit packed words.
pub fn twisted_compare_bits(a: u64, b: u64, n: usize) -> Ordering {
    debug_assert!(n <= 64);
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let diff = (a ^ b) & mask;
    if diff == 0 {
        return Ordering::Equal;
    }
    let i = diff.trailing_zeros();
    let below = if i == 0 { 0 } else { a & ((1u64 << i) - 1) };
    decide(
        ((a >> i) & 1) as u8,
        ((b >> i) & 1) as u8,
        Sign::from_parity(below.count_ones() as usize),
    )
}

/// An eventually periodic sequence `preperiod · period^∞` in normal form:
/// the period is primitive and the preperiod is as short as possible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolSeq {
    preperiod: Word,
    period: Word,
}

impl SymbolSeq {
    pub fn new(preperiod: Word, period: Word) -> Result<SymbolSeq> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut period = primitive_root(&period);
        let mut pre: Vec<u8> = preperiod.letters().collect();
        while let Some(&last) = pre.last() {
            if last != period.letter(period.len() - 1) {
                break;
            }
            pre.pop();
            period = period.rotate_left(period.len() - 1);
        }
        Ok(SymbolSeq {
            preperiod: Word::from_letters(pre),
            period,
        })
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn is_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    pub fn letter(&self, i: usize) -> u8 {
        let m = self.preperiod.len();
        if i < m {
            self.preperiod.letter(i)
        } else {
            self.period.letter((i - m) % self.period.len())
        }
    }

    /// Unbounded letter stream.
    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        (0..).map(move |i| self.letter(i))
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::from_letters((0..n).map(|i| self.letter(i)))
    }

    /// `σ^k`.
    pub fn shift(&self, k: usize) -> SymbolSeq {
        let m = self.preperiod.len();
        if k <= m {
            let pre = Word::from_letters((k..m).map(|i| self.preperiod.letter(i)));
            return SymbolSeq::new(pre, self.period.clone()).expect("nonempty period");
        }
        let period = self.period.rotate_left((k - m) % self.period.len());
        SymbolSeq::new(Word::empty(), period).expect("nonempty period")
    }

    /// Rewrites as (preperiod, period) with the given parity constraints so
    /// that letterwise substitutions and their inverses line up.
    fn unrolled(&self, even_preperiod: bool, even_period: bool) -> (Word, Word) {
        let mut pre = self.preperiod.clone();
        let mut period = self.period.clone();
        if even_preperiod && pre.len() % 2 == 1 {
            pre.push(period.letter(0));
            period = period.rotate_left(1);
        }
        if even_period && period.len() % 2 == 1 {
            period = period.concat(&period);
        }
        (pre, period)
    }

    /// Length of a prefix after which both sequences are known to agree
    /// forever if they agree on it.
    fn comparison_horizon(&self, other: &SymbolSeq) -> usize {
        self.preperiod.len().max(other.preperiod.len()) + self.period.len().lcm(&other.period.len())
    }
}

impl fmt::Display for SymbolSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.preperiod.is_empty() {
            write!(f, "{}·", self.preperiod)?;
        }
        write!(f, "({})^∞", self.period)
    }
}

impl fmt::Debug for SymbolSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolSeq({self})")
    }
}

fn primitive_root(w: &Word) -> Word {
    let n = w.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (0..n).all(|i| w.letter(i) == w.letter(i % d)) {
            return w.prefix(d);
        }
    }
    w.clone()
}

/// Twisted lexicographic comparison of eventually periodic sequences.
pub fn twisted_compare_seq(a: &SymbolSeq, b: &SymbolSeq) -> Ordering {
    let horizon = a.comparison_horizon(b);
    let mut ones = 0usize;
    for i in 0..horizon {
        let (x, y) = (a.letter(i), b.letter(i));
        if x != y {
            return decide(x, y, Sign::from_parity(ones));
        }
        ones += x as usize;
    }
    Ordering::Equal
}

/// The doubling substitution `1 → 10, 0 → 11`, its reversal-conjugate
/// `0 → 11, 1 → 01`, and the inverse of doubling.
pub trait Doubling: Sized {
    fn double(&self) -> Self;
    fn double_prime(&self) -> Self;
    fn renormalize(&self) -> Result<Self>;
}

impl Doubling for Word {
    fn double(&self) -> Word {
        let mut w = Word::empty();
        for a in self.letters() {
            w.push(1);
            w.push(1 - a);
        }
        w
    }

    fn double_prime(&self) -> Word {
        let mut w = Word::empty();
        for a in self.letters() {
            w.push(1 - a);
            w.push(1);
        }
        w
    }

    fn renormalize(&self) -> Result<Word> {
        if !self.len().is_multiple_of(2) || (0..self.len()).step_by(2).any(|i| self.letter(i) != 1) {
            return Err(Error::NotRenormalizable);
        }
        Ok(Word::from_letters((1..self.len()).step_by(2).map(|i| 1 - self.letter(i))))
    }
}

impl Doubling for SymbolSeq {
    fn double(&self) -> SymbolSeq {
        SymbolSeq::new(self.preperiod.double(), self.period.double()).expect("nonempty period")
    }

    fn double_prime(&self) -> SymbolSeq {
        SymbolSeq::new(self.preperiod.double_prime(), self.period.double_prime())
            .expect("nonempty period")
    }

    fn renormalize(&self) -> Result<SymbolSeq> {
        let (pre, period) = self.unrolled(true, true);
        SymbolSeq::new(pre.renormalize()?, period.renormalize()?)
    }
}

fn starts_with_10(w: &Word) -> bool {
    w.len() >= 2 && w.letter(0) == 1 && w.letter(1) == 0
}

/// A word is admissible when it starts with `10`, has positive cumulative
/// sign, and `w^∞` dominates each of its shifts.
pub fn is_admissible(w: &Word) -> bool {
    if !starts_with_10(w) || w.sign() != Sign::Plus {
        return false;
    }
    (1..w.len()).all(|k| {
        twisted_compare(&w.rotate_left(k), w).expect("equal lengths") != Ordering::Greater
    })
}

/// Admissibility of an eventually periodic sequence: it starts with `10`
/// and `σ^k(s) ≤ s` for all `k`.
pub fn is_admissible_seq(s: &SymbolSeq) -> bool {
    if s.letter(0) != 1 || s.letter(1) != 0 {
        return false;
    }
    let distinct_shifts = s.preperiod().len() + s.period().len();
    (1..distinct_shifts).all(|k| twisted_compare_seq(&s.shift(k), s) != Ordering::Greater)
}

/// Positive sign and `Suffix_k(w)·1 < Prefix_{k+1}(w)` for `1 ≤ k < |w|`.
pub fn is_dominant(w: &Word) -> bool {
    if w.sign() != Sign::Plus {
        return false;
    }
    (1..w.len()).all(|k| {
        let mut tail = w.suffix(k);
        tail.push(1);
        twisted_compare(&tail, &w.prefix(k + 1)).expect("equal lengths") == Ordering::Less
    })
}

/// Low-bit packed admissibility test for words of at most 64 letters.
pub fn is_admissible_bits(w: u64, n: usize) -> bool {
    if !(2..=64).contains(&n) || w & 0b11 != 0b01 {
        return false;
    }
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let w = w & mask;
    if !w.count_ones().is_multiple_of(2) {
        return false;
    }
    (1..n).all(|k| {
        let rot = ((w >> k) | (w << (n - k))) & mask;
        twisted_compare_bits(rot, w, n) != Ordering::Greater
    })
}

/// Whether the packed prefix `u` of length `m` can still be extended to an
/// admissible word: no suffix of `u` may exceed the prefix of equal length.
fn admissible_prefix_bits(u: u64, m: usize) -> bool {
    if m >= 1 && u & 1 != 1 {
        return false;
    }
    if m >= 2 && u & 0b10 != 0 {
        return false;
    }
    (1..m).all(|k| twisted_compare_bits(u >> k, u, m - k) != Ordering::Greater)
}

/// All admissible words of length `2..=max_len`, sorted by length and then
/// by packed value. Depth-first with prefix pruning.
pub fn enumerate_admissible(max_len: usize) -> Vec<Word> {
    assert!(max_len <= 64, "enumerate_admissible supports lengths up to 64");
    let mut found: Vec<(usize, u64)> = Vec::new();
    let mut stack: Vec<(u64, usize)> = vec![(1, 1)];
    while let Some((u, m)) = stack.pop() {
        if m >= 2 && is_admissible_bits(u, m) {
            found.push((m, u));
        }
        if m == max_len {
            continue;
        }
        for a in [0u64, 1] {
            let v = u | (a << m);
            if admissible_prefix_bits(v, m + 1) {
                stack.push((v, m + 1));
            }
        }
    }
    found.sort_unstable();
    found.into_iter().map(|(m, u)| Word::from_bits(u, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn seq(pre: &str, period: &str) -> SymbolSeq {
        SymbolSeq::new(w(pre), w(period)).unwrap()
    }

    fn all_words(n: usize) -> impl Iterator<Item = Word> {
        (0..1u64 << n).map(move |b| Word::from_bits(b, n))
    }

    #[test]
    fn signs() {
        assert_eq!(cumulative_sign(&w("")), Sign::Plus);
        assert_eq!(cumulative_sign(&w("10")), Sign::Minus);
        assert_eq!(cumulative_sign(&w("1001")), Sign::Plus);
        assert_eq!(w("1101").prefix_sign(2), Sign::Plus);
        assert_eq!(w("1101").prefix_sign(3), Sign::Plus);
        assert_eq!(w("1101").prefix_sign(1), Sign::Minus);
    }

    #[test]
    fn sign_is_multiplicative() {
        for a in 0..6 {
            for u in all_words(a) {
                for v in all_words(3) {
                    assert_eq!(u.concat(&v).sign(), u.sign() * v.sign());
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("0110").to_string(), "0110");
        assert!("012".parse::<Word>().is_err());
        let long: Word = "10".repeat(70).parse().unwrap();
        assert_eq!(long.len(), 140);
        assert_eq!(long.ones(), 70);
        assert_eq!(long.prefix_sign(129), Sign::Minus);
        assert_eq!(long.reverse().reverse(), long);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(twisted_compare(&w("011"), &w("101")).unwrap(), Ordering::Less);
        assert_eq!(twisted_compare(&w("110"), &w("101")).unwrap(), Ordering::Less);
        assert_eq!(twisted_compare(&w("101"), &w("101")).unwrap(), Ordering::Equal);
        assert!(matches!(
            twisted_compare(&w("10"), &w("101")),
            Err(Error::LengthMismatch(2, 3))
        ));
        assert_eq!(
            twisted_compare_seq(&seq("", "101"), &seq("", "101")),
            Ordering::Equal
        );
        assert_eq!(
            twisted_compare_seq(&seq("", "1000"), &seq("", "1001")),
            Ordering::Greater
        );
    }

    #[test]
    fn packed_compare_matches_words() {
        for n in 1..=6 {
            for a in all_words(n) {
                for b in all_words(n) {
                    assert_eq!(
                        twisted_compare_bits(a.to_bits().unwrap(), b.to_bits().unwrap(), n),
                        twisted_compare(&a, &b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn normal_form() {
        let s = seq("0101", "0101");
        assert_eq!(s.preperiod().len(), 0);
        assert_eq!(s.period(), &w("01"));
        let t = seq("11", "01");
        assert_eq!(t.preperiod(), &w("1"));
        assert_eq!(t.period(), &w("10"));
        assert_eq!(seq("10", "1").to_string(), "10·(1)^∞");
        assert!(SymbolSeq::new(w("1"), Word::empty()).is_err());
        for i in 0..12 {
            assert_eq!(t.letter(i), seq("11", "01").letter(i));
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(seq("", "10").shift(1), seq("", "01"));
        assert_eq!(seq("10", "1").shift(2), seq("", "1"));
        assert_eq!(seq("", "1001").shift(4), seq("", "1001"));
    }

    #[test]
    fn shift_of_periodic_word_is_rotation() {
        for n in 1..=8 {
            for u in all_words(n) {
                let s = u.periodic().unwrap();
                for k in 0..n {
                    assert_eq!(s.shift(k), u.rotate_left(k).periodic().unwrap());
                }
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&w("1001")));
        assert!(!is_admissible(&w("10")));
        assert!(!is_admissible(&w("01")));
        assert!(!is_admissible(&w("0110")));
        assert!(is_admissible_seq(&seq("10", "1")));
        assert!(is_admissible_seq(&seq("", "1001")));
        assert!(!is_admissible_seq(&seq("", "1100")));
    }

    #[test]
    fn dominance_of_1001() {
        // k=1: "1"+"1" = 11 vs 10: common prefix "1" has sign -1, so 11 < 10.
        // k=2: "01"+"1" = 011 vs 100: first letter 0 < 1 under sign +1.
        // k=3: "001"+"1" vs 1001: 0 < 1 under sign +1.
        assert!(is_dominant(&w("1001")));
        assert!(!is_dominant(&w("10")));
        assert!(!is_dominant(&w("1011")));
    }

    #[test]
    fn dominant_implies_admissible() {
        for n in 2..=12 {
            for u in all_words(n) {
                if is_dominant(&u) && u.letter(0) == 1 && u.letter(1) == 0 {
                    assert!(is_admissible(&u), "{u}");
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let fast = enumerate_admissible(12);
        let brute: Vec<Word> = (2..=12)
            .flat_map(all_words)
            .filter(is_admissible)
            .collect();
        let mut a: Vec<String> = fast.iter().map(|x| x.to_string()).collect();
        let mut b: Vec<String> = brute.iter().map(|x| x.to_string()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(fast.contains(&w("1001")));
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(w("1").double(), w("10"));
        assert_eq!(w("0").double(), w("11"));
        assert_eq!(w("10").double(), w("1011"));
        assert_eq!(w("0").double_prime(), w("11"));
        assert_eq!(w("1").double_prime(), w("01"));
        assert_eq!(w("10").double_prime().reverse(), w("10").reverse().double());
        assert_eq!(w("1011").renormalize().unwrap(), w("10"));
        assert_eq!(w("1001").renormalize(), Err(Error::NotRenormalizable));
        assert_eq!(w("101").renormalize(), Err(Error::NotRenormalizable));
    }

    #[test]
    fn sequence_doubling_round_trip() {
        let s = seq("1", "100");
        assert_eq!(s.double().renormalize().unwrap(), s);
        assert_eq!(seq("10", "1").renormalize().unwrap(), seq("1", "0"));
        assert!(seq("", "1001").renormalize().is_err());
        for n in 0..200 {
            assert_eq!(s.double().letter(n), s.prefix(200).double().letter(n));
        }
    }

    #[test]
    fn total_order_axioms() {
        for n in 1..=8 {
            let words: Vec<Word> = all_words(n).collect();
            let mut sorted = words.clone();
            sorted.sort_by(|a, b| twisted_compare(a, b).unwrap());
            for pair in sorted.windows(2) {
                assert_eq!(twisted_compare(&pair[0], &pair[1]).unwrap(), Ordering::Less);
            }
            for a in &words {
                for b in &words {
                    let ab = twisted_compare(a, b).unwrap();
                    assert_eq!(ab, twisted_compare(b, a).unwrap().reverse());
                    assert_eq!(ab == Ordering::Equal, a == b);
                }
            }
        }
    }

    #[test]
    fn doubling_preserves_order_and_sign() {
        for n in 1..=8 {
            let words: Vec<Word> = all_words(n).collect();
            for a in &words {
                assert_eq!(a.double().sign(), a.sign());
                assert_eq!(a.double_prime().reverse(), a.reverse().double());
                for b in &words {
                    assert_eq!(
                        twisted_compare(a, b).unwrap(),
                        twisted_compare(&a.double(), &b.double()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn renormalize_inverts_double() {
        for n in 0..=10 {
            for u in all_words(n) {
                assert_eq!(u.double().renormalize().unwrap(), u);
            }
        }
    }

    #[test]
    fn renormalizable_iff_below_sqrt2_itinerary() {
        let it_sqrt2 = seq("10", "1");
        for u in enumerate_admissible(12) {
            let renormalizable = u.renormalize().is_ok();
            let below = twisted_compare_seq(&u.periodic().unwrap(), &it_sqrt2) == Ordering::Less;
            assert_eq!(renormalizable, below, "{u}");
        }
    }
}
