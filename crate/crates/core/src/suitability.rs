//! Prefix-level λ-suitability and the sets `M_{N,λ}`.
//!
//! The conditions quantify over every `λ' ∈ (λ, 2]`. Itineraries increase
//! with `λ'`, and the `n`-prefix of `It_{λ'}` is constant for `λ'` in a
//! right neighbourhood of `λ`, equal to the `n`-prefix of `It⁺_λ`. So
//!
//! * `Reverse(Prefix_n(α)) ≤_E Prefix_n(It_{λ'})` for all `λ' > λ` iff it
//!   holds against `Prefix_n(It⁺_λ)`;
//! * equality with some `Prefix_n(It_{λ'})` is then only possible against
//!   that infimum prefix, which is attained, so the sign condition is
//!   checked there;
//! * the zero-run bound is smallest for `λ'` just above `λ`, where it is
//!   read off `It⁺_λ`.
//!
//! At `λ = 2` every sequence is suitable and the context is unconstrained.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::kneading::{right_limit_itinerary, zero_run_bound, GrowthRate};
use crate::symbolic::{twisted_compare_bits, Word};

/// Longest prefix a context can describe.
pub const MAX_PREFIX: usize = 63;

/// Everything needed to test prefixes against `λ`.
#[derive(Debug, Clone)]
pub struct SuitabilityContext {
    lambda: GrowthRate,
    /// `None` at `λ = 2`.
    itplus: Option<Word>,
    itplus_bits: u64,
    /// Longest allowed run of zeros; `None` when unbounded.
    zero_bound: Option<usize>,
    len: usize,
}

impl SuitabilityContext {
    /// Context for prefixes of length at most `n`.
    pub fn new(lambda: &GrowthRate, n: usize) -> Result<SuitabilityContext> {
        if n > MAX_PREFIX {
            return Err(Error::PrefixTooLong { len: n, max: MAX_PREFIX });
        }
        if lambda.is_two() {
            return Ok(SuitabilityContext {
                lambda: lambda.clone(),
                itplus: None,
                itplus_bits: 0,
                zero_bound: None,
                len: n,
            });
        }
        let itplus = right_limit_itinerary(lambda, n.max(2))?;
        let zero_bound = zero_run_bound(lambda)?;
        Ok(SuitabilityContext {
            lambda: lambda.clone(),
            itplus_bits: itplus.to_bits().expect("at most 63 letters"),
            itplus: Some(itplus),
            zero_bound: Some(zero_bound),
            len: n,
        })
    }

    pub fn lambda(&self) -> &GrowthRate {
        &self.lambda
    }

    /// The prefix of `It⁺_λ`, absent at `λ = 2`.
    pub fn itplus_prefix(&self) -> Option<&Word> {
        self.itplus.as_ref()
    }

    pub fn zero_bound(&self) -> Option<usize> {
        self.zero_bound
    }

    pub fn max_len(&self) -> usize {
        self.len
    }

    /// The empty prefix.
    pub fn root(&self) -> PrefixState {
        PrefixState { rev: 0, len: 0, zero_run: 0 }
    }

    /// Appends `letter` to a prefix that passed, returning the new state if
    /// the longer prefix passes too.
    #[inline]
    pub fn extend(&self, state: PrefixState, letter: u8) -> Option<PrefixState> {
        debug_assert!(state.len < self.len);
        let len = state.len + 1;
        let rev = (state.rev << 1) | letter as u64;
        let zero_run = if letter == 0 { state.zero_run + 1 } else { 0 };
        if self.zero_bound.is_some_and(|k| zero_run > k) {
            return None;
        }
        if self.itplus.is_some() {
            match twisted_compare_bits(rev, self.itplus_bits, len) {
                Ordering::Less => {}
                Ordering::Equal if rev.count_ones() % 2 == 1 => {}
                _ => return None,
            }
        }
        Some(PrefixState { rev, len, zero_run })
    }
}

/// Incremental state of a prefix `α_1 … α_n`: its reversal packed with
/// `α_n` in bit 0, and the length of its trailing run of zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixState {
    rev: u64,
    len: usize,
    zero_run: usize,
}

impl PrefixState {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The prefix itself, in reading order.
    pub fn word(&self) -> Word {
        Word::from_letters((0..self.len).map(|i| ((self.rev >> (self.len - 1 - i)) & 1) as u8))
    }
}

/// Whether every prefix of `α` satisfies the conditions.
pub fn prefix_conditions(alpha: &Word, ctx: &SuitabilityContext) -> Result<bool> {
    if alpha.len() > ctx.max_len() {
        return Err(Error::PrefixTooLong { len: alpha.len(), max: ctx.max_len() });
    }
    let mut state = ctx.root();
    for a in alpha.letters() {
        match ctx.extend(state, a) {
            Some(next) => state = next,
            None => return Ok(false),
        }
    }
    Ok(true)
}

fn collect_from(ctx: &SuitabilityContext, start: PrefixState, n: usize, out: &mut Vec<Word>) {
    let mut stack = vec![start];
    while let Some(state) = stack.pop() {
        if state.len() == n {
            out.push(state.word());
            continue;
        }
        for a in [1u8, 0] {
            if let Some(next) = ctx.extend(state, a) {
                stack.push(next);
            }
        }
    }
}

/// `M_{N,λ}`: all words of length `n` passing the prefix conditions, in
/// lexicographic order of their letters.
pub fn enumerate_m(lambda: &GrowthRate, n: usize, execution: Execution) -> Result<Vec<Word>> {
    let ctx = SuitabilityContext::new(lambda, n)?;
    Ok(enumerate_m_with(&ctx, n, execution))
}

/// [`enumerate_m`] for an existing context.
pub fn enumerate_m_with(ctx: &SuitabilityContext, n: usize, execution: Execution) -> Vec<Word> {
    assert!(n <= ctx.max_len());
    // Split into subtrees at a fixed depth so the result does not depend on
    // the schedule.
    let split = n.min(6);
    let mut seeds = Vec::new();
    collect_states(ctx, split, &mut seeds);
    let parts = exec::map_slice(execution, &seeds, |&s| {
        let mut out = Vec::new();
        collect_from(ctx, s, n, &mut out);
        out
    });
    let mut words: Vec<Word> = parts.into_iter().flatten().collect();
    words.sort_by_cached_key(|w| w.to_string());
    words
}

fn collect_states(ctx: &SuitabilityContext, depth: usize, out: &mut Vec<PrefixState>) {
    let mut layer = vec![ctx.root()];
    for _ in 0..depth {
        layer = layer
            .into_iter()
            .flat_map(|s| [0u8, 1].into_iter().filter_map(move |a| ctx.extend(s, a)))
            .collect();
    }
    out.extend(layer);
}
