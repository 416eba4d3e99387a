//! `(0,1)`-uniform random sources with an explicit, auditable seed policy.
//!
//! Every draw lies in the half-open interval `[0, 1)`. The upper end is
//! excluded so that the selection rule `T_{k-1} <= u < T_k` always lands
//! in exactly one threshold bin; a draw of exactly 1.0 cannot occur.
//!
//! Two concrete sources exist:
//!
//! - [`SeededSource`] wraps a ChaCha12 generator. The seed either comes
//!   from the wall clock (so separate program runs produce different
//!   lists) or is given explicitly; either way the seed actually used is
//!   recorded so any list can be regenerated for audit.
//! - [`ReplaySource`] echoes a recorded sequence of uniforms and errors
//!   once it runs dry. It exists to replay audited draws exactly.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::{Error, Result};

/// How the seed of a [`SeededSource`] is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedPolicy {
    /// Derive the seed from the wall clock at construction time. Two
    /// runs separated by at least one clock tick get different seeds.
    ClockDerived,
    /// Use the given seed. Equal seeds yield identical uniform sequences.
    Explicit(u64),
}

/// A source of `[0, 1)` uniform draws.
pub trait UniformSource {
    /// Returns the next uniform draw and advances the source state.
    fn next_uniform(&mut self) -> Result<f64>;
}

/// Deterministic pseudo-random uniform source.
///
/// ChaCha12 has a period far beyond 2^64 and passes the standard
/// statistical batteries; the emitted sequence is a pure function of
/// [`seed_used`](Self::seed_used).
#[derive(Debug, Clone)]
pub struct SeededSource {
    rng: ChaCha12Rng,
    seed_used: u64,
}

impl SeededSource {
    pub fn new(policy: SeedPolicy) -> Self {
        let seed_used = match policy {
            SeedPolicy::ClockDerived => clock_seed(),
            SeedPolicy::Explicit(seed) => seed,
        };
        SeededSource {
            rng: ChaCha12Rng::seed_from_u64(seed_used),
            seed_used,
        }
    }

    /// The seed this source was actually built from, for the audit record.
    pub fn seed_used(&self) -> u64 {
        self.seed_used
    }
}

impl UniformSource for SeededSource {
    fn next_uniform(&mut self) -> Result<f64> {
        Ok(bits_to_unit(self.rng.next_u64()))
    }
}

/// Builds a seeded source under the given policy.
pub fn make_source(policy: SeedPolicy) -> SeededSource {
    SeededSource::new(policy)
}

/// Echoes a recorded sequence of uniforms, then errors on exhaustion.
#[derive(Debug, Clone)]
pub struct ReplaySource {
    values: Vec<f64>,
    cursor: usize,
}

impl ReplaySource {
    /// Rejects any value outside `[0, 1)`.
    pub fn new(values: &[f64]) -> Result<Self> {
        for &value in values {
            if !(0.0..1.0).contains(&value) {
                return Err(Error::ReplayValueOutOfRange { value });
            }
        }
        Ok(ReplaySource {
            values: values.to_vec(),
            cursor: 0,
        })
    }

    /// Draws consumed so far.
    pub fn consumed(&self) -> usize {
        self.cursor
    }
}

impl UniformSource for ReplaySource {
    fn next_uniform(&mut self) -> Result<f64> {
        match self.values.get(self.cursor) {
            Some(&value) => {
                self.cursor += 1;
                Ok(value)
            }
            None => Err(Error::ReplayExhausted {
                provided: self.values.len(),
            }),
        }
    }
}

/// Seed material from the wall clock (nanoseconds since the epoch,
/// mixed through SplitMix64 so neighbouring ticks differ in all bits).
pub fn clock_seed() -> u64 {
    let nanos = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    splitmix64(nanos)
}

/// Deterministically derives an independent seed from a base seed and a
/// stream index. Distinct indices give distinct streams, so Monte Carlo
/// replicates never share a source and their order of execution cannot
/// matter.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Maps 64 random bits to `[0, 1)` using the top 53 bits, the full
/// precision of an f64 mantissa. 1.0 is unreachable: the largest output
/// is (2^53 - 1) / 2^53.
fn bits_to_unit(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
