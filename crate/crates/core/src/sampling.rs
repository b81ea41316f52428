//! Seeded, order-stable sampling shared by the axiom and inequality checkers.
//!
//! The sample budget is cut into fixed-size chunks, each with its own ChaCha
//! stream derived from the seed. Chunks may run on any number of threads;
//! the reported failure is always the first one in sample order, so reports
//! do not depend on the worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::TAU_EQ;

pub const CHUNK: usize = 1024;

/// Budget, seed and equality tolerance for a sampling-based check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampling {
    pub budget: usize,
    pub seed: u64,
    pub tau_eq: f64,
}

impl Sampling {
    pub fn new(budget: usize, seed: u64) -> Self {
        Sampling {
            budget,
            seed,
            tau_eq: TAU_EQ,
        }
    }

    pub fn with_tau(mut self, tau_eq: f64) -> Self {
        self.tau_eq = tau_eq;
        self
    }
}

pub(crate) fn chunk_rng(seed: u64, salt: u32, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((salt as u64) << 40) | chunk as u64);
    rng
}

/// Runs `trial` `budget` times and returns the first failure in sample order.
///
/// `salt` separates the streams of independent checks sharing one seed.
pub(crate) fn first_failure<W, F>(
    budget: usize,
    seed: u64,
    salt: u32,
    trial: F,
) -> Result<Option<W>>
where
    W: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<Option<W>> + Sync,
{
    let chunks = budget.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, salt, c);
            let n = CHUNK.min(budget - c * CHUNK);
            for _ in 0..n {
                match trial(&mut rng) {
                    Ok(None) => {}
                    other => return other,
                }
            }
            Ok(None)
        })
        .find_first(|r| !matches!(r, Ok(None)))
        .unwrap_or(Ok(None))
}

/// Exhaustive counterpart of [`first_failure`] over an explicit item list.
pub(crate) fn first_failure_in<T, W, F>(items: &[T], trial: F) -> Result<Option<W>>
where
    T: Sync,
    W: Send,
    F: Fn(&T) -> Result<Option<W>> + Sync,
{
    items
        .par_iter()
        .map(&trial)
        .find_first(|r| !matches!(r, Ok(None)))
        .unwrap_or(Ok(None))
}
