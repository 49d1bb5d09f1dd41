//! Shared inputs for the benchmarks.

use lc_core::rational::ratio;
use lc_core::{DiscrepancyPattern, Field, LimitPair, SequencePrefix, SynthesisPlan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform random prefix, fixed by `seed`.
pub fn random_prefix(q: u32, m: usize, n: usize, seed: u64) -> SequencePrefix {
    let field = Field::from_order(q).expect("prime power");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<u32>> = (0..n).map(|_| (0..m).map(|_| rng.random_range(0..q)).collect()).collect();
    SequencePrefix::from_codes(field, m, &rows).expect("valid codes")
}

/// Random discrepancy flags, nonzero with probability `(q-1)/q`.
pub fn random_pattern(q: u32, m: usize, n: usize, seed: u64) -> DiscrepancyPattern {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pattern = DiscrepancyPattern::new(m);
    let mut row = vec![false; m];
    for _ in 0..n {
        row.iter_mut().for_each(|f| *f = rng.random_range(0..q) != 0);
        pattern.push_row(&row);
    }
    pattern
}

/// The `(3/5, 17/20)` plan over three binary sequences.
pub fn reference_plan(n: usize) -> SynthesisPlan {
    let target = LimitPair::new(ratio(3, 5), ratio(17, 20)).expect("valid pair");
    SynthesisPlan::new(Field::from_order(2).expect("binary field"), 3, target, n).expect("admissible")
}
