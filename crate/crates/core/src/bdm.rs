//! Battery-discharge dynamics of the linear complexity deviation.
//!
//! The state is the drain `d = L - ceil(nM/(M+1))` and the battery charges
//! `b_m = floor(n/(M+1)) - w_m`. Advancing to position `n + 1` first either
//! charges every battery (when `(n + 1) % (M+1) == 0`) or lowers the drain;
//! then each battery with `b_m > d` and a nonzero discrepancy swaps its value
//! with the drain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `ceil(n * m / (m + 1))`.
pub fn expected_complexity(n: i64, m: i64) -> i64 {
    (n * m).div_euclid(m + 1) + i64::from((n * m).rem_euclid(m + 1) != 0)
}

/// Zero/nonzero discrepancy flags, one row of `M` flags per position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscrepancyPattern {
    m: usize,
    rows: usize,
    flags: Vec<bool>,
}

impl DiscrepancyPattern {
    pub fn new(m: usize) -> Self {
        DiscrepancyPattern {
            m,
            rows: 0,
            flags: Vec::new(),
        }
    }

    pub fn from_rows(m: usize, rows: &[Vec<bool>]) -> Result<Self> {
        let mut p = DiscrepancyPattern::new(m);
        for row in rows {
            if row.len() != m {
                return Err(Error::invalid(format!("pattern row has {} flags, expected {m}", row.len())));
            }
            p.push_row(row);
        }
        Ok(p)
    }

    pub fn sequences(&self) -> usize {
        self.m
    }

    /// Number of positions.
    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn push_row(&mut self, row: &[bool]) {
        assert_eq!(row.len(), self.m, "pattern row length");
        self.flags.extend_from_slice(row);
        self.rows += 1;
    }

    /// Flags at position `t` (1-based); `true` means NONZERO.
    pub fn row(&self, t: usize) -> &[bool] {
        assert!(t >= 1 && t <= self.rows, "position {t} out of range");
        &self.flags[(t - 1) * self.m..t * self.m]
    }

    pub fn is_nonzero(&self, t: usize, m: usize) -> bool {
        self.row(t)[m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        (1..=self.rows).map(move |t| self.row(t))
    }

    /// The pattern of the first `k` sequences.
    pub fn first_sequences(&self, k: usize) -> DiscrepancyPattern {
        assert!(k <= self.m);
        let mut out = DiscrepancyPattern::new(k);
        for row in self.rows() {
            out.push_row(&row[..k]);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdmState {
    n: usize,
    d: i64,
    b: Vec<i64>,
}

impl BdmState {
    pub fn new(m: usize) -> Self {
        BdmState {
            n: 0,
            d: 0,
            b: vec![0; m],
        }
    }

    pub fn from_parts(n: usize, d: i64, b: Vec<i64>) -> Self {
        BdmState { n, d, b }
    }

    pub fn sequences(&self) -> usize {
        self.b.len()
    }

    pub fn position(&self) -> usize {
        self.n
    }

    pub fn drain(&self) -> i64 {
        self.d
    }

    pub fn batteries(&self) -> &[i64] {
        &self.b
    }

    /// `L(n) = ceil(nM/(M+1)) + d`.
    pub fn linear_complexity(&self) -> i64 {
        expected_complexity(self.n as i64, self.b.len() as i64) + self.d
    }

    /// `d + sum(b) + n mod (M+1)`, zero in every reachable state.
    pub fn invariant_residue(&self) -> i64 {
        self.d + self.b.iter().sum::<i64>() + (self.n % (self.b.len() + 1)) as i64
    }

    pub fn all_batteries_empty(&self) -> bool {
        self.b.iter().all(|&b| b == 0)
    }

    /// Advances one position; `flags[m]` is true for a nonzero discrepancy.
    /// Returns the number of discharges.
    pub fn step(&mut self, flags: &[bool]) -> usize {
        assert_eq!(flags.len(), self.b.len(), "flag count");
        self.step_with(|m| flags[m])
    }

    /// Advances one position, asking `nonzero(m)` for each sequence in order.
    pub fn step_with(&mut self, mut nonzero: impl FnMut(usize) -> bool) -> usize {
        self.n += 1;
        if self.n.is_multiple_of(self.b.len() + 1) {
            self.b.iter_mut().for_each(|b| *b += 1);
        } else {
            self.d -= 1;
        }
        let mut discharges = 0;
        for m in 0..self.b.len() {
            if nonzero(m) && self.b[m] > self.d {
                std::mem::swap(&mut self.b[m], &mut self.d);
                discharges += 1;
            }
        }
        discharges
    }
}

/// Drain and battery values after each position, stored flat.
///
/// Positions run `start+1..=start+len`; a full run has `start = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trajectory {
    m: usize,
    start: usize,
    d: Vec<i64>,
    b: Vec<i64>,
}

impl Trajectory {
    pub fn new(m: usize) -> Self {
        Trajectory::with_capacity(m, 0)
    }

    pub fn with_capacity(m: usize, n: usize) -> Self {
        Trajectory::starting_at(m, 0, n)
    }

    /// Empty trajectory whose first recorded position will be `start + 1`.
    pub fn starting_at(m: usize, start: usize, capacity: usize) -> Self {
        Trajectory {
            m,
            start,
            d: Vec::with_capacity(capacity),
            b: Vec::with_capacity(capacity * m),
        }
    }

    pub fn record(&mut self, state: &BdmState) {
        debug_assert_eq!(state.position(), self.start + self.d.len() + 1);
        self.d.push(state.drain());
        self.b.extend_from_slice(state.batteries());
    }

    pub fn sequences(&self) -> usize {
        self.m
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Last recorded position.
    pub fn end(&self) -> usize {
        self.start + self.d.len()
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    fn index(&self, n: usize) -> usize {
        assert!(n > self.start && n <= self.end(), "position {n} not recorded");
        n - self.start - 1
    }

    /// Drain after position `n`.
    pub fn drain(&self, n: usize) -> i64 {
        self.d[self.index(n)]
    }

    pub fn batteries(&self, n: usize) -> &[i64] {
        let i = self.index(n);
        &self.b[i * self.m..(i + 1) * self.m]
    }

    pub fn linear_complexity(&self, n: usize) -> i64 {
        expected_complexity(n as i64, self.m as i64) + self.drain(n)
    }

    /// `L(n)` for every recorded position, reconstructed from the drain.
    pub fn profile(&self) -> Vec<usize> {
        (self.start + 1..=self.end()).map(|n| self.linear_complexity(n) as usize).collect()
    }

    pub fn drains(&self) -> &[i64] {
        &self.d
    }
}

/// Deterministic replay of the first `n` positions of `pattern`.
pub fn bdm_replay(pattern: &DiscrepancyPattern, n: usize) -> Result<Trajectory> {
    if n > pattern.len() {
        return Err(Error::invalid(format!(
            "replay length {n} exceeds pattern length {}",
            pattern.len()
        )));
    }
    let mut state = BdmState::new(pattern.sequences());
    let mut traj = Trajectory::with_capacity(pattern.sequences(), n);
    for row in pattern.rows().take(n) {
        state.step(row);
        traj.record(&state);
    }
    Ok(traj)
}

#[derive(Clone, Debug)]
pub struct BdmConfig {
    pub q: u32,
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub eps: Rational,
    /// Positions at which statistics are taken; sorted, within `1..=n`.
    pub checkpoints: Vec<usize>,
}

impl BdmConfig {
    /// `count` evenly spaced checkpoints ending at `n`.
    pub fn even_checkpoints(n: usize, count: usize) -> Vec<usize> {
        let count = count.clamp(1, n.max(1));
        let mut points: Vec<usize> = (1..=count).map(|i| (n * i / count).max(1)).collect();
        points.dedup();
        points
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckpointStats {
    pub n: usize,
    pub d_min: i64,
    pub d_max: i64,
    pub d_sum: i64,
    pub within_eps: usize,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialSummary {
    pub trial: usize,
    pub seed: u64,
    pub final_drain: i64,
    pub final_complexity: i64,
    pub within_eps: bool,
    /// Positions where the invariant residue was nonzero; zero for a correct run.
    pub invariant_violations: usize,
}

#[derive(Clone, Debug)]
pub struct BdmStatistics {
    pub config: BdmConfig,
    pub checkpoints: Vec<CheckpointStats>,
    pub trials: Vec<TrialSummary>,
}

/// Per-trial seed: SplitMix64 output at counter position `trial` of a stream
/// keyed by `master_seed`.
pub fn trial_seed(master_seed: u64, trial: usize) -> u64 {
    let mut z = master_seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(trial as u64 + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `|L/n - M/(M+1)| <= eps`, decided exactly.
fn within(l: i64, n: usize, m: usize, eps: &Rational) -> bool {
    let dev = Rational::new((l * (m as i64 + 1) - n as i64 * m as i64).abs().into(), (n as i64 * (m as i64 + 1)).into());
    dev <= *eps
}

struct TrialRun {
    summary: TrialSummary,
    drains: Vec<i64>,
    within: Vec<bool>,
}

fn run_trial(cfg: &BdmConfig, trial: usize) -> TrialRun {
    let seed = trial_seed(cfg.master_seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = BdmState::new(cfg.m);
    let mut drains = Vec::with_capacity(cfg.checkpoints.len());
    let mut hits = Vec::with_capacity(cfg.checkpoints.len());
    let mut next = cfg.checkpoints.iter().peekable();
    let mut violations = 0;
    for _ in 0..cfg.n {
        // Every flag is drawn, eligible or not, so the stream matches a symbol-level run.
        state.step_with(|_| rng.random_range(0..cfg.q) != 0);
        if state.invariant_residue() != 0 {
            violations += 1;
        }
        while next.peek().is_some_and(|&&c| c == state.position()) {
            next.next();
            drains.push(state.drain());
            hits.push(within(state.linear_complexity(), state.position(), cfg.m, &cfg.eps));
        }
    }
    let final_complexity = state.linear_complexity();
    TrialRun {
        summary: TrialSummary {
            trial,
            seed,
            final_drain: state.drain(),
            final_complexity,
            within_eps: cfg.n > 0 && within(final_complexity, cfg.n, cfg.m, &cfg.eps),
            invariant_violations: violations,
        },
        drains,
        within: hits,
    }
}

/// Independent stochastic trials: each flag is nonzero with probability `(q-1)/q`.
///
/// Trials run in parallel; results are ordered by trial index, so the output
/// depends only on the configuration.
pub fn bdm_random(cfg: &BdmConfig) -> Result<BdmStatistics> {
    if cfg.trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    if cfg.m == 0 || cfg.q < 2 {
        return Err(Error::invalid("need M >= 1 and q >= 2"));
    }
    if cfg.checkpoints.iter().any(|&c| c == 0 || c > cfg.n) || !cfg.checkpoints.is_sorted() {
        return Err(Error::invalid("checkpoints must be sorted and lie in 1..=n"));
    }
    let runs: Vec<TrialRun> = (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect();
    let checkpoints = cfg
        .checkpoints
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let ds = runs.iter().map(|r| r.drains[i]);
            CheckpointStats {
                n,
                d_min: ds.clone().min().unwrap(),
                d_max: ds.clone().max().unwrap(),
                d_sum: ds.sum(),
                within_eps: runs.iter().filter(|r| r.within[i]).count(),
                trials: cfg.trials,
            }
        })
        .collect();
    Ok(BdmStatistics {
        config: cfg.clone(),
        checkpoints,
        trials: runs.into_iter().map(|r| r.summary).collect(),
    })
}
