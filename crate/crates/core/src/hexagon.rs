//! Discrepancy patterns that steer `L(n)/n` between a target liminf and limsup.
//!
//! Each hexagon starts at `t0` with all batteries empty and runs three phases:
//!
//! 1. positions in `(t0, t1)`: sequence 1 predicts (zero discrepancy) while
//!    sequences `2..K` discharge, so `b_1` climbs with slope `1/(K+1)`;
//! 2. positions in `[t1, tx)`: nothing discharges;
//! 3. from `tx` on: every discrepancy is nonzero until all batteries are
//!    empty again, at about `t*`.
//!
//! At `tx` battery 1 holds about `S~ tx` and the drain about `I~ tx`; the
//! discharge at `tx` swaps them, so `d/n` touches both limits once per hexagon.
//! Hexagon lengths grow geometrically with ratio `(1-I)/(1-S)`.
//!
//! All thresholds are exact rationals and integer positions are compared
//! against them, so nothing drifts as hexagons grow.

use num::{One, Signed, Zero};

use crate::algebra::{Field, FieldElement, SequencePrefix};
use crate::bdm::{BdmState, DiscrepancyPattern, Trajectory};
use crate::error::{Error, Result};
use crate::mscfa::Mscfa;
use crate::rational::{ceil_i64, int, ratio, Rational};
use crate::regions::{admissible_for_k, inadmissible, k_prime, LimitPair};

/// Phase boundaries of one hexagon and the slope constant `A` of the
/// batteries `2..M` at `tx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexagonSchedule {
    pub t0: Rational,
    pub t1: Rational,
    pub tx: Rational,
    pub t2: Rational,
    pub tstar: Rational,
    pub a: Rational,
}

/// Schedule for a hexagon starting at `t0` aimed at drain limits `(I~, S~)`.
///
/// Requires `0 < S~ < 1/(M+1)`; callers handle the endpoints through
/// [`effective_s_tilde`].
pub fn schedule(t0: &Rational, m: usize, i_tilde: &Rational, s_tilde: &Rational) -> Result<HexagonSchedule> {
    if m == 0 {
        return Err(Error::invalid("a hexagon needs at least one active sequence"));
    }
    let mp1 = int(m as i64 + 1);
    if !s_tilde.is_positive() || *s_tilde >= mp1.recip() {
        return Err(Error::invalid(format!(
            "S~ = {s_tilde} must lie strictly between 0 and 1/{}",
            m + 1
        )));
    }
    let one = Rational::one();
    let a = if m == 1 {
        i_tilde.clone()
    } else {
        (-s_tilde - i_tilde) / int(m as i64 - 1)
    };
    let tx = t0 / (&one - s_tilde * &mp1);
    let t1 = &tx * (&one + i_tilde - &a);
    let t2 = &tx * (&one + s_tilde - &a);
    let tstar = t0 + &mp1 * (s_tilde - i_tilde) * &tx;
    Ok(HexagonSchedule {
        t0: t0.clone(),
        t1,
        tx,
        t2,
        tstar,
        a,
    })
}

/// `S~` adjusted at the two endpoints where the schedule degenerates:
/// `0` becomes `1/t0` and `1/(M+1)` becomes `1/(M+1) - 1/t0`.
pub fn effective_s_tilde(s_tilde: &Rational, t0: &Rational, m: usize) -> Rational {
    let top = ratio(1, m as i64 + 1);
    if s_tilde.is_zero() {
        t0.recip()
    } else if *s_tilde == top {
        top - t0.recip()
    } else {
        s_tilde.clone()
    }
}

/// `I~` moved into `[-M S^, -S^/M]` so an adjusted `S^` still yields
/// `t0 <= t1 <= tx`. A no-op whenever `S^ = S~` and the pair is admissible.
fn effective_i_tilde(i_tilde: &Rational, s_hat: &Rational, m: usize) -> Rational {
    let mr = int(m as i64);
    let low = -(&mr * s_hat);
    let high = -(s_hat / &mr);
    i_tilde.clone().max(low).min(high)
}

#[derive(Clone, Debug)]
pub struct SynthesisPlan {
    pub field: Field,
    /// Number of output sequences.
    pub m: usize,
    /// Number of active sequences driven by the hexagons.
    pub k: usize,
    pub target: LimitPair,
    /// Number of positions to produce.
    pub n: usize,
    /// Per hexagon: append `K+1` extra all-discharge steps after it settles.
    pub gap_bits: Vec<bool>,
    /// Discrepancy value used for nonzero flags.
    pub nonzero: FieldElement,
}

impl SynthesisPlan {
    /// Plan with `K = K'`, the largest admissible active count.
    pub fn new(field: Field, m: usize, target: LimitPair, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("M must be at least 1"));
        }
        let k = k_prime(&target.i, &target.s, m).ok_or_else(|| inadmissible(&target.i, &target.s, m))?;
        Ok(SynthesisPlan {
            field,
            m,
            k,
            target,
            n,
            gap_bits: Vec::new(),
            nonzero: FieldElement::ONE,
        })
    }

    pub fn with_active_count(mut self, k: usize) -> Result<Self> {
        if k > self.m {
            return Err(Error::invalid(format!("K = {k} exceeds M = {}", self.m)));
        }
        if !admissible_for_k(&self.target.i, &self.target.s, k) {
            return Err(Error::Inadmissible {
                i: self.target.i.to_string(),
                s: self.target.s.to_string(),
                detail: format!(" for K = {k}"),
            });
        }
        self.k = k;
        Ok(self)
    }

    pub fn with_gaps(mut self, bits: Vec<bool>) -> Self {
        self.gap_bits = bits;
        self
    }

    pub fn with_nonzero_symbol(mut self, value: FieldElement) -> Result<Self> {
        if value.is_zero() || value.code() >= self.field.order() {
            return Err(Error::invalid("the nonzero discrepancy value must be a nonzero field element"));
        }
        self.nonzero = value;
        Ok(self)
    }

    fn gap(&self, hexagon: usize) -> bool {
        self.gap_bits.get(hexagon).copied().unwrap_or(false)
    }
}

/// Phase boundaries of one emitted hexagon, as positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexagonRecord {
    pub index: usize,
    /// State position at the start (all batteries empty).
    pub start: usize,
    /// Exact schedule; `None` for the bootstrap hexagon.
    pub schedule: Option<HexagonSchedule>,
    /// First position of phase 2.
    pub phase2_start: usize,
    /// First position of phase 3 (the discharge of battery 1).
    pub phase3_start: usize,
    /// Position where all batteries were empty again.
    pub settled: Option<usize>,
    pub gap: bool,
    /// The hexagon, including any gap steps, fits within the plan length.
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct GeneratedPattern {
    /// Flags for the `K` active sequences.
    pub pattern: DiscrepancyPattern,
    /// Battery-discharge replay of `pattern` (over `K` sequences).
    pub trajectory: Trajectory,
    pub hexagons: Vec<HexagonRecord>,
}

impl GeneratedPattern {
    pub fn last_complete_hexagon(&self) -> Option<&HexagonRecord> {
        self.hexagons.iter().rev().find(|h| h.complete)
    }
}

struct Emitter {
    limit: usize,
    state: BdmState,
    pattern: DiscrepancyPattern,
    trajectory: Trajectory,
}

impl Emitter {
    fn new(k: usize, start: usize, limit: usize) -> Self {
        let drain = -((start % (k + 1)) as i64);
        Emitter {
            limit,
            state: BdmState::from_parts(start, drain, vec![0; k]),
            pattern: DiscrepancyPattern::new(k),
            trajectory: Trajectory::starting_at(k, start, limit.saturating_sub(start)),
        }
    }

    fn position(&self) -> usize {
        self.state.position()
    }

    /// Emits one position; `false` once the limit is reached.
    fn emit(&mut self, flags: &[bool]) -> bool {
        if self.position() >= self.limit {
            return false;
        }
        self.state.step(flags);
        assert_eq!(self.state.invariant_residue(), 0, "invariant broken");
        self.pattern.push_row(flags);
        self.trajectory.record(&self.state);
        true
    }

    fn full(&self) -> bool {
        self.position() >= self.limit
    }
}

/// Phase-3 ends past this position signal broken dynamics.
fn guard_position(tstar: i64, k: usize) -> i64 {
    2 * tstar + (k as i64 + 1).pow(2)
}

struct PhaseMarks {
    phase2_start: usize,
    phase3_start: usize,
    settled: Option<usize>,
}

/// Runs the three phases of one hexagon. Phase 1 covers positions below
/// `phase2_at`, phase 2 those below `phase3_at`, phase 3 the rest until all
/// batteries are empty.
fn run_phases(out: &mut Emitter, phase2_at: i64, phase3_at: i64, guard: i64, index: usize) -> Result<PhaseMarks> {
    let k = out.state.sequences();
    let start = out.position();
    let mut first = vec![true; k];
    first[0] = false;
    let quiet = vec![false; k];
    let loud = vec![true; k];

    while (out.position() as i64) + 1 < phase2_at && out.emit(&first) {}
    let phase2_start = out.position() + 1;
    while (out.position() as i64) + 1 < phase3_at && out.emit(&quiet) {}
    let phase3_start = out.position() + 1;
    if out.full() {
        return Ok(PhaseMarks {
            phase2_start,
            phase3_start,
            settled: None,
        });
    }
    if out.position() == start {
        // Nothing fit before tx; discharge for one period instead.
        for _ in 0..=k {
            out.emit(&loud);
        }
    }
    while !out.state.all_batteries_empty() {
        if out.position() as i64 >= guard {
            return Err(Error::GuardBreach {
                hexagon: index,
                position: out.position(),
            });
        }
        if !out.emit(&loud) {
            break;
        }
    }
    let settled = out.state.all_batteries_empty().then(|| out.position());
    Ok(PhaseMarks {
        phase2_start,
        phase3_start,
        settled,
    })
}

/// Battery-discharge replay of a single hexagon with the given schedule,
/// starting from empty batteries at position `t0 = schedule.t0`.
pub fn replay_hexagon(k: usize, sched: &HexagonSchedule) -> Result<Trajectory> {
    if k == 0 {
        return Err(Error::invalid("a hexagon needs at least one active sequence"));
    }
    if !sched.t0.is_integer() || sched.t0.is_negative() {
        return Err(Error::invalid("t0 must be a nonnegative integer"));
    }
    let start = ceil_i64(&sched.t0) as usize;
    let tstar = ceil_i64(&sched.tstar);
    let guard = guard_position(tstar, k);
    let mut out = Emitter::new(k, start, guard as usize + 1);
    run_phases(&mut out, ceil_i64(&sched.t1), ceil_i64(&sched.tx), guard, 0)?;
    Ok(out.trajectory)
}

/// Schedule for the hexagon starting at integer position `t0`, with the
/// endpoint adjustments applied; `None` while it would be degenerate.
fn next_schedule(t0: usize, k: usize, i_tilde: &Rational, s_tilde: &Rational) -> Option<HexagonSchedule> {
    let t0r = int(t0 as i64);
    let s_hat = effective_s_tilde(s_tilde, &t0r, k);
    let i_hat = if s_hat == *s_tilde {
        i_tilde.clone()
    } else {
        effective_i_tilde(i_tilde, &s_hat, k)
    };
    let next = schedule(&t0r, k, &i_hat, &s_hat).ok()?;
    (ceil_i64(&next.tx) > t0 as i64 + 1).then_some(next)
}

/// Emits the discrepancy flags for `plan.k` active sequences, replaying them
/// through the battery-discharge model as they are produced.
pub fn generate_pattern(plan: &SynthesisPlan) -> Result<GeneratedPattern> {
    let k = plan.k;
    if k > plan.m || !admissible_for_k(&plan.target.i, &plan.target.s, k) {
        return Err(inadmissible(&plan.target.i, &plan.target.s, plan.m));
    }
    let mut out = Emitter::new(k, 0, plan.n);
    let mut hexagons = Vec::new();
    if k == 0 {
        while out.emit(&[]) {}
        return Ok(GeneratedPattern {
            pattern: out.pattern,
            trajectory: out.trajectory,
            hexagons,
        });
    }

    let (i_tilde, s_tilde) = plan.target.tilde(k);
    let period = k as i64 + 1;
    let loud = vec![true; k];
    // Bootstrap hexagon: t1 = tx = K+1.
    let mut sched: Option<HexagonSchedule> = None;
    let (mut phase2_at, mut phase3_at, mut tstar) = (period, period, period);

    while !out.full() {
        let start = out.position();
        let index = hexagons.len();
        let marks = run_phases(&mut out, phase2_at, phase3_at, guard_position(tstar, k), index)?;
        let gap = marks.settled.is_some() && plan.gap(index);
        let mut complete = marks.settled.is_some();
        if gap {
            for _ in 0..period {
                complete &= out.emit(&loud);
            }
        }
        hexagons.push(HexagonRecord {
            index,
            start,
            schedule: sched.take(),
            phase2_start: marks.phase2_start,
            phase3_start: marks.phase3_start,
            settled: marks.settled,
            gap,
            complete,
        });

        // Discharge period by period while the next schedule is degenerate.
        while !out.full() {
            if let Some(next) = next_schedule(out.position(), k, &i_tilde, &s_tilde) {
                phase2_at = ceil_i64(&next.t1);
                phase3_at = ceil_i64(&next.tx);
                tstar = ceil_i64(&next.tstar);
                sched = Some(next);
                break;
            }
            for _ in 0..period {
                out.emit(&loud);
            }
        }
    }
    Ok(GeneratedPattern {
        pattern: out.pattern,
        trajectory: out.trajectory,
        hexagons,
    })
}

#[derive(Clone, Debug)]
pub struct Synthesis {
    /// `M` columns; columns `K..M` are zero.
    pub sequence: SequencePrefix,
    pub generated: GeneratedPattern,
}

/// Result of re-running the engine on synthesized symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub pattern_matches: bool,
    pub profile_matches: bool,
}

impl Synthesis {
    pub fn round_trip(&self) -> RoundTrip {
        let k = self.generated.pattern.sequences();
        let (engine, observed) = Mscfa::run_recording(&self.sequence);
        let inactive_quiet = observed.rows().all(|row| row[k..].iter().all(|&f| !f));
        RoundTrip {
            pattern_matches: inactive_quiet && observed.first_sequences(k) == self.generated.pattern,
            profile_matches: engine.profile() == self.generated.trajectory.profile().as_slice(),
        }
    }
}

/// Turns the generated pattern into field symbols by steering an engine over
/// the `K` active sequences; the remaining `M - K` sequences are zero.
pub fn synthesize(plan: &SynthesisPlan) -> Result<Synthesis> {
    let generated = generate_pattern(plan)?;
    let mut sequence = SequencePrefix::new(plan.field.clone(), plan.m)?;
    let mut row = vec![FieldElement::ZERO; plan.m];
    if plan.k == 0 {
        for _ in 0..plan.n {
            sequence.push_row(&row)?;
        }
    } else {
        let mut engine = Mscfa::new(plan.field.clone(), plan.k)?;
        for flags in generated.pattern.rows() {
            for (slot, &nonzero) in row.iter_mut().zip(flags) {
                let target = if nonzero { plan.nonzero } else { FieldElement::ZERO };
                let a = engine.symbol_for_discrepancy(target);
                engine.step(a);
                *slot = a;
            }
            sequence.push_row(&row)?;
        }
    }
    Ok(Synthesis { sequence, generated })
}
