//! Online multi-strict continued fraction engine.
//!
//! Symbols are consumed position by position, and within a position in
//! sequence order `0..M`. After every completed position the denominator
//! degree equals the joint linear complexity of the prefix read so far.
//!
//! Each battery index `m` keeps an auxiliary approximant saved at the last
//! degree jump caused by sequence `m` (initially a virtual failure at
//! position 0). Its residual against `G_m` has leading coefficient `delta'`
//! at exponent `-w_m`; corrections align that coefficient with the current
//! discrepancy and cancel it.

use crate::algebra::{Field, FieldElement, Polynomial, SequencePrefix};
use crate::bdm::{expected_complexity, DiscrepancyPattern};
use crate::error::{Error, Result};

/// Which branch a step took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepCase {
    /// Zero discrepancy; nothing changes.
    Predicted,
    /// Nonzero discrepancy with `n - deg - w_m > 0`: the degree jumps.
    Jump,
    /// Nonzero discrepancy with `n - deg - w_m <= 0`: same-degree correction.
    Correction,
}

#[derive(Clone, Debug)]
pub struct AuxApproximant {
    pub v: Polynomial,
    pub u: Vec<Polynomial>,
    pub delta: FieldElement,
}

#[derive(Clone, Debug)]
pub struct Mscfa {
    field: Field,
    m: usize,
    /// Completed positions.
    n: usize,
    /// Next sequence index within position `n + 1`.
    pending: usize,
    deg: usize,
    w: Vec<usize>,
    v: Polynomial,
    u: Vec<Polynomial>,
    aux: Vec<AuxApproximant>,
    profile: Vec<usize>,
    history: Vec<Vec<FieldElement>>,
}

impl Mscfa {
    pub fn new(field: Field, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("the engine needs at least one sequence"));
        }
        let minus_one = field.neg(FieldElement::ONE);
        let aux = (0..m)
            .map(|own| AuxApproximant {
                v: Polynomial::one(),
                u: (0..m)
                    .map(|k| {
                        if k == own {
                            Polynomial::constant(minus_one)
                        } else {
                            Polynomial::zero()
                        }
                    })
                    .collect(),
                delta: FieldElement::ONE,
            })
            .collect();
        Ok(Mscfa {
            field,
            m,
            n: 0,
            pending: 0,
            deg: 0,
            w: vec![0; m],
            v: Polynomial::one(),
            u: vec![Polynomial::zero(); m],
            aux,
            profile: Vec::new(),
            history: vec![Vec::new(); m],
        })
    }

    /// Runs a fresh engine over a whole prefix.
    pub fn run(seq: &SequencePrefix) -> Self {
        let mut engine = Mscfa::new(seq.field().clone(), seq.sequences()).expect("M >= 1");
        for row in seq.rows() {
            engine.push_row(row);
        }
        engine
    }

    /// Runs a fresh engine and records which discrepancies were nonzero.
    pub fn run_recording(seq: &SequencePrefix) -> (Self, DiscrepancyPattern) {
        let mut engine = Mscfa::new(seq.field().clone(), seq.sequences()).expect("M >= 1");
        let mut pattern = DiscrepancyPattern::new(seq.sequences());
        let mut flags = vec![false; seq.sequences()];
        for row in seq.rows() {
            for (flag, &a) in flags.iter_mut().zip(row) {
                *flag = !engine.discrepancy(a).is_zero();
                engine.step(a);
            }
            pattern.push_row(&flags);
        }
        (engine, pattern)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn sequences(&self) -> usize {
        self.m
    }

    /// Number of completed positions.
    pub fn position(&self) -> usize {
        self.n
    }

    /// `(m, n)` of the next step: sequence index and 1-based position.
    pub fn pending(&self) -> (usize, usize) {
        (self.pending, self.n + 1)
    }

    pub fn at_boundary(&self) -> bool {
        self.pending == 0
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn auxiliary_degrees(&self) -> &[usize] {
        &self.w
    }

    /// Current approximant `(u_1..u_M, v)`.
    pub fn approximant(&self) -> (&[Polynomial], &Polynomial) {
        (&self.u, &self.v)
    }

    pub fn auxiliary(&self) -> &[AuxApproximant] {
        &self.aux
    }

    /// Linear complexity after each completed position, `L(1..=n)`.
    pub fn profile(&self) -> &[usize] {
        &self.profile
    }

    /// Discrepancy with symbol zero; the pending discrepancy for `a` is this plus `a`.
    fn offset(&self) -> FieldElement {
        let f = &self.field;
        let m = self.pending;
        let pos = self.n + 1;
        let col = &self.history[m];
        let coeffs = self.v.coeffs();
        let dv = self.deg;
        let mut acc = FieldElement::ZERO;
        // j runs over 0..deg; index pos - deg + j >= 1 (1-based) => col[pos - deg + j - 1].
        let first_j = (dv + 1).saturating_sub(pos);
        for (j, &vj) in coeffs.iter().enumerate().take(dv).skip(first_j) {
            if !vj.is_zero() {
                acc = f.add(acc, f.mul(vj, col[pos + j - dv - 1]));
            }
        }
        if dv >= pos {
            acc = f.sub(acc, self.u[m].coeff(dv - pos));
        }
        acc
    }

    /// Discrepancy the pending step would see if its symbol were `a`.
    pub fn discrepancy(&self, a: FieldElement) -> FieldElement {
        debug_assert!(self.v.is_monic());
        self.field.add(self.offset(), a)
    }

    /// The one symbol with zero discrepancy at the pending step.
    pub fn forced_symbol(&self) -> FieldElement {
        self.field.neg(self.offset())
    }

    /// The symbol producing discrepancy `target` at the pending step.
    pub fn symbol_for_discrepancy(&self, target: FieldElement) -> FieldElement {
        self.field.add(self.forced_symbol(), target)
    }

    /// Like [`Mscfa::step`], but checks the caller's idea of the sequence index.
    pub fn feed(&mut self, m: usize, a: FieldElement) -> Result<StepCase> {
        if m != self.pending {
            return Err(Error::OutOfOrder {
                expected: self.pending,
                position: self.n + 1,
                got: m,
            });
        }
        if a.code() >= self.field.order() {
            return Err(Error::ElementOutOfRange {
                code: a.code(),
                q: self.field.order(),
            });
        }
        Ok(self.step(a))
    }

    /// Consumes symbol `a` for the pending `(m, n)`.
    pub fn step(&mut self, a: FieldElement) -> StepCase {
        let delta = self.discrepancy(a);
        let m = self.pending;
        let pos = self.n + 1;
        self.history[m].push(a);

        let case = if delta.is_zero() {
            StepCase::Predicted
        } else if pos > self.deg + self.w[m] {
            self.jump(m, pos, delta);
            StepCase::Jump
        } else {
            self.correct(m, pos, delta);
            StepCase::Correction
        };

        self.pending += 1;
        if self.pending == self.m {
            self.pending = 0;
            self.n += 1;
            self.profile.push(self.deg);
        }
        case
    }

    /// Feeds a whole position.
    pub fn push_row(&mut self, row: &[FieldElement]) -> Vec<StepCase> {
        assert!(self.at_boundary(), "push_row requires a position boundary");
        assert_eq!(row.len(), self.m, "row length");
        row.iter().map(|&a| self.step(a)).collect()
    }

    fn jump(&mut self, m: usize, pos: usize, delta: FieldElement) {
        let f = &self.field;
        let shift = pos - self.deg - self.w[m];
        let factor = f.neg(f.div(delta, self.aux[m].delta));

        let old_v = std::mem::take(&mut self.v);
        let mut new_v = old_v.shift(shift);
        new_v.add_scaled_shifted(&self.aux[m].v, factor, 0, f);
        let mut old_u = Vec::with_capacity(self.m);
        for k in 0..self.m {
            let uk = std::mem::take(&mut self.u[k]);
            let mut new_uk = uk.shift(shift);
            new_uk.add_scaled_shifted(&self.aux[m].u[k], factor, 0, f);
            self.u[k] = new_uk;
            old_u.push(uk);
        }
        self.v = new_v;
        self.aux[m] = AuxApproximant {
            v: old_v,
            u: old_u,
            delta,
        };

        let old_deg = self.deg;
        self.deg = pos - self.w[m];
        self.w[m] = pos - old_deg;
        debug_assert_eq!(self.v.degree().finite(), Some(self.deg));
        debug_assert!(self.v.is_monic());
    }

    fn correct(&mut self, m: usize, pos: usize, delta: FieldElement) {
        let f = &self.field;
        let shift = self.deg + self.w[m] - pos;
        let factor = f.neg(f.div(delta, self.aux[m].delta));
        let aux = &self.aux[m];
        self.v.add_scaled_shifted(&aux.v, factor, shift, f);
        for (uk, auk) in self.u.iter_mut().zip(&aux.u) {
            uk.add_scaled_shifted(auk, factor, shift, f);
        }
        debug_assert_eq!(self.v.degree().finite(), Some(self.deg));
        debug_assert!(self.v.is_monic());
    }

    /// Drain and battery charges at a position boundary:
    /// `d = deg - ceil(nM/(M+1))`, `b_m = floor(n/(M+1)) - w_m`.
    pub fn deviation_map(&self) -> Result<(i64, Vec<i64>)> {
        if !self.at_boundary() {
            return Err(Error::NotAtBoundary);
        }
        let n = self.n as i64;
        let m = self.m as i64;
        let d = self.deg as i64 - expected_complexity(n, m);
        let base = n / (m + 1);
        let b = self.w.iter().map(|&w| base - w as i64).collect();
        Ok((d, b))
    }
}

/// Joint linear complexity profile of `seq`.
pub fn linear_complexity_profile(seq: &SequencePrefix) -> Vec<usize> {
    Mscfa::run(seq).profile().to_vec()
}
