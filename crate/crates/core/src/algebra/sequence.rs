use super::field::{Field, FieldElement};
use super::poly::{Degree, Polynomial};
use crate::error::{Error, Result};

/// The first `N` positions of an `M`-fold multisequence.
///
/// Positions are 1-based (`1..=N`) and sequence indices 0-based (`0..M`).
/// Position `t <= 0` reads as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePrefix {
    field: Field,
    m: usize,
    symbols: Vec<FieldElement>,
}

impl SequencePrefix {
    pub fn new(field: Field, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("a multisequence needs at least one sequence"));
        }
        Ok(SequencePrefix {
            field,
            m,
            symbols: Vec::new(),
        })
    }

    /// Builds a prefix from rows of symbol codes, one row per position.
    pub fn from_codes(field: Field, m: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut seq = SequencePrefix::new(field, m)?;
        for row in rows {
            let row = row
                .iter()
                .map(|&c| seq.field.element(c))
                .collect::<Result<Vec<_>>>()?;
            seq.push_row(&row)?;
        }
        Ok(seq)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of parallel sequences `M`.
    pub fn sequences(&self) -> usize {
        self.m
    }

    /// Number of positions `N`.
    pub fn len(&self) -> usize {
        self.symbols.len() / self.m
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn push_row(&mut self, row: &[FieldElement]) -> Result<()> {
        if row.len() != self.m {
            return Err(Error::invalid(format!(
                "row has {} symbols, expected {}",
                row.len(),
                self.m
            )));
        }
        if let Some(bad) = row.iter().find(|c| c.code() >= self.field.order()) {
            return Err(Error::ElementOutOfRange {
                code: bad.code(),
                q: self.field.order(),
            });
        }
        self.symbols.extend_from_slice(row);
        Ok(())
    }

    /// Symbols at position `t` (1-based).
    pub fn row(&self, t: usize) -> &[FieldElement] {
        assert!(t >= 1 && t <= self.len(), "position {t} out of range");
        &self.symbols[(t - 1) * self.m..t * self.m]
    }

    /// `a[t][m]`, zero for `t <= 0`.
    pub fn get(&self, t: i64, m: usize) -> FieldElement {
        assert!(m < self.m, "sequence index {m} out of range");
        if t <= 0 {
            return FieldElement::ZERO;
        }
        self.row(t as usize)[m]
    }

    /// Column `m` as a vector over positions `1..=N`.
    pub fn column(&self, m: usize) -> Vec<FieldElement> {
        (1..=self.len()).map(|t| self.row(t)[m]).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.symbols.chunks(self.m)
    }

    /// Truncation to the first `n` positions.
    pub fn prefix(&self, n: usize) -> SequencePrefix {
        let n = n.min(self.len());
        SequencePrefix {
            field: self.field.clone(),
            m: self.m,
            symbols: self.symbols[..n * self.m].to_vec(),
        }
    }
}

/// Coefficient of `x^(deg v - n)` in `v * G_m - u`, where
/// `G_m = sum_t a[t][m] x^-t` is the `m`-th series of `seq`.
///
/// Requires `1 <= n <= seq.len()`. A zero `v` contributes nothing.
pub fn residual_coeff(
    v: &Polynomial,
    u: &Polynomial,
    seq: &SequencePrefix,
    m: usize,
    n: usize,
) -> FieldElement {
    let field = seq.field();
    let Degree::Finite(dv) = v.degree() else {
        return FieldElement::ZERO;
    };
    let base = n as i64 - dv as i64;
    let mut acc = FieldElement::ZERO;
    for (j, &vj) in v.coeffs().iter().enumerate() {
        acc = field.add(acc, field.mul(vj, seq.get(base + j as i64, m)));
    }
    if dv >= n {
        acc = field.sub(acc, u.coeff(dv - n));
    }
    acc
}
