//! Which `(I, S)` = (liminf, limsup) pairs of `L(n)/n` are attainable.
//!
//! With `K` active series an attainable pair satisfies
//! `K/(K+1) <= S <= 1` and `K(1-S) <= I <= 1 - S/K`; `K = 0` leaves only `(0, 0)`.
//! Everything here is exact.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, is_unit_interval, ratio, Rational};

/// Target `(I, S)` with `0 <= I <= S <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitPair {
    pub i: Rational,
    pub s: Rational,
}

impl LimitPair {
    pub fn new(i: Rational, s: Rational) -> Result<Self> {
        if !is_unit_interval(&i) || !is_unit_interval(&s) || i > s {
            return Err(Error::invalid(format!("need 0 <= I <= S <= 1, got I = {i}, S = {s}")));
        }
        Ok(LimitPair { i, s })
    }

    /// `(I - M/(M+1), S - M/(M+1))`, the drain-normalised bounds.
    pub fn tilde(&self, m: usize) -> (Rational, Rational) {
        let avg = ratio(m as i64, m as i64 + 1);
        (&self.i - &avg, &self.s - &avg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: Vec<usize>,
    pub k_prime: Option<usize>,
}

pub fn admissible_for_k(i: &Rational, s: &Rational, k: usize) -> bool {
    if k == 0 {
        return i.is_zero() && s.is_zero();
    }
    let kr = int(k as i64);
    let one = Rational::one();
    ratio(k as i64, k as i64 + 1) <= *s
        && *s <= one
        && &kr * (&one - s) <= *i
        && *i <= &one - s / &kr
}

pub fn admissibility(i: &Rational, s: &Rational, m: usize) -> AdmissibilityReport {
    let admissible: Vec<usize> = (0..=m).filter(|&k| admissible_for_k(i, s, k)).collect();
    let k_prime = admissible.last().copied();
    AdmissibilityReport { admissible, k_prime }
}

/// Largest admissible `K <= M`.
pub fn k_prime(i: &Rational, s: &Rational, m: usize) -> Option<usize> {
    (0..=m).rev().find(|&k| admissible_for_k(i, s, k))
}

/// One piece of the admissible region: a point, a segment or a triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionPiece {
    pub k: usize,
    /// Vertices as `(I, S)`.
    pub vertices: Vec<(Rational, Rational)>,
}

pub fn region_geometry(m: usize) -> Vec<RegionPiece> {
    let mut pieces = vec![RegionPiece {
        k: 0,
        vertices: vec![(int(0), int(0))],
    }];
    if m >= 1 {
        pieces.push(RegionPiece {
            k: 1,
            vertices: vec![(int(0), int(1)), (ratio(1, 2), ratio(1, 2))],
        });
    }
    for k in 2..=m as i64 {
        pieces.push(RegionPiece {
            k: k as usize,
            vertices: vec![
                (int(0), int(1)),
                (ratio(k - 1, k), int(1)),
                (ratio(k, k + 1), ratio(k, k + 1)),
            ],
        });
    }
    pieces
}

/// Closed-form Hausdorff dimension bounds
/// `(K'/M) (1-S) / ((M+1)(1-I)^2) <= dim <= K'/M`.
pub fn hausdorff_bounds(i: &Rational, s: &Rational, m: usize) -> Result<(Rational, Rational)> {
    let k = k_prime(i, s, m).ok_or_else(|| inadmissible(i, s, m))?;
    let share = ratio(k as i64, m as i64);
    let one = Rational::one();
    let gap = &one - i;
    let lower = &share * (&one - s) / (int(m as i64 + 1) * &gap * &gap);
    Ok((lower, share))
}

/// Measure of the set of multisequences with limits `(I, S)`: 1 on the
/// typical point `I = S = M/(M+1)`, 0 elsewhere.
pub fn measure_constant(i: &Rational, s: &Rational, m: usize) -> u8 {
    let typical = ratio(m as i64, m as i64 + 1);
    u8::from(*i == typical && *s == typical)
}

pub(crate) fn inadmissible(i: &Rational, s: &Rational, m: usize) -> Error {
    Error::Inadmissible {
        i: i.to_string(),
        s: s.to_string(),
        detail: format!(" for M = {m}"),
    }
}

/// Whether `(i, s)` lies within `slack` of the region for `k`.
pub(crate) fn near_region(i: &Rational, s: &Rational, k: usize, slack: &Rational) -> bool {
    if k == 0 {
        return i.abs() <= *slack && s.abs() <= *slack;
    }
    let kr = int(k as i64);
    let one = Rational::one();
    ratio(k as i64, k as i64 + 1) - slack <= *s
        && *s <= &one + slack
        && &kr * (&one - s) - slack <= *i
        && *i <= &one - s / &kr + slack
}
