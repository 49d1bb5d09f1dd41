use std::cmp::Ordering;
use std::fmt;

use super::field::{Field, FieldElement};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense polynomial over a [`Field`]; index `i` holds the coefficient of `x^i`.
///
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c * x^e`.
    pub fn monomial(c: FieldElement, e: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; e + 1];
        coeffs[e] = c;
        Polynomial::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElement::ONE)
    }

    pub fn add(&self, other: &Polynomial, field: &Field) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled_shifted(other, FieldElement::ONE, 0, field);
        out
    }

    pub fn sub(&self, other: &Polynomial, field: &Field) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled_shifted(other, field.neg(FieldElement::ONE), 0, field);
        out
    }

    pub fn scale(&self, c: FieldElement, field: &Field) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|&a| field.mul(a, c)).collect(),
        }
    }

    /// Multiplication by `x^e`.
    pub fn shift(&self, e: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; e];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    pub fn make_monic(&self, field: &Field) -> Result<Polynomial> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(field.inv(lead)?, field))
    }

    pub fn mul(&self, other: &Polynomial, field: &Field) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(coeffs[i + j], field.mul(a, b));
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// In place `self += c * x^e * other`.
    pub fn add_scaled_shifted(&mut self, other: &Polynomial, c: FieldElement, e: usize, field: &Field) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let needed = other.coeffs.len() + e;
        if self.coeffs.len() < needed {
            self.coeffs.resize(needed, FieldElement::ZERO);
        }
        for (slot, &b) in self.coeffs[e..].iter_mut().zip(&other.coeffs) {
            *slot = field.add(*slot, field.mul(c, b));
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, x: FieldElement, field: &Field) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }
}
