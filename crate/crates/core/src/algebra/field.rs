use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Element of a finite field, stored as its canonical code in `[0, q)`.
///
/// For an extension field the code is `c0 + c1*p + ... + c_{k-1}*p^{k-1}`
/// where `c0 + c1*x + ...` is the element in the polynomial basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated finite field `GF(p^k)`.
///
/// Cloning is cheap; the arithmetic tables are shared.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients low to high. `None` for prime fields.
    modulus: Option<Vec<u32>>,
    tables: Option<LogTables>,
}

/// Log/antilog tables for extension fields.
struct LogTables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl Field {
    /// Builds `GF(p^k)`. `modulus` is required exactly when `k > 1` and must be
    /// a monic irreducible polynomial of degree `k` over `GF(p)`.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(Error::OrderTooLarge(q));
        }
        let q = q as u32;
        let modulus = match (k, modulus) {
            (1, None) => None,
            (1, Some(_)) => return Err(Error::UnexpectedModulus),
            (_, None) => return Err(Error::MissingModulus(k)),
            (_, Some(coeffs)) => {
                let coeffs = trim(coeffs.to_vec());
                if coeffs.len() != k as usize + 1
                    || coeffs.last() != Some(&1)
                    || coeffs.iter().any(|&c| c >= p)
                {
                    return Err(Error::BadModulus(k));
                }
                if !is_irreducible(&coeffs, p) {
                    return Err(Error::ReducibleModulus);
                }
                Some(coeffs)
            }
        };
        let tables = modulus.as_ref().map(|m| LogTables::build(p, q, m));
        Ok(Field {
            inner: Arc::new(Inner {
                p,
                k,
                q,
                modulus,
                tables,
            }),
        })
    }

    /// `GF(p^k)` with the monic irreducible modulus of smallest code.
    pub fn with_default_modulus(p: u32, k: u32) -> Result<Field> {
        if k <= 1 {
            return Field::new(p, k, None);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(Error::OrderTooLarge(q));
        }
        let q = q as u32;
        for code in q..2 * q {
            let coeffs = digits(code, p, k as usize + 1);
            if is_irreducible(&coeffs, p) {
                return Field::new(p, k, Some(&coeffs));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// The field of order `q`, with the default modulus when `q` is not prime.
    pub fn from_order(q: u32) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Field::with_default_modulus(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Monic modulus coefficients, low to high.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    /// Base-`p` code of the modulus (e.g. 7 for `x^2+x+1` over GF(2)).
    pub fn modulus_code(&self) -> Option<u32> {
        self.modulus().map(|m| encode(m, self.inner.p))
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.inner.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::ElementOutOfRange {
                code,
                q: self.inner.q,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let Inner { p, k, .. } = *self.inner;
        if k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let Inner { p, k, .. } = *self.inner;
        if a.0 == 0 || p == 2 {
            return a;
        }
        if k == 1 {
            return FieldElement(p - a.0);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.inner.tables {
            None => FieldElement(((a.0 as u64 * b.0 as u64) % self.inner.p as u64) as u32),
            Some(t) => {
                FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
            }
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.inner.tables {
            None => FieldElement(pow_mod(a.0 as u64, self.inner.p as u64 - 2, self.inner.p as u64) as u32),
            Some(t) => {
                let order = self.inner.q - 1;
                FieldElement(t.exp[((order - t.log[a.0 as usize]) % order) as usize])
            }
        })
    }

    /// `a / b`; panics when `b` is zero.
    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b).expect("division by zero"))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.k == other.inner.k
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

/// Textual form: `p` for prime fields, `p^k/modulus-code` otherwise.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus_code() {
            None => write!(f, "{}", self.inner.p),
            Some(code) => write!(f, "{}^{}/{}", self.inner.p, self.inner.k, code),
        }
    }
}

/// Accepts `p`, `q` (a prime power, default modulus), `p^k` (default modulus)
/// and `p^k/modulus-code`.
impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let bad = || Error::invalid(format!("`{s}` is not a field spec"));
        let s = s.trim();
        let (power, code) = match s.split_once('/') {
            Some((power, code)) => (power, Some(code.parse::<u32>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let (p, k) = match power.split_once('^') {
            Some((p, k)) => (
                p.parse::<u32>().map_err(|_| bad())?,
                k.parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q: u32 = power.parse().map_err(|_| bad())?;
                if code.is_some() {
                    return Err(bad());
                }
                return Field::from_order(q);
            }
        };
        match code {
            None => Field::with_default_modulus(p, k),
            Some(code) => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if k <= 1 {
                    return Err(Error::UnexpectedModulus);
                }
                let len = k as usize + 1;
                let digits = digits(code, p, len + 1);
                if digits[len] != 0 {
                    return Err(Error::BadModulus(k));
                }
                Field::new(p, k, Some(&digits[..len]))
            }
        }
    }
}

impl LogTables {
    fn build(p: u32, q: u32, modulus: &[u32]) -> LogTables {
        let order = q - 1;
        for g in 2..q {
            let mut exp = Vec::with_capacity(2 * order as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = poly_mul_mod(x, g, p, modulus);
            }
            if !primitive || x != 1 {
                continue;
            }
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            exp.extend_from_within(..);
            return LogTables { log, exp };
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}

/// Product of two element codes in the polynomial basis, reduced by `modulus`.
fn poly_mul_mod(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let k = modulus.len() - 1;
    let a = digits(a, p, k);
    let b = digits(b, p, k);
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (k..2 * k).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let idx = top - k + j;
            prod[idx] = (prod[idx] + (p - c) * m % p) % p;
        }
    }
    encode(&prod[..k], p)
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Remainder of `f` modulo monic `g` over GF(p); both low to high.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if c != 0 {
            for (j, &gj) in g.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - c) * gj % p) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low as u32, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(f: &Field) -> Vec<FieldElement> {
        f.elements().collect()
    }

    #[test]
    fn builds_small_fields() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        let f4 = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(f4.to_string(), "2^2/7");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(Field::new(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus)
        ));
        assert!(matches!(Field::new(2, 2, Some(&[1, 1])), Err(Error::BadModulus(2))));
        assert!(matches!(Field::new(2, 2, None), Err(Error::MissingModulus(2))));
        assert!(matches!(Field::new(2, 17, None), Err(Error::OrderTooLarge(_))));
        assert!(matches!(Field::new(3, 1, Some(&[1])), Err(Error::UnexpectedModulus)));
    }

    #[test]
    fn gf4_products() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let (two, three) = (f.element(2).unwrap(), f.element(3).unwrap());
        assert_eq!(f.mul(two, two), three);
        assert_eq!(f.inv(two).unwrap(), three);
        assert_eq!(f.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = Field::new(5, 1, None).unwrap();
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::ZeroInverse)));
    }

    #[test]
    fn parses_specs() {
        assert_eq!("2".parse::<Field>().unwrap().order(), 2);
        let f4: Field = "4".parse().unwrap();
        assert_eq!(f4.to_string(), "2^2/7");
        assert_eq!("2^2/7".parse::<Field>().unwrap(), f4);
        assert_eq!("2^2".parse::<Field>().unwrap(), f4);
        let f9: Field = "9".parse().unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.to_string().parse::<Field>().unwrap(), f9);
        assert!("2^2/5".parse::<Field>().is_err()); // x^2 + 1
        assert!("6".parse::<Field>().is_err());
        assert!("2^2/15".parse::<Field>().is_err()); // degree 3 code for k = 2
        assert!("x".parse::<Field>().is_err());
    }

    #[test]
    fn largest_fields_build() {
        let f = Field::with_default_modulus(2, 16).unwrap();
        let a = f.element(0x1234).unwrap();
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        let f = Field::new(65521, 1, None).unwrap();
        let a = f.element(12345).unwrap();
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
    }

    /// Exhaustive field axioms for every field of order at most 9.
    #[test]
    fn axioms_exhaustive_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Field::from_order(q).unwrap();
            let all = elems(&f);
            for &a in &all {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE, "q={q} a={a}");
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &all {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_products_match_schoolbook() {
        for q in [8, 9, 16, 25, 27] {
            let f = Field::from_order(q).unwrap();
            let m = f.modulus().unwrap().to_vec();
            for a in f.elements() {
                for b in f.elements() {
                    let slow = poly_mul_mod(a.code(), b.code(), f.characteristic(), &m);
                    assert_eq!(f.mul(a, b).code(), slow);
                }
            }
        }
    }
}
