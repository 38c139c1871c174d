//! Dense polynomials over GF(2^m).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial has zero constant term; its reciprocal is not defined here")]
    ZeroConstantTerm,
    #[error("length {0} is even; only odd lengths are supported")]
    EvenLength(u64),
    #[error("length must be positive")]
    ZeroLength,
}

/// Coefficients lowest degree first, trailing zeros trimmed. The zero
/// polynomial is the empty vector.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_u16s(coeffs: &[u16]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| FieldElement(c)).collect())
    }

    /// Binary polynomial from a bit mask (bit i is the coefficient of x^i).
    pub fn from_bits(mask: u64) -> Poly {
        Poly::new((0..64).map(|i| FieldElement(((mask >> i) & 1) as u16)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![FieldElement::ONE] }
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::new(vec![c])
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![FieldElement::ZERO, FieldElement::ONE] }
    }

    /// x^n - 1 (which equals x^n + 1 in characteristic 2).
    pub fn x_n_minus_1(n: usize) -> Poly {
        let mut c = vec![FieldElement::ZERO; n + 1];
        c[0] = FieldElement::ONE;
        c[n] = FieldElement::ONE;
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg(0) taken as 0, for sizes and sums.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut c = long.coeffs.clone();
        for (a, &b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::new(c)
    }

    pub fn scale(&self, f: &FieldSpec, s: FieldElement) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, f: &FieldSpec, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += f.mul(a, b);
            }
        }
        Poly::new(c)
    }

    pub fn product<'a>(f: &FieldSpec, items: impl IntoIterator<Item = &'a Poly>) -> Poly {
        items.into_iter().fold(Poly::one(), |acc, p| acc.mul(f, p))
    }

    /// Quotient and remainder with deg(remainder) < deg(divisor).
    pub fn divmod(&self, f: &FieldSpec, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let inv_lead = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, inv_lead);
            quot[i - db] = t;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - db + j] += f.mul(t, d);
            }
        }
        rem.truncate(db);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, f: &FieldSpec, divisor: &Poly) -> Result<Poly, PolyError> {
        self.divmod(f, divisor).map(|(_, r)| r)
    }

    pub fn divides(&self, f: &FieldSpec, other: &Poly) -> bool {
        other.rem(f, self).is_ok_and(|r| r.is_zero())
    }

    /// Monic normalization; the zero polynomial is returned unchanged.
    pub fn monic(&self, f: &FieldSpec) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(f, inv)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FieldElement::ONE
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, f: &FieldSpec, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// x^deg f(1/x): the coefficient vector reversed. Requires f(0) != 0.
    pub fn reciprocal(&self) -> Result<Poly, PolyError> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => {
                let mut c = self.coeffs.clone();
                c.reverse();
                Ok(Poly { coeffs: c })
            }
            _ => Err(PolyError::ZeroConstantTerm),
        }
    }

    /// Reciprocal scaled by f(0)^{-1} so that the result is monic.
    pub fn monic_reciprocal(&self, f: &FieldSpec) -> Result<Poly, PolyError> {
        Ok(self.reciprocal()?.monic(f))
    }

    /// Returns `Some(ε)` when f = ε·f* for a unit ε.
    pub fn self_reciprocal_unit(&self, f: &FieldSpec) -> Result<Option<FieldElement>, PolyError> {
        let r = self.reciprocal()?;
        // f = ε f* forces ε = lead(f) / lead(f*) = lead(f) / f(0)
        let eps = f.div(self.lead(), r.lead()).expect("nonzero constant term");
        Ok((r.scale(f, eps) == *self).then_some(eps))
    }

    pub fn eval(&self, f: &FieldSpec, x: FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.mul(acc, x) + c)
    }

    /// Coefficients as a dense vector of length `n`; panics if deg >= n.
    pub fn to_dense(&self, n: usize) -> Vec<FieldElement> {
        assert!(self.coeffs.len() <= n, "polynomial does not fit in length {n}");
        let mut v = self.coeffs.clone();
        v.resize(n, FieldElement::ZERO);
        v
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, f: &FieldSpec, mut e: u128, modulus: &Poly) -> Result<Poly, PolyError> {
        let mut base = self.rem(f, modulus)?;
        let mut acc = Poly::one().rem(f, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, modulus)?;
            }
            base = base.mul(f, &base).rem(f, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Human-readable form with field elements as hex literals, e.g.
    /// `x^3 + 2x + 1` over GF(4).
    pub fn display(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.0 == 1 && i > 0 { String::new() } else { format!("{:x}", c.0) };
            match i {
                0 => write!(f, "{:x}", c.0)?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Irreducibility over GF(q) by Rabin's test: x^(q^s) = x mod p, and
/// gcd(x^(q^(s/r)) - x, p) = 1 for every prime r dividing s.
pub fn is_irreducible(f: &FieldSpec, p: &Poly) -> bool {
    let Some(s) = p.degree() else { return false };
    if s == 0 {
        return false;
    }
    if s == 1 {
        return true;
    }
    let q = f.size() as u128;
    let frob = |h: &Poly| h.pow_mod(f, q, p).expect("nonzero modulus");
    let x = Poly::x();
    let mut powers = Vec::with_capacity(s + 1);
    let mut h = x.rem(f, p).unwrap();
    powers.push(h.clone());
    for _ in 0..s {
        h = frob(&h);
        powers.push(h.clone());
    }
    if powers[s] != x.rem(f, p).unwrap() {
        return false;
    }
    prime_factors(s as u64).into_iter().all(|r| {
        let hi = &powers[s / r as usize];
        hi.add(&x).gcd(f, p).is_one()
    })
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
