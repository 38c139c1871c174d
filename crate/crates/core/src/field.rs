//! Arithmetic in GF(2^m) for 1 <= m <= 16.
//!
//! Elements are bit vectors in the polynomial basis of a fixed irreducible
//! modulus. Multiplication goes through log/exp tables built once per
//! [`FieldSpec`]; the tables are checked against carry-less multiplication
//! in the unit tests.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_DEGREE: u32 = 16;

/// Lexicographically least irreducible polynomial over GF(2) of each degree
/// 1..=16, as bit vectors (bit i is the coefficient of x^i).
pub const DEFAULT_MODULI: [u32; 16] =
    [0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021, 0x8003, 0x1002b];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} is outside 1..=16")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {m}")]
    ModulusDegree { m: u32, modulus: u32 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element {value:#x} does not belong to GF(2^{m})")]
    ForeignElement { value: u32, m: u32 },
    #[error("operands come from different fields")]
    MixedFields,
    #[error("invalid modulus bit-string {0:?}")]
    BadModulusString(String),
}

/// An element of GF(2^m) in the polynomial basis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// Carry-less product of two polynomials over GF(2), reduced modulo `modulus`.
pub fn clmul_mod(a: u32, b: u32, modulus: u32) -> u32 {
    let deg = 31 - modulus.leading_zeros();
    let mut acc: u64 = 0;
    for i in 0..32 {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    let m = modulus as u64;
    for i in (deg..64).rev() {
        if (acc >> i) & 1 == 1 {
            acc ^= m << (i - deg);
        }
    }
    acc as u32
}

fn gf2_poly_mod(mut a: u32, b: u32) -> u32 {
    let db = 31 - b.leading_zeros();
    while a != 0 && 31 - a.leading_zeros() >= db {
        a ^= b << (31 - a.leading_zeros() - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division against every polynomial of
/// degree at most half the degree of `p`.
pub fn is_irreducible_gf2(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let d = 31 - p.leading_zeros();
    if d <= 1 {
        return true;
    }
    (2u32..(1u32 << (d / 2 + 1))).all(|q| gf2_poly_mod(p, q) != 0)
}

/// Parses a modulus written as a bit-string, most significant coefficient
/// first (`"111"` is x^2 + x + 1). A `0x` prefix selects hexadecimal.
pub fn parse_modulus(s: &str) -> Result<u32, FieldError> {
    let t = s.trim();
    let bad = || FieldError::BadModulusString(s.to_string());
    if let Some(hex) = t.strip_prefix("0x") {
        return u32::from_str_radix(hex, 16).map_err(|_| bad());
    }
    if t.is_empty() || t.len() > 17 || !t.chars().all(|c| c == '0' || c == '1') {
        return Err(bad());
    }
    u32::from_str_radix(t, 2).map_err(|_| bad())
}

pub fn modulus_bits(modulus: u32) -> String {
    format!("{modulus:b}")
}

/// A concrete GF(2^m): degree, modulus and multiplication tables.
pub struct FieldSpec {
    m: u32,
    modulus: u32,
    order: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec").field("m", &self.m).field("modulus", &format_args!("{:#x}", self.modulus)).finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

pub type Field = Arc<FieldSpec>;

impl FieldSpec {
    pub fn new(m: u32, modulus: u32) -> Result<FieldSpec, FieldError> {
        if m == 0 || m > MAX_DEGREE {
            return Err(FieldError::UnsupportedDegree(m));
        }
        if modulus == 0 || 31 - modulus.leading_zeros() != m {
            return Err(FieldError::ModulusDegree { m, modulus });
        }
        if !is_irreducible_gf2(modulus) {
            return Err(FieldError::ReducibleModulus(modulus));
        }
        let order = 1u32 << m;
        let (exp, log) = build_tables(m, modulus);
        Ok(FieldSpec { m, modulus, order, exp, log })
    }

    pub fn with_default_modulus(m: u32) -> Result<FieldSpec, FieldError> {
        if m == 0 || m > MAX_DEGREE {
            return Err(FieldError::UnsupportedDegree(m));
        }
        FieldSpec::new(m, DEFAULT_MODULI[m as usize - 1])
    }

    pub fn shared(m: u32, modulus: Option<u32>) -> Result<Field, FieldError> {
        match modulus {
            Some(p) => FieldSpec::new(m, p).map(Arc::new),
            None => FieldSpec::with_default_modulus(m).map(Arc::new),
        }
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, q = 2^m.
    #[inline]
    pub fn size(&self) -> u32 {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(|v| FieldElement(v as u16))
    }

    /// The class of x modulo the modulus (written ω for m = 2).
    pub fn generator_x(&self) -> FieldElement {
        FieldElement(clmul_mod(2, 1, self.modulus) as u16)
    }

    pub fn check(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if (a.0 as u32) < self.order {
            Ok(a)
        } else {
            Err(FieldError::ForeignElement { value: a.0 as u32, m: self.m })
        }
    }

    pub fn ensure_same(&self, other: &FieldSpec) -> Result<(), FieldError> {
        if self == other {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.exp[s])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let n = (self.order - 1) as usize;
        let l = self.log[a.0 as usize] as usize;
        Ok(FieldElement(self.exp[(n - l) % n]))
    }

    /// a / b; b must be nonzero.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let n = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % n)) % n) as usize])
    }

    /// Absolute trace Tr(a) = a + a^2 + ... + a^(2^(m-1)), as 0 or 1.
    pub fn trace(&self, a: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut t = a;
        for _ in 0..self.m {
            acc += t;
            t = self.mul(t, t);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 as u8
    }

    /// Checked binary operation for external callers.
    pub fn apply(&self, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            FieldOp::Add => a + b,
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Inv => self.inv(a)?,
            FieldOp::Pow => self.pow(a, b.0 as u64),
        })
    }
}

/// Operation selector for [`FieldSpec::apply`]; `Pow` reads the exponent from
/// the second operand's integer value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow,
}

fn build_tables(m: u32, modulus: u32) -> (Vec<u16>, Vec<u16>) {
    let order = 1u32 << m;
    let n = order - 1;
    // smallest primitive element
    let g = (1..order)
        .find(|&g| {
            let mut x = g;
            for i in 1..=n {
                if x == 1 {
                    return i == n;
                }
                x = clmul_mod(x, g, modulus);
            }
            false
        })
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u16; 2 * n as usize];
    let mut log = vec![0u16; order as usize];
    let mut x = 1u32;
    for i in 0..n {
        exp[i as usize] = x as u16;
        log[x as usize] = i as u16;
        x = clmul_mod(x, g, modulus);
    }
    for i in n..2 * n {
        exp[i as usize] = exp[(i - n) as usize];
    }
    (exp, log)
}

/// An ordered basis {α_1, …, α_m} of GF(2^m) over GF(2) with Tr(α_i α_j) = δ_ij.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualBasis {
    pub m: u32,
    pub modulus: u32,
    pub vectors: Vec<FieldElement>,
}

impl DualBasis {
    pub fn is_trace_orthonormal(&self, field: &FieldSpec) -> bool {
        self.vectors.len() == field.m() as usize
            && self.vectors.iter().enumerate().all(|(i, &a)| {
                self.vectors.iter().enumerate().all(|(j, &b)| field.trace(field.mul(a, b)) == u8::from(i == j))
            })
    }

    /// Coordinates of `a` in this basis: c_i = Tr(a α_i).
    pub fn coordinates(&self, field: &FieldSpec, a: FieldElement) -> Vec<u8> {
        self.vectors.iter().map(|&al| field.trace(field.mul(a, al))).collect()
    }

    pub fn recombine(&self, coords: &[u8]) -> FieldElement {
        self.vectors.iter().zip(coords).filter(|(_, &c)| c == 1).fold(FieldElement::ZERO, |acc, (&a, _)| acc + a)
    }
}

/// Trace form of the polynomial basis: entry (i, j) is Tr(x^i x^j).
fn trace_gram(field: &FieldSpec) -> Vec<u32> {
    let m = field.m() as usize;
    let x = field.generator_x();
    (0..m)
        .map(|i| {
            (0..m).fold(0u32, |row, j| {
                let t = field.trace(field.pow(x, (i + j) as u64)) as u32;
                row | (t << j)
            })
        })
        .collect()
}

fn form(gram: &[u32], a: u32, b: u32) -> u32 {
    let mut acc = 0;
    for (i, &row) in gram.iter().enumerate() {
        if (a >> i) & 1 == 1 {
            acc ^= (row & b).count_ones() & 1;
        }
    }
    acc
}

/// Self-dual basis by symmetric reduction of the trace form over GF(2).
///
/// Anisotropic vectors are split off one at a time. When the remaining
/// complement turns alternating, a hyperbolic pair (e, f) is absorbed into a
/// previously found vector v via {v+e+f, v+e, v+f}, which is orthonormal.
pub fn self_dual_basis(field: &FieldSpec) -> DualBasis {
    let m = field.m() as usize;
    let gram = trace_gram(field);
    let mut done: Vec<u32> = Vec::with_capacity(m);
    let mut rest: Vec<u32> = (0..m).map(|i| 1u32 << i).collect();
    while !rest.is_empty() {
        if let Some(pos) = rest.iter().position(|&w| form(&gram, w, w) == 1) {
            let w = rest.remove(pos);
            for r in rest.iter_mut() {
                if form(&gram, *r, w) == 1 {
                    *r ^= w;
                }
            }
            done.push(w);
            continue;
        }
        let e = rest.remove(0);
        let fpos = rest.iter().position(|&w| form(&gram, e, w) == 1).expect("trace form is nondegenerate");
        let f = rest.remove(fpos);
        for r in rest.iter_mut() {
            let a = form(&gram, *r, f);
            let b = form(&gram, *r, e);
            if a == 1 {
                *r ^= e;
            }
            if b == 1 {
                *r ^= f;
            }
        }
        let v = done.pop().expect("trace form is not alternating");
        done.extend([v ^ e ^ f, v ^ e, v ^ f]);
    }
    let vectors = done.into_iter().map(|c| FieldElement(c as u16)).collect();
    let basis = DualBasis { m: field.m(), modulus: field.modulus(), vectors };
    assert!(basis.is_trace_orthonormal(field), "self-dual basis reduction failed");
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> FieldSpec {
        FieldSpec::with_default_modulus(m).unwrap()
    }

    #[test]
    fn default_moduli_are_least_irreducible() {
        for m in 1..=16u32 {
            let least = ((1u32 << m)..(1u32 << (m + 1))).find(|&p| is_irreducible_gf2(p)).unwrap();
            assert_eq!(DEFAULT_MODULI[m as usize - 1], least, "m = {m}");
        }
    }

    #[test]
    fn gf4_omega_squared() {
        let f = gf(2);
        let w = f.generator_x();
        assert_eq!(w, FieldElement(2));
        assert_eq!(f.mul(w, w), w + FieldElement::ONE);
        let w2 = f.mul(w, w);
        assert_eq!(f.mul(w, w2), FieldElement::ONE);
    }

    #[test]
    fn tables_match_clmul() {
        for m in 1..=8 {
            let f = gf(m);
            for a in f.elements() {
                assert_eq!(a + a, FieldElement::ZERO);
                for b in f.elements() {
                    let want = clmul_mod(a.0 as u32, b.0 as u32, f.modulus()) as u16;
                    assert_eq!(f.mul(a, b).0, want);
                }
            }
        }
    }

    #[test]
    fn inverse_and_errors() {
        let f = gf(5);
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
        assert_eq!(f.inv(FieldElement::ZERO), Err(FieldError::ZeroInverse));
        assert!(matches!(
            f.apply(FieldElement(40), FieldElement::ONE, FieldOp::Add),
            Err(FieldError::ForeignElement { .. })
        ));
        assert!(gf(2).ensure_same(&gf(3)).is_err());
        assert_eq!(FieldSpec::new(2, 0b101), Err(FieldError::ReducibleModulus(0b101)));
        assert_eq!(FieldSpec::new(17, 0).unwrap_err(), FieldError::UnsupportedDegree(17));
    }

    #[test]
    fn trace_values() {
        assert_eq!(gf(1).trace(FieldElement::ONE), 1);
        let f = gf(2);
        assert_eq!(f.trace(f.generator_x()), 1);
        assert_eq!(f.trace(FieldElement::ONE), 0);
    }

    #[test]
    fn trace_frobenius_and_nondegeneracy() {
        for m in 1..=8 {
            let f = gf(m);
            for a in f.elements() {
                assert_eq!(f.trace(f.mul(a, a)), f.trace(a));
                if !a.is_zero() {
                    assert!(f.elements().any(|b| f.trace(f.mul(a, b)) == 1));
                }
            }
            // GF(2)-linearity
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.trace(a + b), f.trace(a) ^ f.trace(b));
                }
            }
        }
    }

    /// Exhaustive self-dual basis search in canonical (increasing) order.
    fn exhaustive_self_dual(f: &FieldSpec) -> Vec<Vec<FieldElement>> {
        let m = f.m() as usize;
        let norm: Vec<FieldElement> = f.elements().filter(|&a| f.trace(f.mul(a, a)) == 1).collect();
        let mut out = Vec::new();
        fn rec(
            f: &FieldSpec,
            m: usize,
            pool: &[FieldElement],
            cur: &mut Vec<FieldElement>,
            out: &mut Vec<Vec<FieldElement>>,
        ) {
            if cur.len() == m {
                out.push(cur.clone());
                return;
            }
            for &a in pool {
                if cur.contains(&a) {
                    continue;
                }
                if cur.iter().all(|&b| f.trace(f.mul(a, b)) == 0) {
                    cur.push(a);
                    rec(f, m, pool, cur, out);
                    cur.pop();
                }
            }
        }
        rec(f, m, &norm, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn self_dual_basis_small() {
        let b1 = self_dual_basis(&gf(1));
        assert_eq!(b1.vectors, vec![FieldElement::ONE]);

        let f = gf(2);
        let w = f.generator_x();
        let b2 = self_dual_basis(&f);
        assert_eq!(b2.vectors, vec![w, f.mul(w, w)]);
        // only ordered self-dual bases of GF(4) are the two orders of {ω, ω²}
        let all = exhaustive_self_dual(&f);
        assert_eq!(all.len(), 2);
        // {1, ω} is not trace-orthonormal
        let claimed = DualBasis { m: 2, modulus: f.modulus(), vectors: vec![FieldElement::ONE, w] };
        assert!(!claimed.is_trace_orthonormal(&f));

        for m in 3..=4 {
            let f = gf(m);
            let b = self_dual_basis(&f);
            let all = exhaustive_self_dual(&f);
            assert!(all.contains(&b.vectors));
        }
    }

    #[test]
    fn self_dual_basis_all_degrees() {
        for m in 1..=16 {
            let f = gf(m);
            let b = self_dual_basis(&f);
            assert!(b.is_trace_orthonormal(&f), "m = {m}");
            assert_eq!(self_dual_basis(&f), b);
        }
    }

    #[test]
    fn dual_basis_round_trip() {
        for m in 1..=8 {
            let f = gf(m);
            let b = self_dual_basis(&f);
            for a in f.elements() {
                assert_eq!(b.recombine(&b.coordinates(&f, a)), a);
            }
        }
    }

    #[test]
    fn modulus_strings() {
        assert_eq!(parse_modulus("111").unwrap(), 7);
        assert_eq!(parse_modulus("0x13").unwrap(), 0x13);
        assert!(parse_modulus("12").is_err());
        assert_eq!(modulus_bits(0b1011), "1011");
    }
}
