//! The chain ring R = F_{2^m}[u]/(u^{k+1}) and vectors over it.
//!
//! Elements are stored by their u-adic coordinates β_0, …, β_k.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("coordinate index {index} out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("element is not a unit")]
    NotUnit,
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("cannot parse ring element {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub field: Field,
    pub k: usize,
}

impl RingSpec {
    pub fn new(field: Field, k: usize) -> RingSpec {
        RingSpec { field, k }
    }

    /// Number of u-adic levels, k + 1.
    pub fn levels(&self) -> usize {
        self.k + 1
    }

    pub fn q(&self) -> u32 {
        self.field.size()
    }

    pub fn m(&self) -> u32 {
        self.field.m()
    }

    /// log2 |R| = m(k+1).
    pub fn log2_order(&self) -> u32 {
        self.m() * self.levels() as u32
    }

    pub fn zero(&self) -> RingElement {
        RingElement { betas: vec![FieldElement::ZERO; self.levels()] }
    }

    pub fn one(&self) -> RingElement {
        self.scalar(FieldElement::ONE)
    }

    pub fn scalar(&self, a: FieldElement) -> RingElement {
        let mut e = self.zero();
        e.betas[0] = a;
        e
    }

    /// u^i (zero when i > k).
    pub fn u_pow(&self, i: usize) -> RingElement {
        let mut e = self.zero();
        if i <= self.k {
            e.betas[i] = FieldElement::ONE;
        }
        e
    }

    pub fn element(&self, betas: Vec<FieldElement>) -> Result<RingElement, RingError> {
        if betas.len() != self.levels() {
            return Err(RingError::MixedRings);
        }
        for &b in &betas {
            self.field.check(b)?;
        }
        Ok(RingElement { betas })
    }

    fn same(&self, a: &RingElement, b: &RingElement) -> Result<(), RingError> {
        if a.betas.len() == self.levels() && b.betas.len() == self.levels() {
            Ok(())
        } else {
            Err(RingError::MixedRings)
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.same(a, b)?;
        Ok(RingElement { betas: a.betas.iter().zip(&b.betas).map(|(&x, &y)| x + y).collect() })
    }

    /// Convolution in u truncated at degree k.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.same(a, b)?;
        let f = &self.field;
        let mut out = self.zero();
        for (i, &x) in a.betas.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.betas.iter().enumerate().take(self.levels() - i) {
                out.betas[i + j] += f.mul(x, y);
            }
        }
        Ok(out)
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        !a.betas[0].is_zero()
    }

    /// Inverse of a unit a = a_0(1 + t), t nilpotent: a_0^{-1} Σ_{i≤k} (-t)^i.
    pub fn inv(&self, a: &RingElement) -> Result<RingElement, RingError> {
        if !self.is_unit(a) {
            return Err(RingError::NotUnit);
        }
        let a0_inv = self.field.inv(a.betas[0])?;
        let scaled = RingElement { betas: a.betas.iter().map(|&b| self.field.mul(b, a0_inv)).collect() };
        let mut t = scaled;
        t.betas[0] = FieldElement::ZERO;
        let mut acc = self.one();
        let mut power = self.one();
        for _ in 0..self.k {
            power = self.mul(&power, &t)?;
            acc = self.add(&acc, &power)?;
        }
        Ok(RingElement { betas: acc.betas.iter().map(|&b| self.field.mul(b, a0_inv)).collect() })
    }

    /// Parses `"b0,b1,…,bk"` with each β written as a hex bit-vector.
    pub fn parse_element(&self, s: &str) -> Result<RingElement, RingError> {
        let err = || RingError::Parse(s.to_string());
        let betas = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                let t = t.strip_prefix("0x").unwrap_or(t);
                u16::from_str_radix(t, 16).map(FieldElement).map_err(|_| err())
            })
            .collect::<Result<Vec<_>, _>>()?;
        if betas.len() != self.levels() {
            return Err(err());
        }
        self.element(betas)
    }

    /// Parses symbols separated by `;`, each in [`RingSpec::parse_element`] syntax.
    pub fn parse_vector(&self, s: &str) -> Result<RingVector, RingError> {
        let entries = s
            .split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|t| self.parse_element(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RingVector { entries })
    }

    pub fn zero_vector(&self, n: usize) -> RingVector {
        RingVector { entries: vec![self.zero(); n] }
    }

    /// Euclidean inner product Σ x_i y_i in R.
    pub fn dot(&self, x: &RingVector, y: &RingVector) -> Result<RingElement, RingError> {
        if x.len() != y.len() {
            return Err(RingError::LengthMismatch(x.len(), y.len()));
        }
        x.entries.iter().zip(&y.entries).try_fold(self.zero(), |acc, (a, b)| self.add(&acc, &self.mul(a, b)?))
    }

    pub fn add_vectors(&self, x: &RingVector, y: &RingVector) -> Result<RingVector, RingError> {
        if x.len() != y.len() {
            return Err(RingError::LengthMismatch(x.len(), y.len()));
        }
        let entries = x.entries.iter().zip(&y.entries).map(|(a, b)| self.add(a, b)).collect::<Result<_, _>>()?;
        Ok(RingVector { entries })
    }

    /// All elements of R, in increasing order of the packed coordinates.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let m = self.m();
        let total = 1u64 << self.log2_order();
        (0..total).map(move |mut t| {
            let mut betas = Vec::with_capacity(self.levels());
            for _ in 0..self.levels() {
                betas.push(FieldElement((t & ((1 << m) - 1)) as u16));
                t >>= m;
            }
            RingElement { betas }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    betas: Vec<FieldElement>,
}

impl RingElement {
    pub fn betas(&self) -> &[FieldElement] {
        &self.betas
    }

    pub fn beta(&self, i: usize) -> Result<FieldElement, RingError> {
        self.betas.get(i).copied().ok_or(RingError::IndexOutOfRange { index: i, k: self.betas.len() - 1 })
    }

    pub fn is_zero(&self) -> bool {
        self.betas.iter().all(|b| b.is_zero())
    }

    pub(crate) fn from_betas(betas: Vec<FieldElement>) -> RingElement {
        RingElement { betas }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.betas.iter().map(|b| format!("{:x}", b.0)).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingVector {
    pub entries: Vec<RingElement>,
}

impl RingVector {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    /// τ(c_0, …, c_{n-1}) = (c_{n-1}, c_0, …, c_{n-2}).
    pub fn shift(&self) -> RingVector {
        let mut entries = self.entries.clone();
        entries.rotate_right(1);
        RingVector { entries }
    }

    /// Block coordinates over F_{2^m}: all β_0, then all β_1, and so on.
    pub fn to_blocks(&self) -> Vec<FieldElement> {
        let n = self.len();
        let levels = self.entries.first().map_or(0, |e| e.betas.len());
        let mut out = vec![FieldElement::ZERO; levels * n];
        for (i, e) in self.entries.iter().enumerate() {
            for (b, &x) in e.betas.iter().enumerate() {
                out[b * n + i] = x;
            }
        }
        out
    }

    pub fn from_blocks(levels: usize, blocks: &[FieldElement]) -> RingVector {
        let n = blocks.len() / levels;
        let entries = (0..n).map(|i| RingElement { betas: (0..levels).map(|b| blocks[b * n + i]).collect() }).collect();
        RingVector { entries }
    }
}

impl fmt::Display for RingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring(m: u32, k: usize) -> RingSpec {
        RingSpec::new(FieldSpec::shared(m, None).unwrap(), k)
    }

    #[test]
    fn u_is_nilpotent() {
        for m in 1..=3 {
            for k in 0..=5 {
                let r = ring(m, k);
                let u = r.u_pow(1);
                let mut p = r.one();
                for _ in 0..k {
                    p = r.mul(&p, &u).unwrap();
                }
                assert!(!p.is_zero() || k == 0 && u.is_zero());
                assert!(r.mul(&p, &u).unwrap().is_zero());
            }
        }
        let r = ring(1, 1);
        assert!(r.mul(&r.u_pow(1), &r.u_pow(1)).unwrap().is_zero());
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(1, 2);
        let a = r.parse_element("1,1,0").unwrap();
        let b = r.parse_element("1,1,1").unwrap();
        assert_eq!(r.mul(&a, &b).unwrap(), r.one());
        assert!(r.add(&a, &a).unwrap().is_zero());
        assert_eq!(r.add(&a, &ring(1, 1).one()), Err(RingError::MixedRings));
    }

    #[test]
    fn units_and_betas() {
        let r = ring(1, 1);
        assert!(r.is_unit(&r.one()));
        assert!(!r.is_unit(&r.u_pow(1)));
        let a = r.parse_element("1,1").unwrap();
        assert!(r.is_unit(&a));
        assert_eq!(r.u_pow(1).beta(0).unwrap(), FieldElement::ZERO);
        assert_eq!(r.u_pow(1).beta(1).unwrap(), FieldElement::ONE);
        assert!(matches!(r.one().beta(2), Err(RingError::IndexOutOfRange { .. })));

        let r = ring(2, 3);
        let w = r.field.generator_x();
        let e = r.element(vec![FieldElement::ZERO, w, FieldElement::ZERO, FieldElement::ONE]).unwrap();
        assert_eq!(e.beta(3).unwrap(), FieldElement::ONE);
        assert_eq!(e.beta(1).unwrap(), w);
    }

    #[test]
    fn exhaustive_order_and_units() {
        for (m, k) in [(1, 0), (1, 3), (2, 2), (3, 1), (2, 5), (4, 2), (1, 11), (6, 1)] {
            let r = ring(m, k);
            let all: Vec<RingElement> = r.elements().collect();
            assert_eq!(all.len() as u64, 1u64 << (m as usize * (k + 1)));
            for a in all.iter().step_by(7) {
                let invertible = r.inv(a).is_ok_and(|b| r.mul(a, &b).unwrap() == r.one());
                assert_eq!(invertible, r.is_unit(a));
            }
        }
    }

    #[test]
    fn exact_unit_characterization_small() {
        let r = ring(2, 2);
        let all: Vec<RingElement> = r.elements().collect();
        for a in &all {
            let has_inverse = all.iter().any(|b| r.mul(a, b).unwrap() == r.one());
            assert_eq!(has_inverse, r.is_unit(a));
        }
    }

    #[test]
    fn parse_and_blocks() {
        let r = ring(2, 1);
        let v = r.parse_vector("1,0; 0,1; 3,2").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v.to_string(), "1,0;0,1;3,2");
        let blocks = v.to_blocks();
        assert_eq!(blocks.iter().map(|b| b.0).collect::<Vec<_>>(), vec![1, 0, 3, 0, 1, 2]);
        assert_eq!(RingVector::from_blocks(2, &blocks), v);
        assert!(r.parse_vector("1,0,0").is_err());
        assert!(r.parse_element("4,0").is_err());
        assert_eq!(v.shift().to_string(), "3,2;1,0;0,1");
    }
}
