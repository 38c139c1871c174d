//! Cyclic codes of odd length over R = F_{2^m}[u]/(u^{k+1}).
//!
//! A code is fixed by a slot assignment: each irreducible factor of x^n - 1
//! goes to one of the slots 0..=k+1, f_j is the product of the factors in
//! slot j, and C = ⟨f̂_1, u f̂_2, …, u^k f̂_{k+1}⟩ with f̂_j = (x^n - 1)/f_j.
//! On the CRT component of a factor in slot j ≥ 1 the code is the ideal
//! generated by u^{j-1}; on a factor in slot 0 it is zero.
//!
//! As an F_{2^m}-space, C has the independent basis u^b x^t f̂_j for
//! j ≥ 1, j-1 ≤ b ≤ k and 0 ≤ t < deg f_j, written in block coordinates
//! (all β_0, then all β_1, …).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chainring::{RingError, RingSpec, RingVector};
use crate::cyclotomic::{FactorCache, Factorization};
use crate::field::{modulus_bits, parse_modulus, FieldElement, FieldError, FieldSpec};
use crate::fqlinear::{check_budget, LinearCode, LinearError, Row};
use crate::poly::{Poly, PolyError};

/// Default cap on codewords produced by [`CyclicCodeR::enumerate`].
pub const DEFAULT_CODEWORD_BUDGET: u64 = 1 << 24;

pub const DESCRIPTOR_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid slot assignment: {0}")]
    InvalidPartition(String),
    #[error("invalid code descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

impl CodeError {
    pub fn is_budget(&self) -> bool {
        matches!(self, CodeError::Linear(e) if e.is_budget())
    }
}

/// Assignment of every irreducible factor of x^n - 1 to a slot in 0..=k+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotAssignment {
    pub fac: Arc<Factorization>,
    pub k: usize,
    pub slots: Vec<usize>,
}

impl SlotAssignment {
    pub fn new(fac: Arc<Factorization>, k: usize, slots: Vec<usize>) -> Result<SlotAssignment, CodeError> {
        if slots.len() != fac.len() {
            return Err(CodeError::InvalidPartition(format!("{} slots for {} factors", slots.len(), fac.len())));
        }
        if let Some(&s) = slots.iter().find(|&&s| s > k + 1) {
            return Err(CodeError::InvalidPartition(format!("slot {s} exceeds k + 1 = {}", k + 1)));
        }
        Ok(SlotAssignment { fac, k, slots })
    }

    /// Assigns factors by the polynomials f_0, …, f_{k+1}, whose product
    /// must be x^n - 1 up to units.
    pub fn from_polys(fac: Arc<Factorization>, k: usize, fs: &[Poly]) -> Result<SlotAssignment, CodeError> {
        let field = fac.field.clone();
        if fs.len() != k + 2 {
            return Err(CodeError::InvalidPartition(format!("expected {} polynomials, got {}", k + 2, fs.len())));
        }
        let product = Poly::product(&field, fs).monic(&field);
        if product != Poly::x_n_minus_1(fac.n) {
            return Err(CodeError::InvalidPartition("product of the f_j is not x^n - 1".into()));
        }
        let slots = fac
            .factors
            .iter()
            .map(|p| fs.iter().position(|f| p.divides(&field, f)).expect("factor of the product divides some f_j"))
            .collect();
        SlotAssignment::new(fac, k, slots)
    }

    /// The assignment at position `index` of the canonical order: slot
    /// vectors in lexicographic order, factor 0 most significant.
    pub fn from_index(fac: Arc<Factorization>, k: usize, mut index: u64) -> SlotAssignment {
        let base = (k + 2) as u64;
        let mut slots = vec![0usize; fac.len()];
        for s in slots.iter_mut().rev() {
            *s = (index % base) as usize;
            index /= base;
        }
        SlotAssignment { fac, k, slots }
    }

    pub fn index(&self) -> u64 {
        let base = (self.k + 2) as u64;
        self.slots.iter().fold(0u64, |acc, &s| acc * base + s as u64)
    }

    pub fn n(&self) -> usize {
        self.fac.n
    }

    /// f_j, the product of the factors in slot j.
    pub fn f(&self, j: usize) -> Poly {
        let field = &self.fac.field;
        Poly::product(field, self.fac.factors.iter().zip(&self.slots).filter(|(_, &s)| s == j).map(|(p, _)| p))
    }

    pub fn slot_degree(&self, j: usize) -> usize {
        self.fac.factors.iter().zip(&self.slots).filter(|(_, &s)| s == j).map(|(p, _)| p.deg()).sum()
    }

    /// Exponent s with C_p = u^s R_p on the component of factor i
    /// (s = k + 1 means the component is zero).
    pub fn level(&self, i: usize) -> usize {
        match self.slots[i] {
            0 => self.k + 1,
            j => j - 1,
        }
    }

    pub fn entries(&self) -> Vec<SlotEntry> {
        self.fac.cosets.iter().zip(&self.slots).map(|(c, &s)| SlotEntry { coset_rep: c.rep, slot_index: s }).collect()
    }
}

/// The divisibility test for dual containment: f_0·r_2⋯r_{k+1} | f_1*.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityCertificate {
    pub holds: bool,
    /// f_0·r_2⋯r_{k+1}, monic.
    pub divisor: Poly,
    /// Monic normalization of f_1*.
    pub target: Poly,
    pub quotient: Poly,
    pub remainder: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCodeR {
    spec: RingSpec,
    assignment: SlotAssignment,
}

impl CyclicCodeR {
    pub fn new(spec: RingSpec, assignment: SlotAssignment) -> Result<CyclicCodeR, CodeError> {
        if spec.k != assignment.k {
            return Err(CodeError::InvalidPartition(format!(
                "assignment built for k = {}, ring has k = {}",
                assignment.k, spec.k
            )));
        }
        spec.field.ensure_same(&assignment.fac.field)?;
        if assignment.fac.n.is_multiple_of(2) {
            return Err(CodeError::Poly(PolyError::EvenLength(assignment.fac.n as u64)));
        }
        Ok(CyclicCodeR { spec, assignment })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn assignment(&self) -> &SlotAssignment {
        &self.assignment
    }

    pub fn n(&self) -> usize {
        self.assignment.n()
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    /// (l_0, …, l_k) with l_i = deg f_{i+1}.
    pub fn type_vector(&self) -> Vec<usize> {
        (1..=self.k() + 1).map(|j| self.assignment.slot_degree(j)).collect()
    }

    /// dim over F_{2^m} of C (and of its Gray image): Σ (k+1-i) l_i.
    pub fn dimension(&self) -> usize {
        let k = self.k();
        self.type_vector().iter().enumerate().map(|(i, &l)| (k + 1 - i) * l).sum()
    }

    /// log2 |C| = m·Σ (k+1-i) l_i.
    pub fn log2_size(&self) -> usize {
        self.spec.m() as usize * self.dimension()
    }

    /// The dual code: the partner of a factor in slot 0 goes to slot 1, of a
    /// factor in slot 1 to slot 0, and of a factor in slot j ≥ 2 to slot k+3-j.
    pub fn dual(&self) -> CyclicCodeR {
        let k = self.k();
        let a = &self.assignment;
        let mut slots = vec![0usize; a.slots.len()];
        for (i, &s) in a.slots.iter().enumerate() {
            slots[a.fac.partner[i]] = match s {
                0 => 1,
                1 => 0,
                j => k + 3 - j,
            };
        }
        CyclicCodeR { spec: self.spec.clone(), assignment: SlotAssignment { fac: a.fac.clone(), k, slots } }
    }

    /// r_j for j = 2..=k+1: product of the factors g in slot j that are not
    /// self-reciprocal and whose reciprocal lies outside slot j.
    pub fn r_polynomials(&self) -> Vec<Poly> {
        let a = &self.assignment;
        let field = &a.fac.field;
        (2..=self.k() + 1)
            .map(|j| {
                Poly::product(
                    field,
                    (0..a.fac.len())
                        .filter(|&i| a.slots[i] == j && a.fac.partner[i] != i && a.slots[a.fac.partner[i]] != j)
                        .map(|i| &a.fac.factors[i]),
                )
            })
            .collect()
    }

    pub fn divisibility_certificate(&self) -> DivisibilityCertificate {
        let field = &self.assignment.fac.field;
        let mut divisor = self.assignment.f(0);
        for r in self.r_polynomials() {
            divisor = divisor.mul(field, &r);
        }
        let divisor = divisor.monic(field);
        let target = self.assignment.f(1).monic_reciprocal(field).expect("divisors of x^n - 1 have f(0) != 0");
        let (quotient, remainder) = target.divmod(field, &divisor).expect("divisor is monic");
        DivisibilityCertificate { holds: remainder.is_zero(), divisor, target, quotient, remainder }
    }

    /// The divisibility criterion f_0·r_2⋯r_{k+1} | f_1*.
    pub fn is_dual_containing(&self) -> bool {
        self.divisibility_certificate().holds
    }

    /// C^⊥ ⊆ C decided on CRT components: holds iff s(p) + s(p*) ≤ k + 1 for
    /// every factor p, where C_p = u^{s(p)} R_p.
    pub fn is_dual_containing_by_components(&self) -> bool {
        let a = &self.assignment;
        (0..a.fac.len()).all(|i| a.level(i) + a.level(a.fac.partner[i]) <= self.k() + 1)
    }

    /// Factors violating s(p) + s(p*) ≤ k + 1, as coset representatives.
    pub fn containment_violations(&self) -> Vec<u64> {
        let a = &self.assignment;
        (0..a.fac.len())
            .filter(|&i| a.level(i) + a.level(a.fac.partner[i]) > self.k() + 1)
            .map(|i| a.fac.cosets[i].rep)
            .collect()
    }

    /// C^⊥ ⊆ C decided by linear algebra: every basis row of the dual lies
    /// in the row space of C.
    pub fn contains_dual(&self) -> bool {
        self.linear_code().contains_code(&self.dual().linear_code())
    }

    /// The generators u^{j-1} f̂_j for the slots with f_j ≠ 1.
    pub fn generators(&self) -> Vec<RingVector> {
        let n = self.n();
        let levels = self.spec.levels();
        (1..=self.k() + 1)
            .filter(|&j| self.assignment.slot_degree(j) > 0)
            .map(|j| {
                let hat = self.f_hat(j);
                let mut blocks = vec![FieldElement::ZERO; levels * n];
                blocks[(j - 1) * n..j * n].copy_from_slice(&hat.to_dense(n));
                RingVector::from_blocks(levels, &blocks)
            })
            .collect()
    }

    fn f_hat(&self, j: usize) -> Poly {
        let field = &self.assignment.fac.field;
        let (q, r) = Poly::x_n_minus_1(self.n()).divmod(field, &self.assignment.f(j)).expect("f_j is nonzero");
        debug_assert!(r.is_zero());
        q
    }

    /// Independent F_{2^m}-basis of C in block coordinates.
    pub fn basis_rows(&self) -> Vec<Row> {
        let n = self.n();
        let levels = self.spec.levels();
        let mut rows = Vec::with_capacity(self.dimension());
        for j in 1..=self.k() + 1 {
            let deg = self.assignment.slot_degree(j);
            if deg == 0 {
                continue;
            }
            let hat = self.f_hat(j).to_dense(n);
            for b in (j - 1)..levels {
                for t in 0..deg {
                    let mut row = vec![FieldElement::ZERO; levels * n];
                    for (i, &c) in hat.iter().enumerate() {
                        row[b * n + (i + t) % n] = c;
                    }
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// C as a linear code of length (k+1)n over F_{2^m}, block coordinates.
    pub fn linear_code(&self) -> LinearCode {
        LinearCode::from_rows(self.spec.field.clone(), self.spec.levels() * self.n(), self.basis_rows())
    }

    pub fn contains(&self, v: &RingVector) -> Result<bool, CodeError> {
        if v.len() != self.n() {
            return Err(CodeError::Ring(RingError::LengthMismatch(v.len(), self.n())));
        }
        Ok(self.linear_code().contains(&v.to_blocks()))
    }

    /// All codewords, each exactly once.
    pub fn enumerate(&self, budget: u64) -> Result<Vec<RingVector>, CodeError> {
        let log2 = self.log2_size() as u64;
        check_budget(log2, budget)?;
        let field = &self.spec.field;
        let levels = self.spec.levels();
        let gens: Vec<Row> = self
            .linear_code()
            .generator()
            .iter()
            .flat_map(|row| {
                (0..field.m()).map(move |j| row.iter().map(|&x| field.mul(FieldElement(1 << j), x)).collect())
            })
            .collect();
        let mut cur = vec![FieldElement::ZERO; levels * self.n()];
        let mut out = Vec::with_capacity(1usize << log2);
        out.push(RingVector::from_blocks(levels, &cur));
        for t in 1u64..(1u64 << log2) {
            for (c, &g) in cur.iter_mut().zip(&gens[t.trailing_zeros() as usize]) {
                *c += g;
            }
            out.push(RingVector::from_blocks(levels, &cur));
        }
        Ok(out)
    }

    /// Euclidean orthogonality over R of C's basis against `other`'s basis.
    pub fn is_orthogonal_to(&self, other: &CyclicCodeR) -> Result<bool, CodeError> {
        let levels = self.spec.levels();
        let mine: Vec<RingVector> = self.basis_rows().iter().map(|r| RingVector::from_blocks(levels, r)).collect();
        let theirs: Vec<RingVector> = other.basis_rows().iter().map(|r| RingVector::from_blocks(levels, r)).collect();
        for x in &mine {
            for y in &theirs {
                if !self.spec.dot(x, y)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            schema_version: DESCRIPTOR_SCHEMA_VERSION,
            n: self.n(),
            m: self.spec.m(),
            k: self.k(),
            modulus: modulus_bits(self.spec.field.modulus()),
            slots: self.assignment.entries(),
            label: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotEntry {
    pub coset_rep: u64,
    pub slot_index: usize,
}

/// Serialized form of a code: field, ring and slot of every factor, the
/// factor named by the minimal representative of its cyclotomic coset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub schema_version: u32,
    pub n: usize,
    pub m: u32,
    pub k: usize,
    /// Field modulus as a bit string, highest degree first.
    pub modulus: String,
    pub slots: Vec<SlotEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl CodeDescriptor {
    pub fn build(&self, cache: &FactorCache) -> Result<CyclicCodeR, CodeError> {
        if self.schema_version != DESCRIPTOR_SCHEMA_VERSION {
            return Err(CodeError::Descriptor(format!("unsupported schema_version {}", self.schema_version)));
        }
        let modulus = parse_modulus(&self.modulus)?;
        let field = FieldSpec::shared(self.m, Some(modulus))?;
        let fac = cache.get(self.n, &field)?;
        let mut slots = vec![None; fac.len()];
        for e in &self.slots {
            let i = fac
                .factor_index_by_rep(e.coset_rep)
                .ok_or_else(|| CodeError::Descriptor(format!("{} is not a coset representative", e.coset_rep)))?;
            if slots[i].replace(e.slot_index).is_some() {
                return Err(CodeError::Descriptor(format!("coset {} listed twice", e.coset_rep)));
            }
        }
        let slots = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| CodeError::Descriptor(format!("coset {} has no slot", fac.cosets[i].rep))))
            .collect::<Result<Vec<_>, _>>()?;
        let assignment = SlotAssignment::new(fac, self.k, slots)?;
        CyclicCodeR::new(RingSpec::new(field, self.k), assignment)
    }

    pub fn from_json(text: &str) -> Result<CodeDescriptor, CodeError> {
        serde_json::from_str(text).map_err(|e| CodeError::Descriptor(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }
}

/// Builds a code from explicit f_0, …, f_{k+1}.
pub fn code_from_polys(m: u32, k: usize, n: usize, fs: &[Poly], cache: &FactorCache) -> Result<CyclicCodeR, CodeError> {
    let field = FieldSpec::shared(m, None)?;
    let fac = cache.get(n, &field)?;
    let assignment = SlotAssignment::from_polys(fac, k, fs)?;
    CyclicCodeR::new(RingSpec::new(field, k), assignment)
}

/// Named codes shipped with the CLI.
pub mod presets {
    use super::*;

    fn p(c: &[u16]) -> Poly {
        Poly::from_u16s(c)
    }

    /// n = 15 over F_2[u]/(u^4): f_0 = 1, f_1 = (x²+x+1)(x⁴+x+1)(x⁴+x³+x²+x+1),
    /// f_2 = x⁴+x³+1, f_3 = 1, f_4 = x+1.
    pub fn length15_k3(cache: &FactorCache) -> Result<CyclicCodeR, CodeError> {
        let field = FieldSpec::shared(1, None)?;
        let f1 = Poly::product(&field, &[p(&[1, 1, 1]), p(&[1, 1, 0, 0, 1]), p(&[1, 1, 1, 1, 1])]);
        code_from_polys(1, 3, 15, &[Poly::one(), f1, p(&[1, 0, 0, 1, 1]), Poly::one(), p(&[1, 1])], cache)
    }

    /// The same five polynomials read with labels 1..=4 as slots 1..=4, so
    /// that x+1 is left for slot 0.
    pub fn length15_k3_shifted(cache: &FactorCache) -> Result<CyclicCodeR, CodeError> {
        let field = FieldSpec::shared(1, None)?;
        let f2 = Poly::product(&field, &[p(&[1, 1, 1]), p(&[1, 1, 0, 0, 1]), p(&[1, 1, 1, 1, 1])]);
        code_from_polys(1, 3, 15, &[p(&[1, 1]), Poly::one(), f2, p(&[1, 0, 0, 1, 1]), Poly::one()], cache)
    }

    /// n = 21 over F_4[u]/(u^2): f_0 = 1, f_1 = (x^21-1)/(x+1), f_2 = x+1.
    pub fn length21_m2(cache: &FactorCache) -> Result<CyclicCodeR, CodeError> {
        let field = FieldSpec::shared(2, None)?;
        let x1 = p(&[1, 1]);
        let (f1, _) = Poly::x_n_minus_1(21).divmod(&field, &x1)?;
        code_from_polys(2, 1, 21, &[Poly::one(), f1, x1], cache)
    }

    /// n = 21 over F_4[u]/(u^2) generated by (x+1)(x³+ω²x+1) alone:
    /// f_0 = (x+1)(x³+ω²x+1), f_1 = the cofactor, f_2 = 1.
    pub fn length21_m2_single_generator(cache: &FactorCache) -> Result<CyclicCodeR, CodeError> {
        let field = FieldSpec::shared(2, None)?;
        // ω = 0b10, ω² = 0b11
        let g = Poly::product(&field, &[p(&[1, 1]), p(&[1, 3, 0, 1])]);
        let (f1, _) = Poly::x_n_minus_1(21).divmod(&field, &g)?;
        code_from_polys(2, 1, 21, &[g, f1, Poly::one()], cache)
    }

    pub const NAMES: [&str; 4] = ["n15-k3", "n15-k3-shifted", "n21-m2", "n21-m2-single"];

    pub fn by_name(name: &str, cache: &FactorCache) -> Option<Result<CyclicCodeR, CodeError>> {
        match name {
            "n15-k3" => Some(length15_k3(cache)),
            "n15-k3-shifted" => Some(length15_k3_shifted(cache)),
            "n21-m2" => Some(length21_m2(cache)),
            "n21-m2-single" => Some(length21_m2_single_generator(cache)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn setup(n: usize, m: u32, k: usize) -> (Field, Arc<Factorization>, RingSpec) {
        let f = FieldSpec::shared(m, None).unwrap();
        let fac = FactorCache::new(None).get(n, &f).unwrap();
        (f.clone(), fac, RingSpec::new(f, k))
    }

    fn code(n: usize, m: u32, k: usize, slots: Vec<usize>) -> CyclicCodeR {
        let (_, fac, spec) = setup(n, m, k);
        CyclicCodeR::new(spec, SlotAssignment::new(fac, k, slots).unwrap()).unwrap()
    }

    #[test]
    fn trivial_codes() {
        let full = code(7, 1, 2, vec![1; 3]);
        assert_eq!(full.log2_size(), 21);
        assert!(full.is_dual_containing());
        assert!(full.dual().linear_code().dim() == 0);
        let zero = code(7, 1, 2, vec![0; 3]);
        assert_eq!(zero.log2_size(), 0);
        assert!(!zero.is_dual_containing());
        assert_eq!(zero.enumerate(16).unwrap().len(), 1);
    }

    #[test]
    fn length15_preset() {
        let cache = FactorCache::new(None);
        let c = presets::length15_k3(&cache).unwrap();
        assert_eq!(c.type_vector(), vec![10, 4, 0, 1]);
        assert_eq!(c.log2_size(), 53);
        assert_eq!(c.dual().log2_size(), 7);
        let cert = c.divisibility_certificate();
        assert!(cert.holds);
        assert_eq!(cert.divisor, Poly::from_u16s(&[1, 0, 0, 1, 1]));
        assert_eq!(c.r_polynomials()[0], Poly::from_u16s(&[1, 0, 0, 1, 1]));
        // x+1 sits at level 3 and is its own reciprocal: 3 + 3 > 4
        assert!(!c.is_dual_containing_by_components());
        assert_eq!(c.containment_violations(), vec![0]);
        assert!(!c.contains_dual());
        assert_eq!(c.dual().enumerate(1 << 10).unwrap().len(), 128);
        let shifted = presets::length15_k3_shifted(&cache).unwrap();
        assert_eq!(shifted.type_vector(), vec![0, 10, 4, 0]);
        assert_eq!(shifted.log2_size(), 38);
    }

    #[test]
    fn length21_presets() {
        let cache = FactorCache::new(None);
        let c = presets::length21_m2(&cache).unwrap();
        assert_eq!(c.type_vector(), vec![20, 1]);
        assert!(c.is_dual_containing());
        assert!(c.contains_dual());
        let single = presets::length21_m2_single_generator(&cache).unwrap();
        assert_eq!(single.type_vector(), vec![17, 0]);
        assert_eq!(single.assignment().slot_degree(0), 4);
    }

    #[test]
    fn small_enumeration_and_membership() {
        let (_, fac, spec) = setup(3, 1, 1);
        // x+1 in slot 1, x²+x+1 in slot 0 gives {a·(1,1,1)}
        let c = CyclicCodeR::new(spec.clone(), SlotAssignment::new(fac, 1, vec![1, 0]).unwrap()).unwrap();
        let words = c.enumerate(1 << 10).unwrap();
        assert_eq!(words.len(), 4);
        for w in &words {
            assert!(w.entries.iter().all(|e| e == &w.entries[0]));
            assert!(c.contains(w).unwrap());
            assert!(c.contains(&w.shift()).unwrap());
        }
        assert!(c.contains(&spec.zero_vector(3)).unwrap());
        assert!(c.contains(&spec.zero_vector(4)).is_err());
    }

    #[test]
    fn index_round_trip_and_descriptor() {
        let (_, fac, spec) = setup(15, 1, 3);
        for idx in [0u64, 1, 77, 3124] {
            let a = SlotAssignment::from_index(fac.clone(), 3, idx);
            assert_eq!(a.index(), idx);
        }
        let c = CyclicCodeR::new(spec, SlotAssignment::from_index(fac, 3, 1234)).unwrap();
        let d = c.descriptor();
        let back = CodeDescriptor::from_json(&d.to_json()).unwrap().build(&FactorCache::new(None)).unwrap();
        assert_eq!(back, c);
        let mut bad = d.clone();
        bad.slots.pop();
        assert!(bad.build(&FactorCache::new(None)).is_err());
    }

    #[test]
    fn dual_involution_small() {
        let (_, fac, spec) = setup(3, 1, 1);
        for idx in 0..9 {
            let c = CyclicCodeR::new(spec.clone(), SlotAssignment::from_index(fac.clone(), 1, idx)).unwrap();
            assert_eq!(c.dual().dual(), c);
            assert_eq!(c.log2_size() + c.dual().log2_size(), 6);
            assert!(c.is_orthogonal_to(&c.dual()).unwrap());
        }
    }
}
