//! Helpers shared by the integration tests: assignment sweeps, a brute-force
//! dual built from the R-inner product, and seeded random inputs.

#![allow(dead_code)]

use chainqc::chainring::{RingElement, RingSpec, RingVector};
use chainqc::code::{CyclicCodeR, SlotAssignment};
use chainqc::cyclotomic::FactorCache;
use chainqc::field::{FieldElement, FieldSpec};
use chainqc::fqlinear::{LinearCode, Row};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// (n, m, k) triples small enough for the brute-force oracle.
pub const ORACLE_CONFIGS: [(usize, u32, usize); 5] = [(3, 1, 1), (5, 1, 1), (7, 1, 1), (3, 1, 2), (3, 2, 1)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every slot assignment for (n, m, k), in index order.
pub fn all_codes(n: usize, m: u32, k: usize) -> Vec<CyclicCodeR> {
    let field = FieldSpec::shared(m, None).unwrap();
    let fac = FactorCache::global().get(n, &field).unwrap();
    let spec = RingSpec::new(field, k);
    let count = ((k + 2) as u64).pow(fac.len() as u32);
    (0..count).map(|i| CyclicCodeR::new(spec.clone(), SlotAssignment::from_index(fac.clone(), k, i)).unwrap()).collect()
}

/// {y : <x, y> = 0 in R for every x in C}, as the null space of the F_q-linear
/// functionals y ↦ β_t(<x, y>) over an F_q-basis x of C.
pub fn brute_force_dual(code: &CyclicCodeR) -> LinearCode {
    let spec = code.spec();
    let levels = spec.levels();
    let len = levels * code.n();
    let units: Vec<RingVector> = (0..len)
        .map(|j| {
            let mut e = vec![FieldElement::ZERO; len];
            e[j] = FieldElement::ONE;
            RingVector::from_blocks(levels, &e)
        })
        .collect();
    let mut functionals: Vec<Row> = Vec::new();
    for x in code.basis_rows() {
        let xv = RingVector::from_blocks(levels, &x);
        let products: Vec<RingElement> = units.iter().map(|e| spec.dot(&xv, e).unwrap()).collect();
        for t in 0..levels {
            functionals.push(products.iter().map(|p| p.beta(t).unwrap()).collect());
        }
    }
    LinearCode::from_rows(spec.field.clone(), len, functionals).dual_code()
}

pub fn brute_force_contains_dual(code: &CyclicCodeR) -> bool {
    code.linear_code().contains_code(&brute_force_dual(code))
}

pub fn random_element(spec: &RingSpec, rng: &mut impl Rng) -> RingElement {
    let q = spec.q() as u16;
    spec.element((0..spec.levels()).map(|_| FieldElement(rng.gen_range(0..q))).collect()).unwrap()
}

pub fn random_vector(spec: &RingSpec, n: usize, rng: &mut impl Rng) -> RingVector {
    RingVector { entries: (0..n).map(|_| random_element(spec, rng)).collect() }
}

/// Random [n, ≤dim]_q code from `dim` uniformly random rows.
pub fn random_code(m: u32, n: usize, dim: usize, rng: &mut impl Rng) -> LinearCode {
    let field = FieldSpec::shared(m, None).unwrap();
    let q = field.size() as u16;
    let rows = (0..dim).map(|_| (0..n).map(|_| FieldElement(rng.gen_range(0..q))).collect()).collect();
    LinearCode::from_rows(field, n, rows)
}
