//! Cyclotomic cosets and the factorization of x^n - 1 (n odd) over GF(2^m).
//!
//! Each factor is built from its roots: a primitive n-th root of unity z is
//! located in GF(q^s), s = ord_n(q), represented as GF(q)[y]/(P(y)) for the
//! least irreducible P of degree s. The factor attached to a coset C is
//! prod_{i in C} (x - z^i); its coefficients are constants in y, which is
//! checked before projecting them back into GF(q).

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::field::{Field, FieldElement, FieldSpec};
use crate::poly::{is_irreducible, prime_factors, Poly, PolyError};

pub const CACHE_SCHEMA_VERSION: u32 = 1;

/// One orbit of multiplication by q on Z_n, in generation order starting
/// from its minimal element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coset {
    pub rep: u64,
    pub members: Vec<u64>,
}

pub fn cyclotomic_cosets(n: u64, q: u64) -> Result<Vec<Coset>, PolyError> {
    if n == 0 {
        return Err(PolyError::ZeroLength);
    }
    if n.is_multiple_of(2) {
        return Err(PolyError::EvenLength(n));
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut i = start;
        while !seen[i as usize] {
            seen[i as usize] = true;
            members.push(i);
            i = ((i as u128 * q as u128) % n as u128) as u64;
        }
        out.push(Coset { rep: start, members });
    }
    Ok(out)
}

/// Multiplicative order of q modulo n (n odd, coprime to q).
pub fn multiplicative_order(q: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = q % n;
    let mut s = 1;
    while x != 1 {
        x = ((x as u128 * q as u128) % n as u128) as u64;
        s += 1;
    }
    s
}

/// x^n - 1 = f_1 ⋯ f_t, one monic irreducible per cyclotomic coset, sorted by
/// minimal coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: usize,
    pub field: Field,
    pub factors: Vec<Poly>,
    pub cosets: Vec<Coset>,
    /// `partner[i]` is the index of the factor whose coset is -C_i.
    pub partner: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocalClassification {
    pub self_reciprocal: Vec<usize>,
    /// Unordered pairs (i, j), i < j, with factor j the monic reciprocal of factor i.
    pub pairs: Vec<(usize, usize)>,
}

impl Factorization {
    pub fn coset_reps(&self) -> Vec<u64> {
        self.cosets.iter().map(|c| c.rep).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(Poly::deg).collect()
    }

    pub fn factor_index_by_rep(&self, rep: u64) -> Option<usize> {
        self.cosets.iter().position(|c| c.rep == rep)
    }

    pub fn is_self_reciprocal(&self, i: usize) -> bool {
        self.partner[i] == i
    }

    pub fn classify_reciprocals(&self) -> ReciprocalClassification {
        let mut self_reciprocal = Vec::new();
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            let j = self.partner[i];
            if j == i {
                self_reciprocal.push(i);
            } else if i < j {
                pairs.push((i, j));
            }
        }
        ReciprocalClassification { self_reciprocal, pairs }
    }

    fn from_parts(n: usize, field: Field, factors: Vec<Poly>, cosets: Vec<Coset>) -> Self {
        let partner = cosets
            .iter()
            .map(|c| {
                let neg = (n as u64 - c.rep) % n as u64;
                cosets.iter().position(|d| d.members.contains(&neg)).expect("cosets partition Z_n")
            })
            .collect();
        Factorization { n, field, factors, cosets, partner }
    }

    /// Checks the product, degrees, monicity and reciprocal pairing.
    pub fn verify(&self) -> bool {
        let f = &self.field;
        let product_ok = Poly::product(f, &self.factors) == Poly::x_n_minus_1(self.n);
        let shape_ok = self.factors.len() == self.cosets.len()
            && self.factors.iter().zip(&self.cosets).all(|(p, c)| p.is_monic() && p.deg() == c.members.len());
        let pairing_ok = self
            .factors
            .iter()
            .enumerate()
            .all(|(i, p)| p.monic_reciprocal(f).ok().as_ref() == Some(&self.factors[self.partner[i]]));
        product_ok && shape_ok && pairing_ok
    }
}

/// GF(q^s) as GF(q)[y]/(P).
struct Extension<'a> {
    base: &'a FieldSpec,
    modulus: Poly,
}

impl Extension<'_> {
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(self.base, b).rem(self.base, &self.modulus).expect("nonzero modulus")
    }

    fn pow(&self, a: &Poly, e: &BigUint) -> Poly {
        let mut acc = Poly::one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Poly, e: u64) -> Poly {
        self.pow(a, &BigUint::from(e))
    }
}

/// Monic polynomial of degree `s` whose lower coefficients are the base-q
/// digits of `t`.
fn poly_from_index(q: u64, s: usize, mut t: u128, monic: bool) -> Poly {
    let mut c = Vec::with_capacity(s + 1);
    for _ in 0..s {
        c.push(FieldElement((t % q as u128) as u16));
        t /= q as u128;
    }
    if monic {
        c.push(FieldElement::ONE);
    }
    Poly::new(c)
}

fn least_irreducible(f: &FieldSpec, s: usize) -> Poly {
    let q = f.size() as u64;
    (0u128..)
        .map(|t| poly_from_index(q, s, t, true))
        .find(|p| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

pub fn factor_x_n_minus_1(n: usize, field: &Field) -> Result<Factorization, PolyError> {
    let f: &FieldSpec = field;
    let q = f.size() as u64;
    let cosets = cyclotomic_cosets(n as u64, q)?;
    let s = multiplicative_order(q, n as u64) as usize;
    let ext = Extension { base: f, modulus: least_irreducible(f, s) };

    let group_order = BigUint::from(q).pow(s as u32) - BigUint::one();
    let cofactor = &group_order / BigUint::from(n as u64);
    debug_assert!((&group_order % BigUint::from(n as u64)).is_zero());
    let primes = prime_factors(n as u64);
    let one = Poly::one();
    let root = (1u128..)
        .map(|t| ext.pow(&poly_from_index(q, s, t, false), &cofactor))
        .find(|z| primes.iter().all(|&p| ext.pow_u64(z, n as u64 / p) != one))
        .expect("GF(q^s)* contains an element of order n");

    let mut factors = Vec::with_capacity(cosets.len());
    for c in &cosets {
        // coefficients live in GF(q^s), stored as polynomials in y
        let mut acc: Vec<Poly> = vec![Poly::one()];
        for &i in &c.members {
            let r = ext.pow_u64(&root, i);
            // multiply acc by (x + r)
            let mut next = vec![Poly::zero(); acc.len() + 1];
            for (d, a) in acc.iter().enumerate() {
                next[d + 1] = next[d + 1].add(a);
                next[d] = next[d].add(&ext.mul(a, &r));
            }
            acc = next;
        }
        let coeffs = acc
            .iter()
            .map(|a| {
                assert!(a.deg() == 0, "coset polynomial has a coefficient outside GF(q)");
                a.coeff(0)
            })
            .collect();
        factors.push(Poly::new(coeffs));
    }
    let fac = Factorization::from_parts(n, field.clone(), factors, cosets);
    assert!(fac.verify(), "factorization of x^{n} - 1 failed verification");
    Ok(fac)
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    schema_version: u32,
    n: usize,
    m: u32,
    modulus: u32,
    factors: Vec<Vec<u16>>,
    coset_reps: Vec<u64>,
}

/// Read-mostly cache of factorizations keyed by (n, m, modulus), optionally
/// persisted as JSON files under a directory.
#[derive(Debug, Default)]
pub struct FactorCache {
    map: RwLock<HashMap<(usize, u32, u32), Arc<Factorization>>>,
    dir: Option<PathBuf>,
}

impl FactorCache {
    pub fn new(dir: Option<PathBuf>) -> FactorCache {
        FactorCache { map: RwLock::new(HashMap::new()), dir }
    }

    pub fn global() -> &'static FactorCache {
        static CACHE: std::sync::OnceLock<FactorCache> = std::sync::OnceLock::new();
        CACHE.get_or_init(FactorCache::default)
    }

    fn file_for(dir: &Path, key: (usize, u32, u32)) -> PathBuf {
        dir.join(format!("factor_n{}_m{}_mod{:x}.json", key.0, key.1, key.2))
    }

    pub fn get(&self, n: usize, field: &Field) -> Result<Arc<Factorization>, PolyError> {
        let key = (n, field.m(), field.modulus());
        if let Some(hit) = self.map.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let fac = match self.load(key, field) {
            Some(f) => f,
            None => {
                let f = factor_x_n_minus_1(n, field)?;
                self.store(key, &f);
                f
            }
        };
        let fac = Arc::new(fac);
        self.map.write().unwrap().insert(key, fac.clone());
        Ok(fac)
    }

    fn load(&self, key: (usize, u32, u32), field: &Field) -> Option<Factorization> {
        let path = Self::file_for(self.dir.as_ref()?, key);
        let text = fs::read_to_string(path).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.schema_version != CACHE_SCHEMA_VERSION || (entry.n, entry.m, entry.modulus) != key {
            return None;
        }
        let cosets = cyclotomic_cosets(key.0 as u64, field.size() as u64).ok()?;
        if cosets.iter().map(|c| c.rep).collect::<Vec<_>>() != entry.coset_reps {
            return None;
        }
        let factors = entry.factors.iter().map(|c| Poly::from_u16s(c)).collect();
        let fac = Factorization::from_parts(key.0, field.clone(), factors, cosets);
        // a stale or corrupted file is recomputed rather than trusted
        fac.verify().then_some(fac)
    }

    fn store(&self, key: (usize, u32, u32), fac: &Factorization) {
        let Some(dir) = &self.dir else { return };
        let entry = CacheEntry {
            schema_version: CACHE_SCHEMA_VERSION,
            n: key.0,
            m: key.1,
            modulus: key.2,
            factors: fac.factors.iter().map(|p| p.coeffs().iter().map(|c| c.0).collect()).collect(),
            coset_reps: fac.coset_reps(),
        };
        if fs::create_dir_all(dir).is_ok() {
            if let Ok(text) = serde_json::to_string(&entry) {
                let _ = fs::write(Self::file_for(dir, key), text);
            }
        }
    }
}
