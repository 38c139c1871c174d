//! Exhaustive weight enumeration and the MacWilliams transform.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LinearCode, LinearError, Row};
use crate::field::{FieldElement, FieldSpec};

/// Default cap on the number of codewords visited by one enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 28;

/// Counts A_0..A_n of codewords of each Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub counts: Vec<BigUint>,
}

impl WeightEnumerator {
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Least w >= 1 with A_w > 0.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.iter().enumerate().skip(1).find(|(_, c)| !c.is_zero()).map(|(w, _)| w)
    }

    pub fn from_u64(counts: &[u64]) -> WeightEnumerator {
        WeightEnumerator { counts: counts.iter().map(|&c| BigUint::from(c)).collect() }
    }
}

/// Bit-sliced vectors over GF(2^m): `m` planes of ceil(n/64) words, plane j
/// holding bit j of every symbol. A symbol is nonzero iff any plane has its
/// bit set, so Hamming weight is popcount of the OR of the planes.
#[derive(Debug, Clone)]
pub(crate) struct Packing {
    pub planes: usize,
    pub words: usize,
}

impl Packing {
    pub fn new(m: u32, len: usize) -> Packing {
        Packing { planes: m as usize, words: len.div_ceil(64).max(1) }
    }

    pub fn width(&self) -> usize {
        self.planes * self.words
    }

    pub fn pack(&self, v: &[FieldElement]) -> Vec<u64> {
        let mut out = vec![0u64; self.width()];
        for (i, x) in v.iter().enumerate() {
            for p in 0..self.planes {
                if (x.0 >> p) & 1 == 1 {
                    out[p * self.words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        out
    }

    #[inline]
    pub fn weight(&self, v: &[u64]) -> usize {
        let mut w = 0;
        for i in 0..self.words {
            let mut acc = 0u64;
            for p in 0..self.planes {
                acc |= v[p * self.words + i];
            }
            w += acc.count_ones() as usize;
        }
        w
    }
}

/// F_2-spanning set of the code: α·g for every generator row g and every
/// polynomial-basis element α = x^j. Its 2^(m·dim) F_2-combinations are
/// exactly the codewords.
pub(crate) fn binary_generators(field: &FieldSpec, gen: &[Row], pack: &Packing) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(gen.len() * pack.planes);
    for row in gen {
        for j in 0..pack.planes {
            let a = FieldElement(1 << j);
            let scaled: Row = row.iter().map(|&x| field.mul(a, x)).collect();
            out.push(pack.pack(&scaled));
        }
    }
    out
}

pub(crate) fn check_budget(log2_words: u64, budget: u64) -> Result<(), LinearError> {
    let fits = log2_words < 64 && (1u64 << log2_words) <= budget;
    if fits {
        Ok(())
    } else {
        Err(LinearError::BudgetExceeded { required_log2: log2_words, budget })
    }
}

/// Histogram of weights over all F_2-combinations of `gens`, traversed in
/// Gray-code order so each step costs one vector XOR. The space is split by
/// its top bits into independent chunks whose histograms are summed, so the
/// result does not depend on scheduling.
pub(crate) fn gray_histogram(gens: &[Vec<u64>], pack: &Packing, n: usize) -> Vec<u64> {
    let b = gens.len();
    let split = b.min(8);
    let low = b - split;
    let width = pack.width();
    (0u64..(1u64 << split))
        .into_par_iter()
        .map(|chunk| {
            let mut hist = vec![0u64; n + 1];
            let mut cur = vec![0u64; width];
            for (i, g) in gens[low..].iter().enumerate() {
                if (chunk >> i) & 1 == 1 {
                    for (c, &x) in cur.iter_mut().zip(g) {
                        *c ^= x;
                    }
                }
            }
            hist[pack.weight(&cur)] += 1;
            for t in 1u64..(1u64 << low) {
                let g = &gens[t.trailing_zeros() as usize];
                for (c, &x) in cur.iter_mut().zip(g) {
                    *c ^= x;
                }
                hist[pack.weight(&cur)] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Exact weight distribution by visiting all q^dim codewords.
pub fn enumerate_weights(code: &LinearCode, budget: u64) -> Result<WeightEnumerator, LinearError> {
    let m = code.field().m();
    check_budget(m as u64 * code.dim() as u64, budget)?;
    let pack = Packing::new(m, code.n());
    let gens = binary_generators(code.field(), code.generator(), &pack);
    Ok(WeightEnumerator::from_u64(&gray_histogram(&gens, &pack, code.n())))
}

/// Enumerator of the dual of an [n, dim]_q code with enumerator `w`:
/// W⊥(x, y) = q^(-dim) W(x + (q-1)y, x - y), in exact integer arithmetic.
pub fn macwilliams(w: &WeightEnumerator, n: usize, dim: usize, q: u32) -> Result<WeightEnumerator, LinearError> {
    if w.counts.len() != n + 1 {
        return Err(LinearError::Inconsistent(format!("{} counts for length {n}", w.counts.len())));
    }
    let qm1 = BigInt::from(q - 1);
    // P_i(y) = (1 + (q-1)y)^(n-i) (1 - y)^i, stepped from P_0 by multiplying
    // with (1 - y) and dividing exactly by (1 + (q-1)y).
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut binom = BigInt::one();
    let mut qpow = BigInt::one();
    for j in 0..=n {
        p.push(&binom * &qpow);
        binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
        qpow *= &qm1;
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for i in 0..=n {
        if i > 0 {
            for j in (1..=n).rev() {
                let prev = p[j - 1].clone();
                p[j] -= prev;
            }
            for j in 1..=n {
                let prev = &p[j - 1] * &qm1;
                p[j] -= prev;
            }
        }
        let a = BigInt::from(w.counts[i].clone());
        if a.is_zero() {
            continue;
        }
        for (x, c) in acc.iter_mut().zip(&p) {
            *x += &a * c;
        }
    }
    let scale = BigInt::from(q).pow(dim as u32);
    let mut counts = Vec::with_capacity(n + 1);
    for (j, x) in acc.into_iter().enumerate() {
        if !(&x % &scale).is_zero() {
            return Err(LinearError::Inconsistent(format!("A'_{j} is not an integer")));
        }
        let v = x / &scale;
        if v.is_negative() {
            return Err(LinearError::Inconsistent(format!("A'_{j} is negative")));
        }
        counts.push(v.to_biguint().expect("nonnegative"));
    }
    let out = WeightEnumerator { counts };
    let expected = BigUint::from(q).pow((n - dim.min(n)) as u32);
    if out.total() != expected {
        return Err(LinearError::Inconsistent("dual enumerator total is not q^(n-dim)".into()));
    }
    Ok(out)
}

/// Convenience for tests and reports: counts as u64 when they fit.
pub fn counts_u64(w: &WeightEnumerator) -> Option<Vec<u64>> {
    w.counts.iter().map(|c| c.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldSpec};

    fn gf(m: u32) -> Field {
        FieldSpec::shared(m, None).unwrap()
    }

    fn row(v: &[u16]) -> Row {
        v.iter().map(|&x| FieldElement(x)).collect()
    }

    #[test]
    fn small_enumerators() {
        let f = gf(1);
        let zero = LinearCode::zero(f.clone(), 3);
        assert_eq!(counts_u64(&enumerate_weights(&zero, 1 << 10).unwrap()).unwrap(), vec![1, 0, 0, 0]);
        let rep = LinearCode::from_rows(f.clone(), 3, vec![row(&[1, 1, 1])]);
        let wr = enumerate_weights(&rep, 1 << 10).unwrap();
        assert_eq!(counts_u64(&wr).unwrap(), vec![1, 0, 0, 1]);
        let even = rep.dual_code();
        assert_eq!(counts_u64(&enumerate_weights(&even, 1 << 10).unwrap()).unwrap(), vec![1, 0, 3, 0]);
        assert_eq!(counts_u64(&macwilliams(&wr, 3, 1, 2).unwrap()).unwrap(), vec![1, 0, 3, 0]);
    }

    #[test]
    fn full_space_transform_and_involution() {
        let f = gf(2);
        let full = LinearCode::full(f.clone(), 5);
        let w = enumerate_weights(&full, 1 << 12).unwrap();
        let z = macwilliams(&w, 5, 5, 4).unwrap();
        assert_eq!(counts_u64(&z).unwrap(), vec![1, 0, 0, 0, 0, 0]);
        let back = macwilliams(&z, 5, 0, 4).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn budget_refusal() {
        let f = gf(2);
        let full = LinearCode::full(f, 20);
        assert_eq!(
            enumerate_weights(&full, 1 << 28),
            Err(LinearError::BudgetExceeded { required_log2: 40, budget: 1 << 28 })
        );
    }

    #[test]
    fn bad_enumerator_is_rejected() {
        let w = WeightEnumerator::from_u64(&[1, 0, 0, 0]);
        assert!(matches!(macwilliams(&w, 3, 1, 2), Err(LinearError::Inconsistent(_))));
        let w = WeightEnumerator::from_u64(&[1, 0, 0, 2]);
        assert!(matches!(macwilliams(&w, 3, 1, 2), Err(LinearError::Inconsistent(_))));
        assert!(matches!(macwilliams(&w, 4, 1, 2), Err(LinearError::Inconsistent(_))));
    }

    #[test]
    fn gf4_hexacode_like() {
        // [6,3] code over GF(4); compare with a naive enumeration
        let f = gf(2);
        let c = LinearCode::from_rows(
            f.clone(),
            6,
            vec![row(&[1, 0, 0, 1, 2, 3]), row(&[0, 1, 0, 3, 1, 2]), row(&[0, 0, 1, 2, 3, 1])],
        );
        let got = counts_u64(&enumerate_weights(&c, 1 << 12).unwrap()).unwrap();
        let mut naive = [0u64; 7];
        for a in 0..4u16 {
            for b in 0..4u16 {
                for d in 0..4u16 {
                    let mut v = [FieldElement::ZERO; 6];
                    for (coef, g) in [a, b, d].iter().zip(c.generator()) {
                        for (x, &y) in v.iter_mut().zip(g) {
                            *x += f.mul(FieldElement(*coef), y);
                        }
                    }
                    naive[v.iter().filter(|x| !x.is_zero()).count()] += 1;
                }
            }
        }
        assert_eq!(got, naive.to_vec());
    }
}
