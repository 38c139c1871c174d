//! The Gray map Φ: R → F_{2^m}^{k+1} and its block-ordered extension to R^n.
//!
//! Components: Φ_0 = β_k and Φ_i = β_{k-⌊i/2⌋} + β_{⌊(i-1)/2⌋} for 1 ≤ i ≤ k,
//! i.e. (β_k, β_k+β_0, β_{k-1}+β_0, β_{k-1}+β_1, …). Vectors are mapped
//! component-major: Φ_0 of every symbol, then Φ_1 of every symbol, and so on.

use crate::chainring::{RingElement, RingError, RingVector};
use crate::code::CyclicCodeR;
use crate::field::FieldElement;
use crate::fqlinear::{LinearCode, Row};

/// β-indices summed into component `i` of Φ for nilpotency index `k`.
pub fn component_sources(k: usize, i: usize) -> (usize, Option<usize>) {
    if i == 0 {
        (k, None)
    } else {
        (k - i / 2, Some((i - 1) / 2))
    }
}

/// The (k+1)×(k+1) 0/1 matrix M with Φ(c) = M·(β_0, …, β_k)^T.
pub fn gray_matrix(k: usize) -> Vec<Vec<u8>> {
    (0..=k)
        .map(|i| {
            let mut row = vec![0u8; k + 1];
            let (a, b) = component_sources(k, i);
            row[a] ^= 1;
            if let Some(b) = b {
                row[b] ^= 1;
            }
            row
        })
        .collect()
}

/// Rank over GF(2) of a 0/1 matrix.
pub fn binary_rank(rows: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = rows.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn gray_symbol(a: &RingElement) -> Vec<FieldElement> {
    let betas = a.betas();
    let k = betas.len() - 1;
    (0..=k)
        .map(|i| {
            let (x, y) = component_sources(k, i);
            let mut c = betas[x];
            if let Some(y) = y {
                c += betas[y];
            }
            c
        })
        .collect()
}

/// Φ applied to a ring vector given in block coordinates (β-major).
/// Output is in Gray block order (component-major).
pub fn gray_blocks(levels: usize, blocks: &[FieldElement]) -> Vec<FieldElement> {
    let k = levels - 1;
    let n = blocks.len() / levels;
    let mut out = vec![FieldElement::ZERO; blocks.len()];
    for i in 0..levels {
        let (x, y) = component_sources(k, i);
        let dst = &mut out[i * n..(i + 1) * n];
        dst.copy_from_slice(&blocks[x * n..(x + 1) * n]);
        if let Some(y) = y {
            for (d, &s) in dst.iter_mut().zip(&blocks[y * n..(y + 1) * n]) {
                *d += s;
            }
        }
    }
    out
}

pub fn gray_vector(v: &RingVector) -> Vec<FieldElement> {
    match v.entries.first() {
        None => Vec::new(),
        Some(e) => gray_blocks(e.betas().len(), &v.to_blocks()),
    }
}

pub fn hamming_weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

pub fn gray_weight(v: &RingVector) -> usize {
    v.entries.iter().map(|e| hamming_weight(&gray_symbol(e))).sum()
}

pub fn gray_distance(v: &RingVector, w: &RingVector) -> Result<usize, RingError> {
    if v.len() != w.len() {
        return Err(RingError::LengthMismatch(v.len(), w.len()));
    }
    Ok(v.entries
        .iter()
        .zip(&w.entries)
        .map(|(a, b)| {
            let diff: Vec<FieldElement> = a.betas().iter().zip(b.betas()).map(|(&x, &y)| x + y).collect();
            hamming_weight(&gray_symbol(&RingElement::from_betas(diff)))
        })
        .sum())
}

/// Φ(C) as a linear code over F_{2^m} of length (k+1)n.
pub fn gray_image_code(code: &CyclicCodeR) -> LinearCode {
    let levels = code.spec().levels();
    let rows: Vec<Row> = code.basis_rows().iter().map(|r| gray_blocks(levels, r)).collect();
    LinearCode::from_rows(code.spec().field.clone(), levels * code.n(), rows)
}
