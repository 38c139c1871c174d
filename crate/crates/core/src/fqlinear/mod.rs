//! Classical linear codes over GF(2^m).

mod distance;
mod weights;

use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldSpec};

pub use distance::{min_distance, min_distance_on_side, Distance, DistanceBudget, DistanceMethod, Side};
pub(crate) use weights::check_budget;
pub use weights::{counts_u64, enumerate_weights, macwilliams, WeightEnumerator, DEFAULT_ENUMERATION_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("enumeration of 2^{required_log2} words exceeds the budget of {budget} words")]
    BudgetExceeded { required_log2: u64, budget: u64 },
    #[error("minimum distance of the zero code is undefined")]
    ZeroDimension,
    #[error("weight enumerator is inconsistent: {0}")]
    Inconsistent(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

impl LinearError {
    pub fn is_budget(&self) -> bool {
        matches!(self, LinearError::BudgetExceeded { .. })
    }
}

pub type Row = Vec<FieldElement>;

/// Row-reduces in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: &FieldSpec, rows: &mut Vec<Row>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        if inv != FieldElement::ONE {
            for x in rows[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let c = row[col];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x += field.mul(c, y);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn dot(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| acc + field.mul(x, y))
}

/// A linear [n, dim]_q code stored by its reduced row echelon generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    gen: Vec<Row>,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Row space of `rows`, each of length `n`.
    pub fn from_rows(field: Field, n: usize, mut rows: Vec<Row>) -> LinearCode {
        assert!(rows.iter().all(|r| r.len() == n), "row length differs from n = {n}");
        let pivots = rref(&field, &mut rows, n);
        LinearCode { field, n, gen: rows, pivots }
    }

    pub fn zero(field: Field, n: usize) -> LinearCode {
        LinearCode { field, n, gen: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, n: usize) -> LinearCode {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![FieldElement::ZERO; n];
                r[i] = FieldElement::ONE;
                r
            })
            .collect();
        LinearCode::from_rows(field, n, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.size()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &[Row] {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Null space under the Euclidean form: dimension n - dim and G·H^T = 0.
    pub fn dual_code(&self) -> LinearCode {
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut h = vec![FieldElement::ZERO; self.n];
                h[free] = FieldElement::ONE;
                for (row, &p) in self.gen.iter().zip(&self.pivots) {
                    // char 2: -G[i][free] = G[i][free]
                    h[p] = row[free];
                }
                h
            })
            .collect();
        LinearCode::from_rows(self.field.clone(), self.n, rows)
    }

    /// Parity-check matrix: the generator matrix of the dual code.
    pub fn parity_check(&self) -> Vec<Row> {
        self.dual_code().gen
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut r = v.to_vec();
        for (row, &p) in self.gen.iter().zip(&self.pivots) {
            let c = r[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(row) {
                *x += self.field.mul(c, y);
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.n == self.n && other.gen.iter().all(|r| self.contains(r))
    }

    pub fn same_space(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.gen == other.gen
    }

    /// C^⊥ ⊆ C, checked on generators of the dual.
    pub fn is_dual_containing(&self) -> bool {
        self.contains_code(&self.dual_code())
    }

    /// Invariance under the cyclic shift of all n coordinates.
    pub fn is_cyclic(&self) -> bool {
        self.gen.iter().all(|r| {
            let mut s = r.clone();
            s.rotate_right(1);
            self.contains(&s)
        })
    }

    /// Invariance under the simultaneous cyclic shift of `blocks` equal blocks.
    pub fn is_quasi_cyclic(&self, blocks: usize) -> bool {
        if blocks == 0 || !self.n.is_multiple_of(blocks) {
            return false;
        }
        let len = self.n / blocks;
        self.gen.iter().all(|r| self.contains(&block_shift(r, len)))
    }

    /// Plain-text matrix: one row per line, symbols as hex separated by spaces.
    pub fn generator_text(&self) -> String {
        matrix_text(&self.gen)
    }
}

pub fn block_shift(v: &[FieldElement], block_len: usize) -> Row {
    let mut out = v.to_vec();
    for chunk in out.chunks_mut(block_len) {
        chunk.rotate_right(1);
    }
    out
}

pub fn matrix_text(rows: &[Row]) -> String {
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(|x| format!("{:x}", x.0)).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

/// Parses the format written by [`matrix_text`].
pub fn parse_matrix_text(text: &str) -> Result<Vec<Row>, std::num::ParseIntError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|t| u16::from_str_radix(t, 16).map(FieldElement)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> Field {
        FieldSpec::shared(m, None).unwrap()
    }

    fn bits(v: &[u16]) -> Row {
        v.iter().map(|&x| FieldElement(x)).collect()
    }

    #[test]
    fn repetition_dual() {
        let f = gf(1);
        let rep = LinearCode::from_rows(f.clone(), 3, vec![bits(&[1, 1, 1])]);
        let dual = rep.dual_code();
        assert_eq!(dual.dim(), 2);
        let even = LinearCode::from_rows(f.clone(), 3, vec![bits(&[1, 1, 0]), bits(&[0, 1, 1])]);
        assert!(dual.same_space(&even));
        assert!(!even.is_dual_containing());
        assert!(!rep.is_dual_containing());
        let even4 =
            LinearCode::from_rows(f.clone(), 4, vec![bits(&[1, 1, 0, 0]), bits(&[0, 1, 1, 0]), bits(&[0, 0, 1, 1])]);
        assert!(even4.is_dual_containing());
        assert_eq!(LinearCode::full(f.clone(), 4).dual_code().dim(), 0);
        assert_eq!(LinearCode::zero(f, 4).dual_code().dim(), 4);
    }

    #[test]
    fn dual_is_orthogonal_gf4() {
        let f = gf(2);
        let c = LinearCode::from_rows(
            f.clone(),
            5,
            vec![bits(&[1, 2, 3, 0, 1]), bits(&[0, 1, 1, 2, 3]), bits(&[1, 3, 2, 2, 2])],
        );
        let d = c.dual_code();
        assert_eq!(c.dim() + d.dim(), 5);
        for g in c.generator() {
            for h in d.generator() {
                assert!(dot(&f, g, h).is_zero());
            }
        }
        assert!(d.dual_code().same_space(&c));
    }

    #[test]
    fn matrix_text_round_trip() {
        let rows = vec![bits(&[1, 0, 3]), bits(&[0, 2, 1])];
        let t = matrix_text(&rows);
        assert_eq!(t, "1 0 3\n0 2 1\n");
        assert_eq!(parse_matrix_text(&t).unwrap(), rows);
    }

    #[test]
    fn quasi_cyclic_shift() {
        let v = bits(&[1, 0, 0, 1]);
        assert_eq!(block_shift(&v, 2), bits(&[0, 1, 1, 0]));
    }
}
