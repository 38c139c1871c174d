//! Exact minimum distance, with an explicit exactness flag.
//!
//! Two exact engines are combined:
//! - full enumeration of the smaller of the code and its dual (the dual side
//!   goes through the MacWilliams transform);
//! - a low-weight search over supports of increasing size, which decides
//!   whether a codeword of weight w exists by matching partial syndromes
//!   against scaled parity-check columns.
//!
//! When neither fits the budget, the largest fully excluded weight gives a
//! lower bound and the result is flagged inexact.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::weights::{check_budget, Packing};
use super::{enumerate_weights, macwilliams, LinearCode, LinearError};
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    CodeEnumeration,
    DualEnumeration,
    LowWeightSearch,
    LowerBound,
    /// Supplied by the caller, e.g. a bound derived from another code.
    Given,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Distance {
    pub value: usize,
    pub exact: bool,
    pub method: DistanceMethod,
}

impl Distance {
    pub fn exact(value: usize, method: DistanceMethod) -> Distance {
        Distance { value, exact: true, method }
    }

    pub fn lower_bound(value: usize, method: DistanceMethod) -> Distance {
        Distance { value, exact: false, method }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exact {
            write!(f, "{}", self.value)
        } else {
            write!(f, ">={}", self.value)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBudget {
    /// Largest number of words a full enumeration may visit.
    pub max_enumeration: u64,
    /// Enumerations at or below this size skip the low-weight search.
    pub quick_enumeration: u64,
    /// Step cap for the low-weight search when no enumeration fits.
    pub max_search_steps: u64,
}

impl Default for DistanceBudget {
    fn default() -> Self {
        DistanceBudget { max_enumeration: 1 << 26, quick_enumeration: 1 << 16, max_search_steps: 1 << 24 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Code,
    Dual,
}

/// d(C) from a full enumeration of one side.
pub fn min_distance_on_side(code: &LinearCode, side: Side, budget: u64) -> Result<Distance, LinearError> {
    if code.dim() == 0 {
        return Err(LinearError::ZeroDimension);
    }
    let (w, method) = match side {
        Side::Code => (enumerate_weights(code, budget)?, DistanceMethod::CodeEnumeration),
        Side::Dual => {
            let dual = code.dual_code();
            let wd = enumerate_weights(&dual, budget)?;
            (macwilliams(&wd, code.n(), dual.dim(), code.q())?, DistanceMethod::DualEnumeration)
        }
    };
    let d = w.min_nonzero_weight().expect("nonzero code has a nonzero word");
    Ok(Distance::exact(d, method))
}

pub fn min_distance(code: &LinearCode, budget: &DistanceBudget) -> Result<Distance, LinearError> {
    if code.dim() == 0 {
        return Err(LinearError::ZeroDimension);
    }
    if code.dim() == code.n() {
        return Ok(Distance::exact(1, DistanceMethod::CodeEnumeration));
    }
    let m = code.field().m() as u64;
    let side = if code.dim() <= code.n() - code.dim() { Side::Code } else { Side::Dual };
    let side_dim = code.dim().min(code.n() - code.dim()) as u64;
    let log2_cost = m * side_dim;

    if check_budget(log2_cost, budget.quick_enumeration).is_ok() {
        return min_distance_on_side(code, side, budget.quick_enumeration);
    }
    let enum_fits = check_budget(log2_cost, budget.max_enumeration).is_ok();
    let cap = if enum_fits { 1u64 << log2_cost } else { budget.max_search_steps };
    match low_weight_search(code, cap) {
        SearchOutcome::Found(w) => Ok(Distance::exact(w, DistanceMethod::LowWeightSearch)),
        SearchOutcome::AtLeast(w) => {
            if enum_fits {
                min_distance_on_side(code, side, budget.max_enumeration)
            } else {
                Ok(Distance::lower_bound(w, DistanceMethod::LowerBound))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchOutcome {
    Found(usize),
    /// No codeword of weight below this value exists.
    AtLeast(usize),
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

struct Searcher<'a> {
    n: usize,
    q1: usize,
    /// multiples[j][c] = (c+1)·h_j, packed
    multiples: &'a [Vec<Vec<u64>>],
    /// packed scaled column -> largest column index carrying it
    last_index: HashMap<&'a [u64], usize>,
}

impl Searcher<'_> {
    fn dfs(&self, depth: usize, target: usize, start: usize, acc: &mut Vec<u64>) -> bool {
        if depth == target {
            if acc.iter().all(|&x| x == 0) {
                return false;
            }
            return self.last_index.get(acc.as_slice()).is_some_and(|&j| j >= start);
        }
        // leave room for the remaining positions, including the looked-up one
        let end = self.n - (target - depth);
        for i in start..end {
            let coeffs = if depth == 0 { 1 } else { self.q1 };
            for c in 0..coeffs {
                let v = &self.multiples[i][c];
                for (a, &x) in acc.iter_mut().zip(v) {
                    *a ^= x;
                }
                let hit = self.dfs(depth + 1, target, i + 1, acc);
                for (a, &x) in acc.iter_mut().zip(v) {
                    *a ^= x;
                }
                if hit {
                    return true;
                }
            }
        }
        false
    }
}

/// Finds the least weight w with a codeword, visiting at most about `cap`
/// partial supports in total.
pub(crate) fn low_weight_search(code: &LinearCode, cap: u64) -> SearchOutcome {
    let field: &FieldSpec = code.field();
    let n = code.n();
    let h = code.parity_check();
    let r = h.len();
    if r == 0 {
        return SearchOutcome::Found(1);
    }
    let pack = Packing::new(field.m(), r);
    let q1 = field.size() as usize - 1;
    let columns: Vec<Vec<FieldElement>> = (0..n).map(|j| h.iter().map(|row| row[j]).collect()).collect();
    if columns.iter().any(|c| c.iter().all(|x| x.is_zero())) {
        return SearchOutcome::Found(1);
    }
    let multiples: Vec<Vec<Vec<u64>>> = columns
        .iter()
        .map(|col| {
            (1..=q1)
                .map(|c| {
                    let s: Vec<FieldElement> = col.iter().map(|&x| field.mul(FieldElement(c as u16), x)).collect();
                    pack.pack(&s)
                })
                .collect()
        })
        .collect();
    let mut last_index: HashMap<&[u64], usize> = HashMap::new();
    for (j, ms) in multiples.iter().enumerate() {
        for v in ms {
            last_index.insert(v.as_slice(), j);
        }
    }
    let searcher = Searcher { n, q1, multiples: &multiples, last_index };

    let mut spent = 0.0f64;
    for w in 2..=n {
        // supports of size w: choose w-1 positions, first coefficient fixed to 1
        let leaves = binomial(n, w - 1) * (q1 as f64).powi(w as i32 - 2);
        if spent + leaves > cap as f64 {
            return SearchOutcome::AtLeast(w);
        }
        spent += leaves;
        let mut acc = vec![0u64; pack.width()];
        if searcher.dfs(0, w - 1, 0, &mut acc) {
            return SearchOutcome::Found(w);
        }
    }
    SearchOutcome::AtLeast(n + 1)
}
