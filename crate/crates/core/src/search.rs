//! Exhaustive search over slot assignments and the reference table comparison.
//!
//! Every assignment of the t irreducible factors to the k+2 slots is visited
//! in canonical order. The divisibility criterion filters candidates before
//! any distance work; survivors are confirmed by the matrix containment check,
//! then evaluated. Candidates are evaluated in parallel but collected by
//! index, so output does not depend on the worker count.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chainring::RingSpec;
use crate::code::{CyclicCodeR, SlotAssignment, SlotEntry};
use crate::cyclotomic::Factorization;
use crate::field::{self_dual_basis, DualBasis};
use crate::fqlinear::{min_distance, Distance, DistanceBudget};
use crate::gray::gray_image_code;
use crate::quantum::{construction_ii, css, Certificate, QuantumParams};

pub const RESULTS_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{count} assignments exceed the limit of {limit}")]
    TooManyAssignments { count: u128, limit: u64 },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl SearchError {
    pub fn is_budget(&self) -> bool {
        matches!(self, SearchError::TooManyAssignments { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Budget for d_G of each candidate's Gray image.
    pub distance: DistanceBudget,
    /// Budget for the binary image distance; `None` skips the binary code.
    pub binary_distance: Option<DistanceBudget>,
    pub max_assignments: u64,
    /// 0 uses the default rayon pool.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            distance: DistanceBudget { max_search_steps: 1 << 22, ..DistanceBudget::default() },
            binary_distance: Some(DistanceBudget {
                max_enumeration: 1 << 20,
                quick_enumeration: 1 << 16,
                max_search_steps: 1 << 20,
            }),
            max_assignments: 1 << 20,
            workers: 0,
        }
    }
}

/// Number of assignments, (k+2)^t.
pub fn assignment_count(t: usize, k: usize) -> u128 {
    (k as u128 + 2).checked_pow(t as u32).unwrap_or(u128::MAX)
}

/// All assignments in canonical order.
pub fn enumerate_assignments(
    fac: Arc<Factorization>,
    k: usize,
    limit: u64,
) -> Result<impl Iterator<Item = SlotAssignment>, SearchError> {
    let count = assignment_count(fac.len(), k);
    if count > limit as u128 {
        return Err(SearchError::TooManyAssignments { count, limit });
    }
    Ok((0..count as u64).map(move |i| SlotAssignment::from_index(fac.clone(), k, i)))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Timing {
    pub filter: Duration,
    pub gray: Duration,
    pub binary: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub index: u64,
    pub slots: Vec<SlotEntry>,
    pub type_vector: Vec<usize>,
    pub gray_dim: usize,
    pub d_g: Distance,
    pub params_i: QuantumParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params_ii: Option<QuantumParams>,
    /// 0 for the Pareto front of (quantum dimension, distance), 1 for the
    /// front of the rest, and so on.
    pub pareto_rank: usize,
    #[serde(skip)]
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    pub index: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub m: u32,
    pub k: usize,
    pub modulus: u32,
    pub assignments: u64,
    /// Assignments passing the divisibility criterion.
    pub passed_filter: u64,
    /// Passed the criterion but failed the matrix containment check.
    pub rejected_by_matrix: Vec<u64>,
    pub refusals: Vec<Refusal>,
    pub results: Vec<SearchResult>,
}

enum Outcome {
    Filtered,
    Rejected(u64),
    Refused(Refusal),
    Found(Box<SearchResult>),
}

fn evaluate(code: &CyclicCodeR, basis: &DualBasis, cfg: &SearchConfig) -> Outcome {
    let index = code.assignment().index();
    let t0 = Instant::now();
    let cert = code.divisibility_certificate();
    if !cert.holds {
        return Outcome::Filtered;
    }
    if !code.contains_dual() {
        return Outcome::Rejected(index);
    }
    let filter = t0.elapsed();
    let t1 = Instant::now();
    let image = gray_image_code(code);
    let d_g = match min_distance(&image, &cfg.distance) {
        Ok(d) => d,
        Err(e) => return Outcome::Refused(Refusal { index, reason: e.to_string() }),
    };
    let params_i = match css(&image, d_g, &Certificate::Divisibility(cert)) {
        Ok(p) => p,
        Err(e) => return Outcome::Refused(Refusal { index, reason: e.to_string() }),
    };
    let gray = t1.elapsed();
    let t2 = Instant::now();
    let params_ii = match &cfg.binary_distance {
        None => None,
        Some(b) => match construction_ii(code, basis, b, Some(d_g)) {
            Ok((p, _)) => Some(p),
            Err(e) => return Outcome::Refused(Refusal { index, reason: e.to_string() }),
        },
    };
    let binary = t2.elapsed();
    Outcome::Found(Box::new(SearchResult {
        index,
        slots: code.assignment().entries(),
        type_vector: code.type_vector(),
        gray_dim: image.dim(),
        d_g,
        params_i,
        params_ii,
        pareto_rank: 0,
        timing: Timing { filter, gray, binary },
    }))
}

/// Pareto layers of (l, d) over the results, then the final order:
/// layer, l desc, d desc, exact first, index.
fn rank(results: &mut [SearchResult]) {
    let points: BTreeSet<(i64, usize)> = results.iter().map(|r| (r.params_i.l, r.params_i.d)).collect();
    let mut layer_of = std::collections::BTreeMap::new();
    let mut remaining: Vec<(i64, usize)> = points.into_iter().collect();
    let mut layer = 0;
    while !remaining.is_empty() {
        let dominated = |p: &(i64, usize), all: &[(i64, usize)]| all.iter().any(|q| q != p && q.0 >= p.0 && q.1 >= p.1);
        let (front, rest): (Vec<_>, Vec<_>) = remaining.iter().partition(|p| !dominated(p, &remaining));
        for p in front {
            layer_of.insert(p, layer);
        }
        remaining = rest;
        layer += 1;
    }
    for r in results.iter_mut() {
        r.pareto_rank = layer_of[&(r.params_i.l, r.params_i.d)];
    }
    results.sort_by(|a, b| {
        a.pareto_rank
            .cmp(&b.pareto_rank)
            .then(b.params_i.l.cmp(&a.params_i.l))
            .then(b.params_i.d.cmp(&a.params_i.d))
            .then(b.params_i.d_exact.cmp(&a.params_i.d_exact))
            .then(a.index.cmp(&b.index))
    });
}

pub fn search_best(spec: &RingSpec, fac: Arc<Factorization>, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let k = spec.k;
    let count = assignment_count(fac.len(), k);
    if count > cfg.max_assignments as u128 {
        return Err(SearchError::TooManyAssignments { count, limit: cfg.max_assignments });
    }
    let total = count as u64;
    let basis = self_dual_basis(&spec.field);
    let run = || -> Vec<Outcome> {
        (0..total)
            .into_par_iter()
            .map(|i| {
                let a = SlotAssignment::from_index(fac.clone(), k, i);
                let code = CyclicCodeR::new(spec.clone(), a).expect("assignment matches ring");
                evaluate(&code, &basis, cfg)
            })
            .collect()
    };
    let outcomes = if cfg.workers == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?
            .install(run)
    };
    let mut report = SearchReport {
        n: fac.n,
        m: spec.m(),
        k,
        modulus: spec.field.modulus(),
        assignments: total,
        passed_filter: 0,
        rejected_by_matrix: Vec::new(),
        refusals: Vec::new(),
        results: Vec::new(),
    };
    for o in outcomes {
        match o {
            Outcome::Filtered => {}
            Outcome::Rejected(i) => {
                report.passed_filter += 1;
                report.rejected_by_matrix.push(i);
            }
            Outcome::Refused(r) => {
                report.passed_filter += 1;
                report.refusals.push(r);
            }
            Outcome::Found(r) => {
                report.passed_filter += 1;
                report.results.push(*r);
            }
        }
    }
    rank(&mut report.results);
    Ok(report)
}

/// One JSON object per result, in ranked order.
pub fn results_jsonl(report: &SearchReport) -> String {
    let mut out = String::new();
    for r in &report.results {
        out.push_str(&serde_json::to_string(r).expect("results serialize"));
        out.push('\n');
    }
    out
}

pub fn results_path(dir: &Path, report: &SearchReport) -> PathBuf {
    dir.join(format!("search_n{}_m{}_k{}.jsonl", report.n, report.m, report.k))
}

pub fn write_results(dir: &Path, report: &SearchReport) -> Result<PathBuf, SearchError> {
    let path = results_path(dir, report);
    let io = |source| SearchError::Io { path: path.clone(), source };
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut f = std::fs::File::create(&path).map_err(io)?;
    f.write_all(results_jsonl(report).as_bytes()).map_err(io)?;
    Ok(path)
}

/// Gray dimensions Σ_j (k+2-j)·deg f_j attainable by some assignment.
pub fn reachable_gray_dimensions(fac: &Factorization, k: usize) -> BTreeSet<usize> {
    let mut dims = BTreeSet::from([0usize]);
    for d in fac.degrees() {
        let mut next = BTreeSet::new();
        for &x in &dims {
            for w in 0..=k + 1 {
                next.insert(x + w * d);
            }
        }
        dims = next;
    }
    dims
}

/// A published row: quantum codes from a length-n code over F_4[u]/(u^2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub n: usize,
    pub d_g: usize,
    /// The type column as printed, three entries.
    pub type_entries: [usize; 3],
    /// [[N, L, D]]_4.
    pub quaternary: (usize, i64, usize),
    /// [[N, L, ≥D]]_2.
    pub binary: (usize, i64, usize),
}

pub const REFERENCE_ROWS: [ReferenceRow; 5] = [
    ReferenceRow { n: 7, d_g: 2, type_entries: [6, 0, 1], quaternary: (14, 12, 2), binary: (28, 24, 2) },
    ReferenceRow { n: 17, d_g: 4, type_entries: [13, 0, 4], quaternary: (34, 26, 4), binary: (68, 52, 4) },
    ReferenceRow { n: 31, d_g: 4, type_entries: [25, 0, 6], quaternary: (62, 50, 4), binary: (124, 100, 4) },
    ReferenceRow { n: 35, d_g: 4, type_entries: [30, 0, 5], quaternary: (70, 60, 4), binary: (140, 120, 4) },
    ReferenceRow { n: 43, d_g: 5, type_entries: [36, 0, 0], quaternary: (86, 78, 5), binary: (172, 156, 5) },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    /// A search result has exactly the listed parameters with exact distance.
    Matched,
    /// No exact match, but some result dominates the listed parameters.
    Improved,
    Irreproducible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionArgument {
    pub required_gray_dim: usize,
    pub reachable: Vec<usize>,
    pub attainable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparedRow {
    pub reference: ReferenceRow,
    pub status: RowStatus,
    pub matched: Option<SearchResult>,
    /// Binary code of the matched result, evaluated with the exact budget.
    pub binary: Option<QuantumParams>,
    pub binary_ok: bool,
    /// The type column read as (l_0, l_1) = (first, last).
    pub type_reading: (usize, usize),
    /// Quantum dimension implied by that reading, 2(2 l_0 + l_1) - 2n.
    pub type_reading_l: i64,
    /// Whether the matched (or closest) result has the type given by that reading.
    pub type_reading_agrees: bool,
    pub dimension_argument: DimensionArgument,
    /// Without an exact match: the result with the listed quantum dimension and
    /// the largest Gray distance, lowest index first.
    pub closest: Option<SearchResult>,
    /// Every result with the listed quantum dimension has l_0 + ⋯ + l_k = n, so
    /// contains u^k R^n and has d_G ≤ 2.
    pub full_torsion_forced: bool,
    /// Pareto front with d ≥ 2.
    pub best: Vec<SearchResult>,
    pub assignments: u64,
    pub passed_filter: u64,
    pub elapsed_ms: u128,
}

/// Exact budget for the binary image of a matched row.
pub fn exact_binary_budget() -> DistanceBudget {
    DistanceBudget { max_enumeration: 1 << 26, quick_enumeration: 1 << 26, max_search_steps: 1 << 24 }
}

pub fn compare_row(
    row: &ReferenceRow,
    spec: &RingSpec,
    fac: Arc<Factorization>,
    cfg: &SearchConfig,
) -> Result<(ComparedRow, SearchReport), SearchError> {
    let start = Instant::now();
    let report = search_best(spec, fac.clone(), cfg)?;
    let (qn, ql, qd) = row.quaternary;
    let matched = report
        .results
        .iter()
        .filter(|r| r.params_i.n == qn && r.params_i.l == ql && r.params_i.d == qd && r.params_i.d_exact)
        .min_by_key(|r| r.index)
        .cloned();
    let improved = report
        .results
        .iter()
        .any(|r| r.params_i.l >= ql && r.params_i.d >= qd && (r.params_i.l > ql || r.params_i.d > qd));
    let status = match (&matched, improved) {
        (Some(_), _) => RowStatus::Matched,
        (None, true) => RowStatus::Improved,
        (None, false) => RowStatus::Irreproducible,
    };
    let at_dim: Vec<&SearchResult> = report.results.iter().filter(|r| r.params_i.l == ql).collect();
    let closest = if matched.is_some() {
        None
    } else {
        at_dim.iter().max_by(|a, b| a.params_i.d.cmp(&b.params_i.d).then(b.index.cmp(&a.index))).map(|r| (*r).clone())
    };
    let full_torsion_forced = !at_dim.is_empty() && at_dim.iter().all(|r| r.type_vector.iter().sum::<usize>() == row.n);
    let basis = self_dual_basis(&spec.field);
    let mut binary = None;
    let mut binary_ok = false;
    if let Some(m) = matched.as_ref().or(closest.as_ref()) {
        let a = SlotAssignment::from_index(fac.clone(), spec.k, m.index);
        let code = CyclicCodeR::new(spec.clone(), a).expect("assignment matches ring");
        if let Ok((p, _)) = construction_ii(&code, &basis, &exact_binary_budget(), Some(m.d_g)) {
            let (bn, bl, bd) = row.binary;
            binary_ok = p.n == bn && p.l == bl && p.d_exact && p.d >= bd;
            binary = Some(p);
        }
    }
    let type_reading = (row.type_entries[0], row.type_entries[2]);
    let implied_dim = 2 * type_reading.0 + type_reading.1;
    let type_reading_l = 2 * implied_dim as i64 - 2 * row.n as i64;
    let type_reading_agrees =
        matched.as_ref().or(closest.as_ref()).is_some_and(|m| m.type_vector == vec![type_reading.0, type_reading.1]);
    let required_gray_dim = ((ql + qn as i64) / 2) as usize;
    let reachable: Vec<usize> = reachable_gray_dimensions(&fac, spec.k).into_iter().collect();
    let dimension_argument =
        DimensionArgument { required_gray_dim, attainable: reachable.contains(&required_gray_dim), reachable };
    let best = report.results.iter().filter(|r| r.pareto_rank == 0 && r.params_i.d >= 2).cloned().collect::<Vec<_>>();
    let best = if best.is_empty() {
        // front without d ≥ 2 members: take the best codes with d ≥ 2 overall
        let top = report.results.iter().filter(|r| r.params_i.d >= 2).map(|r| r.pareto_rank).min();
        report.results.iter().filter(|r| Some(r.pareto_rank) == top && r.params_i.d >= 2).cloned().collect()
    } else {
        best
    };
    let compared = ComparedRow {
        reference: *row,
        status,
        matched,
        binary,
        binary_ok,
        type_reading,
        type_reading_l,
        type_reading_agrees,
        dimension_argument,
        closest,
        full_torsion_forced,
        best,
        assignments: report.assignments,
        passed_filter: report.passed_filter,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok((compared, report))
}

/// All five rows over F_4[u]/(u^2).
pub fn reproduce_reference_table(
    cache: &crate::cyclotomic::FactorCache,
    cfg: &SearchConfig,
) -> Result<Vec<(ComparedRow, SearchReport)>, SearchError> {
    let field = crate::field::FieldSpec::shared(2, None).expect("GF(4) exists");
    let spec = RingSpec::new(field.clone(), 1);
    REFERENCE_ROWS
        .iter()
        .map(|row| {
            let fac = cache.get(row.n, &field).expect("odd length factors");
            compare_row(row, &spec, fac, cfg)
        })
        .collect()
}
