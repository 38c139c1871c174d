//! CSS parameters of quantum codes built from dual-containing codes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CyclicCodeR, DivisibilityCertificate};
use crate::field::DualBasis;
use crate::fqlinear::{
    dot, matrix_text, min_distance, Distance, DistanceBudget, DistanceMethod, LinearCode, LinearError, Row,
};
use crate::gray::gray_image_code;
use crate::poly::Poly;
use crate::tracemap::{binary_image_code, TraceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error(
        "code is not dual-containing: f_0·r_2⋯r_(k+1) = {divisor} leaves remainder {remainder} on f_1* = {target}"
    )]
    NotDualContaining { divisor: Poly, target: Poly, remainder: Poly },
    #[error("classical code does not contain its dual")]
    MatrixCheckFailed,
    #[error("stabilizers do not commute: H·H^T has {0} nonzero entries")]
    Commutation(usize),
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

impl QuantumError {
    pub fn is_budget(&self) -> bool {
        matches!(self, QuantumError::Linear(e) if e.is_budget())
    }
}

/// Evidence that a classical code contains its dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The polynomial divisibility criterion on the ring code.
    Divisibility(DivisibilityCertificate),
    /// Direct check that the dual's generators lie in the row space.
    Matrix,
}

/// [[n, l, d]]_q with l = 2t - n for a source [n, t] code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumParams {
    pub q: u32,
    pub n: usize,
    pub l: i64,
    pub d: usize,
    pub d_exact: bool,
    pub d_method: DistanceMethod,
    /// n - 2d + 2 - l.
    pub singleton_slack: i64,
    pub mds: bool,
    pub classical_dim: usize,
    /// Whether G_dual ⊆ rowspace(G) holds for the classical code, i.e.
    /// whether the CSS stabilizers commute.
    pub verified_by_matrix: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anomalies: Vec<String>,
}

impl QuantumParams {
    pub fn distance(&self) -> Distance {
        Distance { value: self.d, exact: self.d_exact, method: self.d_method }
    }

    /// `[[n,l,d]]_q`, with `>=d` for a lower bound.
    pub fn label(&self) -> String {
        let d = if self.d_exact { self.d.to_string() } else { format!(">={}", self.d) };
        format!("[[{},{},{}]]_{}", self.n, self.l, d, self.q)
    }
}

pub fn singleton_slack(n: usize, l: i64, d: usize) -> i64 {
    n as i64 - 2 * d as i64 + 2 - l
}

/// Parameters of the CSS code of a dual-containing [n, t, d]_q code.
pub fn css(c: &LinearCode, d: Distance, cert: &Certificate) -> Result<QuantumParams, QuantumError> {
    let verified = c.is_dual_containing();
    match cert {
        Certificate::Divisibility(dc) if !dc.holds => return Err(not_containing(dc.clone())),
        Certificate::Matrix if !verified => return Err(QuantumError::MatrixCheckFailed),
        _ => {}
    }
    let n = c.n();
    let l = 2 * c.dim() as i64 - n as i64;
    let slack = singleton_slack(n, l, d.value);
    let mut anomalies = Vec::new();
    if !verified {
        anomalies.push("classical code does not contain its dual: the CSS stabilizers do not commute".to_string());
    }
    if slack < 0 {
        anomalies.push(format!("quantum Singleton bound violated by {}", -slack));
    }
    Ok(QuantumParams {
        q: c.q(),
        n,
        l,
        d: d.value,
        d_exact: d.exact,
        d_method: d.method,
        singleton_slack: slack,
        mds: slack == 0,
        classical_dim: c.dim(),
        verified_by_matrix: verified,
        anomalies,
    })
}

fn not_containing(cert: DivisibilityCertificate) -> QuantumError {
    QuantumError::NotDualContaining { divisor: cert.divisor, target: cert.target, remainder: cert.remainder }
}

/// Quantum code over F_{2^m} from the Gray image Φ(C).
pub fn construction_i(
    code: &CyclicCodeR,
    budget: &DistanceBudget,
) -> Result<(QuantumParams, LinearCode), QuantumError> {
    let cert = code.divisibility_certificate();
    if !cert.holds {
        return Err(not_containing(cert));
    }
    let image = gray_image_code(code);
    let d = min_distance(&image, budget)?;
    Ok((css(&image, d, &Certificate::Divisibility(cert))?, image))
}

/// Binary quantum code from φ∘Φ(C). When the binary distance is not
/// computed exactly, the bound d′ ≥ d_G is applied using `gray_distance`.
pub fn construction_ii(
    code: &CyclicCodeR,
    basis: &DualBasis,
    budget: &DistanceBudget,
    gray_distance: Option<Distance>,
) -> Result<(QuantumParams, LinearCode), QuantumError> {
    let cert = code.divisibility_certificate();
    if !cert.holds {
        return Err(not_containing(cert));
    }
    let image = binary_image_code(code, basis)?;
    let mut d = min_distance(&image, budget)?;
    if !d.exact {
        if let Some(g) = gray_distance {
            if g.value > d.value {
                d = Distance::lower_bound(g.value, DistanceMethod::Given);
            }
        }
    }
    Ok((css(&image, d, &Certificate::Divisibility(cert))?, image))
}

/// Check matrices H_X = H_Z = H of the CSS code of a dual-containing code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilizers {
    pub n: usize,
    pub h: Vec<Row>,
}

impl Stabilizers {
    /// Rows (H | 0) followed by (0 | H), in the plain matrix format.
    pub fn block_text(&self) -> String {
        let zero = vec![crate::field::FieldElement::ZERO; self.n];
        let mut rows: Vec<Row> = Vec::with_capacity(2 * self.h.len());
        for r in &self.h {
            rows.push(r.iter().chain(&zero).copied().collect());
        }
        for r in &self.h {
            rows.push(zero.iter().chain(r).copied().collect());
        }
        matrix_text(&rows)
    }
}

pub fn stabilizer_matrices(c: &LinearCode) -> Result<Stabilizers, QuantumError> {
    let h = c.parity_check();
    let bad =
        h.iter().flat_map(|a| h.iter().map(move |b| (a, b))).filter(|(a, b)| !dot(c.field(), a, b).is_zero()).count();
    if bad > 0 {
        return Err(QuantumError::Commutation(bad));
    }
    Ok(Stabilizers { n: c.n(), h })
}
