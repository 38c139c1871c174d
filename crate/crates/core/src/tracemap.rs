//! Expansion of vectors over F_{2^m} into binary vectors over a self-dual
//! basis, and the binary image φ∘Φ of codes over R.
//!
//! A vector c = (c_1, …, c_N) with c_t = Σ_i c_ti α_i expands basis-major:
//! (c_11, c_21, …, c_N1, c_12, …, c_Nm).

use thiserror::Error;

use crate::code::CyclicCodeR;
use crate::field::{DualBasis, Field, FieldElement, FieldSpec};
use crate::fqlinear::{LinearCode, Row};
use crate::gray::gray_image_code;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("basis over GF(2^{basis_m}) with modulus {basis_modulus:#x} does not match the field GF(2^{m}) with modulus {modulus:#x}")]
    BasisMismatch { basis_m: u32, basis_modulus: u32, m: u32, modulus: u32 },
    #[error("basis is not trace-orthonormal")]
    NotSelfDual,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryExpansion {
    /// Length of the expanded F_{2^m} vector.
    pub len: usize,
    pub m: u32,
    pub bits: Vec<u8>,
}

impl BinaryExpansion {
    /// Block i: coefficients of α_{i+1} at every position.
    pub fn block(&self, i: usize) -> &[u8] {
        &self.bits[i * self.len..(i + 1) * self.len]
    }
}

fn check_basis(field: &FieldSpec, basis: &DualBasis) -> Result<(), TraceError> {
    if basis.m != field.m() || basis.modulus != field.modulus() {
        return Err(TraceError::BasisMismatch {
            basis_m: basis.m,
            basis_modulus: basis.modulus,
            m: field.m(),
            modulus: field.modulus(),
        });
    }
    if !basis.is_trace_orthonormal(field) {
        return Err(TraceError::NotSelfDual);
    }
    Ok(())
}

pub fn phi_expand(field: &FieldSpec, v: &[FieldElement], basis: &DualBasis) -> Result<BinaryExpansion, TraceError> {
    check_basis(field, basis)?;
    let len = v.len();
    let m = field.m();
    let mut bits = vec![0u8; m as usize * len];
    for (t, &x) in v.iter().enumerate() {
        for (i, c) in basis.coordinates(field, x).into_iter().enumerate() {
            bits[i * len + t] = c;
        }
    }
    Ok(BinaryExpansion { len, m, bits })
}

/// Inverse of [`phi_expand`].
pub fn phi_collapse(
    field: &FieldSpec,
    e: &BinaryExpansion,
    basis: &DualBasis,
) -> Result<Vec<FieldElement>, TraceError> {
    check_basis(field, basis)?;
    Ok((0..e.len)
        .map(|t| {
            let coords: Vec<u8> = (0..e.m as usize).map(|i| e.bits[i * e.len + t]).collect();
            basis.recombine(&coords)
        })
        .collect())
}

/// σ^⊗(m): every one of the m blocks shifted cyclically by one position.
pub fn sigma_shift(e: &BinaryExpansion) -> BinaryExpansion {
    let mut bits = e.bits.clone();
    if e.len > 0 {
        for chunk in bits.chunks_mut(e.len) {
            chunk.rotate_right(1);
        }
    }
    BinaryExpansion { bits, ..*e }
}

fn to_row(e: &BinaryExpansion) -> Row {
    e.bits.iter().map(|&b| FieldElement(b as u16)).collect()
}

/// φ(C′) for a linear code C′ over F_{2^m}: the binary code spanned by the
/// expansions of x^j·g for every generator row g and 0 ≤ j < m.
pub fn expand_code(code: &LinearCode, basis: &DualBasis, binary: &Field) -> Result<LinearCode, TraceError> {
    let field = code.field();
    check_basis(field, basis)?;
    assert_eq!(binary.m(), 1, "target field must be GF(2)");
    let mut rows = Vec::with_capacity(code.dim() * field.m() as usize);
    for g in code.generator() {
        for j in 0..field.m() {
            let a = FieldElement(1 << j);
            let scaled: Vec<FieldElement> = g.iter().map(|&x| field.mul(a, x)).collect();
            rows.push(to_row(&phi_expand(field, &scaled, basis)?));
        }
    }
    Ok(LinearCode::from_rows(binary.clone(), field.m() as usize * code.n(), rows))
}

/// φ∘Φ(C): binary code of length (k+1)mn and dimension m·dim Φ(C).
pub fn binary_image_code(code: &CyclicCodeR, basis: &DualBasis) -> Result<LinearCode, TraceError> {
    let binary = FieldSpec::shared(1, None).expect("GF(2) exists");
    expand_code(&gray_image_code(code), basis, &binary)
}
