//! Cyclic codes over the chain ring F_{2^m}[u]/(u^{k+1}), their Gray and
//! trace images, and the CSS quantum code parameters derived from them.

pub mod chainring;
pub mod cli;
pub mod code;
pub mod cyclotomic;
pub mod field;
pub mod fqlinear;
pub mod gray;
pub mod poly;
pub mod quantum;
pub mod search;
pub mod tracemap;
