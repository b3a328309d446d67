//! Workbench for constacyclic codes over small finite fields.
//!
//! An a-constacyclic code of length n over GF(q) is an ideal of
//! F_q[x]/(x^n - a). This crate builds such codes from cyclotomic coset
//! data, decides monomial equivalence between whole constacyclic families
//! (producing explicit isometry witnesses), computes minimum distances by
//! packed enumeration or the information-set lower-bound method, applies
//! the X / XX lengthening constructions, derives quantum stabilizer
//! parameters from Hermitian dual-containing GF(4) codes, and drives
//! equivalence-pruned searches against a table of best known linear codes.
//!
//! Everything is deterministic: field moduli, canonical generators and
//! fixed roots of unity are chosen by explicit scanning rules, so labels
//! like defining sets mean the same thing across runs and machines.

pub mod arith;
pub mod constacode;
pub mod constructions;
pub mod distance;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod mat;
pub mod poly;
pub mod search;

pub use error::{Error, Result};

/// Cap the global worker pool used by the distance and search engines.
/// Call once, before any parallel work; later calls fail harmlessly.
pub fn configure_threads(n: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| error::Error::precondition(format!("thread pool: {e}")))
}
