//! Certificate-producing decision procedure for quantifier-free formulas over
//! partial and linear orders.
//!
//! [`decide`] either refutes a formula, returning a [`PropProof`] that the
//! small checker in [`certs`] accepts, or returns a finite model of the
//! requested theory. Certificates can also be compiled to generic proof
//! terms and replayed by the independent kernel in [`replay`].

pub mod certs;
pub mod closure;
pub mod lang;
pub mod model;
pub mod oracle;
pub mod replay;
pub mod rewrite;
pub mod sexp;

pub use certs::{refutes, CertProof, CheckError, ConvProof, PropProof};
pub use closure::{decide, decide_with, Algorithm, DecideError, DecideOptions, Verdict};
pub use lang::{Formula, Literal, OrderAtom, Relation, SymbolTable, Theory, Valuation, VarId};
pub use model::Model;
