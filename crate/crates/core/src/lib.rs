//! Exact-arithmetic engine for classifying CM liftings of simple superspecial
//! abelian surfaces over prime fields.
//!
//! The crate is organized bottom-up:
//!
//! - [`arith`] — big rationals, quadratic residue symbols, polynomials over Q
//!   and over small finite fields, F_{p^2} and the Galois ring GR(p^2, 2).
//! - [`number_field`] — degree-4 number fields with exact element arithmetic,
//!   Galois groups, subfields, and orders in Hermite normal form.
//! - [`weil`] / [`lmfdb`] — the catalog of supersingular Weil numbers over
//!   prime fields and isogeny-class label parsing.
//! - [`places`] — decomposition of p through the real quadratic subfield,
//!   normalized Frobenius valuations, decomposition/inertia subgroups.
//! - [`cm_types`] — CM types, induced-place partitions, slopes, reflex fields.
//! - [`rrc`] — the residual reflex condition (slope matching + reflex residue
//!   field embedding).
//! - [`lie`] — valuation-based Lie types and the good-Lie-type test.
//! - [`dieudonne`] — an independent semilinear-algebra oracle: Dieudonné-style
//!   modules mod p (Lie dimensions) and mod p^2 (superspeciality).
//! - [`classify`] — the final per-Weil-number lifting verdicts.
//! - [`report`] — deterministic table reproduction for the CLI.

pub mod arith;
pub mod classify;
pub mod cm_types;
pub mod dieudonne;
pub mod lie;
pub mod lmfdb;
pub mod number_field;
pub mod places;
pub mod report;
pub mod rrc;
pub mod weil;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("kronecker symbol undefined for n = 0")]
    KroneckerZeroModulus,
    #[error("cannot factor the zero polynomial")]
    FactorZeroPolynomial,
    #[error("polynomial degree {0} exceeds the supported bound 4")]
    DegreeTooLarge(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("defining polynomial is not monic irreducible of degree 4: {0}")]
    BadDefiningPolynomial(String),
    #[error("element image is not a root of the defining polynomial")]
    NotARoot,
    #[error("automorphism set is not closed under composition")]
    GroupNotClosed,
    #[error("field is not Galois over Q: {0}")]
    NotGalois(String),
    #[error("generator is not an algebraic integer: minimal polynomial {0}")]
    NonIntegralGenerator(String),
    #[error("generated ring has rank {0} < 4; a full-rank order is required")]
    OrderNotFullRank(usize),
    #[error("order closure did not stabilize within {0} rounds")]
    OrderClosureDiverged(usize),
    #[error("lattice is not contained in the claimed superlattice")]
    LatticeNotContained,
    #[error("family {family} is not admissible at p = {p}")]
    InadmissibleFamily { family: String, p: u64 },
    #[error("unknown family tag `{0}`")]
    UnknownFamily(String),
    #[error("malformed isogeny-class label `{label}`: {reason}")]
    BadLabel { label: String, reason: String },
    #[error("label coefficients violate the Weil bound: {0}")]
    WeilBoundViolated(String),
    #[error("the valuation engine does not resolve {0}; see the classify module")]
    LieTypeUnavailable(String),
    #[error("Lie type has an unresolved component; resolve it with the module oracle first")]
    UnresolvedLieType,
    #[error("module contract violated: {0}")]
    ModuleContract(String),
    #[error("table `{table}` disagrees with its expected content at row {row}: {detail}")]
    TableMismatch {
        table: String,
        row: usize,
        detail: String,
    },
    #[error("unknown table id `{0}`")]
    UnknownTable(String),
    #[error("{0}")]
    Validation(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
