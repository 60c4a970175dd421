//! Finite universal algebra workbench: congruence lattices, subuniverses,
//! unary polynomials, and deciders for Rees-type congruence properties.
//!
//! Elements of an algebra of size `n` are `0..n`. Operation tables are
//! row-major with the leftmost argument varying slowest.

pub mod algebra;
pub mod congruence;
pub mod element_set;
pub mod error;
pub mod io;
pub mod limits;
pub mod partition;
pub mod polynomial;
pub mod properties;
pub mod quotient;
pub mod search;
pub mod structures;
pub mod subuniverse;
pub mod term;
mod union_find;

pub use algebra::{validate, AlgebraDraft, Element, FiniteAlgebra, OpDraft, OpSymbol, Signature, Violation};
pub use congruence::{
    all_congruences, all_congruences_with, congruence_generated_by, is_congruence, is_congruence_uniform,
    is_n_permutable, principal_congruence, CongruenceLattice, PrincipalTable,
};
pub use element_set::ElementSet;
pub use error::{Error, Result};
pub use limits::Limits;
pub use partition::Partition;
pub use polynomial::{unary_polynomials, UnaryFunction};
pub use properties::{
    has_one_block_property, is_quasi_rees, is_rees_algebra, is_rees_block, Analyzer, PropertyVerdict,
    Witness,
};
pub use quotient::{quotient_algebra, rees_correspondence_check, CorrespondenceCheck, QuotientAlgebra};
pub use subuniverse::{all_subuniverses, generated_subuniverse, is_subuniverse, subalgebra};
pub use term::{eval_term, satisfies_identity, satisfies_identity_with, IdentityCheck, Term};
