//! Combinatorics of restricted p-strict partitions and the crystal B(Λ₀) of
//! type A_{2ℓ}^{(2)}, with branching-based lower bounds on composition-factor
//! counts and dimensions of spin supermodules, exact characteristic-zero spin
//! dimensions, and an exhaustive verification harness for the combinatorial
//! lemmas the bounds rest on.
//!
//! Module map:
//! - [`partition`]: characteristic parameters, partitions, contents, block
//!   contents, enumeration of `RP_p(n)`.
//! - [`crystal`]: i-signatures, crystal operators `ẽ_i` / `f̃_i`, Cartan data,
//!   crystal-graph construction and Stembridge checks.
//! - [`labels`]: the closed-form label families α, β, γ, δ and the dimension
//!   table (a_n, b_n, f, f*).
//! - [`branching`]: the guaranteed-composition-factor engine and recursive
//!   dimension lower bounds.
//! - [`charzero`]: exact characteristic-zero spin dimensions and the
//!   characteristic-zero classification scan.
//! - [`verify`]: registry of lemma-level exhaustive checks.

pub mod branching;
pub mod charzero;
pub mod crystal;
pub mod labels;
pub mod partition;
pub mod verify;

pub use partition::{BlockContent, Char, Node, Partition, Residue};
pub use verify::{Counterexample, VerifyReport};

/// Errors produced by fallible constructors and lookups.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid characteristic {0}: must be 0 or an odd prime")]
    InvalidChar(u64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("residue {residue} out of range for p = {p}")]
    ResidueOutOfRange { residue: u64, p: u64 },
    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),
    #[error("lemma `{id}` is not applicable: {reason}")]
    LemmaNotApplicable { id: String, reason: String },
}
