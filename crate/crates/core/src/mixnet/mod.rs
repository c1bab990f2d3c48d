//! The additive-homomorphism mix cascade.
//!
//! A round has two pipelines across the n nodes:
//!
//! - precomputation: every public-key operation happens here. Nodes chain
//!   ℰ_Q(R_i) = ℰ_Q(R_{i-1}) ⊕ ℰ_Q(r_i) through the cascade, then mix with
//!   π_i(prev) ⊕ ℰ_Q(s_i), and finally compute decryption shares of the
//!   accumulated ciphertext so the last node can store
//!   V = Π_n(R_n) + S_n in the clear.
//! - real time: only point additions. Users submit M_j − K_j; nodes add
//!   k_i + r_i, mix with π_i(prev) + s_i, open their committed shares, and
//!   the published output is mixed − V = Π_n(M).
//!
//! Every per-round value (r, s, π, encryption randomness, shared-key row,
//! share) is committed when produced and opened for the audit.

mod cascade;
mod round;
pub mod wire;

pub use cascade::{user_slot_key, Cascade, NodeCommitments, RoundValues};
pub use round::{
    blind_message, run_precompute, run_realtime, AuditOpenings, Fault, FaultPlan, MixMessage,
    PipelineStep, PrecomputeRecord, RoundOutcome, ShareOpening, TAMPER_STEPS,
};

use thiserror::Error;

use crate::group::CryptoError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MixError {
    #[error("round id does not advance the cascade's round counter")]
    StaleRound,
    #[error("real-time phase invoked before precomputation finished")]
    RoundNotPrecomputed,
    #[error("node {node} opened a share that fails its commitment")]
    ShareCommitmentMismatch { node: usize },
    #[error("batch has {got} messages, expected {expected}")]
    WrongBatchSize { expected: usize, got: usize },
    #[error("node {node} refused to open its share")]
    ShareWithheld { node: usize },
    #[error(transparent)]
    Crypto(#[from] CryptoError),
}
