//! Elliptic-curve group arithmetic and the cryptographic primitives built on
//! it: EC-ElGamal, ECDH, a verifiable random function, hash commitments,
//! message embedding, Schnorr signatures, and the two domain-separated hash
//! functions.
//!
//! All operations are pure functions over immutable inputs; randomness is
//! always an explicit parameter.

mod commit;
mod curve;
mod ecdh;
mod elgamal;
mod encode;
mod fp;
pub mod hashes;
mod sig;
mod vrf;

pub use commit::{commit, Commitment, CommitmentSecret};
pub use curve::{curve_by_name, secp256k1, tiny, Curve, CurvePoint, Scalar};
pub use ecdh::ecdh_shared;
pub use elgamal::{
    ciphertext_add, ciphertext_neg, decrypt, decryption_share, encrypt, encrypt_unchecked,
    keygen, ElgamalCiphertext,
};
pub use encode::{decode_message, encode_message, hash_to_point};
pub use sig::{sign, verify as verify_sig, SchnorrSig};
pub use vrf::{vrf_eval, vrf_eval_y_only, vrf_gen, vrf_verify, VrfKeyPair, VrfOutput, VrfProof};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CryptoError {
    #[error("peer public key is the identity point")]
    IdentityPeerKey,
    #[error("encryption randomness must be non-zero")]
    ZeroRandomness,
    #[error("proof bytes cannot be decoded")]
    MalformedProof,
    #[error("message too long for this curve's field")]
    MessageTooLong,
    #[error("no curve embedding found for message")]
    EncodingFailed,
    #[error("bad encoding: {0}")]
    BadEncoding(String),
    #[error("point is not on the curve")]
    NotOnCurve,
}
