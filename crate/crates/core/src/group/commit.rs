//! Hash commitments: digest = H(payload ‖ 32-byte random nonce).
//!
//! Binding under collision resistance of H; hiding computationally (the
//! nonce stays secret until opening).

use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::hashes::{h_parts, Digest32};

/// The public part of a commitment.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Commitment {
    #[serde(with = "hex::serde")]
    pub digest: Digest32,
}

impl Commitment {
    /// 1 iff digest = H(payload ‖ nonce).
    pub fn open(&self, payload: &[u8], nonce: &[u8; 32]) -> bool {
        h_parts(&[payload, nonce]) == self.digest
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.digest)
    }
}

/// A commitment together with its secret nonce.
#[derive(Clone, Debug)]
pub struct CommitmentSecret {
    pub commitment: Commitment,
    pub nonce: [u8; 32],
}

pub fn commit(payload: &[u8], rng: &mut impl RngCore) -> CommitmentSecret {
    let mut nonce = [0u8; 32];
    rng.fill_bytes(&mut nonce);
    let digest = h_parts(&[payload, &nonce]);
    CommitmentSecret { commitment: Commitment { digest }, nonce }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn open_accepts_and_rejects() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let c = commit(b"payload", &mut rng);
        assert!(c.commitment.open(b"payload", &c.nonce));
        assert!(!c.commitment.open(b"payloae", &c.nonce));
        let mut wrong = c.nonce;
        wrong[0] ^= 1;
        assert!(!c.commitment.open(b"payload", &wrong));
    }

    #[test]
    fn same_payload_different_nonces_differ() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let a = commit(b"p", &mut rng);
        let b = commit(b"p", &mut rng);
        assert_ne!(a.commitment, b.commitment);
    }
}
