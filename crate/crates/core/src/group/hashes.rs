//! The two protocol hash functions H and T.
//!
//! Both map {0,1}* to 32 bytes; they are SHA-256 under distinct one-byte
//! domain-separation prefixes (0x48 = 'H', 0x54 = 'T').

use sha2::{Digest, Sha256};

pub type Digest32 = [u8; 32];

fn prefixed(prefix: u8, parts: &[&[u8]]) -> Digest32 {
    let mut hasher = Sha256::new();
    hasher.update([prefix]);
    for part in parts {
        hasher.update(part);
    }
    hasher.finalize().into()
}

/// H: the outer protocol hash (PoW predicate, commitments, addresses).
pub fn h(data: &[u8]) -> Digest32 {
    prefixed(0x48, &[data])
}

/// H over concatenated parts, avoiding an intermediate buffer.
pub fn h_parts(parts: &[&[u8]]) -> Digest32 {
    prefixed(0x48, parts)
}

/// T: the inner compression hash of the block header.
pub fn t(data: &[u8]) -> Digest32 {
    prefixed(0x54, &[data])
}

pub fn t_parts(parts: &[&[u8]]) -> Digest32 {
    prefixed(0x54, parts)
}
