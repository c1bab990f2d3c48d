//! EC-ElGamal: Enc(m, K, r) = (rG, m + rK), Dec((C1,C2), k) = C2 − kC1.
//!
//! Additively homomorphic: componentwise addition of ciphertexts adds the
//! plaintexts. Decryption splits into per-node shares d_i·C1 that sum to the
//! full decryption when the secret key is d = Σ d_i.

use rand::RngCore;

use super::curve::{Curve, CurvePoint, Scalar};
use super::CryptoError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElgamalCiphertext {
    pub c1: CurvePoint,
    pub c2: CurvePoint,
}

/// (secret, public) = (k, kG).
pub fn keygen(curve: &Curve, rng: &mut impl RngCore) -> (Scalar, CurvePoint) {
    let k = curve.random_scalar(rng);
    let pk = curve.base_mul(&k);
    (k, pk)
}

/// Rejects r = 0: a degenerate ciphertext (identity, m) leaks the plaintext.
pub fn encrypt(
    curve: &Curve,
    m: &CurvePoint,
    pk: &CurvePoint,
    r: &Scalar,
) -> Result<ElgamalCiphertext, CryptoError> {
    if r.is_zero() {
        return Err(CryptoError::ZeroRandomness);
    }
    Ok(encrypt_unchecked(curve, m, pk, r))
}

/// Test-mode encryption that allows degenerate randomness.
pub fn encrypt_unchecked(
    curve: &Curve,
    m: &CurvePoint,
    pk: &CurvePoint,
    r: &Scalar,
) -> ElgamalCiphertext {
    let c1 = curve.base_mul(r);
    let c2 = curve.add(m, &curve.scalar_mul(r, pk));
    ElgamalCiphertext { c1, c2 }
}

pub fn decrypt(curve: &Curve, c: &ElgamalCiphertext, sk: &Scalar) -> CurvePoint {
    curve.sub(&c.c2, &curve.scalar_mul(sk, &c.c1))
}

/// Componentwise ciphertext addition; plaintexts and randomness add.
pub fn ciphertext_add(
    curve: &Curve,
    a: &ElgamalCiphertext,
    b: &ElgamalCiphertext,
) -> ElgamalCiphertext {
    ElgamalCiphertext { c1: curve.add(&a.c1, &b.c1), c2: curve.add(&a.c2, &b.c2) }
}

pub fn ciphertext_neg(curve: &Curve, a: &ElgamalCiphertext) -> ElgamalCiphertext {
    ElgamalCiphertext { c1: curve.neg(&a.c1), c2: curve.neg(&a.c2) }
}

/// A node's decryption share d_i·C1 of a jointly-keyed ciphertext.
pub fn decryption_share(curve: &Curve, c1_sum: &CurvePoint, d_i: &Scalar) -> CurvePoint {
    curve.scalar_mul(d_i, c1_sum)
}
