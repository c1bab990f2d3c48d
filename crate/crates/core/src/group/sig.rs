//! Schnorr signatures over the curve group, used by the ledger.
//!
//! sig = (e, s) with e = H(R ‖ pk ‖ msg), s = k − e·sk and deterministic
//! nonce k = H(sk ‖ msg).

use super::curve::{Curve, CurvePoint, Scalar};
use super::hashes::h_parts;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchnorrSig {
    pub e: Scalar,
    pub s: Scalar,
}

impl SchnorrSig {
    pub fn to_bytes(&self) -> [u8; 64] {
        let mut out = [0u8; 64];
        out[..32].copy_from_slice(&self.e.to_bytes());
        out[32..].copy_from_slice(&self.s.to_bytes());
        out
    }

    pub fn from_bytes(curve: &Curve, bytes: &[u8]) -> Option<Self> {
        if bytes.len() != 64 {
            return None;
        }
        let e = curve.scalar_from_bytes(&bytes[..32]).ok()?;
        let s = curve.scalar_from_bytes(&bytes[32..]).ok()?;
        Some(SchnorrSig { e, s })
    }
}

pub fn sign(curve: &Curve, sk: &Scalar, msg: &[u8]) -> SchnorrSig {
    let k = curve.scalar_from_wide_bytes(&h_parts(&[b"sig-nonce", &sk.to_bytes(), msg]));
    let r = curve.base_mul(&k);
    let pk = curve.base_mul(sk);
    let e = curve.scalar_from_wide_bytes(&h_parts(&[
        b"sig",
        &curve.compress(&r),
        &curve.compress(&pk),
        msg,
    ]));
    let s = curve.scalar_sub(&k, &curve.scalar_mul_mod(&e, sk));
    SchnorrSig { e, s }
}

pub fn verify(curve: &Curve, pk: &CurvePoint, msg: &[u8], sig: &SchnorrSig) -> bool {
    if !curve.is_on_curve(pk) || pk.is_infinity() {
        return false;
    }
    let r = curve.add(&curve.base_mul(&sig.s), &curve.scalar_mul(&sig.e, pk));
    let e = curve.scalar_from_wide_bytes(&h_parts(&[
        b"sig",
        &curve.compress(&r),
        &curve.compress(pk),
        msg,
    ]));
    e == sig.e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::secp256k1;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn sign_verify_tamper() {
        let c = secp256k1();
        let mut rng = ChaCha20Rng::seed_from_u64(41);
        let sk = c.random_scalar(&mut rng);
        let pk = c.base_mul(&sk);
        let sig = sign(c, &sk, b"tx-bytes");
        assert!(verify(c, &pk, b"tx-bytes", &sig));
        assert!(!verify(c, &pk, b"tx-bytez", &sig));
        let other_pk = c.base_mul(&c.random_scalar(&mut rng));
        assert!(!verify(c, &other_pk, b"tx-bytes", &sig));
        let mut bad = sig.clone();
        bad.s = c.scalar_add(&bad.s, &c.scalar_from_u64(1));
        assert!(!verify(c, &pk, b"tx-bytes", &bad));
    }
}
