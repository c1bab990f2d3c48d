//! Verifiable random function.
//!
//! Eval hashes the input to a curve point P_X, computes Γ = vsk·P_X and
//! Y = H(Γ), and proves log_G(vk) = log_{P_X}(Γ) with a Chaum–Pedersen
//! discrete-log-equality proof. The proof nonce is derived from (vsk, X) so
//! Eval is fully deterministic.

use super::curve::{Curve, CurvePoint, Scalar};
use super::encode::hash_to_point;
use super::hashes::{h_parts, Digest32};
use super::CryptoError;
use rand::RngCore;

#[derive(Clone, Debug)]
pub struct VrfKeyPair {
    pub vsk: Scalar,
    pub vk: CurvePoint,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VrfProof {
    pub gamma: CurvePoint,
    pub c: Scalar,
    pub s: Scalar,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VrfOutput {
    pub y: Digest32,
    pub proof: VrfProof,
}

pub fn vrf_gen(curve: &Curve, rng: &mut impl RngCore) -> VrfKeyPair {
    let vsk = curve.random_scalar(rng);
    let vk = curve.base_mul(&vsk);
    VrfKeyPair { vsk, vk }
}

fn challenge(
    curve: &Curve,
    vk: &CurvePoint,
    px: &CurvePoint,
    gamma: &CurvePoint,
    a1: &CurvePoint,
    a2: &CurvePoint,
) -> Scalar {
    let digest = h_parts(&[
        b"vrf-dleq",
        &curve.compress(vk),
        &curve.compress(px),
        &curve.compress(gamma),
        &curve.compress(a1),
        &curve.compress(a2),
    ]);
    curve.scalar_from_wide_bytes(&digest)
}

pub fn vrf_eval(curve: &Curve, vsk: &Scalar, input: &[u8]) -> VrfOutput {
    assert!(!input.is_empty(), "VRF input must be non-empty");
    let px = hash_to_point(curve, input);
    let gamma = curve.scalar_mul(vsk, &px);
    let y = h_parts(&[b"vrf-out", &curve.compress(&gamma)]);
    // Deterministic nonce, RFC6979-style.
    let w = curve.scalar_from_wide_bytes(&h_parts(&[b"vrf-nonce", &vsk.to_bytes(), input]));
    let a1 = curve.base_mul(&w);
    let a2 = curve.scalar_mul(&w, &px);
    let vk = curve.base_mul(vsk);
    let c = challenge(curve, &vk, &px, &gamma, &a1, &a2);
    let s = curve.scalar_sub(&w, &curve.scalar_mul_mod(&c, vsk));
    VrfOutput { y, proof: VrfProof { gamma, c, s } }
}

/// Y for Monte-Carlo trials where the proof is not consumed.
pub fn vrf_eval_y_only(curve: &Curve, vsk: &Scalar, input: &[u8]) -> Digest32 {
    assert!(!input.is_empty(), "VRF input must be non-empty");
    let px = hash_to_point(curve, input);
    let gamma = curve.scalar_mul(vsk, &px);
    h_parts(&[b"vrf-out", &curve.compress(&gamma)])
}

pub fn vrf_verify(
    curve: &Curve,
    vk: &CurvePoint,
    input: &[u8],
    y: &Digest32,
    proof: &VrfProof,
) -> bool {
    if input.is_empty() || !curve.is_on_curve(&proof.gamma) || !curve.is_on_curve(vk) {
        return false;
    }
    let px = hash_to_point(curve, input);
    // A1 = sG + c·vk, A2 = s·P_X + c·Γ must reproduce the challenge.
    let a1 = curve.add(&curve.base_mul(&proof.s), &curve.scalar_mul(&proof.c, vk));
    let a2 = curve.add(
        &curve.scalar_mul(&proof.s, &px),
        &curve.scalar_mul(&proof.c, &proof.gamma),
    );
    if challenge(curve, vk, &px, &proof.gamma, &a1, &a2) != proof.c {
        return false;
    }
    h_parts(&[b"vrf-out", &curve.compress(&proof.gamma)]) == *y
}

impl VrfProof {
    /// Γ compressed ‖ c (32) ‖ s (32).
    pub fn to_bytes(&self, curve: &Curve) -> Vec<u8> {
        let mut out = curve.compress(&self.gamma);
        out.extend_from_slice(&self.c.to_bytes());
        out.extend_from_slice(&self.s.to_bytes());
        out
    }

    pub fn from_bytes(curve: &Curve, bytes: &[u8]) -> Result<Self, CryptoError> {
        let point_len = if bytes.first() == Some(&0x00) { 1 } else { 1 + curve.field_len };
        if bytes.len() != point_len + 64 {
            return Err(CryptoError::MalformedProof);
        }
        let gamma =
            curve.decompress(&bytes[..point_len]).map_err(|_| CryptoError::MalformedProof)?;
        let c = curve
            .scalar_from_bytes(&bytes[point_len..point_len + 32])
            .map_err(|_| CryptoError::MalformedProof)?;
        let s = curve
            .scalar_from_bytes(&bytes[point_len + 32..])
            .map_err(|_| CryptoError::MalformedProof)?;
        Ok(VrfProof { gamma, c, s })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::secp256k1;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn completeness_soundness_determinism() {
        let c = secp256k1();
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        let kp = vrf_gen(c, &mut rng);
        let out1 = vrf_eval(c, &kp.vsk, b"slot-1");
        let out2 = vrf_eval(c, &kp.vsk, b"slot-1");
        assert_eq!(out1, out2, "Eval must be deterministic");
        assert!(vrf_verify(c, &kp.vk, b"slot-1", &out1.y, &out1.proof));
        assert_eq!(out1.y, vrf_eval_y_only(c, &kp.vsk, b"slot-1"));

        // Flipping one bit of Y breaks verification.
        let mut bad_y = out1.y;
        bad_y[0] ^= 1;
        assert!(!vrf_verify(c, &kp.vk, b"slot-1", &bad_y, &out1.proof));

        // Wrong input and wrong key both fail.
        assert!(!vrf_verify(c, &kp.vk, b"slot-2", &out1.y, &out1.proof));
        let other = vrf_gen(c, &mut rng);
        assert!(!vrf_verify(c, &other.vk, b"slot-1", &out1.y, &out1.proof));
    }

    #[test]
    fn proof_encoding_round_trip_and_malformed() {
        let c = secp256k1();
        let mut rng = ChaCha20Rng::seed_from_u64(32);
        let kp = vrf_gen(c, &mut rng);
        let out = vrf_eval(c, &kp.vsk, b"x");
        let bytes = out.proof.to_bytes(c);
        let back = VrfProof::from_bytes(c, &bytes).unwrap();
        assert_eq!(back, out.proof);
        assert_eq!(VrfProof::from_bytes(c, &bytes[1..]), Err(CryptoError::MalformedProof));
        let mut corrupt = bytes.clone();
        corrupt[0] = 0x09;
        assert_eq!(VrfProof::from_bytes(c, &corrupt), Err(CryptoError::MalformedProof));
    }
}
