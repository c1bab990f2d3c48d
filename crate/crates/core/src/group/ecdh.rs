//! ECDH shared-secret derivation: both sides compute sk_self · pk_peer.

use super::curve::{Curve, CurvePoint, Scalar};
use super::CryptoError;

pub fn ecdh_shared(
    curve: &Curve,
    sk_self: &Scalar,
    pk_peer: &CurvePoint,
) -> Result<CurvePoint, CryptoError> {
    if pk_peer.is_infinity() {
        return Err(CryptoError::IdentityPeerKey);
    }
    if !curve.is_on_curve(pk_peer) {
        return Err(CryptoError::NotOnCurve);
    }
    Ok(curve.scalar_mul(sk_self, pk_peer))
}
