//! Reversible message embedding and hash-to-curve.
//!
//! Messages embed into the x-coordinate by try-and-increment over an 8-bit
//! counter. Layout of the big-endian x bytes: [len][message][zero padding]
//! [counter], so a message can be at most field_len − 2 bytes.

use num_bigint::BigUint;

use super::curve::{Curve, CurvePoint};
use super::hashes::h_parts;
use super::CryptoError;

pub fn encode_message(curve: &Curve, msg: &[u8]) -> Result<CurvePoint, CryptoError> {
    if curve.field_len < 2 || msg.len() > curve.field_len - 2 {
        return Err(CryptoError::MessageTooLong);
    }
    let mut buf = vec![0u8; curve.field_len];
    buf[0] = msg.len() as u8;
    buf[1..1 + msg.len()].copy_from_slice(msg);
    for counter in 0..=255u8 {
        *buf.last_mut().unwrap() = counter;
        let x = BigUint::from_bytes_be(&buf);
        if x >= curve.p {
            continue;
        }
        if let Some((y_even, _)) = curve.solve_y(&x) {
            return Ok(CurvePoint::affine(x, y_even));
        }
    }
    Err(CryptoError::EncodingFailed)
}

pub fn decode_message(curve: &Curve, point: &CurvePoint) -> Result<Vec<u8>, CryptoError> {
    let x = match point {
        CurvePoint::Infinity => {
            return Err(CryptoError::BadEncoding("identity carries no message".into()))
        }
        CurvePoint::Affine { x, .. } => x,
    };
    let raw = x.to_bytes_be();
    if raw.len() > curve.field_len {
        return Err(CryptoError::BadEncoding("x wider than field".into()));
    }
    let mut buf = vec![0u8; curve.field_len - raw.len()];
    buf.extend_from_slice(&raw);
    let len = buf[0] as usize;
    if curve.field_len < 2 || len > curve.field_len - 2 {
        return Err(CryptoError::BadEncoding("bad length byte".into()));
    }
    // Padding between message and counter must be zero.
    if buf[1 + len..curve.field_len - 1].iter().any(|&b| b != 0) {
        return Err(CryptoError::BadEncoding("bad padding".into()));
    }
    Ok(buf[1..1 + len].to_vec())
}

/// Deterministic hash-to-curve by try-and-increment over H(data ‖ ctr).
pub fn hash_to_point(curve: &Curve, data: &[u8]) -> CurvePoint {
    for counter in 0u32..4096 {
        let digest = h_parts(&[b"h2c", data, &counter.to_be_bytes()]);
        let x = BigUint::from_bytes_be(&digest) % &curve.p;
        if let Some((y_even, y_odd)) = curve.solve_y(&x) {
            // Pick the root by a digest bit so the map is not parity-biased.
            let y = if digest[31] & 1 == 1 { y_odd } else { y_even };
            let point = CurvePoint::affine(x, y);
            if !point.is_infinity() {
                return point;
            }
        }
    }
    unreachable!("no curve point found in 4096 attempts");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{secp256k1, tiny};

    #[test]
    fn round_trip_hello() {
        let c = secp256k1();
        let p = encode_message(c, b"hello").unwrap();
        assert!(c.is_on_curve(&p));
        assert_eq!(decode_message(c, &p).unwrap(), b"hello");
    }

    #[test]
    fn max_length_and_overflow() {
        let c = secp256k1();
        let max = vec![0xabu8; c.field_len - 2];
        let p = encode_message(c, &max).unwrap();
        assert_eq!(decode_message(c, &p).unwrap(), max);
        let too_long = vec![0u8; c.field_len - 1];
        assert_eq!(encode_message(c, &too_long), Err(CryptoError::MessageTooLong));
    }

    #[test]
    fn tiny_curve_field_cannot_hold_messages() {
        // field_len = 1 leaves no room for length + counter bytes.
        assert_eq!(encode_message(tiny(), b"a"), Err(CryptoError::MessageTooLong));
        assert_eq!(encode_message(tiny(), b""), Err(CryptoError::MessageTooLong));
    }

    #[test]
    fn every_single_byte_message_round_trips() {
        let c = secp256k1();
        for b in 0..=255u8 {
            let p = encode_message(c, &[b]).unwrap();
            assert_eq!(decode_message(c, &p).unwrap(), vec![b]);
        }
    }

    #[test]
    fn hash_to_point_deterministic_and_on_curve() {
        for c in [secp256k1(), tiny()] {
            let p1 = hash_to_point(c, b"input");
            let p2 = hash_to_point(c, b"input");
            assert_eq!(p1, p2);
            assert!(c.is_on_curve(&p1));
            assert_ne!(hash_to_point(c, b"other"), p1);
        }
    }
}
