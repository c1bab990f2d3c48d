//! Canonical byte layout for batch snapshots and committed vectors.
//!
//! Every snapshot is round id (8 bytes BE) ‖ β (2 bytes BE) ‖ stage tag
//! (1 byte) ‖ payload. Commitments over vectors commit to exactly these
//! bytes.

use crate::group::{Curve, CurvePoint, CryptoError, ElgamalCiphertext, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[repr(u8)]
pub enum StageTag {
    PrecomputePreprocess = 0x01,
    PrecomputeMix = 0x02,
    RealtimePreprocess = 0x03,
    RealtimeMix = 0x04,
    RVector = 0x10,
    SVector = 0x11,
    Permutation = 0x12,
    ShareVector = 0x13,
    PrecomputeOutput = 0x14,
    RealtimeMixedOutput = 0x15,
    EncRandomness = 0x16,
    SharedKeyVector = 0x17,
}

fn header(round_id: u64, beta: usize, tag: StageTag) -> Vec<u8> {
    let mut out = Vec::with_capacity(11);
    out.extend_from_slice(&round_id.to_be_bytes());
    out.extend_from_slice(&(beta as u16).to_be_bytes());
    out.push(tag as u8);
    out
}

pub fn point_vec_bytes(
    curve: &Curve,
    round_id: u64,
    beta: usize,
    tag: StageTag,
    points: &[CurvePoint],
) -> Vec<u8> {
    let mut out = header(round_id, beta, tag);
    for p in points {
        out.extend_from_slice(&curve.compress(p));
    }
    out
}

pub fn cipher_vec_bytes(
    curve: &Curve,
    round_id: u64,
    beta: usize,
    tag: StageTag,
    ciphers: &[ElgamalCiphertext],
) -> Vec<u8> {
    let mut out = header(round_id, beta, tag);
    for c in ciphers {
        out.extend_from_slice(&curve.compress(&c.c1));
        out.extend_from_slice(&curve.compress(&c.c2));
    }
    out
}

pub fn perm_bytes(round_id: u64, beta: usize, perm: &[usize]) -> Vec<u8> {
    let mut out = header(round_id, beta, StageTag::Permutation);
    for &i in perm {
        out.extend_from_slice(&(i as u16).to_be_bytes());
    }
    out
}

pub fn scalar_vec_bytes(round_id: u64, beta: usize, scalars: &[Scalar]) -> Vec<u8> {
    let mut out = header(round_id, beta, StageTag::EncRandomness);
    for s in scalars {
        out.extend_from_slice(&s.to_bytes());
    }
    out
}

fn parse_header(bytes: &[u8]) -> Result<(u64, usize, u8, &[u8]), CryptoError> {
    if bytes.len() < 11 {
        return Err(CryptoError::BadEncoding("snapshot too short".into()));
    }
    let round_id = u64::from_be_bytes(bytes[..8].try_into().unwrap());
    let beta = u16::from_be_bytes(bytes[8..10].try_into().unwrap()) as usize;
    Ok((round_id, beta, bytes[10], &bytes[11..]))
}

fn take_point<'a>(curve: &Curve, bytes: &'a [u8]) -> Result<(CurvePoint, &'a [u8]), CryptoError> {
    let len = match bytes.first() {
        Some(0x00) => 1,
        Some(0x02) | Some(0x03) => 1 + curve.field_len,
        _ => return Err(CryptoError::BadEncoding("bad point tag".into())),
    };
    if bytes.len() < len {
        return Err(CryptoError::BadEncoding("truncated point".into()));
    }
    Ok((curve.decompress(&bytes[..len])?, &bytes[len..]))
}

pub fn parse_point_vec(
    curve: &Curve,
    bytes: &[u8],
) -> Result<(u64, u8, Vec<CurvePoint>), CryptoError> {
    let (round_id, beta, tag, mut rest) = parse_header(bytes)?;
    let mut points = Vec::with_capacity(beta);
    while !rest.is_empty() {
        let (p, r) = take_point(curve, rest)?;
        points.push(p);
        rest = r;
    }
    if points.len() != beta {
        return Err(CryptoError::BadEncoding("element count mismatch".into()));
    }
    Ok((round_id, tag, points))
}

pub fn parse_cipher_vec(
    curve: &Curve,
    bytes: &[u8],
) -> Result<(u64, u8, Vec<ElgamalCiphertext>), CryptoError> {
    let (round_id, beta, tag, mut rest) = parse_header(bytes)?;
    let mut ciphers = Vec::with_capacity(beta);
    while !rest.is_empty() {
        let (c1, r) = take_point(curve, rest)?;
        let (c2, r) = take_point(curve, r)?;
        ciphers.push(ElgamalCiphertext { c1, c2 });
        rest = r;
    }
    if ciphers.len() != beta {
        return Err(CryptoError::BadEncoding("element count mismatch".into()));
    }
    Ok((round_id, tag, ciphers))
}

pub fn parse_perm(bytes: &[u8]) -> Result<(u64, Vec<usize>), CryptoError> {
    let (round_id, beta, _, rest) = parse_header(bytes)?;
    if rest.len() != 2 * beta {
        return Err(CryptoError::BadEncoding("permutation length mismatch".into()));
    }
    let perm: Vec<usize> = rest
        .chunks(2)
        .map(|c| u16::from_be_bytes([c[0], c[1]]) as usize)
        .collect();
    let mut seen = vec![false; beta];
    for &i in &perm {
        if i >= beta || seen[i] {
            return Err(CryptoError::BadEncoding("not a permutation".into()));
        }
        seen[i] = true;
    }
    Ok((round_id, perm))
}

pub fn parse_scalar_vec(curve: &Curve, bytes: &[u8]) -> Result<(u64, Vec<Scalar>), CryptoError> {
    let (round_id, _, _, rest) = parse_header(bytes)?;
    if rest.len() % 32 != 0 {
        return Err(CryptoError::BadEncoding("scalar vector length".into()));
    }
    let scalars = rest
        .chunks(32)
        .map(|c| curve.scalar_from_bytes(c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((round_id, scalars))
}

/// out[i] = v[perm[i]].
pub fn apply_permutation<T: Clone>(perm: &[usize], v: &[T]) -> Vec<T> {
    debug_assert_eq!(perm.len(), v.len());
    perm.iter().map(|&j| v[j].clone()).collect()
}

/// Position of input slot `j` in the output after applying each node's
/// permutation in cascade order.
pub fn output_position(perms: &[Vec<usize>], slot: usize) -> usize {
    let beta = perms.first().map(|p| p.len()).unwrap_or(0);
    let mut marker: Vec<bool> = (0..beta).map(|i| i == slot).collect();
    for perm in perms {
        marker = apply_permutation(perm, &marker);
    }
    marker.iter().position(|&m| m).expect("permutation is a bijection")
}
