//! Short-Weierstrass curve arithmetic over a prime field.
//!
//! Two built-in curves: secp256k1 for production parameters and the tiny
//! E_17(2,2) with a 19-point group, small enough that tests can brute-force
//! discrete logs and enumerate the whole group.

use std::sync::LazyLock;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;

use super::fp::{limbs_is_zero, Limbs, Monty};
use super::CryptoError;
use crate::counters;

/// A point on a curve, affine or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigUint, y: BigUint },
}

impl CurvePoint {
    pub fn affine(x: BigUint, y: BigUint) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

/// A scalar reduced modulo the group order of its curve.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar(pub(crate) BigUint);

impl Scalar {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// 32-byte big-endian encoding.
    pub fn to_bytes(&self) -> [u8; 32] {
        let raw = self.0.to_bytes_be();
        let mut out = [0u8; 32];
        out[32 - raw.len()..].copy_from_slice(&raw);
        out
    }
}

struct Jac {
    x: Limbs,
    y: Limbs,
    z: Limbs,
}

/// Curve parameters plus precomputed Montgomery contexts.
pub struct Curve {
    pub name: &'static str,
    pub p: BigUint,
    pub a: BigUint,
    pub b: BigUint,
    pub gx: BigUint,
    pub gy: BigUint,
    pub n: BigUint,
    pub h: u32,
    /// Byte length of the field modulus, fixing point encodings.
    pub field_len: usize,
    fp: Monty,
    fr: Monty,
    a_m: Limbs,
    b_m: Limbs,
}

static SECP256K1: LazyLock<Curve> = LazyLock::new(|| {
    let p = BigUint::parse_bytes(
        b"fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f",
        16,
    )
    .unwrap();
    let n = BigUint::parse_bytes(
        b"fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141",
        16,
    )
    .unwrap();
    let gx = BigUint::parse_bytes(
        b"79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798",
        16,
    )
    .unwrap();
    let gy = BigUint::parse_bytes(
        b"483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8",
        16,
    )
    .unwrap();
    Curve::new("secp256k1", p, BigUint::zero(), BigUint::from(7u32), gx, gy, n, 1)
});

static TINY: LazyLock<Curve> = LazyLock::new(|| {
    Curve::new(
        "e17_2_2",
        BigUint::from(17u32),
        BigUint::from(2u32),
        BigUint::from(2u32),
        BigUint::from(5u32),
        BigUint::from(1u32),
        BigUint::from(19u32),
        1,
    )
});

/// secp256k1, the production curve.
pub fn secp256k1() -> &'static Curve {
    &SECP256K1
}

/// E_17(2,2) with generator (5,1) of order 19; discrete logs are enumerable.
pub fn tiny() -> &'static Curve {
    &TINY
}

pub fn curve_by_name(name: &str) -> Option<&'static Curve> {
    match name {
        "secp256k1" | "production" => Some(secp256k1()),
        "e17_2_2" | "tiny" | "test" => Some(tiny()),
        _ => None,
    }
}

impl Curve {
    #[allow(clippy::too_many_arguments)]
    fn new(
        name: &'static str,
        p: BigUint,
        a: BigUint,
        b: BigUint,
        gx: BigUint,
        gy: BigUint,
        n: BigUint,
        h: u32,
    ) -> Self {
        // Non-singularity: 4a^3 + 27b^2 != 0 mod p.
        let disc = (BigUint::from(4u32) * a.modpow(&BigUint::from(3u32), &p)
            + BigUint::from(27u32) * (&b * &b))
            % &p;
        assert!(!disc.is_zero(), "singular curve");
        let fp = Monty::new(&p);
        let fr = Monty::new(&n);
        let a_m = fp.to_monty(&a);
        let b_m = fp.to_monty(&b);
        let field_len = ((p.bits() + 7) / 8) as usize;
        let curve = Curve { name, p, a, b, gx, gy, n, h, field_len, fp, fr, a_m, b_m };
        assert!(curve.is_on_curve(&curve.generator()), "generator off curve");
        assert!(
            curve.scalar_mul_uncounted(&curve.n.clone(), &curve.generator()).is_infinity(),
            "generator order mismatch"
        );
        curve
    }

    pub fn generator(&self) -> CurvePoint {
        CurvePoint::affine(self.gx.clone(), self.gy.clone())
    }

    pub fn identity(&self) -> CurvePoint {
        CurvePoint::Infinity
    }

    pub fn is_on_curve(&self, point: &CurvePoint) -> bool {
        match point {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                if x >= &self.p || y >= &self.p {
                    return false;
                }
                let xm = self.fp.to_monty(x);
                let ym = self.fp.to_monty(y);
                let lhs = self.fp.sqr(&ym);
                let x2 = self.fp.sqr(&xm);
                let x3 = self.fp.mul(&x2, &xm);
                let rhs = self.fp.add(&self.fp.add(&x3, &self.fp.mul(&self.a_m, &xm)), &self.b_m);
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, point: &CurvePoint) -> CurvePoint {
        match point {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                if y.is_zero() {
                    CurvePoint::affine(x.clone(), y.clone())
                } else {
                    CurvePoint::affine(x.clone(), &self.p - y)
                }
            }
        }
    }

    /// Affine group addition with full edge-case handling.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        counters::record_point_add();
        match (p, q) {
            (CurvePoint::Infinity, _) => q.clone(),
            (_, CurvePoint::Infinity) => p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                let fp = &self.fp;
                let x1m = fp.to_monty(x1);
                let y1m = fp.to_monty(y1);
                let x2m = fp.to_monty(x2);
                let y2m = fp.to_monty(y2);
                let lambda = if x1 == x2 {
                    if fp.add(&y1m, &y2m) == [0; 4] {
                        // P + (-P)
                        return CurvePoint::Infinity;
                    }
                    // Doubling: (3x^2 + a) / 2y
                    let x_sq = fp.sqr(&x1m);
                    let num =
                        fp.add(&fp.add(&fp.add(&x_sq, &x_sq), &x_sq), &self.a_m);
                    let den = fp.add(&y1m, &y1m);
                    fp.mul(&num, &fp.inv(&den))
                } else {
                    let num = fp.sub(&y2m, &y1m);
                    let den = fp.sub(&x2m, &x1m);
                    fp.mul(&num, &fp.inv(&den))
                };
                let x3 = fp.sub(&fp.sub(&fp.sqr(&lambda), &x1m), &x2m);
                let y3 = fp.sub(&fp.mul(&lambda, &fp.sub(&x1m, &x3)), &y1m);
                CurvePoint::affine(fp.from_monty(&x3), fp.from_monty(&y3))
            }
        }
    }

    pub fn sub(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.add(p, &self.neg(q))
    }

    pub fn sum<'a>(&self, points: impl IntoIterator<Item = &'a CurvePoint>) -> CurvePoint {
        points
            .into_iter()
            .fold(CurvePoint::Infinity, |acc, p| self.add(&acc, p))
    }

    fn jac_infinity(&self) -> Jac {
        Jac { x: self.fp.one(), y: self.fp.one(), z: [0; 4] }
    }

    fn jac_from_affine(&self, x: &BigUint, y: &BigUint) -> Jac {
        Jac { x: self.fp.to_monty(x), y: self.fp.to_monty(y), z: self.fp.one() }
    }

    fn jac_double(&self, p: &Jac) -> Jac {
        let fp = &self.fp;
        if limbs_is_zero(&p.z) || limbs_is_zero(&p.y) {
            return self.jac_infinity();
        }
        let y_sq = fp.sqr(&p.y);
        let s = {
            let xy2 = fp.mul(&p.x, &y_sq);
            let t = fp.add(&xy2, &xy2);
            fp.add(&t, &t)
        };
        let z_sq = fp.sqr(&p.z);
        let m = {
            let x_sq = fp.sqr(&p.x);
            let three_x_sq = fp.add(&fp.add(&x_sq, &x_sq), &x_sq);
            fp.add(&three_x_sq, &fp.mul(&self.a_m, &fp.sqr(&z_sq)))
        };
        let x3 = fp.sub(&fp.sqr(&m), &fp.add(&s, &s));
        let y4 = fp.sqr(&y_sq);
        let eight_y4 = {
            let t = fp.add(&y4, &y4);
            let t = fp.add(&t, &t);
            fp.add(&t, &t)
        };
        let y3 = fp.sub(&fp.mul(&m, &fp.sub(&s, &x3)), &eight_y4);
        let z3 = {
            let yz = fp.mul(&p.y, &p.z);
            fp.add(&yz, &yz)
        };
        Jac { x: x3, y: y3, z: z3 }
    }

    fn jac_add(&self, p: &Jac, q: &Jac) -> Jac {
        let fp = &self.fp;
        if limbs_is_zero(&p.z) {
            return Jac { x: q.x, y: q.y, z: q.z };
        }
        if limbs_is_zero(&q.z) {
            return Jac { x: p.x, y: p.y, z: p.z };
        }
        let z1_sq = fp.sqr(&p.z);
        let z2_sq = fp.sqr(&q.z);
        let u1 = fp.mul(&p.x, &z2_sq);
        let u2 = fp.mul(&q.x, &z1_sq);
        let s1 = fp.mul(&p.y, &fp.mul(&z2_sq, &q.z));
        let s2 = fp.mul(&q.y, &fp.mul(&z1_sq, &p.z));
        if u1 == u2 {
            if s1 != s2 {
                return self.jac_infinity();
            }
            return self.jac_double(p);
        }
        let h = fp.sub(&u2, &u1);
        let r = fp.sub(&s2, &s1);
        let h_sq = fp.sqr(&h);
        let h_cu = fp.mul(&h_sq, &h);
        let u1h_sq = fp.mul(&u1, &h_sq);
        let x3 = fp.sub(&fp.sub(&fp.sqr(&r), &h_cu), &fp.add(&u1h_sq, &u1h_sq));
        let y3 = fp.sub(&fp.mul(&r, &fp.sub(&u1h_sq, &x3)), &fp.mul(&s1, &h_cu));
        let z3 = fp.mul(&h, &fp.mul(&p.z, &q.z));
        Jac { x: x3, y: y3, z: z3 }
    }

    fn jac_to_affine(&self, p: &Jac) -> CurvePoint {
        if limbs_is_zero(&p.z) {
            return CurvePoint::Infinity;
        }
        let fp = &self.fp;
        let z_inv = fp.inv(&p.z);
        let z_inv_sq = fp.sqr(&z_inv);
        let x = fp.mul(&p.x, &z_inv_sq);
        let y = fp.mul(&p.y, &fp.mul(&z_inv_sq, &z_inv));
        CurvePoint::affine(fp.from_monty(&x), fp.from_monty(&y))
    }

    fn scalar_mul_uncounted(&self, k: &BigUint, point: &CurvePoint) -> CurvePoint {
        let (x, y) = match point {
            CurvePoint::Infinity => return CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => (x, y),
        };
        if k.is_zero() {
            return CurvePoint::Infinity;
        }
        let base = self.jac_from_affine(x, y);
        let mut acc = self.jac_infinity();
        for i in (0..k.bits()).rev() {
            acc = self.jac_double(&acc);
            if k.bit(i) {
                acc = self.jac_add(&acc, &base);
            }
        }
        self.jac_to_affine(&acc)
    }

    /// k·P by double-and-add; 0·P is the identity.
    pub fn scalar_mul(&self, k: &Scalar, point: &CurvePoint) -> CurvePoint {
        counters::record_scalar_mul();
        self.scalar_mul_uncounted(&k.0, point)
    }

    /// k·G.
    pub fn base_mul(&self, k: &Scalar) -> CurvePoint {
        self.scalar_mul(k, &self.generator())
    }

    // ---- scalar arithmetic mod n ----

    pub fn scalar_from_biguint(&self, v: &BigUint) -> Scalar {
        Scalar(v % &self.n)
    }

    pub fn scalar_from_u64(&self, v: u64) -> Scalar {
        self.scalar_from_biguint(&BigUint::from(v))
    }

    /// Reduce 64 uniformly random bytes; the bias is < 2^-256.
    pub fn scalar_from_wide_bytes(&self, bytes: &[u8]) -> Scalar {
        Scalar(BigUint::from_bytes_be(bytes) % &self.n)
    }

    pub fn random_scalar(&self, rng: &mut impl RngCore) -> Scalar {
        let mut wide = [0u8; 64];
        rng.fill_bytes(&mut wide);
        self.scalar_from_wide_bytes(&wide)
    }

    /// Random scalar plus the raw bytes it was derived from, for draw-stream
    /// freshness audits.
    pub fn random_scalar_with_draw(&self, rng: &mut impl RngCore) -> (Scalar, [u8; 32]) {
        let mut draw = [0u8; 32];
        rng.fill_bytes(&mut draw);
        let mut wide = [0u8; 64];
        wide[32..].copy_from_slice(&draw);
        (self.scalar_from_wide_bytes(&wide), draw)
    }

    pub fn scalar_add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 + &b.0) % &self.n)
    }

    pub fn scalar_sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar(((&a.0 + &self.n) - &b.0) % &self.n)
    }

    pub fn scalar_neg(&self, a: &Scalar) -> Scalar {
        if a.0.is_zero() {
            Scalar(BigUint::zero())
        } else {
            Scalar(&self.n - &a.0)
        }
    }

    pub fn scalar_mul_mod(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let am = self.fr.to_monty(&a.0);
        let bm = self.fr.to_monty(&b.0);
        Scalar(self.fr.from_monty(&self.fr.mul(&am, &bm)))
    }

    pub fn scalar_from_bytes(&self, bytes: &[u8]) -> Result<Scalar, CryptoError> {
        if bytes.len() != 32 {
            return Err(CryptoError::BadEncoding("scalar must be 32 bytes".into()));
        }
        let v = BigUint::from_bytes_be(bytes);
        if v >= self.n {
            return Err(CryptoError::BadEncoding("scalar not reduced".into()));
        }
        Ok(Scalar(v))
    }

    // ---- field helpers used by encodings ----

    /// y^2 = x^3 + ax + b solved for y; `None` when x is not on the curve.
    pub(crate) fn solve_y(&self, x: &BigUint) -> Option<(BigUint, BigUint)> {
        if x >= &self.p {
            return None;
        }
        let xm = self.fp.to_monty(x);
        let rhs = self.fp.add(
            &self.fp.add(&self.fp.mul(&self.fp.sqr(&xm), &xm), &self.fp.mul(&self.a_m, &xm)),
            &self.b_m,
        );
        let root = self.fp.sqrt(&rhs)?;
        let y = self.fp.from_monty(&root);
        let y_neg = if y.is_zero() { BigUint::zero() } else { &self.p - &y };
        Some((y, y_neg))
    }

    // ---- SEC1 encodings ----

    /// Compressed SEC1: 0x02/0x03 ‖ x (field_len bytes); identity is 0x00.
    pub fn compress(&self, point: &CurvePoint) -> Vec<u8> {
        match point {
            CurvePoint::Infinity => vec![0x00],
            CurvePoint::Affine { x, y } => {
                let mut out = Vec::with_capacity(1 + self.field_len);
                out.push(if y.bit(0) { 0x03 } else { 0x02 });
                let raw = x.to_bytes_be();
                out.extend(std::iter::repeat(0u8).take(self.field_len - raw.len()));
                out.extend_from_slice(&raw);
                out
            }
        }
    }

    pub fn decompress(&self, bytes: &[u8]) -> Result<CurvePoint, CryptoError> {
        if bytes == [0x00] {
            return Ok(CurvePoint::Infinity);
        }
        if bytes.len() != 1 + self.field_len || (bytes[0] != 0x02 && bytes[0] != 0x03) {
            return Err(CryptoError::BadEncoding("bad point encoding".into()));
        }
        let x = BigUint::from_bytes_be(&bytes[1..]);
        let (y_even_bit, y_odd_bit) = match self.solve_y(&x) {
            Some((y0, y1)) => {
                if y0.bit(0) {
                    (y1, y0)
                } else {
                    (y0, y1)
                }
            }
            None => return Err(CryptoError::BadEncoding("x not on curve".into())),
        };
        let y = if bytes[0] == 0x03 { y_odd_bit } else { y_even_bit };
        let point = CurvePoint::affine(x, y);
        if !self.is_on_curve(&point) {
            return Err(CryptoError::BadEncoding("point not on curve".into()));
        }
        Ok(point)
    }

    pub fn point_to_hex(&self, point: &CurvePoint) -> String {
        hex::encode(self.compress(point))
    }

    pub fn point_from_hex(&self, s: &str) -> Result<CurvePoint, CryptoError> {
        let bytes = hex::decode(s).map_err(|_| CryptoError::BadEncoding("bad hex".into()))?;
        self.decompress(&bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent naive oracle over E_17(2,2) using i64 arithmetic.
    mod oracle {
        pub const P: i64 = 17;
        pub const A: i64 = 2;

        pub type Pt = Option<(i64, i64)>;

        fn inv_mod(a: i64) -> i64 {
            (1..P).find(|&x| (a * x).rem_euclid(P) == 1).unwrap()
        }

        pub fn add(p: Pt, q: Pt) -> Pt {
            match (p, q) {
                (None, q) => q,
                (p, None) => p,
                (Some((x1, y1)), Some((x2, y2))) => {
                    if x1 == x2 && (y1 + y2).rem_euclid(P) == 0 {
                        return None;
                    }
                    let lambda = if x1 == x2 {
                        ((3 * x1 * x1 + A) * inv_mod((2 * y1).rem_euclid(P))).rem_euclid(P)
                    } else {
                        ((y2 - y1).rem_euclid(P) * inv_mod((x2 - x1).rem_euclid(P))).rem_euclid(P)
                    };
                    let x3 = (lambda * lambda - x1 - x2).rem_euclid(P);
                    let y3 = (lambda * (x1 - x3) - y1).rem_euclid(P);
                    Some((x3, y3))
                }
            }
        }

        pub fn mul(k: i64, p: Pt) -> Pt {
            let mut acc = None;
            for _ in 0..k {
                acc = add(acc, p);
            }
            acc
        }

        /// All 19 group elements in generator order.
        pub fn table() -> Vec<Pt> {
            let g = Some((5, 1));
            (0..19).map(|k| mul(k, g)).collect()
        }
    }

    fn to_point(p: oracle::Pt) -> CurvePoint {
        match p {
            None => CurvePoint::Infinity,
            Some((x, y)) => CurvePoint::affine(BigUint::from(x as u64), BigUint::from(y as u64)),
        }
    }

    #[test]
    fn tiny_generator_doubling_matches_known_value() {
        let c = tiny();
        let g = c.generator();
        let two_g = c.add(&g, &g);
        // Frozen from the brute-force oracle: 2G = (6,3) on E_17(2,2).
        assert_eq!(two_g, CurvePoint::affine(BigUint::from(6u32), BigUint::from(3u32)));
        assert_eq!(to_point(oracle::mul(2, Some((5, 1)))), two_g);
    }

    #[test]
    fn tiny_exhaustive_addition_matches_oracle() {
        let c = tiny();
        let table = oracle::table();
        for (i, &p) in table.iter().enumerate() {
            for (j, &q) in table.iter().enumerate() {
                let expected = to_point(oracle::add(p, q));
                let got = c.add(&to_point(p), &to_point(q));
                assert_eq!(got, expected, "adding elements {i} and {j}");
            }
        }
    }

    #[test]
    fn tiny_scalar_mul_matches_oracle() {
        let c = tiny();
        let table = oracle::table();
        for (idx, &p) in table.iter().enumerate() {
            for k in 0..40i64 {
                let expected = to_point(oracle::mul(k.rem_euclid(19), p));
                let got = c.scalar_mul(&c.scalar_from_u64(k as u64), &to_point(p));
                assert_eq!(got, expected, "element {idx} times {k}");
            }
        }
    }

    #[test]
    fn identity_inverse_and_order() {
        for c in [tiny(), secp256k1()] {
            let g = c.generator();
            assert_eq!(c.add(&g, &c.identity()), g);
            assert!(c.add(&g, &c.neg(&g)).is_infinity());
            assert_eq!(c.base_mul(&c.scalar_from_u64(0)), CurvePoint::Infinity);
            assert_eq!(c.base_mul(&c.scalar_from_u64(1)), g);
            assert!(c
                .scalar_mul(&Scalar(c.n.clone() % &c.n), &g)
                .is_infinity());
            // n·G via the uncounted path (Scalar is always reduced, so n ≡ 0).
            assert!(c.scalar_mul_uncounted(&c.n, &g).is_infinity());
        }
    }

    #[test]
    fn secp_group_laws_randomized() {
        use rand::SeedableRng;
        let c = secp256k1();
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(11);
        for _ in 0..40 {
            let k1 = c.random_scalar(&mut rng);
            let k2 = c.random_scalar(&mut rng);
            let k3 = c.random_scalar(&mut rng);
            let p = c.base_mul(&k1);
            let q = c.base_mul(&k2);
            let r = c.base_mul(&k3);
            // commutativity and associativity
            assert_eq!(c.add(&p, &q), c.add(&q, &p));
            assert_eq!(c.add(&c.add(&p, &q), &r), c.add(&p, &c.add(&q, &r)));
            // distributivity of scalar mul over scalar addition
            let lhs = c.base_mul(&c.scalar_add(&k1, &k2));
            assert_eq!(lhs, c.add(&p, &q));
            // on-curve
            assert!(c.is_on_curve(&p));
        }
    }

    #[test]
    fn compression_round_trip() {
        use rand::SeedableRng;
        for c in [tiny(), secp256k1()] {
            let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(5);
            assert_eq!(c.decompress(&c.compress(&CurvePoint::Infinity)).unwrap(), CurvePoint::Infinity);
            for _ in 0..20 {
                let p = c.base_mul(&c.random_scalar(&mut rng));
                let enc = c.compress(&p);
                assert_eq!(c.decompress(&enc).unwrap(), p);
                if !p.is_infinity() {
                    assert_eq!(enc.len(), 1 + c.field_len);
                }
            }
        }
    }

    #[test]
    fn bad_encodings_rejected() {
        let c = secp256k1();
        assert!(c.decompress(&[0x04, 1, 2]).is_err());
        let mut enc = c.compress(&c.generator());
        enc[0] = 0x07;
        assert!(c.decompress(&enc).is_err());
    }
}
