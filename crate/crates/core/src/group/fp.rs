//! Fixed-width Montgomery arithmetic for odd moduli up to 256 bits.
//!
//! One implementation serves every modulus in the crate: the secp256k1 field
//! and group orders, the tiny test curve's p=17/n=19, and anything a test
//! throws at it. Elements are four little-endian u64 limbs in Montgomery
//! form (x·R mod m, R = 2^256).

use num_bigint::BigUint;
use num_traits::One;

pub(crate) type Limbs = [u64; 4];

#[inline]
fn mac(a: u64, b: u64, c: u64, carry: u64) -> (u64, u64) {
    let t = (a as u128) + (b as u128) * (c as u128) + (carry as u128);
    (t as u64, (t >> 64) as u64)
}

#[inline]
fn adc(a: u64, b: u64, carry: u64) -> (u64, u64) {
    let t = (a as u128) + (b as u128) + (carry as u128);
    (t as u64, (t >> 64) as u64)
}

#[inline]
fn sbb(a: u64, b: u64, borrow: u64) -> (u64, u64) {
    let (d, b1) = a.overflowing_sub(b);
    let (d, b2) = d.overflowing_sub(borrow);
    (d, u64::from(b1 | b2))
}

fn add_limbs(a: &Limbs, b: &Limbs) -> (Limbs, u64) {
    let mut r = [0u64; 4];
    let mut carry = 0;
    for i in 0..4 {
        let (lo, c) = adc(a[i], b[i], carry);
        r[i] = lo;
        carry = c;
    }
    (r, carry)
}

fn sub_limbs(a: &Limbs, b: &Limbs) -> (Limbs, u64) {
    let mut r = [0u64; 4];
    let mut borrow = 0;
    for i in 0..4 {
        let (lo, bo) = sbb(a[i], b[i], borrow);
        r[i] = lo;
        borrow = bo;
    }
    (r, borrow)
}

fn geq(a: &Limbs, b: &Limbs) -> bool {
    for i in (0..4).rev() {
        if a[i] > b[i] {
            return true;
        }
        if a[i] < b[i] {
            return false;
        }
    }
    true
}

pub(crate) fn limbs_is_zero(a: &Limbs) -> bool {
    a.iter().all(|&w| w == 0)
}

pub(crate) fn biguint_to_limbs(v: &BigUint) -> Limbs {
    let bytes = v.to_bytes_le();
    assert!(bytes.len() <= 32, "value exceeds 256 bits");
    let mut r = [0u64; 4];
    for (i, chunk) in bytes.chunks(8).enumerate() {
        let mut w = [0u8; 8];
        w[..chunk.len()].copy_from_slice(chunk);
        r[i] = u64::from_le_bytes(w);
    }
    r
}

pub(crate) fn limbs_to_biguint(a: &Limbs) -> BigUint {
    let mut bytes = Vec::with_capacity(32);
    for w in a {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

/// Montgomery context for a fixed odd modulus.
#[derive(Clone, Debug)]
pub(crate) struct Monty {
    pub m: Limbs,
    n0: u64,
    pub r1: Limbs,
    r2: Limbs,
    pub m_big: BigUint,
}

impl Monty {
    pub fn new(modulus: &BigUint) -> Self {
        assert!(modulus.bits() <= 256 && modulus.bit(0), "modulus must be odd and <= 256 bits");
        let m = biguint_to_limbs(modulus);
        // Newton iteration for m^{-1} mod 2^64.
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m[0].wrapping_mul(inv)));
        }
        let n0 = inv.wrapping_neg();
        let r1 = biguint_to_limbs(&((BigUint::one() << 256u32) % modulus));
        let r2 = biguint_to_limbs(&((BigUint::one() << 512u32) % modulus));
        Monty { m, n0, r1, r2, m_big: modulus.clone() }
    }

    /// CIOS Montgomery multiplication: returns a·b·R^{-1} mod m.
    pub fn mul(&self, a: &Limbs, b: &Limbs) -> Limbs {
        let mut t = [0u64; 6];
        for i in 0..4 {
            let mut carry = 0u64;
            for j in 0..4 {
                let (lo, hi) = mac(t[j], a[i], b[j], carry);
                t[j] = lo;
                carry = hi;
            }
            let (lo, hi) = adc(t[4], carry, 0);
            t[4] = lo;
            t[5] += hi;

            let mp = t[0].wrapping_mul(self.n0);
            let (_, mut carry) = mac(t[0], mp, self.m[0], 0);
            for j in 1..4 {
                let (lo, hi) = mac(t[j], mp, self.m[j], carry);
                t[j - 1] = lo;
                carry = hi;
            }
            let (lo, hi) = adc(t[4], carry, 0);
            t[3] = lo;
            t[4] = t[5] + hi;
            t[5] = 0;
        }
        let mut r = [t[0], t[1], t[2], t[3]];
        if t[4] != 0 || geq(&r, &self.m) {
            r = sub_limbs(&r, &self.m).0;
        }
        r
    }

    pub fn sqr(&self, a: &Limbs) -> Limbs {
        self.mul(a, a)
    }

    pub fn add(&self, a: &Limbs, b: &Limbs) -> Limbs {
        let (sum, carry) = add_limbs(a, b);
        if carry != 0 || geq(&sum, &self.m) {
            sub_limbs(&sum, &self.m).0
        } else {
            sum
        }
    }

    pub fn sub(&self, a: &Limbs, b: &Limbs) -> Limbs {
        let (d, borrow) = sub_limbs(a, b);
        if borrow != 0 {
            add_limbs(&d, &self.m).0
        } else {
            d
        }
    }

    pub fn one(&self) -> Limbs {
        self.r1
    }

    pub fn to_monty(&self, v: &BigUint) -> Limbs {
        debug_assert!(v < &self.m_big);
        self.mul(&biguint_to_limbs(v), &self.r2)
    }

    pub fn from_monty(&self, a: &Limbs) -> BigUint {
        limbs_to_biguint(&self.mul(a, &[1, 0, 0, 0]))
    }

    /// a^e with e given as plain (non-Montgomery) limbs.
    pub fn pow(&self, a: &Limbs, e: &Limbs) -> Limbs {
        let mut acc = self.r1;
        let mut started = false;
        for i in (0..4).rev() {
            for bit in (0..64).rev() {
                if started {
                    acc = self.sqr(&acc);
                }
                if (e[i] >> bit) & 1 == 1 {
                    if started {
                        acc = self.mul(&acc, a);
                    } else {
                        acc = *a;
                        started = true;
                    }
                }
            }
        }
        if started {
            acc
        } else {
            self.r1
        }
    }

    pub fn pow_big(&self, a: &Limbs, e: &BigUint) -> Limbs {
        self.pow(a, &biguint_to_limbs(e))
    }

    /// Multiplicative inverse via Fermat; the modulus must be prime.
    pub fn inv(&self, a: &Limbs) -> Limbs {
        let e = &self.m_big - BigUint::from(2u32);
        self.pow_big(a, &e)
    }

    /// Square root of a quadratic residue (Tonelli–Shanks); `None` for
    /// non-residues. The modulus must be an odd prime.
    pub fn sqrt(&self, a: &Limbs) -> Option<Limbs> {
        if limbs_is_zero(a) {
            return Some([0; 4]);
        }
        let one = BigUint::one();
        let exp_legendre = (&self.m_big - &one) >> 1;
        let ls = self.pow_big(a, &exp_legendre);
        if ls != self.r1 {
            return None;
        }
        if (&self.m_big & BigUint::from(3u32)) == BigUint::from(3u32) {
            let e = (&self.m_big + &one) >> 2;
            return Some(self.pow_big(a, &e));
        }
        // Tonelli–Shanks: m - 1 = q * 2^s with q odd.
        let mut q = &self.m_big - &one;
        let mut s = 0u32;
        while !q.bit(0) {
            q >>= 1;
            s += 1;
        }
        // Find a non-residue z.
        let mut z_val = BigUint::from(2u32);
        let z = loop {
            let zm = self.to_monty(&(&z_val % &self.m_big));
            if self.pow_big(&zm, &exp_legendre) != self.r1 && !limbs_is_zero(&zm) {
                break zm;
            }
            z_val += &one;
        };
        let mut m_exp = s;
        let mut c = self.pow_big(&z, &q);
        let mut t = self.pow_big(a, &q);
        let mut r = self.pow_big(a, &((&q + &one) >> 1));
        while t != self.r1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != self.r1 {
                t2 = self.sqr(&t2);
                i += 1;
                if i == m_exp {
                    return None;
                }
            }
            let mut b = c;
            for _ in 0..(m_exp - i - 1) {
                b = self.sqr(&b);
            }
            m_exp = i;
            c = self.sqr(&b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn random_mod(rng: &mut ChaCha20Rng, bits: u64) -> BigUint {
        let bytes: Vec<u8> = (0..32).map(|_| rng.gen()).collect();
        let mut v = BigUint::from_bytes_le(&bytes);
        v >>= 256 - bits as usize;
        v |= BigUint::one(); // odd
        if v.bits() < 2 {
            v += BigUint::from(4u32);
        }
        v
    }

    #[test]
    fn differential_against_bigint() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for case in 0..60 {
            let bits = [5u64, 17, 63, 64, 127, 200, 255, 256][case % 8];
            let m = random_mod(&mut rng, bits);
            let ctx = Monty::new(&m);
            for _ in 0..20 {
                let a = random_mod(&mut rng, bits) % &m;
                let b = random_mod(&mut rng, bits) % &m;
                let am = ctx.to_monty(&a);
                let bm = ctx.to_monty(&b);
                assert_eq!(ctx.from_monty(&ctx.mul(&am, &bm)), (&a * &b) % &m);
                assert_eq!(ctx.from_monty(&ctx.add(&am, &bm)), (&a + &b) % &m);
                let expected_sub = ((&a + &m) - &b) % &m;
                assert_eq!(ctx.from_monty(&ctx.sub(&am, &bm)), expected_sub);
                assert_eq!(ctx.from_monty(&ctx.to_monty(&a)), a);
            }
        }
    }

    #[test]
    fn pow_inv_sqrt_on_primes() {
        // secp256k1 p and n, the tiny curve's 17 and 19, and a couple more.
        let primes = [
            BigUint::parse_bytes(
                b"fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f",
                16,
            )
            .unwrap(),
            BigUint::parse_bytes(
                b"fffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141",
                16,
            )
            .unwrap(),
            BigUint::from(17u32),
            BigUint::from(19u32),
            BigUint::from(1000003u64),
        ];
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for p in &primes {
            let ctx = Monty::new(p);
            for _ in 0..12 {
                let bytes: Vec<u8> = (0..40).map(|_| rng.gen()).collect();
                let a = BigUint::from_bytes_le(&bytes) % p;
                if a == BigUint::default() {
                    continue;
                }
                let am = ctx.to_monty(&a);
                assert_eq!(ctx.from_monty(&ctx.pow_big(&am, &BigUint::from(5u32))), a.modpow(&BigUint::from(5u32), p));
                let inv = ctx.inv(&am);
                assert_eq!(ctx.from_monty(&ctx.mul(&am, &inv)), BigUint::one());
                let sq = ctx.sqr(&am);
                let root = ctx.sqrt(&sq).expect("square must have a root");
                let r2 = ctx.sqr(&root);
                assert_eq!(ctx.from_monty(&r2), ctx.from_monty(&sq));
            }
        }
    }

    #[test]
    fn sqrt_rejects_non_residues() {
        let p = BigUint::from(19u32);
        let ctx = Monty::new(&p);
        let mut residues = std::collections::HashSet::new();
        for v in 1u32..19 {
            residues.insert((v * v) % 19);
        }
        for v in 1u32..19 {
            let vm = ctx.to_monty(&BigUint::from(v));
            let got = ctx.sqrt(&vm);
            assert_eq!(got.is_some(), residues.contains(&v), "v={v}");
        }
    }
}
