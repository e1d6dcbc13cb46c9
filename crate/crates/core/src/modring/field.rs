use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arith::{factor_cached, is_prime};
use crate::error::{Error, Result};

/// Arithmetic context for `F_p`, `2 < p < 2^62`.
///
/// Elements are plain `u64` residues in `[0, p)`. Products are reduced with a
/// Barrett scheme using a 128-bit reciprocal, so inner loops never divide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    mu: u128,
    two_adicity: u32,
    ntt_root: u64,
}

#[inline(always)]
fn mulhi128(x: u128, y: u128) -> u128 {
    const MASK: u128 = u64::MAX as u128;
    let (x0, x1) = (x & MASK, x >> 64);
    let (y0, y1) = (y & MASK, y >> 64);
    let lo = x0 * y0;
    let m1 = x1 * y0;
    let m2 = x0 * y1;
    let t = (lo >> 64) + (m1 & MASK) + (m2 & MASK);
    x1 * y1 + (m1 >> 64) + (m2 >> 64) + (t >> 64)
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= 1 << 62 {
            return Err(Error::OutOfRange(format!("modulus {p} not in (2, 2^62)")));
        }
        if !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        let two_adicity = (p - 1).trailing_zeros();
        let mut ctx = FieldCtx { p, mu: u128::MAX / p as u128, two_adicity, ntt_root: 0 };
        // a quadratic non-residue raised to the odd part of p-1 has order 2^k
        let odd = (p - 1) >> two_adicity;
        let mut g = 2;
        while ctx.pow(g, (p - 1) / 2) != p - 1 {
            g += 1;
        }
        ctx.ntt_root = ctx.pow(g, odd);
        Ok(ctx)
    }

    #[inline(always)]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    /// Element of multiplicative order exactly `2^two_adicity`.
    pub fn ntt_root(&self) -> u64 {
        self.ntt_root
    }

    pub fn bits(&self) -> u32 {
        64 - self.p.leading_zeros()
    }

    #[inline(always)]
    pub fn reduce128(&self, x: u128) -> u64 {
        let q = mulhi128(x, self.mu);
        let mut r = x.wrapping_sub(q.wrapping_mul(self.p as u128)) as u64;
        r = if r >= self.p { r - self.p } else { r };
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce128(a as u128 * b as u128)
    }

    /// `a*b + c`
    #[inline(always)]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        self.reduce128(a as u128 * b as u128 + c as u128)
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    ///
    /// Panics on zero: every caller checks invertibility first.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i128) as u64
    }

    /// Inverts every entry in place with one field inversion.
    pub fn batch_inv(&self, xs: &mut [u64]) {
        if xs.is_empty() {
            return;
        }
        let mut prefix = Vec::with_capacity(xs.len());
        let mut acc = 1;
        for &x in xs.iter() {
            prefix.push(acc);
            acc = self.mul(acc, x);
        }
        let mut inv = self.inv(acc);
        for i in (0..xs.len()).rev() {
            let x = xs[i];
            xs[i] = self.mul(inv, prefix[i]);
            inv = self.mul(inv, x);
        }
    }

    /// Maps a signed integer into the field.
    pub fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    /// Centered representative, useful for printing small values.
    pub fn to_i64(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            -((self.p - a) as i64)
        } else {
            a as i64
        }
    }

    /// Accumulate `sum a_i b_i` with lazy 128-bit reduction.
    #[inline]
    pub fn dot(&self, a: impl IntoIterator<Item = u64>, b: impl IntoIterator<Item = u64>) -> u64 {
        let mut acc: u128 = 0;
        let mut n = 0;
        for (x, y) in a.into_iter().zip(b) {
            acc += x as u128 * y as u128;
            n += 1;
            if n == 15 {
                acc = self.reduce128(acc) as u128;
                n = 0;
            }
        }
        self.reduce128(acc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> u64 {
        let mut ord = self.p - 1;
        for q in factor_cached(self.p - 1) {
            while ord % q == 0 && self.pow(a, ord / q) == 1 {
                ord /= q;
            }
        }
        ord
    }

    /// Returns an element of multiplicative order at least `n`.
    ///
    /// Candidates are drawn from a PRNG seeded by `p`, so the answer is a
    /// deterministic function of the field.
    pub fn order_at_least(&self, n: u64) -> Result<u64> {
        if n > self.p - 1 {
            return Err(Error::NoSuchElement(n));
        }
        let factors = factor_cached(self.p - 1);
        let order_of = |a: u64| {
            let mut ord = self.p - 1;
            for &q in &factors {
                while ord % q == 0 && self.pow(a, ord / q) == 1 {
                    ord /= q;
                }
            }
            ord
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.p);
        for _ in 0..256 {
            let a = if self.p <= 3 { 2 } else { rng.gen_range(2..self.p) };
            if order_of(a) >= n {
                return Ok(a);
            }
        }
        Err(Error::NoSuchElement(n))
    }

    pub fn random(&self, rng: &mut impl Rng) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero(&self, rng: &mut impl Rng) -> u64 {
        rng.gen_range(1..self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let f = FieldCtx::new(97).unwrap();
        assert_eq!(f.two_adicity(), 5);
        assert_eq!(FieldCtx::new(3).unwrap().two_adicity(), 1);
        assert_eq!(FieldCtx::new(91), Err(Error::CompositeModulus(91)));
        assert!(matches!(FieldCtx::new(2), Err(Error::OutOfRange(_))));
        assert!(matches!(FieldCtx::new(1 << 62), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn ntt_root_has_exact_two_power_order() {
        for p in [3u64, 97, super::super::PRIME_20_NTT, super::super::PRIME_60_NTT, super::super::PRIME_60_GENERAL] {
            let f = FieldCtx::new(p).unwrap();
            let k = f.two_adicity();
            assert_eq!(f.pow(f.ntt_root(), 1 << k), 1);
            assert_eq!(f.pow(f.ntt_root(), 1 << (k - 1)), p - 1);
        }
    }

    #[test]
    fn order_at_least_examples() {
        let f = FieldCtx::new(97).unwrap();
        let a = f.order_at_least(96).unwrap();
        assert_eq!(f.pow(a, 96), 1);
        assert_ne!(f.pow(a, 48), 1);
        assert_ne!(f.pow(a, 32), 1);
        assert_eq!(f.order_at_least(97), Err(Error::NoSuchElement(97)));
        let f5 = FieldCtx::new(5).unwrap();
        let a = f5.order_at_least(2).unwrap();
        assert!(f5.order(a) >= 2);
        assert_eq!(f5.order(2), 4);
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [97u64, super::super::PRIME_60_NTT, super::super::PRIME_60_GENERAL, (1 << 62) - 57] {
            let f = FieldCtx::new(p).unwrap();
            for _ in 0..500 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, b) as u128, (a as u128 * b as u128) % p as u128);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
            let x = u128::MAX;
            assert_eq!(f.reduce128(x) as u128, x % p as u128);
        }
    }

    #[test]
    fn batch_inverse_matches_single() {
        let f = FieldCtx::new(97).unwrap();
        let mut xs: Vec<u64> = (1..97).collect();
        f.batch_inv(&mut xs);
        for (i, x) in xs.iter().enumerate() {
            assert_eq!(*x, f.inv(i as u64 + 1));
        }
    }
}
