use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use super::FieldCtx;
use crate::error::{Error, Result};

thread_local! {
    static PLANS: RefCell<HashMap<(u64, u32), Arc<NttPlan>>> = RefCell::new(HashMap::new());
}

/// Precomputed twiddles for power-of-two transforms of a fixed length.
///
/// `forward` maps coefficients `v` to `[V(w^0), V(w^1), ..., V(w^(n-1))]` in
/// natural order, where `w = root()` is a primitive `n`-th root of unity.
/// The bit-reversed layout of the iterative butterflies is internal.
#[derive(Clone, Debug)]
pub struct NttPlan {
    ctx: FieldCtx,
    log_len: u32,
    root: u64,
    fwd: Vec<u64>,
    inv: Vec<u64>,
    len_inv: u64,
}

impl NttPlan {
    pub fn new(ctx: FieldCtx, log_len: u32) -> Result<Self> {
        if log_len > ctx.two_adicity() {
            return Err(Error::OutOfRange(format!(
                "transform length 2^{log_len} exceeds 2^{} for p = {}",
                ctx.two_adicity(),
                ctx.modulus()
            )));
        }
        let n = 1usize << log_len;
        let root = ctx.pow(ctx.ntt_root(), 1 << (ctx.two_adicity() - log_len));
        let root_inv = ctx.inv(root);
        let half = (n / 2).max(1);
        let mut fwd = Vec::with_capacity(half);
        let mut inv = Vec::with_capacity(half);
        let (mut a, mut b) = (1, 1);
        for _ in 0..half {
            fwd.push(a);
            inv.push(b);
            a = ctx.mul(a, root);
            b = ctx.mul(b, root_inv);
        }
        let len_inv = ctx.inv(n as u64 % ctx.modulus());
        Ok(NttPlan { ctx, log_len, root, fwd, inv, len_inv })
    }

    /// Shared plan from a per-thread cache.
    pub fn cached(ctx: FieldCtx, log_len: u32) -> Result<Arc<Self>> {
        let key = (ctx.modulus(), log_len);
        if let Some(p) = PLANS.with(|m| m.borrow().get(&key).cloned()) {
            return Ok(p);
        }
        let plan = Arc::new(Self::new(ctx, log_len)?);
        PLANS.with(|m| m.borrow_mut().insert(key, plan.clone()));
        Ok(plan)
    }

    /// Plan for the smallest power-of-two length `>= len`, if the field allows.
    pub fn for_len(ctx: FieldCtx, len: usize) -> Option<Self> {
        let log = len.max(1).next_power_of_two().trailing_zeros();
        Self::new(ctx, log).ok()
    }

    pub fn len(&self) -> usize {
        1 << self.log_len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn log_len(&self) -> u32 {
        self.log_len
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// The primitive root of unity the evaluations are taken at.
    pub fn root(&self) -> u64 {
        self.root
    }

    fn butterflies(&self, v: &mut [u64], table: &[u64]) {
        let n = v.len();
        let f = &self.ctx;
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                v.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let w = table[k * stride];
                    let u = v[start + k];
                    let t = f.mul(v[start + k + half], w);
                    v[start + k] = f.add(u, t);
                    v[start + k + half] = f.sub(u, t);
                }
            }
            len <<= 1;
        }
    }

    pub fn forward_in_place(&self, v: &mut [u64]) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: v.len() });
        }
        self.butterflies(v, &self.fwd);
        Ok(())
    }

    pub fn inverse_in_place(&self, v: &mut [u64]) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: v.len() });
        }
        self.butterflies(v, &self.inv);
        for x in v.iter_mut() {
            *x = self.ctx.mul(*x, self.len_inv);
        }
        Ok(())
    }

    pub fn forward(&self, v: &[u64]) -> Result<Vec<u64>> {
        let mut w = v.to_vec();
        self.forward_in_place(&mut w)?;
        Ok(w)
    }

    pub fn inverse(&self, v: &[u64]) -> Result<Vec<u64>> {
        let mut w = v.to_vec();
        self.inverse_in_place(&mut w)?;
        Ok(w)
    }

    /// Zero-pads `coeffs` to the plan length and transforms.
    pub(crate) fn forward_padded(&self, coeffs: &[u64]) -> Vec<u64> {
        let n = self.len();
        let mut w = vec![0; n];
        // wrap around: callers only rely on this when the cyclic result is wanted
        for (i, &c) in coeffs.iter().enumerate() {
            w[i % n] = self.ctx.add(w[i % n], c);
        }
        self.butterflies(&mut w, &self.fwd);
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::{PRIME_20_NTT, PRIME_60_NTT};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_transforms_to_constant() {
        let f = FieldCtx::new(97).unwrap();
        let plan = NttPlan::new(f, 3).unwrap();
        let mut v = vec![0; 8];
        v[0] = 42;
        assert_eq!(plan.forward(&v).unwrap(), vec![42; 8]);
    }

    #[test]
    fn forward_of_x_is_powers_of_root() {
        let f = FieldCtx::new(97).unwrap();
        let plan = NttPlan::new(f, 2).unwrap();
        let w = plan.root();
        assert_eq!(f.pow(w, 4), 1);
        assert_ne!(f.pow(w, 2), 1);
        let out = plan.forward(&[0, 1, 0, 0]).unwrap();
        assert_eq!(out, vec![1, w, f.mul(w, w), f.pow(w, 3)]);
    }

    #[test]
    fn length_mismatch_is_reported() {
        let f = FieldCtx::new(97).unwrap();
        let plan = NttPlan::new(f, 3).unwrap();
        assert_eq!(plan.forward(&[1, 2, 3]), Err(Error::LengthMismatch { expected: 8, got: 3 }));
        assert!(NttPlan::new(f, 6).is_err());
    }

    #[test]
    fn round_trip_all_lengths() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [97u64, PRIME_20_NTT, PRIME_60_NTT] {
            let f = FieldCtx::new(p).unwrap();
            for log in 0..=f.two_adicity().min(10) {
                let plan = NttPlan::new(f, log).unwrap();
                for _ in 0..200 / (log as usize + 1) + 1 {
                    let v: Vec<u64> = (0..plan.len()).map(|_| f.random(&mut rng)).collect();
                    assert_eq!(plan.inverse(&plan.forward(&v).unwrap()).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn convolution_theorem() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = FieldCtx::new(PRIME_20_NTT).unwrap();
        for log in 0..=6 {
            let plan = NttPlan::new(f, log).unwrap();
            let n = plan.len();
            let a: Vec<u64> = (0..n).map(|_| f.random(&mut rng)).collect();
            let b: Vec<u64> = (0..n).map(|_| f.random(&mut rng)).collect();
            let mut cyc = vec![0; n];
            for i in 0..n {
                for j in 0..n {
                    cyc[(i + j) % n] = f.add(cyc[(i + j) % n], f.mul(a[i], b[j]));
                }
            }
            let fa = plan.forward(&a).unwrap();
            let fb = plan.forward(&b).unwrap();
            let prod: Vec<u64> = fa.iter().zip(&fb).map(|(x, y)| f.mul(*x, *y)).collect();
            assert_eq!(prod, plan.forward(&cyc).unwrap());
        }
    }
}
