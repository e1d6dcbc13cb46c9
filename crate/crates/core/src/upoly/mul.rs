use std::sync::OnceLock;

use crate::modring::{FieldCtx, NttPlan, CRT_PRIMES};
use crate::tuning::tuning;

/// Full product of two coefficient vectors.
pub(crate) fn mul_coeffs(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    mul_slice(f, a, b, 0, a.len() + b.len() - 1)
}

/// Coefficients `lo .. lo+len` of `a * b`, always of length `len`.
pub(crate) fn mul_slice(f: &FieldCtx, a: &[u64], b: &[u64], lo: usize, len: usize) -> Vec<u64> {
    let hi = lo.saturating_add(len);
    let a = &a[..a.len().min(hi)];
    let b = &b[..b.len().min(hi)];
    let mut out = vec![0; len];
    if a.is_empty() || b.is_empty() {
        return out;
    }
    let full = a.len() + b.len() - 1;
    if lo >= full {
        return out;
    }
    let t = tuning();
    let m = a.len().min(b.len());
    if m <= t.karatsuba_threshold {
        direct_slice(f, a, b, lo, &mut out);
    } else if m < t.ntt_threshold {
        let prod = karatsuba_unbalanced(f, a, b);
        let end = hi.min(full);
        out[..end - lo].copy_from_slice(&prod[lo..end]);
    } else {
        let n = (lo + len).min(full).max(full - lo).next_power_of_two();
        let cyc = cyclic(f, a, b, n);
        let end = hi.min(full);
        out[..end - lo].copy_from_slice(&cyc[lo..end]);
    }
    out
}

fn direct_slice(f: &FieldCtx, a: &[u64], b: &[u64], lo: usize, out: &mut [u64]) {
    let full = a.len() + b.len() - 1;
    for (k, o) in (lo..(lo + out.len()).min(full)).zip(out.iter_mut()) {
        let i0 = (k + 1).saturating_sub(b.len());
        let i1 = k.min(a.len() - 1);
        *o = f.dot(a[i0..=i1].iter().copied(), b[k - i1..=k - i0].iter().rev().copied());
    }
}

/// Schoolbook product with lazy 128-bit accumulation.
fn naive(f: &FieldCtx, a: &[u64], b: &[u64], out: &mut [u64]) {
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for chunk in (0..a.len()).collect::<Vec<_>>().chunks(15) {
        for &i in chunk {
            let ai = a[i] as u128;
            if ai == 0 {
                continue;
            }
            for (c, &bj) in acc[i..i + b.len()].iter_mut().zip(b) {
                *c += ai * bj as u128;
            }
        }
        for c in acc.iter_mut() {
            *c = f.reduce128(*c) as u128;
        }
    }
    for (o, c) in out.iter_mut().zip(acc) {
        *o = f.add(*o, c as u64);
    }
}

fn karatsuba_unbalanced(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let n = short.len();
    let mut out = vec![0; a.len() + b.len() - 1];
    let mut padded = vec![0; n];
    for start in (0..long.len()).step_by(n) {
        let piece = &long[start..(start + n).min(long.len())];
        let prod = if piece.len() == n {
            karatsuba(f, piece, short)
        } else {
            padded[..piece.len()].copy_from_slice(piece);
            padded[piece.len()..].fill(0);
            karatsuba(f, &padded, short)
        };
        for (o, p) in out[start..].iter_mut().zip(prod) {
            *o = f.add(*o, p);
        }
    }
    out
}

/// Product of two equal-length vectors, length `2n - 1`.
fn karatsuba(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    debug_assert_eq!(n, b.len());
    let mut out = vec![0; 2 * n - 1];
    if n <= tuning().karatsuba_threshold.max(4) {
        naive(f, a, b, &mut out);
        return out;
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = karatsuba(f, a0, b0);
    let z2 = karatsuba(f, a1, b1);
    let mut sa = a1.to_vec();
    let mut sb = b1.to_vec();
    for i in 0..h {
        sa[i] = f.add(sa[i], a0[i]);
        sb[i] = f.add(sb[i], b0[i]);
    }
    let mut z1 = karatsuba(f, &sa, &sb);
    for (i, z) in z1.iter_mut().enumerate() {
        let mut v = f.sub(*z, z2[i]);
        if i < z0.len() {
            v = f.sub(v, z0[i]);
        }
        *z = v;
    }
    for (i, z) in z0.into_iter().enumerate() {
        out[i] = z;
    }
    for (i, z) in z2.into_iter().enumerate() {
        out[2 * h + i] = f.add(out[2 * h + i], z);
    }
    for (i, z) in z1.into_iter().enumerate() {
        out[h + i] = f.add(out[h + i], z);
    }
    out
}

/// `a * b mod (x^n - 1)` for a power of two `n`.
pub(crate) fn cyclic(f: &FieldCtx, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
    let log = n.trailing_zeros();
    if log <= f.two_adicity() {
        let plan = NttPlan::cached(*f, log).expect("length checked against two-adicity");
        return cyclic_with(&plan, a, b);
    }
    let crt = Crt::for_field(f);
    let parts: Vec<Vec<u64>> = crt
        .fields
        .iter()
        .map(|q| {
            let ra: Vec<u64> = a.iter().map(|&x| q.reduce(x)).collect();
            let rb: Vec<u64> = b.iter().map(|&x| q.reduce(x)).collect();
            let plan = NttPlan::cached(*q, log).expect("CRT primes support long transforms");
            cyclic_with(&plan, &ra, &rb)
        })
        .collect();
    (0..n).map(|i| crt.combine(parts[0][i], parts[1][i], parts[2][i])).collect()
}

fn cyclic_with(plan: &NttPlan, a: &[u64], b: &[u64]) -> Vec<u64> {
    let q = plan.ctx();
    let mut fa = plan.forward_padded(a);
    let fb = plan.forward_padded(b);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = q.mul(*x, *y);
    }
    plan.inverse_in_place(&mut fa).expect("plan-sized buffer");
    fa
}

pub(crate) fn crt_fields() -> &'static [FieldCtx; 3] {
    static F: OnceLock<[FieldCtx; 3]> = OnceLock::new();
    F.get_or_init(|| CRT_PRIMES.map(|q| FieldCtx::new(q).expect("CRT primes are prime")))
}

/// Garner reconstruction from three NTT primes, reduced into `F_p`.
pub(crate) struct Crt {
    fields: &'static [FieldCtx; 3],
    target: FieldCtx,
    q1_inv_mod_q2: u64,
    q1q2_inv_mod_q3: u64,
    q1_mod_q3: u64,
    q1_mod_p: u64,
    q1q2_mod_p: u64,
}

impl Crt {
    pub(crate) fn for_field(f: &FieldCtx) -> Crt {
        let fs = crt_fields();
        let [q1, q2, _] = CRT_PRIMES;
        let q1_mod_q3 = fs[2].reduce(q1);
        Crt {
            fields: fs,
            target: *f,
            q1_inv_mod_q2: fs[1].inv(fs[1].reduce(q1)),
            q1q2_inv_mod_q3: fs[2].inv(fs[2].mul(q1_mod_q3, fs[2].reduce(q2))),
            q1_mod_q3,
            q1_mod_p: f.reduce(q1),
            q1q2_mod_p: f.mul(f.reduce(q1), f.reduce(q2)),
        }
    }

    #[inline]
    pub(crate) fn combine(&self, r1: u64, r2: u64, r3: u64) -> u64 {
        let [_, f2, f3] = self.fields;
        let t2 = f2.mul(f2.sub(r2, f2.reduce(r1)), self.q1_inv_mod_q2);
        let partial = f3.add(f3.reduce(r1), f3.mul(self.q1_mod_q3, f3.reduce(t2)));
        let t3 = f3.mul(f3.sub(r3, partial), self.q1q2_inv_mod_q3);
        let p = &self.target;
        p.add(p.add(p.reduce(r1), p.mul(self.q1_mod_p, p.reduce(t2))), p.mul(self.q1q2_mod_p, p.reduce(t3)))
    }
}
