use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::modring::FieldCtx;
use crate::upoly::{inv_trunc, xgcd, Poly};

/// `Syl(F, G)^{-1} = L(c1) U(r1) + L(c2) U(r2)`, where `L(c)` is lower
/// triangular Toeplitz with first column `c` and `U(r)` upper triangular
/// Toeplitz with first row `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredInverseEval {
    ctx: FieldCtx,
    pub c1: Vec<u64>,
    pub c2: Vec<u64>,
    pub r1: Vec<u64>,
    pub r2: Vec<u64>,
}

impl StructuredInverseEval {
    /// Generators from the Bezout cofactors of `F` and `G`.
    pub fn new(fa: &Poly, ga: &Poly) -> Result<Self> {
        let ctx = *fa.ctx();
        if fa.deg() < 1 || ga.deg() < 1 {
            return Err(Error::BadParams("both polynomials need positive degree in z".into()));
        }
        let (a, b) = (fa.deg() as usize, ga.deg() as usize);
        let nu = a + b;
        let (g, s, _) = xgcd(fa, ga)?;
        if g.deg() != 0 {
            return Err(Error::NotCoprime);
        }
        let s = s.rem(ga)?;
        let t = (&Poly::one(ctx) - &(&s * fa)).divrem(ga)?.0;

        // column c of the inverse solves u F + v G = z^(nu-1-c)
        let row0 = rev_seq(&projections(&s, ga, b - 1, nu));
        let rowb = rev_seq(&projections(&t, fa, a - 1, nu));
        let u0 = s.shl(nu - 1).rem(ga)?;
        let v0 = t.shl(nu - 1).rem(fa)?;
        let col0 = layout(&u0, &v0, a, b);

        // one more step of the shift recurrence, past the last column
        let glow = layout(&-&ga.truncate(b), &fa.truncate(a), a, b);
        let c = ctx.mul(row0[0], ctx.inv(ga.lc()));
        let mut y = vec![0u64; nu];
        for r in 0..nu - 1 {
            y[r] = col0[r + 1];
        }
        y[b - 1] = 0;
        for r in 0..nu {
            y[r] = ctx.neg(ctx.add(y[r], ctx.mul(c, glow[r])));
        }

        let lcg_inv = ctx.inv(ga.lc());
        let mut a1 = vec![0u64; nu];
        a1[0] = 1;
        for r in 1..nu {
            a1[r] = ctx.neg(ctx.mul(glow[r - 1], lcg_inv));
        }
        let mut a2 = vec![0u64; nu];
        a2[b] = 1;
        let mut a3 = vec![0u64; nu];
        for r in 1..nu {
            a3[r] = ctx.neg(y[r - 1]);
        }
        let mut e0 = vec![0u64; nu];
        e0[0] = 1;
        let (c1, c2, r1, r2) = compress(&ctx, [a1, a2, a3], [row0, rowb, e0])?;
        Ok(StructuredInverseEval { ctx, c1, c2, r1, r2 })
    }

    pub fn dim(&self) -> usize {
        self.c1.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> u64 {
        let f = &self.ctx;
        let k = r.min(c) + 1;
        let mut acc = 0u128;
        let mut terms = 0;
        for q in 0..k {
            acc += self.c1[r - q] as u128 * self.r1[c - q] as u128;
            acc += self.c2[r - q] as u128 * self.r2[c - q] as u128;
            terms += 2;
            if terms >= 14 {
                acc = f.reduce128(acc) as u128;
                terms = 0;
            }
        }
        f.reduce128(acc)
    }

    /// Rows `0..m`, columns `nu-m..nu`.
    pub fn top_right(&self, m: usize) -> Mat {
        let nu = self.dim();
        let mut h = Mat::zeros(self.ctx, m, m);
        for i in 0..m {
            for j in 0..m {
                h.set(i, j, self.entry(i, nu - m + j));
            }
        }
        h
    }

    pub fn full(&self) -> Mat {
        let nu = self.dim();
        let mut h = Mat::zeros(self.ctx, nu, nu);
        for i in 0..nu {
            for j in 0..nu {
                h.set(i, j, self.entry(i, j));
            }
        }
        h
    }
}

/// Top-right `m x m` block of `Syl(F, G)^{-1}`.
pub fn structured_inverse_eval(fa: &Poly, ga: &Poly, m: usize) -> Result<Mat> {
    let nu = (fa.deg() + ga.deg()).max(0) as usize;
    if m == 0 || m > nu {
        return Err(Error::BadParams(format!("block size {m} not in 1..={nu}")));
    }
    Ok(StructuredInverseEval::new(fa, ga)?.top_right(m))
}

/// Descending coefficient vector of `(u, v)`, `deg u < b`, `deg v < a`.
fn layout(u: &Poly, v: &Poly, a: usize, b: usize) -> Vec<u64> {
    let mut w = vec![0u64; a + b];
    for j in 0..b {
        w[j] = u.coeff(b - 1 - j);
    }
    for j in 0..a {
        w[b + j] = v.coeff(a - 1 - j);
    }
    w
}

fn rev_seq(v: &[u64]) -> Vec<u64> {
    v.iter().rev().copied().collect()
}

/// `coeff_i(z^k s mod G)` for `k < len`, via the linear recurrence of `G`.
fn projections(s: &Poly, g: &Poly, i: usize, len: usize) -> Vec<u64> {
    let ctx = *g.ctx();
    let b = g.deg() as usize;
    let gm = g.make_monic();
    let rev = gm.reverse(b + 1);
    let sl = s.len().max(1);
    let total = len + sl;
    let num = rev.shl(i).truncate(b);
    let e = num.mul_trunc(&inv_trunc(&rev, total).expect("reversed monic has unit constant term"), total);
    let srev = s.reverse(sl);
    let out = srev.mul_slice(&e, sl - 1, len);
    (0..len).map(|k| out.coeff(k)).collect::<Vec<_>>().into_iter().map(|c| ctx.reduce(c)).collect()
}

/// Rewrites `sum_i a_i b_i^T` (three terms, rank at most two) with two terms.
#[allow(clippy::type_complexity)]
fn compress(f: &FieldCtx, a: [Vec<u64>; 3], b: [Vec<u64>; 3]) -> Result<(Vec<u64>, Vec<u64>, Vec<u64>, Vec<u64>)> {
    let nu = a[0].len();
    let dep = |v: &[Vec<u64>; 3]| {
        let m = Mat::from_vec(*f, 3, nu, v.concat());
        let k = m.left_kernel();
        (k.rows() > 0).then(|| k.row(0).to_vec())
    };
    let fold = |keep: &[Vec<u64>; 3], other: &[Vec<u64>; 3], lam: &[u64]| {
        // other_k = -sum_{i != k} (lam_i / lam_k) other_i, folded into keep
        let k = (0..3).rev().find(|&i| lam[i] != 0).expect("nonzero dependency");
        let inv = f.inv(lam[k]);
        let idx: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let mut out = Vec::new();
        for &i in &idx {
            let c = f.mul(lam[i], inv);
            let v: Vec<u64> = (0..nu).map(|r| f.sub(keep[i][r], f.mul(c, keep[k][r]))).collect();
            out.push(v);
        }
        (out.remove(0), out.remove(0), other[idx[0]].clone(), other[idx[1]].clone())
    };
    if let Some(lam) = dep(&b) {
        let (c1, c2, r1, r2) = fold(&a, &b, &lam);
        return Ok((c1, c2, r1, r2));
    }
    if let Some(mu) = dep(&a) {
        let (r1, r2, c1, c2) = fold(&b, &a, &mu);
        return Ok((c1, c2, r1, r2));
    }
    Err(Error::GenericityFailure("displacement of rank three".into()))
}
