use super::{mul_slice, Poly};
use crate::error::{Error, Result};

/// `G` with `F * G = 1 mod x^k`, by Newton iteration.
pub fn inv_trunc(f: &Poly, k: usize) -> Result<Poly> {
    let ctx = *f.ctx();
    if f.coeff(0) == 0 {
        return Err(Error::NotInvertibleAtZero);
    }
    if k == 0 {
        return Ok(Poly::zero(ctx));
    }
    let mut g = vec![ctx.inv(f.coeff(0))];
    let mut prec = 1;
    while prec < k {
        let next = (2 * prec).min(k);
        let fc = &f.coeffs()[..f.len().min(next)];
        // F*G = 1 + x^prec * e mod x^next
        let e = mul_slice(&ctx, fc, &g, prec, next - prec);
        let ge = mul_slice(&ctx, &g, &e, 0, next - prec);
        g.extend(ge.into_iter().map(|c| ctx.neg(c)));
        prec = next;
    }
    Ok(Poly::new(ctx, g))
}

pub(super) fn divrem(a: &Poly, d: &Poly) -> Result<(Poly, Poly)> {
    let ctx = *a.ctx();
    if d.is_zero() {
        return Err(Error::OutOfRange("division by the zero polynomial".into()));
    }
    if a.deg() < d.deg() {
        return Ok((Poly::zero(ctx), a.clone()));
    }
    let n = a.len();
    let m = d.len();
    let qlen = n - m + 1;
    if m > 48 && qlen > 48 {
        let ra = a.reverse(n).truncate(qlen);
        let rd = d.reverse(m);
        let inv = inv_trunc(&rd, qlen)?;
        let q = ra.mul_trunc(&inv, qlen).reverse(qlen);
        let r = (a - &q.mul_trunc(d, m - 1)).truncate(m - 1);
        return Ok((q, r));
    }
    let lc_inv = ctx.inv(d.lc());
    let mut r = a.coeffs().to_vec();
    let mut q = vec![0; qlen];
    let dc = d.coeffs();
    for i in (0..qlen).rev() {
        let c = ctx.mul(r[i + m - 1], lc_inv);
        q[i] = c;
        if c != 0 {
            for j in 0..m {
                r[i + j] = ctx.sub(r[i + j], ctx.mul(c, dc[j]));
            }
        }
    }
    r.truncate(m - 1);
    Ok((Poly::new(ctx, q), Poly::new(ctx, r)))
}

/// Extended Euclid: monic `g = gcd(F, G) = s F + t G`.
pub fn xgcd(f: &Poly, g: &Poly) -> Result<(Poly, Poly, Poly)> {
    if f.ctx() != g.ctx() {
        return Err(Error::CtxMismatch);
    }
    let ctx = *f.ctx();
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero(ctx));
    let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
    while !r1.is_zero() {
        let (q, r) = divrem(&r0, &r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let c = ctx.inv(r0.lc());
    Ok((r0.scale(c), s0.scale(c), t0.scale(c)))
}
