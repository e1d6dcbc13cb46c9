use crate::error::{Error, Result};
use crate::forms::Shift;
use crate::polmat::PolMat;
use crate::tuning::tuning;
use crate::upoly::Poly;
use crate::appint::pmbasis_with;

/// Vector rational reconstruction: from `v mod x^k`, finds `u / f = v` with
/// `deg f <= df`, `deg u < k - df`, `f` monic of minimal degree.
pub fn vec_ratrec(v: &PolMat, k: usize, df: usize) -> Result<(PolMat, Poly)> {
    if v.cols() != 1 {
        return Err(Error::DimMismatch(format!("expected a column vector, got {} columns", v.cols())));
    }
    if df >= k {
        return Err(Error::InsufficientPrecision);
    }
    let m = v.rows();
    let ctx = *v.ctx();
    let du = k - 1 - df;
    // rows [f | u] of [v^T; -I] vanishing mod x^k; the shift weighs f against u
    let fm = v.truncate(k).transpose().vstack(&PolMat::identity(ctx, m).neg());
    let mut s = vec![du as i64; m + 1];
    s[1..].fill(df as i64);
    let (p, degs) = pmbasis_with(&fm, k, &Shift::new(s), tuning().pmbasis_threshold);
    let best = (0..=m)
        .filter(|&i| !p.get(i, 0).is_zero() && degs[i] < k as i64)
        .min_by_key(|&i| degs[i])
        .ok_or(Error::InsufficientPrecision)?;
    let f = p.get(best, 0).clone();
    let u = PolMat::from_entries(ctx, m, 1, p.row(best)[1..].to_vec());
    if f.deg() > df as i64 || u.deg() > du as i64 {
        return Err(Error::InsufficientPrecision);
    }
    let c = ctx.inv(f.lc());
    Ok((u.scale(c), f.scale(c)))
}
