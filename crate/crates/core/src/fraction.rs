//! Minimal left matrix fraction descriptions from truncated expansions or
//! from values at points.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::appint::{pm_intbasis, pmbasis, EvalPoints};
use crate::error::{Error, Result};
use crate::forms::Shift;
use crate::matrix::Mat;
use crate::modring::FieldCtx;
use crate::polmat::PolMat;

/// What the expansion was reduced modulo.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modulus {
    XPower(usize),
    Points(EvalPoints),
}

/// `H = Q^{-1} R` with `Q` in 0-ordered weak Popov form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionDesc {
    pub q: PolMat,
    pub r: PolMat,
    pub modulus: Modulus,
}

impl FractionDesc {
    /// Probabilistic test of `Q^{-1} R = Q2^{-1} R2`, comparing values at
    /// random points where both denominators are invertible.
    pub fn same_fraction(&self, other: &FractionDesc, rng: &mut impl rand::Rng) -> bool {
        let f = *self.q.ctx();
        for _ in 0..4 {
            let a = f.random(rng);
            let (Ok(q1), Ok(q2)) = (self.q.eval(a).inverse(), other.q.eval(a).inverse()) else {
                continue;
            };
            if q1.mul(&self.r.eval(a)) != q2.mul(&other.r.eval(a)) {
                return false;
            }
        }
        true
    }
}

fn verification_points(f: &FieldCtx, k: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.modulus());
    (0..k).map(|_| f.random(&mut rng)).collect()
}

fn split_and_check(p: &PolMat, n: usize, d: usize, modulus: Modulus) -> Result<FractionDesc> {
    let top = p.row_range(0, n);
    if let Some(i) = (0..n).find(|&i| top.row_deg(i) > d as i64) {
        return Err(Error::ReconstructionFailed(format!(
            "row {i} has degree {} above the bound {d}",
            top.row_deg(i)
        )));
    }
    let q = top.col_range(0, n);
    let r = top.col_range(n, 2 * n);
    let f = *p.ctx();
    if n > 0 && verification_points(&f, 3).into_iter().all(|a| q.eval(a).det().unwrap_or(0) == 0) {
        return Err(Error::ReconstructionFailed("denominator is singular at all check points".into()));
    }
    Ok(FractionDesc { q, r, modulus })
}

/// Minimal left description of `H` from `Hbar = H mod x^(2D)`.
pub fn fracrec_series(hbar: &PolMat, d: usize) -> Result<FractionDesc> {
    let n = hbar.rows();
    if hbar.cols() != n {
        return Err(Error::NotSquare);
    }
    let f = *hbar.ctx();
    let sigma = 2 * d;
    let fm = hbar.truncate(sigma).vstack(&PolMat::identity(f, n).neg());
    let p = pmbasis(&fm, sigma, &Shift::zeros(2 * n));
    split_and_check(&p, n, d, Modulus::XPower(sigma))
}

/// Minimal left description of `H` from its values at `2D` distinct points.
pub fn fracrec_points(hvals: &[Mat], pts: &EvalPoints) -> Result<FractionDesc> {
    let Some(h0) = hvals.first() else {
        return Err(Error::BadParams("no values given".into()));
    };
    let n = h0.rows();
    if h0.cols() != n {
        return Err(Error::NotSquare);
    }
    if hvals.len() != pts.len() {
        return Err(Error::LengthMismatch { expected: pts.len(), got: hvals.len() });
    }
    let f = *h0.ctx();
    let minus_id = Mat::identity(f, n).scale(f.neg(1));
    let e: Vec<Mat> = hvals
        .iter()
        .map(|h| {
            let mut s = Mat::zeros(f, 2 * n, n);
            for i in 0..n {
                s.row_mut(i).copy_from_slice(h.row(i));
                s.row_mut(n + i).copy_from_slice(minus_id.row(i));
            }
            s
        })
        .collect();
    let p = pm_intbasis(&e, pts, &Shift::zeros(2 * n))?;
    split_and_check(&p, n, hvals.len() / 2, Modulus::Points(pts.clone()))
}

/// Right description `H = R Q^{-1}`, by transposition; returns `(R, Q)`.
pub fn fracrec_series_right(hbar: &PolMat, d: usize) -> Result<(PolMat, PolMat)> {
    let left = fracrec_series(&hbar.transpose(), d)?;
    Ok((left.r.transpose(), left.q.transpose()))
}
