use super::{vec_ratrec, RatSolution};
use crate::error::{Error, Result};
use crate::polmat::PolMat;
use crate::upoly::Poly;

/// `S` with `A S = I mod x^k`, by Newton iteration.
pub fn newton_inv_trunc(a: &PolMat, k: usize) -> Result<PolMat> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::NotSquare);
    }
    let ctx = *a.ctx();
    if k == 0 {
        return Ok(PolMat::zeros(ctx, n, n));
    }
    let x0 = a.coeff(0).inverse().map_err(|_| Error::SingularAtZero)?;
    let mut x = PolMat::from_const(&x0);
    let id = PolMat::identity(ctx, n);
    let mut l = 1;
    while l < k {
        let l2 = (2 * l).min(k);
        let e = a.mul_trunc(&x, l2).sub(&id);
        x = x.sub(&x.mul_trunc(&e, l2));
        l = l2;
    }
    Ok(x)
}

fn check_system(a: &PolMat, b: &PolMat) -> Result<()> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare);
    }
    if b.rows() != a.rows() || b.cols() != 1 {
        return Err(Error::DimMismatch(format!("right-hand side is {}x{}, expected {}x1", b.rows(), b.cols(), a.rows())));
    }
    Ok(())
}

/// Degree bounds `(deg f, deg u)` from Cramer's rule.
fn cramer_bounds(a: &PolMat, b: &PolMat) -> (usize, usize) {
    let n = a.rows();
    let cd: Vec<i64> = (0..n).map(|j| a.col_deg(j).max(0)).collect();
    let rd: Vec<i64> = (0..n).map(|i| a.row_deg(i).max(0)).collect();
    let e = b.deg().max(0);
    let df = cd.iter().sum::<i64>().min(rd.iter().sum());
    let by_cols = cd.iter().sum::<i64>() - cd.iter().min().copied().unwrap_or(0) + e;
    let by_rows: i64 = (0..n).map(|i| rd[i].max(b.get(i, 0).deg())).sum();
    (df as usize, by_cols.min(by_rows) as usize)
}

fn reconstruct(a: &PolMat, b: &PolMat, expand: impl Fn(usize) -> Result<PolMat>) -> Result<RatSolution> {
    let (df, du) = cramer_bounds(a, b);
    // one retry at doubled precision
    for scale in [1, 2] {
        let (df, du) = (df * scale, du * scale + scale - 1);
        let k = df + du + 1;
        let v = expand(k)?;
        if let Ok((u, f)) = vec_ratrec(&v, k, df) {
            let sol = RatSolution { u, f };
            if sol.verify(a, b) {
                return Ok(sol);
            }
        }
    }
    Err(Error::SingularMatrix)
}

/// Dixon lifting: expands `A^{-1} b` with steps of `d + 1` coefficients,
/// then reconstructs the fraction.
pub fn dixon_solve(a: &PolMat, b: &PolMat) -> Result<RatSolution> {
    check_system(a, b)?;
    let step = a.deg().max(0) as usize + 1;
    let s = newton_inv_trunc(a, step)?;
    reconstruct(a, b, |k| Ok(dixon_expand(a, &s, b, step, k)))
}

fn dixon_expand(a: &PolMat, s: &PolMat, b: &PolMat, step: usize, k: usize) -> PolMat {
    let ctx = *a.ctx();
    let n = a.rows();
    let mut out = vec![vec![0u64; k]; n];
    let mut r = b.clone();
    let mut off = 0;
    while off < k {
        let c = s.mul_trunc(&r, step);
        for (i, row) in out.iter_mut().enumerate() {
            for (j, &x) in c.get(i, 0).coeffs().iter().enumerate() {
                if off + j < k {
                    row[off + j] = x;
                }
            }
        }
        r = r.sub(&a.mul(&c)).shr(step);
        off += step;
    }
    PolMat::from_entries(ctx, n, 1, out.into_iter().map(|c| Poly::new(ctx, c)).collect())
}

struct Level {
    t: usize,
    /// `R_t` with `A (A^{-1} mod x^t) = I - x^t R_t`.
    r: PolMat,
    r_prev: PolMat,
    /// Coefficients `t-d+1 .. t-1` of `A^{-1}`, packed as a polynomial matrix.
    below: PolMat,
}

/// Residues of `A^{-1}` at `t = d, 2d, 4d, ...`, computed by doubling.
///
/// For `a, b >= 0`: `R_{a+b} = R_b R_a + A H`, with `H` the quotient by `x^b`
/// of `(A^{-1} mod x^b) R_a`, which only involves the `d - 1` coefficients of
/// `A^{-1}` just below `b`. Those come from `V R_{b-d}`, `V = A^{-1} mod x^d`.
pub struct HighOrderLifting {
    a: PolMat,
    d: usize,
    v: PolMat,
    levels: Vec<Level>,
}

impl HighOrderLifting {
    pub fn new(a: &PolMat) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(Error::NotSquare);
        }
        let ctx = *a.ctx();
        let n = a.rows();
        let d = a.deg().max(1) as usize;
        let v = newton_inv_trunc(a, d)?;
        let id = PolMat::identity(ctx, n);
        let r = id.sub(&a.mul(&v)).shr(d);
        let below = v.slice(1, d - 1);
        Ok(HighOrderLifting { a: a.clone(), d, v, levels: vec![Level { t: d, r, r_prev: id, below }] })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `(A^{-1} mod x^t) Y` divided by `x^t`, for `deg Y < d`.
    fn high_part(&self, lvl: &Level, y: &PolMat) -> PolMat {
        if self.d == 1 {
            return PolMat::zeros(*self.a.ctx(), self.a.rows(), y.cols());
        }
        lvl.below.mul_slice(y, self.d - 1, self.d - 1)
    }

    /// `R_t Y + A H`: the residue of `A^{-1} Y` at `x^t`, for `deg Y < d`.
    fn residue_of(&self, lvl: &Level, y: &PolMat) -> PolMat {
        let h = self.high_part(lvl, y);
        let out = lvl.r.mul(y).add(&self.a.mul(&h));
        debug_assert!(out.deg() < self.d as i64);
        out
    }

    fn ensure_levels(&mut self, count: usize) {
        while self.levels.len() < count {
            let l = self.levels.last().expect("level zero exists");
            let r = self.residue_of(l, &l.r);
            let r_prev = self.residue_of(l, &l.r_prev);
            let below = self.v.mul_trunc(&r_prev, self.d).slice(1, self.d - 1);
            let t = 2 * l.t;
            self.levels.push(Level { t, r, r_prev, below });
        }
    }

    /// Coefficients `t_i - d .. t_i + d - 1` of `A^{-1}`, `t_i = 2^i d`.
    pub fn slice(&mut self, i: usize) -> PolMat {
        self.ensure_levels(i + 1);
        let l = &self.levels[i];
        let d = self.d;
        self.v.mul_trunc(&l.r_prev, d).add(&self.v.mul_trunc(&l.r, d).shl(d))
    }

    /// Start degree of slice `i`.
    pub fn slice_start(&self, i: usize) -> usize {
        (self.d << i) - self.d
    }

    /// `A^{-1} Y mod x^k`.
    pub fn expand(&mut self, y: &PolMat, k: usize) -> PolMat {
        let ctx = *self.a.ctx();
        let (n, d) = (self.a.rows(), self.d);
        let chunks = (y.deg().max(0) as usize) / d + 1;
        let mut block = PolMat::zeros(ctx, n, 0);
        let mut offs = Vec::new();
        for c in 0..chunks {
            block = block.hstack(&y.slice(c * d, d));
            offs.extend(std::iter::repeat(c * d).take(y.cols()));
        }
        let mut levels = 0;
        while d << levels < k {
            levels += 1;
        }
        self.ensure_levels(levels);
        for i in (0..levels).rev() {
            let lvl = &self.levels[i];
            let hi = self.residue_of(lvl, &block);
            let t = lvl.t;
            block = block.hstack(&hi);
            offs.extend_from_within(..);
            let half = offs.len() / 2;
            offs[half..].iter_mut().for_each(|o| *o += t);
        }
        let z = self.v.mul_trunc(&block, d);
        let mut out = vec![vec![0u64; k]; n * y.cols()];
        for (col, &o) in offs.iter().enumerate() {
            let target = col % y.cols();
            for i in 0..n {
                let dst = &mut out[i * y.cols() + target];
                for (j, &x) in z.get(i, col).coeffs().iter().enumerate() {
                    if o + j < k {
                        dst[o + j] = ctx.add(dst[o + j], x);
                    }
                }
            }
        }
        PolMat::from_entries(ctx, n, y.cols(), out.into_iter().map(|c| Poly::new(ctx, c)).collect())
    }
}

/// Same contract as [`dixon_solve`], expanding `A^{-1} b` by high-order lifting.
pub fn high_order_solve(a: &PolMat, b: &PolMat) -> Result<RatSolution> {
    check_system(a, b)?;
    let hl = std::cell::RefCell::new(HighOrderLifting::new(a)?);
    reconstruct(a, b, |k| Ok(hl.borrow_mut().expand(b, k)))
}
