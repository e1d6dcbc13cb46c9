use super::{mul_slice, Poly};
use crate::error::{Error, Result};
use crate::modring::FieldCtx;

/// The points `1, alpha, ..., alpha^(len-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeomGrid {
    ctx: FieldCtx,
    alpha: u64,
    len: usize,
}

impl GeomGrid {
    /// Fails with `OrderTooSmall` unless the points are pairwise distinct.
    pub fn new(ctx: FieldCtx, alpha: u64, len: usize) -> Result<Self> {
        let alpha = ctx.reduce(alpha);
        if len > 1 && (alpha == 0 || ctx.order(alpha) < len as u64) {
            return Err(Error::OrderTooSmall(len));
        }
        Ok(GeomGrid { ctx, alpha, len })
    }

    /// A grid of `len` points with a deterministic ratio of large order.
    pub fn find(ctx: FieldCtx, len: usize) -> Result<Self> {
        if len as u64 > ctx.modulus() - 1 {
            return Err(Error::OrderTooSmall(len));
        }
        let alpha = ctx.order_at_least(len as u64).map_err(|_| Error::OrderTooSmall(len))?;
        Ok(GeomGrid { ctx, alpha, len })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn points(&self) -> Vec<u64> {
        powers(&self.ctx, self.alpha, self.len)
    }
}

pub(crate) fn powers(f: &FieldCtx, a: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut c = 1 % f.modulus();
    for _ in 0..n {
        out.push(c);
        c = f.mul(c, a);
    }
    out
}

/// `a^(k(k-1)/2)` for `k < n`.
fn chirp(f: &FieldCtx, a: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let (mut c, mut step) = (1, 1);
    for _ in 0..n {
        out.push(c);
        c = f.mul(c, step);
        step = f.mul(step, a);
    }
    out
}

/// `sum_j coeffs[j] * r^(jk)` for `k < m`, by the chirp transform.
pub(crate) fn chirp_eval(f: &FieldCtx, coeffs: &[u64], r: u64, m: usize) -> Vec<u64> {
    let n = coeffs.len();
    if n == 0 || m == 0 {
        return vec![0; m];
    }
    if n == 1 || r == 1 {
        let s = coeffs.iter().fold(0, |a, &c| f.add(a, c));
        let mut out = vec![s; m];
        if r != 1 {
            out[1..].fill(coeffs[0]);
        }
        return out;
    }
    let rinv = f.inv(r);
    let down = chirp(f, rinv, n.max(m));
    let up = chirp(f, r, n + m - 1);
    let u: Vec<u64> = (0..n).rev().map(|j| f.mul(coeffs[j], down[j])).collect();
    let mut s = mul_slice(f, &u, &up, n - 1, m);
    for (k, v) in s.iter_mut().enumerate() {
        *v = f.mul(*v, down[k]);
    }
    s
}

/// `[F(1), F(alpha), ..., F(alpha^(len-1))]`.
pub fn eval_geometric(p: &Poly, grid: &GeomGrid) -> Result<Vec<u64>> {
    if p.ctx() != grid.ctx() {
        return Err(Error::CtxMismatch);
    }
    Ok(chirp_eval(grid.ctx(), p.coeffs(), grid.alpha, grid.len))
}

/// The unique `F` of degree `< len` with `F(alpha^i) = vals[i]`.
pub fn interp_geometric(vals: &[u64], grid: &GeomGrid) -> Result<Poly> {
    let f = *grid.ctx();
    let n = grid.len;
    if vals.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: vals.len() });
    }
    if n == 0 || vals.iter().all(|&v| v == 0) {
        return Ok(Poly::zero(f));
    }
    let q = grid.alpha;
    if n == 1 {
        return Ok(Poly::constant(f, vals[0]));
    }
    let qp = powers(&f, q, n + 1);
    let tri = chirp(&f, q, n + 1);

    // prod_{t=1..j} (q^t - 1)
    let mut pre = vec![1; n];
    for j in 1..n {
        pre[j] = f.mul(pre[j - 1], f.sub(qp[j], 1));
    }
    let mut w: Vec<u64> = (0..n)
        .map(|i| {
            let tail = n - 1 - i;
            let mut v = f.mul(tri[i], pre[i]);
            v = f.mul(v, f.pow(q, (i * tail) as u64));
            v = f.mul(v, pre[tail]);
            if tail % 2 == 1 {
                f.neg(v)
            } else {
                v
            }
        })
        .collect();
    f.batch_inv(&mut w);
    let qinv = f.inv(q);
    let mut c: Vec<u64> = (0..n).map(|i| f.mul(vals[i], w[i])).collect();
    let mut s = 1;
    for ci in c.iter_mut() {
        *ci = f.mul(*ci, s);
        s = f.mul(s, qinv);
    }
    let series: Vec<u64> = chirp_eval(&f, &c, qinv, n).into_iter().map(|v| f.neg(v)).collect();

    let m = master_geometric(&f, n, &qp, &tri);
    Ok(Poly::new(f, mul_slice(&f, &m, &series, 0, n)))
}

/// Coefficients of `prod_{i<n} (x - q^i)` via q-binomials.
fn master_geometric(f: &FieldCtx, n: usize, qp: &[u64], tri: &[u64]) -> Vec<u64> {
    let mut m = vec![0; n + 1];
    if qp[n] == 1 {
        m[0] = f.neg(1);
        m[n] = 1;
        return m;
    }
    // [n, k]_q = prod_{j<k} (1 - q^(n-j)) / (1 - q^(j+1))
    let mut den: Vec<u64> = (1..=n).map(|j| f.sub(1, qp[j])).collect();
    f.batch_inv(&mut den);
    let mut binom = 1;
    for k in 0..=n {
        let mut v = f.mul(tri[k], binom);
        if k % 2 == 1 {
            v = f.neg(v);
        }
        m[n - k] = v;
        if k < n {
            binom = f.mul(f.mul(binom, f.sub(1, qp[n - k])), den[k]);
        }
    }
    m
}

/// Products of `(x - x_i)` over dyadic ranges of points.
#[derive(Clone, Debug)]
pub struct SubproductTree {
    ctx: FieldCtx,
    points: Vec<u64>,
    levels: Vec<Vec<Poly>>,
}

impl SubproductTree {
    pub fn new(ctx: FieldCtx, points: &[u64]) -> Self {
        let leaves: Vec<Poly> = points.iter().map(|&x| Poly::new(ctx, vec![ctx.neg(x), 1])).collect();
        let mut levels = vec![leaves];
        while levels.last().unwrap().len() > 1 {
            let prev = levels.last().unwrap();
            let next = prev
                .chunks(2)
                .map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() })
                .collect();
            levels.push(next);
        }
        SubproductTree { ctx, points: points.to_vec(), levels }
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    /// `prod (x - x_i)`.
    pub fn root(&self) -> Poly {
        self.levels.last().and_then(|l| l.first()).cloned().unwrap_or_else(|| Poly::one(self.ctx))
    }

    pub fn eval(&self, p: &Poly) -> Vec<u64> {
        let n = self.points.len();
        if n == 0 {
            return Vec::new();
        }
        if n <= 16 || p.len() <= 8 {
            return self.points.iter().map(|&x| p.eval(x)).collect();
        }
        let top = self.levels.len() - 1;
        let mut rems = vec![p.rem(&self.levels[top][0]).expect("monic modulus")];
        for lvl in (0..top).rev() {
            let nodes = &self.levels[lvl];
            let mut next = Vec::with_capacity(nodes.len());
            for (i, r) in rems.iter().enumerate() {
                for child in nodes.iter().skip(2 * i).take(2) {
                    next.push(r.rem(child).expect("monic modulus"));
                }
            }
            rems = next;
        }
        rems.iter().map(|r| r.coeff(0)).collect()
    }

    /// `sum_i c_i * prod_{k != i} (x - x_k)`.
    pub fn linear_combination(&self, c: &[u64]) -> Poly {
        let f = self.ctx;
        let mut cur: Vec<Poly> = c.iter().map(|&v| Poly::constant(f, v)).collect();
        for lvl in 0..self.levels.len() - 1 {
            let nodes = &self.levels[lvl];
            cur = cur
                .chunks(2)
                .enumerate()
                .map(|(i, pair)| {
                    if pair.len() == 2 {
                        &(&pair[0] * &nodes[2 * i + 1]) + &(&pair[1] * &nodes[2 * i])
                    } else {
                        pair[0].clone()
                    }
                })
                .collect();
        }
        cur.pop().unwrap_or_else(|| Poly::zero(f))
    }

    pub fn interp(&self, vals: &[u64]) -> Poly {
        let f = self.ctx;
        let mut w = self.eval(&self.root().derivative());
        f.batch_inv(&mut w);
        let c: Vec<u64> = vals.iter().zip(&w).map(|(&v, &wi)| f.mul(v, wi)).collect();
        self.linear_combination(&c)
    }
}

fn check_distinct(pts: &[u64]) -> Result<()> {
    let mut s = pts.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    Ok(())
}

/// Multipoint evaluation at arbitrary points.
pub fn eval_general(p: &Poly, pts: &[u64]) -> Result<Vec<u64>> {
    let f = *p.ctx();
    let pts: Vec<u64> = pts.iter().map(|&x| f.reduce(x)).collect();
    Ok(SubproductTree::new(f, &pts).eval(p))
}

/// Interpolant of degree `< pts.len()` at pairwise distinct points.
pub fn interp_general(ctx: FieldCtx, vals: &[u64], pts: &[u64]) -> Result<Poly> {
    if vals.len() != pts.len() {
        return Err(Error::LengthMismatch { expected: pts.len(), got: vals.len() });
    }
    let pts: Vec<u64> = pts.iter().map(|&x| ctx.reduce(x)).collect();
    check_distinct(&pts)?;
    if pts.is_empty() {
        return Ok(Poly::zero(ctx));
    }
    Ok(SubproductTree::new(ctx, &pts).interp(vals))
}
