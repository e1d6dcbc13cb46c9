//! Brute-force reference implementations for small instances.
//!
//! Everything here is plain Gaussian elimination and schoolbook polynomial
//! arithmetic; nothing calls the fast algorithms of the other modules.

use crate::error::{Error, Result};
use crate::forms::Shift;
use crate::matrix::Mat;
use crate::modring::FieldCtx;
use crate::polmat::PolMat;
use crate::upoly::Poly;

/// Maximum number of unknowns in a linearized system.
pub const MAX_UNKNOWNS: usize = 512;
/// Maximum dimension for dense determinant, inverse and charpoly oracles.
pub const MAX_DENSE: usize = 64;

type Rows = Vec<Vec<u64>>;

/// Row echelon form in place; returns pivot columns.
fn echelon(f: &FieldCtx, a: &mut Rows, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..a[i].len() {
                    let v = f.mul(k, a[r][j]);
                    a[i][j] = f.sub(a[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{ x : A x = 0 }` for `A` given by rows over `ncols` unknowns.
fn nullspace(f: &FieldCtx, a: &Rows, ncols: usize) -> Rows {
    let mut e = a.clone();
    let pivots = echelon(f, &mut e, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(e[r][free]);
        }
        out.push(v);
    }
    out
}

fn rank_of(f: &FieldCtx, a: &Rows, ncols: usize) -> usize {
    let mut e = a.clone();
    echelon(f, &mut e, ncols).len()
}

fn pmul(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn horner(f: &FieldCtx, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Lagrange interpolation in `O(n^2)`.
fn lagrange(f: &FieldCtx, pts: &[u64], vals: &[u64]) -> Vec<u64> {
    let n = pts.len();
    let mut out = vec![0; n];
    for i in 0..n {
        let mut num = vec![1u64];
        let mut den = 1;
        for j in 0..n {
            if i != j {
                num = pmul(f, &num, &[f.neg(pts[j]), 1]);
                den = f.mul(den, f.sub(pts[i], pts[j]));
            }
        }
        let c = f.mul(vals[i], f.inv(den));
        for (o, &v) in out.iter_mut().zip(&num) {
            *o = f.add(*o, f.mul(c, v));
        }
    }
    out
}

fn det_rows(f: &FieldCtx, mut a: Rows) -> u64 {
    let n = a.len();
    let mut det = 1;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else { return 0 };
        if p != c {
            a.swap(p, c);
            det = f.neg(det);
        }
        det = f.mul(det, a[c][c]);
        let inv = f.inv(a[c][c]);
        for i in c + 1..n {
            let k = f.mul(a[i][c], inv);
            if k != 0 {
                for j in c..n {
                    let v = f.mul(k, a[c][j]);
                    a[i][j] = f.sub(a[i][j], v);
                }
            }
        }
    }
    det
}

fn mat_rows(m: &Mat) -> Rows {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn too_large(what: &str, got: usize, cap: usize) -> Error {
    Error::TooLarge(format!("{what}: {got} exceeds oracle cap {cap}"))
}

/// The solution space, truncated at degree `D`, of a linear module problem.
#[derive(Clone, Debug)]
pub struct LinearizedModule {
    ctx: FieldCtx,
    m: usize,
    d: usize,
    /// Constraint rows over the `m (D + 1)` unknowns `p_{i,k}` at `i (D + 1) + k`.
    pub constraints: Rows,
    pub nullspace: Rows,
}

impl LinearizedModule {
    fn build(ctx: FieldCtx, m: usize, d: usize, constraints: Rows) -> Self {
        let nullspace = nullspace(&ctx, &constraints, m * (d + 1));
        LinearizedModule { ctx, m, d, constraints, nullspace }
    }

    pub fn dim(&self) -> usize {
        self.nullspace.len()
    }

    fn flatten(&self, v: &[Poly]) -> Option<Vec<u64>> {
        if v.iter().any(|p| p.deg() > self.d as i64) {
            return None;
        }
        let mut x = vec![0; self.m * (self.d + 1)];
        for (i, p) in v.iter().enumerate() {
            for k in 0..=self.d {
                x[i * (self.d + 1) + k] = p.coeff(k);
            }
        }
        Some(x)
    }

    /// Degree at most `D` and satisfies every constraint.
    pub fn contains(&self, v: &[Poly]) -> bool {
        let Some(x) = self.flatten(v) else { return false };
        let f = self.ctx;
        self.constraints.iter().all(|row| row.iter().zip(&x).fold(0, |a, (&r, &y)| f.add(a, f.mul(r, y))) == 0)
    }

    /// Dimension of the span of the given rows (all assumed members).
    pub fn span_dim(&self, rows: &[Vec<Poly>]) -> usize {
        let xs: Rows = rows.iter().filter_map(|r| self.flatten(r)).collect();
        if xs.is_empty() {
            return 0;
        }
        rank_of(&self.ctx, &xs, self.m * (self.d + 1))
    }
}

/// Linearization of `{ p : p F = 0 mod x^sigma, deg p <= D }`.
pub fn oracle_approx_module(fm: &PolMat, sigma: usize, d: usize) -> Result<LinearizedModule> {
    let f = *fm.ctx();
    let (m, n) = (fm.rows(), fm.cols());
    let unknowns = m * (d + 1);
    if unknowns > MAX_UNKNOWNS {
        return Err(too_large("unknowns", unknowns, MAX_UNKNOWNS));
    }
    let mut rows = Vec::new();
    for j in 0..n {
        for t in 0..sigma {
            let mut r = vec![0; unknowns];
            for i in 0..m {
                for k in 0..=d.min(t) {
                    r[i * (d + 1) + k] = fm.get(i, j).coeff(t - k);
                }
            }
            rows.push(r);
        }
    }
    Ok(LinearizedModule::build(f, m, d, rows))
}

/// Linearization of `{ p : p(alpha_l) E_l = 0 for all l, deg p <= D }`.
pub fn oracle_interp_module(e: &[Mat], alpha: &[u64], d: usize) -> Result<LinearizedModule> {
    let Some(first) = e.first() else {
        return Err(Error::BadParams("no evaluation points".into()));
    };
    let f = *first.ctx();
    let (m, n) = (first.rows(), first.cols());
    let unknowns = m * (d + 1);
    if unknowns > MAX_UNKNOWNS {
        return Err(too_large("unknowns", unknowns, MAX_UNKNOWNS));
    }
    let mut rows = Vec::new();
    for (el, &a) in e.iter().zip(alpha) {
        for j in 0..n {
            let mut r = vec![0; unknowns];
            for i in 0..m {
                let mut pw = 1;
                for k in 0..=d {
                    r[i * (d + 1) + k] = f.mul(pw, el.get(i, j));
                    pw = f.mul(pw, a);
                }
            }
            rows.push(r);
        }
    }
    Ok(LinearizedModule::build(f, m, d, rows))
}

/// Rank of `F` over `F_p(x)`, from evaluations at enough points.
pub fn oracle_rank(fm: &PolMat) -> Result<usize> {
    let f = *fm.ctx();
    let r = fm.rows().min(fm.cols());
    let npts = r * (fm.deg().max(0) as usize) + 1;
    if npts as u64 >= f.modulus() {
        return Err(Error::FieldTooSmall(format!("need {npts} distinct points")));
    }
    let mut best = 0;
    for a in 1..=npts as u64 {
        let rows: Rows = (0..fm.rows()).map(|i| fm.row(i).iter().map(|p| horner(&f, p.coeffs(), a)).collect()).collect();
        best = best.max(rank_of(&f, &rows, fm.cols()));
        if best == r {
            break;
        }
    }
    Ok(best)
}

fn kernel_dim_at(fm: &PolMat, s: &[i64], delta: i64) -> Result<usize> {
    let f = *fm.ctx();
    let (m, n) = (fm.rows(), fm.cols());
    let caps: Vec<i64> = s.iter().map(|&si| delta - si).collect();
    let offs: Vec<usize> = caps
        .iter()
        .scan(0usize, |acc, &c| {
            let o = *acc;
            *acc += (c + 1).max(0) as usize;
            Some(o)
        })
        .collect();
    let unknowns: usize = caps.iter().map(|&c| (c + 1).max(0) as usize).sum();
    if unknowns > MAX_UNKNOWNS {
        return Err(too_large("unknowns", unknowns, MAX_UNKNOWNS));
    }
    if unknowns == 0 {
        return Ok(0);
    }
    let top = caps.iter().copied().max().unwrap_or(0).max(0) as usize + fm.deg().max(0) as usize;
    let mut rows = Vec::new();
    for j in 0..n {
        for t in 0..=top {
            let mut r = vec![0; unknowns];
            for i in 0..m {
                for k in 0..=caps[i].min(t as i64) {
                    if k >= 0 {
                        r[offs[i] + k as usize] = fm.get(i, j).coeff(t - k as usize);
                    }
                }
            }
            rows.push(r);
        }
    }
    Ok(unknowns - rank_of(&f, &rows, unknowns))
}

/// Shifted degrees of a minimal (`s`-reduced) left kernel basis of `F`,
/// sorted increasingly.
///
/// With `N(delta)` the dimension of kernel vectors of `s`-degree at most
/// `delta`, the number of basis vectors of degree exactly `delta` is the
/// second difference of `N`.
pub fn oracle_min_kernel(fm: &PolMat, s: &Shift) -> Result<Vec<i64>> {
    if s.len() != fm.rows() {
        return Err(Error::LengthMismatch { expected: fm.rows(), got: s.len() });
    }
    let k = fm.rows() - oracle_rank(fm)?;
    let sv = s.as_slice();
    let mut out = Vec::new();
    let mut delta = s.min();
    let (mut n1, mut n2) = (0usize, 0usize);
    while out.len() < k {
        let n0 = kernel_dim_at(fm, sv, delta)?;
        let count = n0 as i64 - 2 * n1 as i64 + n2 as i64;
        for _ in 0..count.max(0) {
            out.push(delta);
        }
        n2 = n1;
        n1 = n0;
        delta += 1;
    }
    Ok(out)
}

/// Minimal monic `f` such that `f A^{-1} b` is a polynomial vector.
pub fn oracle_min_denominator(a: &PolMat, b: &PolMat) -> Result<Poly> {
    let f = *a.ctx();
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::NotSquare);
    }
    if b.rows() != n || b.cols() != 1 {
        return Err(Error::DimMismatch("b must be an n x 1 column".into()));
    }
    let d = a.deg().max(0) as usize;
    let db = b.deg().max(0) as usize;
    let max_k = n * d;
    for k in 0..=max_k {
        let du = k + (n - 1) * d + db;
        let unknowns = (k + 1) + n * (du + 1);
        if unknowns > MAX_UNKNOWNS {
            return Err(too_large("unknowns", unknowns, MAX_UNKNOWNS));
        }
        // unknowns: f_0..f_k, then u_j coefficients; A u - f b = 0
        let top = du + d;
        let mut rows = Vec::new();
        for i in 0..n {
            for t in 0..=top.max(k + db) {
                let mut r = vec![0; unknowns];
                for c in 0..=k.min(t) {
                    r[c] = f.neg(b.get(i, 0).coeff(t - c));
                }
                for j in 0..n {
                    for c in 0..=du.min(t) {
                        r[k + 1 + j * (du + 1) + c] = a.get(i, j).coeff(t - c);
                    }
                }
                rows.push(r);
            }
        }
        for v in nullspace(&f, &rows, unknowns) {
            if v[k] != 0 {
                let inv = f.inv(v[k]);
                return Ok(Poly::new(f, v[..=k].iter().map(|&c| f.mul(c, inv)).collect()));
            }
        }
    }
    Err(Error::SingularMatrix)
}

pub fn oracle_dense_det(a: &Mat) -> Result<u64> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare);
    }
    if a.rows() > MAX_DENSE {
        return Err(too_large("dimension", a.rows(), MAX_DENSE));
    }
    Ok(det_rows(a.ctx(), mat_rows(a)))
}

pub fn oracle_dense_inverse(a: &Mat) -> Result<Mat> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::NotSquare);
    }
    if n > MAX_DENSE {
        return Err(too_large("dimension", n, MAX_DENSE));
    }
    let f = *a.ctx();
    let mut aug: Rows = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let piv = echelon(&f, &mut aug, n);
    if piv.len() < n {
        return Err(Error::SingularMatrix);
    }
    Ok(Mat::from_vec(f, n, n, aug.into_iter().flat_map(|r| r[n..].to_vec()).collect()))
}

/// `det(x I - M)` from `n + 1` evaluations.
pub fn oracle_charpoly(m: &Mat) -> Result<Poly> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::NotSquare);
    }
    if n > MAX_DENSE {
        return Err(too_large("dimension", n, MAX_DENSE));
    }
    let f = *m.ctx();
    if (n as u64) >= f.modulus() {
        return Err(Error::FieldTooSmall(format!("need {} points", n + 1)));
    }
    let pts: Vec<u64> = (0..=n as u64).collect();
    let vals: Vec<u64> = pts
        .iter()
        .map(|&a| {
            let rows: Rows = (0..n)
                .map(|i| (0..n).map(|j| f.sub(if i == j { a } else { 0 }, m.get(i, j))).collect())
                .collect();
            det_rows(&f, rows)
        })
        .collect();
    Ok(Poly::new(f, lagrange(&f, &pts, &vals)))
}

/// Determinant of a polynomial matrix from evaluations at `sum rdeg + 1` points.
pub fn oracle_poly_det(a: &PolMat) -> Result<Poly> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::NotSquare);
    }
    if n > MAX_DENSE {
        return Err(too_large("dimension", n, MAX_DENSE));
    }
    let f = *a.ctx();
    if (0..n).any(|i| a.row_deg(i) < 0) {
        return Ok(Poly::zero(f));
    }
    let bound: usize = (0..n).map(|i| a.row_deg(i) as usize).sum();
    if bound as u64 >= f.modulus() {
        return Err(Error::FieldTooSmall(format!("need {} points", bound + 1)));
    }
    let pts: Vec<u64> = (0..=bound as u64).collect();
    let vals: Vec<u64> = pts
        .iter()
        .map(|&x| {
            let rows: Rows = (0..n).map(|i| a.row(i).iter().map(|p| horner(&f, p.coeffs(), x)).collect()).collect();
            det_rows(&f, rows)
        })
        .collect();
    Ok(Poly::new(f, lagrange(&f, &pts, &vals)))
}

/// Sylvester matrix of `F` (degree `a`) and `G` (degree `b`): `a + b` rows
/// indexed by descending powers of `z`; column `j < b` holds
/// `z^(b-1-j) F`, column `b + j` holds `z^(a-1-j) G`.
pub fn oracle_sylvester(fp: &Poly, gp: &Poly) -> Result<Mat> {
    let f = *fp.ctx();
    if fp.is_zero() || gp.is_zero() {
        return Err(Error::BadParams("Sylvester matrix of a zero polynomial".into()));
    }
    let (a, b) = (fp.deg() as usize, gp.deg() as usize);
    let nu = a + b;
    if nu > MAX_DENSE {
        return Err(too_large("dimension", nu, MAX_DENSE));
    }
    let mut s = Mat::zeros(f, nu, nu);
    for j in 0..b {
        // z^(b-1-j) F has top power a + b - 1 - j, at row j
        for k in 0..=a {
            s.set(j + (a - k), j, fp.coeff(k));
        }
    }
    for j in 0..a {
        for k in 0..=b {
            s.set(j + (b - k), b + j, gp.coeff(k));
        }
    }
    Ok(s)
}

/// Whether `v` lies in the row module of the nonsingular square `B`, via
/// `v adj(B) = 0 mod det(B)`.
pub fn oracle_in_row_module(v: &[Poly], b: &PolMat) -> Result<bool> {
    let n = b.rows();
    if n != b.cols() {
        return Err(Error::NotSquare);
    }
    if v.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: v.len() });
    }
    let f = *b.ctx();
    let det = oracle_poly_det(b)?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    // v B^{-1} = v adj(B) / det(B) must be polynomial
    for j in 0..n {
        let mut acc: Vec<u64> = Vec::new();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let cof = cofactor(b, j, i)?;
            let t = pmul(&f, vi.coeffs(), cof.coeffs());
            if acc.len() < t.len() {
                acc.resize(t.len(), 0);
            }
            for (x, y) in acc.iter_mut().zip(t) {
                *x = f.add(*x, y);
            }
        }
        if !prem_is_zero(&f, acc, det.coeffs()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(-1)^(i+j)` times the minor of `B` without row `i` and column `j`.
fn cofactor(b: &PolMat, i: usize, j: usize) -> Result<Poly> {
    let n = b.rows();
    let f = *b.ctx();
    if n == 1 {
        return Ok(Poly::one(f));
    }
    let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    let minor = b.select_rows(&rows).select_cols(&cols);
    let d = oracle_poly_det(&minor)?;
    Ok(if (i + j) % 2 == 1 { d.scale(f.neg(1)) } else { d })
}

fn prem_is_zero(f: &FieldCtx, mut a: Vec<u64>, d: &[u64]) -> bool {
    while a.last() == Some(&0) {
        a.pop();
    }
    let m = d.len();
    let inv = f.inv(d[m - 1]);
    while a.len() >= m {
        let c = f.mul(*a.last().unwrap(), inv);
        let off = a.len() - m;
        for k in 0..m {
            a[off + k] = f.sub(a[off + k], f.mul(c, d[k]));
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a.is_empty()
}
