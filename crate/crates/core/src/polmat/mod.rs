//! Matrices of univariate polynomials.

mod mul;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::modring::FieldCtx;
use crate::upoly::Poly;

pub use mul::{Multiplier, Strategy};

/// Dense `rows x cols` matrix over `F_p[x]`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolMat {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    deg: i64,
}

/// The same data as a polynomial with matrix coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatPolyView {
    pub ctx: FieldCtx,
    pub rows: usize,
    pub cols: usize,
    /// `coeffs[k]` is the coefficient of `x^k`; no trailing zero matrices.
    pub coeffs: Vec<Mat>,
}

impl PolMat {
    pub fn from_entries(ctx: FieldCtx, rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|e| *e.ctx() == ctx));
        let deg = entries.iter().map(Poly::deg).max().unwrap_or(-1);
        PolMat { ctx, rows, cols, entries, deg }
    }

    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        Self::from_entries(ctx, rows, cols, vec![Poly::zero(ctx); rows * cols])
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(ctx);
        }
        m.deg = if n > 0 { 0 } else { -1 };
        m
    }

    /// Entries given as signed coefficient lists, low to high.
    pub fn from_i64(ctx: FieldCtx, rows: &[Vec<Vec<i64>>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows.iter().flat_map(|row| row.iter().map(|e| Poly::from_i64(ctx, e))).collect();
        Self::from_entries(ctx, r, c, entries)
    }

    pub fn from_const(m: &Mat) -> Self {
        let ctx = *m.ctx();
        let entries = m.data().iter().map(|&v| Poly::constant(ctx, v)).collect();
        Self::from_entries(ctx, m.rows(), m.cols(), entries)
    }

    /// Random entries with `len` coefficients each (degree `< len`).
    pub fn random(ctx: FieldCtx, rows: usize, cols: usize, len: usize, rng: &mut impl Rng) -> Self {
        let entries = (0..rows * cols).map(|_| Poly::random(ctx, len, rng)).collect();
        Self::from_entries(ctx, rows, cols, entries)
    }

    /// Random matrix whose row `i` has entries of degree `< lens[i]`.
    pub fn random_rows(ctx: FieldCtx, cols: usize, lens: &[usize], rng: &mut impl Rng) -> Self {
        let entries = lens.iter().flat_map(|&l| (0..cols).map(|_| Poly::random(ctx, l, rng)).collect::<Vec<_>>()).collect();
        Self::from_entries(ctx, lens.len(), cols, entries)
    }

    #[inline]
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        let old = self.entries[i * self.cols + j].deg();
        let new = p.deg();
        self.entries[i * self.cols + j] = p;
        if new >= self.deg {
            self.deg = new;
        } else if old == self.deg {
            self.deg = self.entries.iter().map(Poly::deg).max().unwrap_or(-1);
        }
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// Maximum entry degree, `-1` for the zero matrix.
    #[inline]
    pub fn deg(&self) -> i64 {
        self.deg
    }

    pub fn is_zero(&self) -> bool {
        self.deg < 0
    }

    pub fn row_deg(&self, i: usize) -> i64 {
        self.row(i).iter().map(Poly::deg).max().unwrap_or(-1)
    }

    pub fn col_deg(&self, j: usize) -> i64 {
        (0..self.rows).map(|i| self.get(i, j).deg()).max().unwrap_or(-1)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolMat {
        Self::from_entries(self.ctx, self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    pub fn transpose(&self) -> PolMat {
        let mut e = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j).clone());
            }
        }
        Self::from_entries(self.ctx, self.cols, self.rows, e)
    }

    pub fn add(&self, o: &PolMat) -> PolMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        let e = self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect();
        Self::from_entries(self.ctx, self.rows, self.cols, e)
    }

    pub fn sub(&self, o: &PolMat) -> PolMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        let e = self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect();
        Self::from_entries(self.ctx, self.rows, self.cols, e)
    }

    pub fn neg(&self) -> PolMat {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: u64) -> PolMat {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every entry by `p`.
    pub fn mul_poly(&self, p: &Poly) -> PolMat {
        self.map(|e| e * p)
    }

    /// `self * x^k`.
    pub fn shl(&self, k: usize) -> PolMat {
        self.map(|p| p.shl(k))
    }

    /// `self div x^k`.
    pub fn shr(&self, k: usize) -> PolMat {
        self.map(|p| p.shr(k))
    }

    /// `self mod x^k`.
    pub fn truncate(&self, k: usize) -> PolMat {
        self.map(|p| p.truncate(k))
    }

    /// Coefficients `lo .. lo+len` of every entry.
    pub fn slice(&self, lo: usize, len: usize) -> PolMat {
        self.map(|p| p.slice(lo, len))
    }

    /// Constant matrix of the coefficients of `x^k`.
    pub fn coeff(&self, k: usize) -> Mat {
        let data = self.entries.iter().map(|p| p.coeff(k)).collect();
        Mat::from_vec(self.ctx, self.rows, self.cols, data)
    }

    /// Entrywise Horner evaluation.
    pub fn eval(&self, alpha: u64) -> Mat {
        let a = self.ctx.reduce(alpha);
        let data = self.entries.iter().map(|p| p.eval(a)).collect();
        Mat::from_vec(self.ctx, self.rows, self.cols, data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> PolMat {
        let e = idx.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Self::from_entries(self.ctx, idx.len(), self.cols, e)
    }

    pub fn select_cols(&self, idx: &[usize]) -> PolMat {
        let mut e = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            for &j in idx {
                e.push(self.get(i, j).clone());
            }
        }
        Self::from_entries(self.ctx, self.rows, idx.len(), e)
    }

    pub fn col_range(&self, lo: usize, hi: usize) -> PolMat {
        self.select_cols(&(lo..hi).collect::<Vec<_>>())
    }

    pub fn row_range(&self, lo: usize, hi: usize) -> PolMat {
        self.select_rows(&(lo..hi).collect::<Vec<_>>())
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &PolMat) -> PolMat {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().cloned());
        Self::from_entries(self.ctx, self.rows + other.rows, self.cols, e)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &PolMat) -> PolMat {
        assert_eq!(self.rows, other.rows, "dimension mismatch");
        let mut e = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            e.extend(self.row(i).iter().cloned());
            e.extend(other.row(i).iter().cloned());
        }
        Self::from_entries(self.ctx, self.rows, self.cols + other.cols, e)
    }

    pub fn to_view(&self) -> MatPolyView {
        let coeffs = (0..=self.deg).map(|k| self.coeff(k as usize)).collect();
        MatPolyView { ctx: self.ctx, rows: self.rows, cols: self.cols, coeffs }
    }

    pub fn from_view(v: &MatPolyView) -> PolMat {
        let n = v.rows * v.cols;
        let mut raw = vec![Vec::with_capacity(v.coeffs.len()); n];
        for c in &v.coeffs {
            for (r, &x) in raw.iter_mut().zip(c.data()) {
                r.push(x);
            }
        }
        let e = raw.into_iter().map(|c| Poly::new(v.ctx, c)).collect();
        Self::from_entries(v.ctx, v.rows, v.cols, e)
    }

    /// Text form: `p m n`, then one coefficient line per entry, row-major.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.ctx.modulus(), self.rows, self.cols);
        for e in &self.entries {
            let cs: Vec<String> = e.coeffs().iter().map(|c| c.to_string()).collect();
            s.push_str(&cs.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(s: &str) -> Result<PolMat> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("header {t:?}: {e}"))))
            .collect::<Result<_>>()?;
        let [p, m, n] = nums[..] else {
            return Err(Error::Parse(format!("header must be `p m n`, got {header:?}")));
        };
        let ctx = FieldCtx::new(p)?;
        let (m, n) = (m as usize, n as usize);
        let mut entries = Vec::with_capacity(m * n);
        for k in 0..m * n {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("expected {} entries, got {k}", m * n)))?;
            entries.push(Poly::parse_coeffs(ctx, line)?);
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after matrix entries".into()));
        }
        Ok(Self::from_entries(ctx, m, n, entries))
    }

    fn check_mul(&self, b: &PolMat) -> Result<()> {
        if self.ctx != b.ctx {
            return Err(Error::CtxMismatch);
        }
        if self.cols != b.rows {
            return Err(Error::DimMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, b.rows, b.cols)));
        }
        Ok(())
    }
}

impl fmt::Debug for PolMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolMat {}x{} over F_{} [", self.rows, self.cols, self.ctx.modulus())?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|p| format!("{:?}", p.coeffs())).collect();
            writeln!(f, "  {}", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Product with automatic strategy selection.
pub fn pm_mul(a: &PolMat, b: &PolMat) -> Result<PolMat> {
    a.check_mul(b)?;
    Ok(mul::mul_auto(a, b))
}

/// Product with a fixed strategy; fails if the strategy cannot run here.
pub fn pm_mul_with(a: &PolMat, b: &PolMat, s: Strategy) -> Result<PolMat> {
    a.check_mul(b)?;
    mul::mul_with(a, b, s)
}

/// Coefficients `c .. c+d-1` of `A * B`, for `deg A < c` and `deg B < c + d`.
pub fn pm_middle_product(a: &PolMat, b: &PolMat, c: usize, d: usize) -> Result<PolMat> {
    a.check_mul(b)?;
    if a.deg() >= c as i64 {
        return Err(Error::DegreeTooLarge(format!("deg A = {} but c = {c}", a.deg())));
    }
    if b.deg() >= (c + d) as i64 {
        return Err(Error::DegreeTooLarge(format!("deg B = {} but c + d = {}", b.deg(), c + d)));
    }
    Ok(mul::mul_slice(a, b, c, d))
}

pub fn pm_eval(a: &PolMat, alpha: u64) -> Mat {
    a.eval(alpha)
}

impl PolMat {
    /// Product with automatic strategy selection; panics on shape mismatch.
    pub fn mul(&self, b: &PolMat) -> PolMat {
        self.check_mul(b).expect("incompatible polynomial matrices");
        mul::mul_auto(self, b)
    }

    /// `(self * b) mod x^k`.
    pub fn mul_trunc(&self, b: &PolMat, k: usize) -> PolMat {
        self.mul_slice(b, 0, k)
    }

    /// Coefficients `lo .. lo+len` of `self * b`.
    pub fn mul_slice(&self, b: &PolMat, lo: usize, len: usize) -> PolMat {
        self.check_mul(b).expect("incompatible polynomial matrices");
        mul::mul_slice(self, b, lo, len)
    }

    /// `self * m` for a constant matrix `m`.
    pub fn mul_const_right(&self, m: &Mat) -> PolMat {
        assert_eq!(self.cols, m.rows());
        let v = self.to_view();
        let coeffs = v.coeffs.iter().map(|c| c.mul(m)).collect();
        PolMat::from_view(&MatPolyView { ctx: self.ctx, rows: self.rows, cols: m.cols(), coeffs })
    }

    /// `m * self` for a constant matrix `m`.
    pub fn mul_const_left(&self, m: &Mat) -> PolMat {
        assert_eq!(m.cols(), self.rows);
        let v = self.to_view();
        let coeffs = v.coeffs.iter().map(|c| m.mul(c)).collect();
        PolMat::from_view(&MatPolyView { ctx: self.ctx, rows: m.rows(), cols: self.cols, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn view_round_trip() {
        let f = FieldCtx::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = PolMat::random(f, 3, 4, 6, &mut rng);
        assert_eq!(PolMat::from_view(&a.to_view()), a);
        let z = PolMat::zeros(f, 2, 2);
        assert_eq!(PolMat::from_view(&z.to_view()), z);
    }

    #[test]
    fn text_round_trip() {
        let f = FieldCtx::new(97).unwrap();
        let a = PolMat::from_i64(f, &[vec![vec![1, 2], vec![]], vec![vec![0, 0, 5], vec![-1]]]);
        let t = a.to_text();
        assert_eq!(t, "97 2 2\n1 2\n\n0 0 5\n96\n");
        assert_eq!(PolMat::from_text(&t).unwrap(), a);
        assert!(PolMat::from_text("97 1 2\n1\n").is_err());
    }

    #[test]
    fn eval_examples() {
        let f = FieldCtx::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = PolMat::random(f, 6, 6, 5, &mut rng);
        assert_eq!(pm_eval(&a, 0), a.coeff(0));
        assert_eq!(pm_eval(&PolMat::identity(f, 3), 17), Mat::identity(f, 3));
        let m = pm_eval(&a, 11);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m.get(i, j), a.get(i, j).eval(11));
            }
        }
    }

    #[test]
    fn degree_cache_tracks_set() {
        let f = FieldCtx::new(97).unwrap();
        let mut a = PolMat::identity(f, 2);
        a.set(0, 1, Poly::monomial(f, 1, 4));
        assert_eq!(a.deg(), 4);
        a.set(0, 1, Poly::zero(f));
        assert_eq!(a.deg(), 0);
    }
}
