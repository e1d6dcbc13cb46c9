//! Dense matrices over `F_p`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::modring::FieldCtx;

/// Row-major dense matrix with entries in `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        Mat { ctx, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(ctx: FieldCtx, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { ctx, rows, cols, data }
    }

    /// Builds from signed integer rows, reducing mod p.
    pub fn from_rows_i64(ctx: FieldCtx, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| ctx.from_i64(v))).collect();
        Mat { ctx, rows: r, cols: c, data }
    }

    pub fn random(ctx: FieldCtx, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        let data = (0..rows * cols).map(|_| ctx.random(rng)).collect();
        Mat { ctx, rows, cols, data }
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
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in constant matrix product");
        let f = self.ctx;
        let bt = other.transpose();
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let a = self.row(i);
            for j in 0..other.cols {
                out.data[i * other.cols + j] = f.dot(a.iter().copied(), bt.row(j).iter().copied());
            }
        }
        out
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let f = self.ctx;
        let mut acc = vec![0u128; self.cols];
        let mut pending = 0;
        let mut out = vec![0u64; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (a, &m) in acc.iter_mut().zip(self.row(i)) {
                *a += vi as u128 * m as u128;
            }
            pending += 1;
            if pending == 15 {
                for a in acc.iter_mut() {
                    *a = f.reduce128(*a) as u128;
                }
                pending = 0;
            }
        }
        for (o, a) in out.iter_mut().zip(&acc) {
            *o = f.reduce128(*a);
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.ctx;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(*a, *b)).collect();
        Mat { ctx: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.ctx;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(*a, *b)).collect();
        Mat { ctx: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Mat {
        let f = self.ctx;
        let data = self.data.iter().map(|a| f.mul(*a, c)).collect();
        Mat { ctx: f, rows: self.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.ctx;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..self.rows {
                if i != r {
                    let factor = self.get(i, c);
                    if factor != 0 {
                        for j in c..self.cols {
                            let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis (as rows) of `{ x : self * x = 0 }`.
    pub fn right_kernel(&self) -> Mat {
        let f = self.ctx;
        let mut e = self.clone();
        let pivots = e.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(f, free.len(), self.cols);
        for (t, &fc) in free.iter().enumerate() {
            k.set(t, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(t, pc, f.neg(e.get(r, fc)));
            }
        }
        k
    }

    /// Basis (as rows) of `{ v : v * self = 0 }`.
    pub fn left_kernel(&self) -> Mat {
        self.transpose().right_kernel()
    }

    pub fn det(&self) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let f = self.ctx;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a.get(i, c) != 0) else {
                return Ok(0);
            };
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = a.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for i in c + 1..n {
                let factor = f.mul(a.get(i, c), inv);
                if factor != 0 {
                    for j in c..n {
                        let v = f.sub(a.get(i, j), f.mul(factor, a.get(c, j)));
                        a.set(i, j, v);
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut aug = Mat::zeros(self.ctx, n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Mat::zeros(self.ctx, n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Ok(inv)
    }

    /// Some `x` with `x * self = b`, if one exists.
    pub fn solve_left(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.cols);
        let f = self.ctx;
        let k = self.rows;
        // columns of the augmented system: unknowns, then the right-hand side
        let mut aug = Mat::zeros(f, self.cols, k + 1);
        for j in 0..self.cols {
            for i in 0..k {
                aug.set(j, i, self.get(i, j));
            }
            aug.set(j, k, b[j]);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&k) {
            return None;
        }
        let mut x = vec![0; k];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, k);
        }
        Some(x)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.ctx, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_and_det() {
        let f = FieldCtx::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..8 {
            let a = Mat::random(f, n, n, &mut rng);
            match a.inverse() {
                Ok(inv) => {
                    assert_eq!(a.mul(&inv), Mat::identity(f, n));
                    assert_ne!(a.det().unwrap(), 0);
                }
                Err(_) => assert_eq!(a.det().unwrap(), 0),
            }
        }
        let s = Mat::from_rows_i64(f, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(s.det().unwrap(), 0);
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn kernels_annihilate() {
        let f = FieldCtx::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Mat::random(f, 3, 5, &mut rng);
        let k = a.right_kernel();
        assert_eq!(k.rows(), 5 - a.rank());
        assert!(a.mul(&k.transpose()).is_zero());
        let l = a.left_kernel();
        assert_eq!(l.rows(), 3 - a.rank());
        let x: Vec<u64> = (0..3).map(|i| i * 7 + 1).collect();
        let b = a.vec_mul(&x);
        let y = a.solve_left(&b).unwrap();
        assert_eq!(a.vec_mul(&y), b);
        let z = Mat::zeros(f, 2, 3);
        assert_eq!(z.solve_left(&[0, 1, 0]), None);
    }
}
