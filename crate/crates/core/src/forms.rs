//! Shifted degrees, pivots, and reduced / weak Popov / Popov form checks.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::polmat::PolMat;
use crate::upoly::Poly;

/// A shifted degree; `None` stands for the degree of a zero row.
pub type SDeg = Option<i64>;

/// Integer degree weights attached to the columns a row vector is
/// measured against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shift(Vec<i64>);

impl Shift {
    pub fn new(s: Vec<i64>) -> Self {
        Shift(s)
    }

    pub fn zeros(n: usize) -> Self {
        Shift(vec![0; n])
    }

    pub fn uniform(n: usize, v: i64) -> Self {
        Shift(vec![v; n])
    }

    /// Shift from shifted row degrees, with zero rows mapped to `fill`.
    pub fn from_sdegs(d: &[SDeg], fill: i64) -> Self {
        Shift(d.iter().map(|x| x.unwrap_or(fill)).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> i64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add_const(&self, c: i64) -> Shift {
        Shift(self.0.iter().map(|x| x + c).collect())
    }

    pub fn select(&self, idx: &[usize]) -> Shift {
        Shift(idx.iter().map(|&i| self.0[i]).collect())
    }
}

impl Index<usize> for Shift {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

/// `max_j (deg p_j + s_j)` over nonzero entries.
pub fn row_sdeg(row: &[Poly], s: &Shift) -> SDeg {
    row.iter().zip(s.as_slice()).filter(|(p, _)| !p.is_zero()).map(|(p, &sj)| p.deg() + sj).max()
}

fn check_len(m: &PolMat, s: &Shift) -> Result<()> {
    if s.len() != m.cols() {
        return Err(Error::LengthMismatch { expected: m.cols(), got: s.len() });
    }
    Ok(())
}

/// Shifted row degrees.
pub fn rdeg(m: &PolMat, s: &Shift) -> Result<Vec<SDeg>> {
    check_len(m, s)?;
    Ok((0..m.rows()).map(|i| row_sdeg(m.row(i), s)).collect())
}

/// Shifted pivot of a nonzero row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pivot {
    pub sdeg: i64,
    pub col: usize,
    pub deg: i64,
}

/// Rightmost entry reaching the shifted row degree.
pub fn row_pivot(row: &[Poly], s: &Shift) -> Option<Pivot> {
    let d = row_sdeg(row, s)?;
    let col = (0..row.len()).rev().find(|&j| !row[j].is_zero() && row[j].deg() + s[j] == d)?;
    Some(Pivot { sdeg: d, col, deg: row[col].deg() })
}

/// Pivot of every row; `None` marks a zero row.
pub fn pivot_profile(m: &PolMat, s: &Shift) -> Result<Vec<Option<Pivot>>> {
    check_len(m, s)?;
    Ok((0..m.rows()).map(|i| row_pivot(m.row(i), s)).collect())
}

fn check_square(m: &PolMat) -> Result<()> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare);
    }
    Ok(())
}

/// Pivots on the diagonal.
pub fn is_owp(m: &PolMat, s: &Shift) -> Result<bool> {
    check_square(m)?;
    let prof = pivot_profile(m, s)?;
    Ok(prof.iter().enumerate().all(|(i, p)| matches!(p, Some(p) if p.col == i)))
}

/// Ordered weak Popov with monic pivots that dominate their columns.
pub fn is_popov(m: &PolMat, s: &Shift) -> Result<bool> {
    if !is_owp(m, s)? {
        return Ok(false);
    }
    for i in 0..m.rows() {
        let piv = m.get(i, i);
        if !piv.is_monic() {
            return Ok(false);
        }
        if (0..m.rows()).any(|k| k != i && m.get(k, i).deg() >= piv.deg()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Entry `(i, j)` is the coefficient of degree `rdeg_s(row i) - s_j` of `m[i][j]`.
pub fn leading_matrix(m: &PolMat, s: &Shift) -> Result<Mat> {
    let d = rdeg(m, s)?;
    let mut l = Mat::zeros(*m.ctx(), m.rows(), m.cols());
    for (i, di) in d.iter().enumerate() {
        let Some(di) = *di else { continue };
        for j in 0..m.cols() {
            let k = di - s[j];
            if k >= 0 {
                l.set(i, j, m.get(i, j).coeff(k as usize));
            }
        }
    }
    Ok(l)
}

/// Square matrix with invertible shifted leading matrix.
pub fn is_reduced(m: &PolMat, s: &Shift) -> Result<bool> {
    check_square(m)?;
    Ok(leading_matrix(m, s)?.rank() == m.rows())
}

/// Shifted leading matrix has full row rank (rectangular bases).
pub fn has_full_rank_leading(m: &PolMat, s: &Shift) -> Result<bool> {
    Ok(leading_matrix(m, s)?.rank() == m.rows())
}

/// Divides `v` by an `s`-reduced basis `b` and returns the remainder.
///
/// By the predictable degree property the remainder is zero exactly when
/// `v` lies in the row space of `b` over `F_p[x]`.
pub fn reduce_against(v: &[Poly], b: &PolMat, s: &Shift) -> Result<Vec<Poly>> {
    check_len(b, s)?;
    if v.len() != b.cols() {
        return Err(Error::LengthMismatch { expected: b.cols(), got: v.len() });
    }
    let f = *b.ctx();
    let bd = rdeg(b, s)?;
    let lead = leading_matrix(b, s)?;
    let mut v = v.to_vec();
    while let Some(d) = row_sdeg(&v, s) {
        let usable: Vec<usize> = (0..b.rows()).filter(|&i| matches!(bd[i], Some(r) if r <= d)).collect();
        let lv: Vec<u64> =
            (0..v.len()).map(|j| if d - s[j] >= 0 { v[j].coeff((d - s[j]) as usize) } else { 0 }).collect();
        let sub = lead.submatrix(&usable, &(0..b.cols()).collect::<Vec<_>>());
        let Some(c) = sub.solve_left(&lv) else { break };
        for (t, &i) in usable.iter().enumerate() {
            if c[t] == 0 {
                continue;
            }
            let mult = Poly::monomial(f, c[t], (d - bd[i].unwrap()) as usize);
            for (j, vj) in v.iter_mut().enumerate() {
                *vj = &*vj - &(&mult * b.get(i, j));
            }
        }
    }
    Ok(v)
}

/// Row membership in the module generated by an `s`-reduced basis.
pub fn in_row_module(v: &[Poly], b: &PolMat, s: &Shift) -> Result<bool> {
    Ok(reduce_against(v, b, s)?.iter().all(Poly::is_zero))
}

/// Every row of `a` lies in the row module of the `s`-reduced basis `b`.
pub fn rows_in_module(a: &PolMat, b: &PolMat, s: &Shift) -> Result<bool> {
    for i in 0..a.rows() {
        if !in_row_module(a.row(i), b, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}
