use crate::forms::Shift;
use crate::matrix::Mat;
use crate::modring::FieldCtx;
use crate::polmat::{MatPolyView, PolMat};
use crate::upoly::Poly;

/// Order-one basis in compact form.
///
/// Rows listed in `indep` become `x * e_i`; every other row `i` becomes
/// `e_i - sum_j c_j e_j` over the independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderOneBasis {
    pub m: usize,
    pub indep: Vec<usize>,
    pub is_indep: Vec<bool>,
    /// For dependent rows, coefficients aligned with `indep`.
    pub comb: Vec<Option<Vec<u64>>>,
}

impl OrderOneBasis {
    /// Expands to an `m x m` polynomial matrix with `x` replaced by `x - alpha`.
    pub fn to_polmat(&self, ctx: FieldCtx, alpha: u64) -> PolMat {
        let mut p = PolMat::zeros(ctx, self.m, self.m);
        for i in 0..self.m {
            if self.is_indep[i] {
                p.set(i, i, Poly::new(ctx, vec![ctx.neg(alpha), 1]));
            } else {
                p.set(i, i, Poly::one(ctx));
                let c = self.comb[i].as_ref().expect("dependent row has coefficients");
                for (t, &j) in self.indep.iter().enumerate() {
                    p.set(i, j, Poly::constant(ctx, ctx.neg(c[t])));
                }
            }
        }
        p
    }

    /// Applies the row operations to the rows of a stack of constant matrices,
    /// leaving the independent rows in place (the caller applies the `x` factor).
    fn combine_rows(&self, f: &FieldCtx, mats: &mut [Mat]) {
        let dep: Vec<usize> = (0..self.m).filter(|&i| !self.is_indep[i]).collect();
        if dep.is_empty() || self.indep.is_empty() {
            return;
        }
        for a in mats.iter_mut() {
            let cols = a.cols();
            for &i in &dep {
                let c = self.comb[i].as_ref().unwrap();
                let mut acc: Vec<u128> = vec![0; cols];
                let mut pending = 0;
                for (t, &j) in self.indep.iter().enumerate() {
                    if c[t] == 0 {
                        continue;
                    }
                    for (x, &v) in acc.iter_mut().zip(a.row(j)) {
                        *x += c[t] as u128 * v as u128;
                    }
                    pending += 1;
                    if pending == 15 {
                        for x in acc.iter_mut() {
                            *x = f.reduce128(*x) as u128;
                        }
                        pending = 0;
                    }
                }
                let row = a.row_mut(i);
                for (r, x) in row.iter_mut().zip(acc) {
                    *r = f.sub(*r, f.reduce128(x));
                }
            }
        }
    }
}

/// The `s`-Popov basis of `{ p : p R = 0 mod x }`.
pub fn mbasis1_compact(r: &Mat, s: &Shift) -> OrderOneBasis {
    let f = *r.ctx();
    let m = r.rows();
    assert_eq!(s.len(), m, "shift length must match row count");
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (s[i], i));

    // echelon rows: (pivot column, reduced row with unit pivot, combination of independent rows)
    let mut ech: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut indep = Vec::new();
    let mut is_indep = vec![false; m];
    let mut comb = vec![None; m];
    for &i in &order {
        let mut v = r.row(i).to_vec();
        let mut c: Vec<u64> = vec![0; indep.len()];
        for (piv, e, ec) in &ech {
            let k = v[*piv];
            if k == 0 {
                continue;
            }
            for (a, &b) in v.iter_mut().zip(e) {
                *a = f.sub(*a, f.mul(k, b));
            }
            for (a, &b) in c.iter_mut().zip(ec) {
                *a = f.add(*a, f.mul(k, b));
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => comb[i] = Some(c),
            Some(piv) => {
                let inv = f.inv(v[piv]);
                for a in v.iter_mut() {
                    *a = f.mul(*a, inv);
                }
                // new vector = (R_i - sum c_t R_t) / lead
                let mut nc: Vec<u64> = c.iter().map(|&a| f.mul(f.neg(a), inv)).collect();
                nc.push(inv);
                for (_, _, ec) in ech.iter_mut() {
                    ec.push(0);
                }
                ech.push((piv, v, nc));
                indep.push(i);
                is_indep[i] = true;
            }
        }
    }
    let k = indep.len();
    for c in comb.iter_mut().flatten() {
        c.resize(k, 0);
    }
    // indep was filled in shift order; keep that order aligned with the coefficients
    OrderOneBasis { m, indep, is_indep, comb }
}

/// `s`-Popov approximant basis for `(R, 1)`.
pub fn mbasis1(r: &Mat, s: &Shift) -> PolMat {
    mbasis1_compact(r, s).to_polmat(*r.ctx(), 0)
}

fn shift_rows_up(f: &FieldCtx, p: &mut Vec<Mat>, rows: &[usize], alpha: u64) {
    if rows.is_empty() {
        return;
    }
    let (m, n) = (p[0].rows(), p[0].cols());
    p.push(Mat::zeros(*f, m, n));
    for &i in rows {
        for t in (1..p.len()).rev() {
            let (lo, hi) = p.split_at_mut(t);
            let src = lo[t - 1].row(i).to_vec();
            let dst = hi[0].row_mut(i);
            if alpha == 0 {
                dst.copy_from_slice(&src);
            } else {
                // (x - alpha) * P: coefficient t gets P_{t-1} - alpha * P_t
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = f.sub(s, f.mul(alpha, *d));
                }
            }
        }
        let r0 = p[0].row_mut(i);
        if alpha == 0 {
            r0.fill(0);
        } else {
            for x in r0.iter_mut() {
                *x = f.neg(f.mul(alpha, *x));
            }
        }
    }
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn identity_view(f: FieldCtx, m: usize) -> Vec<Mat> {
    vec![Mat::identity(f, m)]
}

fn view_to_polmat(f: FieldCtx, m: usize, coeffs: Vec<Mat>) -> PolMat {
    PolMat::from_view(&MatPolyView { ctx: f, rows: m, cols: m, coeffs })
}

/// Residual strategy for [`mbasis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    /// Recompute the degree-`k` coefficient of `P F` each iteration.
    Recompute,
    /// Keep all pending coefficients of `P F` and update them with `Q`.
    Update,
    /// `Update` when `n > m/2`, else `Recompute`.
    Auto,
}

/// Iterative `s`-ordered weak Popov approximant basis for `(F, sigma)`,
/// with its shifted row degrees.
pub fn mbasis_with(fm: &PolMat, sigma: usize, s: &Shift, variant: Residual) -> (PolMat, Vec<i64>) {
    let f = *fm.ctx();
    let (m, n) = (fm.rows(), fm.cols());
    assert_eq!(s.len(), m, "shift length must match row count");
    let mut p = identity_view(f, m);
    let mut sh: Vec<i64> = s.as_slice().to_vec();
    let variant = match variant {
        Residual::Auto if 2 * n > m => Residual::Update,
        Residual::Auto => Residual::Recompute,
        v => v,
    };
    let fc: Vec<Mat> = (0..sigma).map(|k| fm.coeff(k)).collect();
    let mut res = if variant == Residual::Update { fc.clone() } else { Vec::new() };
    for k in 0..sigma {
        let r = match variant {
            Residual::Update => res[k].clone(),
            _ => {
                let mut acc = Mat::zeros(f, m, n);
                for (t, pt) in p.iter().enumerate().take(k + 1) {
                    acc = acc.add(&pt.mul(&fc[k - t]));
                }
                acc
            }
        };
        if r.is_zero() {
            continue;
        }
        let q = mbasis1_compact(&r, &Shift::new(sh.clone()));
        q.combine_rows(&f, &mut p);
        shift_rows_up(&f, &mut p, &q.indep, 0);
        if variant == Residual::Update {
            let tail = &mut res[k..];
            q.combine_rows(&f, tail);
            let mut v: Vec<Mat> = tail.to_vec();
            shift_rows_up(&f, &mut v, &q.indep, 0);
            v.resize(tail.len(), Mat::zeros(f, m, n));
            for (dst, src) in tail.iter_mut().zip(v) {
                *dst = src;
            }
        }
        for &i in &q.indep {
            sh[i] += 1;
        }
    }
    (view_to_polmat(f, m, p), sh)
}

/// Iterative `s`-ordered weak Popov approximant basis for `(F, sigma)`.
pub fn mbasis(fm: &PolMat, sigma: usize, s: &Shift) -> PolMat {
    mbasis_with(fm, sigma, s, Residual::Auto).0
}

/// Iterative `s`-ordered weak Popov interpolant basis for `(E, alpha)`,
/// with its shifted row degrees.
pub fn m_intbasis_with(e: &[Mat], alpha: &[u64], s: &Shift) -> (PolMat, Vec<i64>) {
    assert_eq!(e.len(), alpha.len());
    let m = s.len();
    let f = match e.first() {
        Some(x) => *x.ctx(),
        None => panic!("m_intbasis_with needs at least one matrix to know the field"),
    };
    let mut p = identity_view(f, m);
    let mut sh: Vec<i64> = s.as_slice().to_vec();
    for (ei, &a) in e.iter().zip(alpha) {
        let pa = eval_view(&p, a);
        let r = pa.mul(ei);
        if r.is_zero() {
            continue;
        }
        let q = mbasis1_compact(&r, &Shift::new(sh.clone()));
        q.combine_rows(&f, &mut p);
        shift_rows_up(&f, &mut p, &q.indep, a);
        for &i in &q.indep {
            sh[i] += 1;
        }
    }
    (view_to_polmat(f, m, p), sh)
}

fn eval_view(p: &[Mat], a: u64) -> Mat {
    let mut acc = p.last().unwrap().clone();
    for c in p.iter().rev().skip(1) {
        acc = acc.scale(a).add(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{is_owp, is_popov};

    #[test]
    fn order_one_examples() {
        let f = FieldCtx::new(97).unwrap();
        let z = Shift::zeros(2);
        assert_eq!(mbasis1(&Mat::zeros(f, 2, 3), &z), PolMat::identity(f, 2));
        let r = Mat::from_rows_i64(f, &[vec![1], vec![0]]);
        assert_eq!(mbasis1(&r, &z), PolMat::from_i64(f, &[vec![vec![0, 1], vec![]], vec![vec![], vec![1]]]));
        let r = Mat::from_rows_i64(f, &[vec![1], vec![1]]);
        let b = mbasis1(&r, &z);
        assert_eq!(b, PolMat::from_i64(f, &[vec![vec![0, 1], vec![]], vec![vec![96], vec![1]]]));
        assert!(is_popov(&b, &z).unwrap());
        // larger shift on row 0 makes row 1 the independent one
        let b = mbasis1(&r, &Shift::new(vec![1, 0]));
        assert_eq!(b, PolMat::from_i64(f, &[vec![vec![1], vec![96]], vec![vec![], vec![0, 1]]]));
        assert!(is_popov(&b, &Shift::new(vec![1, 0])).unwrap());
    }

    #[test]
    fn residual_variants_agree() {
        use rand::SeedableRng;
        let f = FieldCtx::new(97).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for (m, n) in [(3, 1), (4, 3), (5, 2)] {
            let fm = PolMat::random(f, m, n, 10, &mut rng);
            let s = Shift::new((0..m as i64).map(|i| (i * 3) % 4 - 1).collect());
            let a = mbasis_with(&fm, 10, &s, Residual::Recompute);
            let b = mbasis_with(&fm, 10, &s, Residual::Update);
            assert_eq!(a, b);
            assert!(is_owp(&a.0, &s).unwrap());
            assert!(a.0.mul(&fm).truncate(10).is_zero());
        }
    }
}
