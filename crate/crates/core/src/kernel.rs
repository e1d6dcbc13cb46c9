//! Left kernel bases of polynomial matrices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::appint::{pm_intbasis_with, pmbasis_with, EvalPoints};
use crate::error::{Error, Result};
use crate::forms::{has_full_rank_leading, pivot_profile, rdeg, row_pivot, Shift};
use crate::polmat::PolMat;
use crate::tuning::tuning;
use crate::upoly::{GeomGrid, Poly};

/// Approximant bases (modulus `x^sigma`) or interpolant bases (modulus a
/// product of linear factors at geometric points).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Approx,
    Interp,
}

/// Normal form guaranteed for a kernel basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormCert {
    /// Shifted pivots in strictly increasing columns.
    OrderedWeakPopov,
    /// Shifted leading matrix of full row rank.
    Reduced,
}

/// `K` with `K F = 0` whose rows form a basis of the left kernel of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub k: PolMat,
    pub shift: Shift,
    pub cert: FormCert,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.k.rows()
    }

    /// Re-checks the claimed normal form.
    pub fn check_form(&self) -> Result<bool> {
        match self.cert {
            FormCert::Reduced => has_full_rank_leading(&self.k, &self.shift),
            FormCert::OrderedWeakPopov => {
                let prof = pivot_profile(&self.k, &self.shift)?;
                let mut last = None;
                for p in prof {
                    let Some(p) = p else { return Ok(false) };
                    if last.is_some_and(|l| l >= p.col) {
                        return Ok(false);
                    }
                    last = Some(p.col);
                }
                Ok(true)
            }
        }
    }
}

fn normalized(s: &Shift) -> Shift {
    s.add_const(-s.min())
}

fn sdegs(m: &PolMat, s: &Shift) -> Vec<Option<i64>> {
    rdeg(m, s).expect("shift length checked by caller")
}

fn check_shift(f: &PolMat, s: &Shift) -> Result<()> {
    if s.len() != f.rows() {
        return Err(Error::LengthMismatch { expected: f.rows(), got: s.len() });
    }
    Ok(())
}

fn geometric_points(f: &PolMat, len: usize) -> Result<EvalPoints> {
    let g = GeomGrid::find(*f.ctx(), len).map_err(|_| Error::NoGeometricGrid(len))?;
    Ok(EvalPoints::Geometric { start: 1, ratio: g.alpha(), len })
}

/// Order basis of `F` for a modulus of degree `order`, plus the modulus
/// polynomial itself in the interpolation case.
fn order_basis(f: &PolMat, order: usize, s: &Shift, flavor: Flavor) -> Result<(PolMat, Vec<i64>, Option<Poly>)> {
    let t = tuning().pmbasis_threshold;
    match flavor {
        Flavor::Approx => {
            let (p, d) = pmbasis_with(f, order, s, t);
            Ok((p, d, None))
        }
        Flavor::Interp => {
            let pts = geometric_points(f, order)?;
            let e = pts.eval(f);
            let (p, d) = pm_intbasis_with(&e, &pts, s, t)?;
            let ctx = *f.ctx();
            let m = pts
                .to_vec(&ctx)
                .iter()
                .fold(Poly::one(ctx), |acc, &a| &acc * &Poly::new(ctx, vec![ctx.neg(a), 1]));
            Ok((p, d, Some(m)))
        }
    }
}

/// Kernel basis from a single order basis at order `d + delta`, where
/// `delta = n d + max(s) - min(s) + 1` bounds the kernel degrees.
pub fn kernel_direct(f: &PolMat, s: &Shift, flavor: Flavor) -> Result<KernelBasis> {
    check_shift(f, s)?;
    let m = f.rows();
    if f.is_zero() {
        return Ok(KernelBasis { k: PolMat::identity(*f.ctx(), m), shift: s.clone(), cert: FormCert::OrderedWeakPopov });
    }
    let sn = normalized(s);
    let d = f.deg() as usize;
    let delta = f.cols() * d + (sn.max() - sn.min()) as usize + 1;
    let (p, degs, _) = order_basis(f, d + delta, &sn, flavor)?;
    let keep: Vec<usize> = (0..m).filter(|&i| degs[i] < delta as i64).collect();
    Ok(KernelBasis { k: p.select_rows(&keep), shift: s.clone(), cert: FormCert::OrderedWeakPopov })
}

/// Recursive kernel basis with early exit.
pub fn kernel_zls(f: &PolMat, s: &Shift, flavor: Flavor) -> Result<KernelBasis> {
    check_shift(f, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(f.ctx().modulus() ^ ((f.rows() as u64) << 32) ^ f.cols() as u64);
    // the recursion needs s_i >= rdeg(F_i); a uniform offset keeps the same reduced bases
    let rd = (0..f.rows()).map(|i| f.row_deg(i) - s[i]).max().unwrap_or(0);
    let start = s.add_const(rd.max(0));
    let k = zls_rec(f, start.as_slice(), flavor, &mut rng)?;
    let k = weak_popov(&k, s);
    Ok(KernelBasis { k, shift: s.clone(), cert: FormCert::OrderedWeakPopov })
}

fn zls_rec(f: &PolMat, s: &[i64], flavor: Flavor, rng: &mut ChaCha8Rng) -> Result<PolMat> {
    let ctx = *f.ctx();
    let (m, n) = (f.rows(), f.cols());
    if m == 0 || f.is_zero() || n == 0 {
        return Ok(PolMat::identity(ctx, m));
    }
    let shift = Shift::new(s.to_vec());
    if 2 * n > m {
        if n == 1 {
            // one column, one or two rows: the direct method is exact and cheap
            return Ok(kernel_direct(f, &shift, flavor)?.k);
        }
        return split_columns(f, s, flavor, rng);
    }
    let total: i64 = s.iter().sum();
    let sbar = (total.max(0) as usize).div_ceil(n);
    let sigma = 2 * sbar + 1;
    let (p, degs, modulus) = order_basis(f, sigma, &shift, flavor)?;
    let pf = p.mul(f);
    let mut small = Vec::new();
    let mut rest = Vec::new();
    for i in 0..m {
        if degs[i] < sigma as i64 || pf.row(i).iter().all(Poly::is_zero) {
            small.push(i);
        } else {
            rest.push(i);
        }
    }
    let p1 = p.select_rows(&small);
    if rest.is_empty() {
        return Ok(p1);
    }
    let p2 = p.select_rows(&rest);
    let g = divide_residual(&pf.select_rows(&rest), sigma, modulus.as_ref());
    let t: Vec<i64> = rest.iter().map(|&i| degs[i] - sigma as i64).collect();

    // certified early exit: if G has full row rank no combination of P2 is in the kernel
    if rest.len() <= n {
        let beta = ctx.random(rng);
        if g.eval(beta).rank() == rest.len() {
            return Ok(p1);
        }
    }
    let q = if n == 1 {
        kernel_direct(&g, &Shift::new(t), flavor)?.k
    } else {
        split_columns(&g, &t, flavor, rng)?
    };
    let q = q.mul(&p2);
    Ok(p1.vstack(&q))
}

/// `x^{-sigma} R` or `R / M`, both exact.
fn divide_residual(r: &PolMat, sigma: usize, modulus: Option<&Poly>) -> PolMat {
    match modulus {
        None => r.shr(sigma),
        Some(mp) => r.map(|e| {
            let (q, rem) = e.divrem(mp).expect("nonzero modulus");
            debug_assert!(rem.is_zero());
            q
        }),
    }
}

fn split_columns(f: &PolMat, s: &[i64], flavor: Flavor, rng: &mut ChaCha8Rng) -> Result<PolMat> {
    let n = f.cols();
    let h = n / 2;
    let n1 = zls_rec(&f.col_range(0, h), s, flavor, rng)?;
    if n1.rows() == 0 {
        return Ok(n1);
    }
    let g2 = n1.mul(&f.col_range(h, n));
    let t: Vec<i64> = sdegs(&n1, &Shift::new(s.to_vec())).into_iter().map(|d| d.unwrap_or(0)).collect();
    let n2 = zls_rec(&g2, &t, flavor, rng)?;
    Ok(n2.mul(&n1))
}

/// Weak Popov form by row reductions, pivots sorted by column.
pub(crate) fn weak_popov(k: &PolMat, s: &Shift) -> PolMat {
    let ctx = *k.ctx();
    let mut rows: Vec<Vec<Poly>> = (0..k.rows()).map(|i| k.row(i).to_vec()).collect();
    loop {
        let piv: Vec<_> = rows.iter().map(|r| row_pivot(r, s)).collect();
        let mut clash = None;
        'outer: for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i != j {
                    if let (Some(a), Some(b)) = (piv[i], piv[j]) {
                        if a.col == b.col && a.sdeg >= b.sdeg {
                            clash = Some((i, j, a, b));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let Some((i, j, a, b)) = clash else { break };
        let c = ctx.mul(rows[i][a.col].lc(), ctx.inv(rows[j][b.col].lc()));
        let mult = Poly::monomial(ctx, c, (a.sdeg - b.sdeg) as usize);
        let rj = rows[j].clone();
        for (x, y) in rows[i].iter_mut().zip(&rj) {
            *x = &*x - &(&mult * y);
        }
    }
    rows.retain(|r| r.iter().any(|p| !p.is_zero()));
    rows.sort_by_key(|r| row_pivot(r, s).map(|p| p.col));
    let nrows = rows.len();
    PolMat::from_entries(ctx, nrows, k.cols(), rows.into_iter().flatten().collect())
}

/// Right kernel `{ v : F v = 0 }` as columns, via the left kernel of `F^T`.
pub fn right_kernel(f: &PolMat, s: &Shift) -> Result<PolMat> {
    Ok(kernel_zls(&f.transpose(), s, Flavor::Approx)?.k.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::FieldCtx;

    fn f97() -> FieldCtx {
        FieldCtx::new(97).unwrap()
    }

    #[test]
    fn direct_examples() {
        let f = f97();
        let fm = PolMat::from_i64(f, &[vec![vec![1]], vec![vec![0, 1]]]);
        for flavor in [Flavor::Approx, Flavor::Interp] {
            let k = kernel_direct(&fm, &Shift::zeros(2), flavor).unwrap();
            assert_eq!(k.k, PolMat::from_i64(f, &[vec![vec![0, 1], vec![96]]]));
            assert!(k.check_form().unwrap());
        }
        assert_eq!(kernel_direct(&PolMat::identity(f, 3), &Shift::zeros(3), Flavor::Approx).unwrap().dim(), 0);
    }

    #[test]
    fn zls_examples() {
        let f = f97();
        let fm = PolMat::from_i64(f, &[vec![vec![1]], vec![vec![0, 1]]]);
        let k = kernel_zls(&fm, &Shift::zeros(2), Flavor::Approx).unwrap();
        assert_eq!(k.k, PolMat::from_i64(f, &[vec![vec![0, 1], vec![96]]]));
        // zero row gives a unit kernel vector
        let fm = PolMat::from_i64(f, &[vec![vec![1, 2]], vec![vec![]], vec![vec![3, 1]]]);
        let k = kernel_zls(&fm, &Shift::zeros(3), Flavor::Approx).unwrap();
        assert!(k.k.mul(&fm).is_zero());
        assert_eq!(k.dim(), 2);
        assert!((0..2).any(|i| k.k.row(i).iter().enumerate().all(|(j, p)| if j == 1 { p.deg() == 0 } else { p.is_zero() })));
    }

    #[test]
    fn wide_and_tall_random() {
        use rand::SeedableRng;
        let f = FieldCtx::new(crate::modring::PRIME_60_NTT).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for (m, n, d) in [(4, 2, 4), (6, 5, 3), (8, 3, 5), (5, 1, 6), (3, 3, 2)] {
            let fm = PolMat::random(f, m, n, d + 1, &mut rng);
            let s = Shift::zeros(m);
            for flavor in [Flavor::Approx, Flavor::Interp] {
                let a = kernel_zls(&fm, &s, flavor).unwrap();
                let b = kernel_direct(&fm, &s, flavor).unwrap();
                assert!(a.k.mul(&fm).is_zero() && b.k.mul(&fm).is_zero());
                assert_eq!(a.dim(), m.saturating_sub(n));
                assert_eq!(b.dim(), m.saturating_sub(n));
                assert!(a.check_form().unwrap() && b.check_form().unwrap());
            }
        }
    }
}
