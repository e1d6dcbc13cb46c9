use super::mbasis::{m_intbasis_with, mbasis_with, Residual};
use crate::error::{Error, Result};
use crate::forms::Shift;
use crate::matrix::Mat;
use crate::modring::FieldCtx;
use crate::polmat::PolMat;
use crate::tuning::tuning;
use crate::upoly::{chirp_eval, SubproductTree};

/// Divide-and-conquer `s`-ordered weak Popov approximant basis for
/// `(F, sigma)`, with its shifted row degrees. Orders up to `threshold`
/// go to the iterative algorithm.
pub fn pmbasis_with(fm: &PolMat, sigma: usize, s: &Shift, threshold: usize) -> (PolMat, Vec<i64>) {
    assert_eq!(s.len(), fm.rows(), "shift length must match row count");
    let t = threshold.max(1);
    let fm = if fm.deg() >= sigma as i64 { fm.truncate(sigma) } else { fm.clone() };
    rec(&fm, sigma, s.as_slice(), t)
}

fn rec(fm: &PolMat, sigma: usize, s: &[i64], t: usize) -> (PolMat, Vec<i64>) {
    if sigma <= t || fm.is_zero() {
        return mbasis_with(fm, sigma, &Shift::new(s.to_vec()), Residual::Auto);
    }
    let c = sigma.div_ceil(2);
    let (p1, s1) = rec(&fm.truncate(c), c, s, t);
    let r = p1.mul_slice(fm, c, sigma - c);
    let (p2, s2) = rec(&r, sigma - c, &s1, t);
    (p2.mul(&p1), s2)
}

/// Divide-and-conquer `s`-ordered weak Popov approximant basis for `(F, sigma)`.
pub fn pmbasis(fm: &PolMat, sigma: usize, s: &Shift) -> PolMat {
    pmbasis_with(fm, sigma, s, tuning().pmbasis_threshold).0
}

/// Interpolation points, either arbitrary or in geometric progression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalPoints {
    General(Vec<u64>),
    /// `start * ratio^i` for `i < len`.
    Geometric { start: u64, ratio: u64, len: usize },
}

impl EvalPoints {
    pub fn len(&self) -> usize {
        match self {
            EvalPoints::General(v) => v.len(),
            EvalPoints::Geometric { len, .. } => *len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vec(&self, f: &FieldCtx) -> Vec<u64> {
        match self {
            EvalPoints::General(v) => v.clone(),
            EvalPoints::Geometric { start, ratio, len } => {
                let mut out = Vec::with_capacity(*len);
                let mut c = *start;
                for _ in 0..*len {
                    out.push(c);
                    c = f.mul(c, *ratio);
                }
                out
            }
        }
    }

    /// Points `lo .. hi`.
    pub fn range(&self, f: &FieldCtx, lo: usize, hi: usize) -> EvalPoints {
        match self {
            EvalPoints::General(v) => EvalPoints::General(v[lo..hi].to_vec()),
            EvalPoints::Geometric { start, ratio, .. } => EvalPoints::Geometric {
                start: f.mul(*start, f.pow(*ratio, lo as u64)),
                ratio: *ratio,
                len: hi - lo,
            },
        }
    }

    pub fn validate(&self, f: &FieldCtx) -> Result<()> {
        match self {
            EvalPoints::General(v) => {
                let mut s: Vec<u64> = v.iter().map(|&x| f.reduce(x)).collect();
                s.sort_unstable();
                if s.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::DuplicatePoints);
                }
            }
            EvalPoints::Geometric { start, ratio, len } => {
                if *len > 1 && (f.reduce(*start) == 0 || f.reduce(*ratio) == 0 || f.order(f.reduce(*ratio)) < *len as u64) {
                    return Err(Error::DuplicatePoints);
                }
            }
        }
        Ok(())
    }

    /// `P(alpha_i)` for every point.
    pub fn eval(&self, p: &PolMat) -> Vec<Mat> {
        let f = *p.ctx();
        let (m, n) = (p.rows(), p.cols());
        let k = self.len();
        let per_entry: Vec<Vec<u64>> = match self {
            EvalPoints::General(v) if k <= 16 || p.deg() < 8 => {
                return v.iter().map(|&a| p.eval(a)).collect();
            }
            EvalPoints::General(v) => {
                let tree = SubproductTree::new(f, v);
                p.entries().iter().map(|e| tree.eval(e)).collect()
            }
            EvalPoints::Geometric { start, ratio, .. } => p
                .entries()
                .iter()
                .map(|e| {
                    let mut c = 1;
                    let scaled: Vec<u64> = e
                        .coeffs()
                        .iter()
                        .map(|&x| {
                            let v = f.mul(x, c);
                            c = f.mul(c, *start);
                            v
                        })
                        .collect();
                    chirp_eval(&f, &scaled, *ratio, k)
                })
                .collect(),
        };
        (0..k)
            .map(|i| Mat::from_vec(f, m, n, per_entry.iter().map(|e| e[i]).collect()))
            .collect()
    }
}

fn check_inputs(e: &[Mat], npts: usize, s: &Shift) -> Result<()> {
    if e.is_empty() {
        return Err(Error::BadParams("at least one evaluation point is required".into()));
    }
    if e.len() != npts {
        return Err(Error::LengthMismatch { expected: npts, got: e.len() });
    }
    if e.iter().any(|x| x.rows() != s.len() || x.cols() != e[0].cols()) {
        return Err(Error::DimMismatch("matrices must be m x n with m = shift length".into()));
    }
    Ok(())
}

/// Iterative `s`-ordered weak Popov interpolant basis for `(E, alpha)`.
pub fn m_intbasis(e: &[Mat], alpha: &[u64], s: &Shift) -> Result<PolMat> {
    check_inputs(e, alpha.len(), s)?;
    let f = *e[0].ctx();
    EvalPoints::General(alpha.to_vec()).validate(&f)?;
    let alpha: Vec<u64> = alpha.iter().map(|&a| f.reduce(a)).collect();
    Ok(m_intbasis_with(e, &alpha, s).0)
}

/// Divide-and-conquer `s`-ordered weak Popov interpolant basis for
/// `(E, pts)`, with its shifted row degrees.
pub fn pm_intbasis_with(e: &[Mat], pts: &EvalPoints, s: &Shift, threshold: usize) -> Result<(PolMat, Vec<i64>)> {
    check_inputs(e, pts.len(), s)?;
    let f = *e[0].ctx();
    pts.validate(&f)?;
    let pts = match pts {
        EvalPoints::General(v) => EvalPoints::General(v.iter().map(|&a| f.reduce(a)).collect()),
        g => g.clone(),
    };
    Ok(int_rec(&f, e, &pts, s.as_slice(), threshold.max(1)))
}

fn int_rec(f: &FieldCtx, e: &[Mat], pts: &EvalPoints, s: &[i64], t: usize) -> (PolMat, Vec<i64>) {
    let sigma = e.len();
    if sigma <= t {
        return m_intbasis_with(e, &pts.to_vec(f), &Shift::new(s.to_vec()));
    }
    let c = sigma.div_ceil(2);
    let (p1, s1) = int_rec(f, &e[..c], &pts.range(f, 0, c), s, t);
    let second = pts.range(f, c, sigma);
    let vals = second.eval(&p1);
    let r: Vec<Mat> = vals.iter().zip(&e[c..]).map(|(v, ei)| v.mul(ei)).collect();
    let (p2, s2) = int_rec(f, &r, &second, &s1, t);
    (p2.mul(&p1), s2)
}

/// Divide-and-conquer `s`-ordered weak Popov interpolant basis for `(E, pts)`.
pub fn pm_intbasis(e: &[Mat], pts: &EvalPoints, s: &Shift) -> Result<PolMat> {
    Ok(pm_intbasis_with(e, pts, s, tuning().pmbasis_threshold)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{is_owp, rdeg};
    use crate::modring::PRIME_60_NTT;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pmbasis_matches_mbasis_on_small_orders() {
        let f = FieldCtx::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let fm = PolMat::random(f, 4, 2, 20, &mut rng);
        let s = Shift::new(vec![0, 2, 1, 0]);
        assert_eq!(pmbasis(&fm, 20, &s), mbasis_with(&fm, 20, &s, Residual::Auto).0);
        let (p, sh) = pmbasis_with(&fm, 20, &s, 3);
        assert!(is_owp(&p, &s).unwrap());
        assert!(p.mul(&fm).truncate(20).is_zero());
        let rd: Vec<i64> = rdeg(&p, &s).unwrap().into_iter().map(Option::unwrap).collect();
        assert_eq!(rd, sh);
    }

    #[test]
    fn pmbasis_large_order_sums_to_n_sigma() {
        let f = FieldCtx::new(PRIME_60_NTT).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let fm = PolMat::random(f, 4, 2, 100, &mut rng);
        let (p, sh) = pmbasis_with(&fm, 100, &Shift::zeros(4), 8);
        assert!(p.mul(&fm).truncate(100).is_zero());
        assert_eq!(sh.iter().sum::<i64>(), 200);
    }

    #[test]
    fn intbasis_membership_and_form() {
        let f = FieldCtx::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let s = Shift::new(vec![1, 0, 0]);
        let e: Vec<Mat> = (0..40).map(|_| Mat::random(f, 3, 2, &mut rng)).collect();
        let grid = EvalPoints::Geometric { start: 3, ratio: 5, len: 40 };
        let pts = grid.to_vec(&f);
        let gen = EvalPoints::General(pts.clone());
        for (p, name) in [
            (pm_intbasis_with(&e, &grid, &s, 4).unwrap().0, "geometric"),
            (pm_intbasis_with(&e, &gen, &s, 4).unwrap().0, "general"),
            (m_intbasis(&e, &pts, &s).unwrap(), "iterative"),
        ] {
            assert!(is_owp(&p, &s).unwrap(), "{name}");
            for (ei, &a) in e.iter().zip(&pts) {
                assert!(p.eval(a).mul(ei).is_zero(), "{name}");
            }
        }
        assert_eq!(m_intbasis(&e[..2], &[4, 4], &s), Err(Error::DuplicatePoints));
    }
}
