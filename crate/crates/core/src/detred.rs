//! Determinants of polynomial matrices and row reduction.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::appint::EvalPoints;
use crate::error::{Error, Result};
use crate::forms::{is_reduced, Shift};
use crate::fraction::fracrec_series;
use crate::polmat::PolMat;
use crate::solve::{dixon_solve, newton_inv_trunc, HighOrderLifting};
use crate::tuning::tuning;
use crate::upoly::{interp_general, interp_geometric, GeomGrid, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMethod {
    Minors,
    Eval,
    Linsolve,
}

impl fmt::Display for DetMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetMethod::Minors => "minors",
            DetMethod::Eval => "eval",
            DetMethod::Linsolve => "linsolve",
        })
    }
}

impl FromStr for DetMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minors" => Ok(DetMethod::Minors),
            "eval" => Ok(DetMethod::Eval),
            "linsolve" => Ok(DetMethod::Linsolve),
            _ => Err(Error::Parse(format!("unknown determinant method {s:?}"))),
        }
    }
}

/// A determinant with the method that produced it and the points where it
/// was checked against dense determinants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetResult {
    pub det: Poly,
    pub method: DetMethod,
    pub checked_at: Vec<u64>,
}

fn square(a: &PolMat) -> Result<usize> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare);
    }
    Ok(a.rows())
}

/// Upper bound on `deg det A`.
fn det_degree_bound(a: &PolMat) -> usize {
    let n = a.rows();
    let r: i64 = (0..n).map(|i| a.row_deg(i).max(0)).sum();
    let c: i64 = (0..n).map(|j| a.col_deg(j).max(0)).sum();
    r.min(c) as usize
}

/// Expansion by minors along rows, memoized over column subsets.
pub fn det_minors(a: &PolMat) -> Result<Poly> {
    let m = square(a)?;
    let cap = tuning().det_minors_cap;
    if m > cap {
        return Err(Error::DimensionCap { cap, got: m });
    }
    let ctx = *a.ctx();
    // dp[mask]: determinant of the top |mask| rows restricted to columns in mask
    let mut dp = vec![Poly::zero(ctx); 1 << m];
    dp[0] = Poly::one(ctx);
    for mask in 1usize..1 << m {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Poly::zero(ctx);
        // sign follows the position of column j among the chosen columns
        let mut pos = 0;
        for j in 0..m {
            if mask >> j & 1 == 1 {
                let sub = &dp[mask & !(1 << j)];
                if !sub.is_zero() && !a.get(row, j).is_zero() {
                    let t = a.get(row, j) * sub;
                    acc = if (row + pos) % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                pos += 1;
            }
        }
        dp[mask] = acc;
    }
    Ok(dp[(1 << m) - 1].clone())
}

/// Evaluation at `1, alpha, ..., alpha^D` and geometric interpolation,
/// `D` a bound on the determinant degree.
pub fn det_eval(a: &PolMat) -> Result<Poly> {
    square(a)?;
    let len = det_degree_bound(a) + 1;
    let grid = GeomGrid::find(*a.ctx(), len).map_err(|_| Error::FieldTooSmall(format!("no geometric grid of length {len}")))?;
    let pts = EvalPoints::Geometric { start: 1, ratio: grid.alpha(), len };
    let vals: Vec<u64> = pts.eval(a).iter().map(|m| m.det().expect("square")).collect();
    interp_geometric(&vals, &grid)
}

/// Evaluation at `0, 1, ..., D`; needs `p > D`.
pub fn det_eval_general(a: &PolMat) -> Result<Poly> {
    square(a)?;
    let ctx = *a.ctx();
    let len = det_degree_bound(a) + 1;
    if len as u64 > ctx.modulus() {
        return Err(Error::FieldTooSmall(format!("{len} points needed")));
    }
    let pts: Vec<u64> = (0..len as u64).collect();
    let vals: Vec<u64> = pts.iter().map(|&x| a.eval(x).det().expect("square")).collect();
    interp_general(ctx, &vals, &pts)
}

const LINSOLVE_ATTEMPTS: usize = 4;

/// Denominator of `A^{-1} b` for a random `b`, rescaled by a dense
/// determinant at one point and checked at another.
pub fn det_linsolve(a: &PolMat, rng: &mut impl Rng) -> Result<Poly> {
    let m = square(a)?;
    let ctx = *a.ctx();
    let d = a.deg().max(0) as usize;
    for _ in 0..LINSOLVE_ATTEMPTS {
        let b = PolMat::random(ctx, m, 1, d + 1, rng);
        let sol = dixon_solve(a, &b)?;
        let beta = ctx.random(rng);
        let fb = sol.f.eval(beta);
        if fb == 0 {
            continue;
        }
        let det = sol.f.scale(ctx.mul(a.eval(beta).det()?, ctx.inv(fb)));
        let gamma = ctx.random(rng);
        if det.eval(gamma) == a.eval(gamma).det()? {
            return Ok(det);
        }
    }
    Err(Error::VerificationFailed(LINSOLVE_ATTEMPTS))
}

/// Default method by dimension.
pub fn choose_method(m: usize) -> DetMethod {
    let t = tuning();
    if m <= t.det_minors_max {
        DetMethod::Minors
    } else if m <= t.det_eval_max {
        DetMethod::Eval
    } else {
        DetMethod::Linsolve
    }
}

/// Determinant with a given or default method, checked at two random points.
pub fn det_with(a: &PolMat, method: Option<DetMethod>, rng: &mut impl Rng) -> Result<DetResult> {
    let m = square(a)?;
    let method = method.unwrap_or_else(|| choose_method(m));
    let det = match method {
        DetMethod::Minors => det_minors(a)?,
        DetMethod::Eval => match det_eval(a) {
            Err(Error::FieldTooSmall(_)) => det_eval_general(a)?,
            r => r?,
        },
        DetMethod::Linsolve => det_linsolve(a, rng)?,
    };
    let ctx = *a.ctx();
    let checked_at = vec![ctx.random(rng), ctx.random(rng)];
    for &beta in &checked_at {
        if det.eval(beta) != a.eval(beta).det()? {
            return Err(Error::VerificationFailed(1));
        }
    }
    Ok(DetResult { det, method, checked_at })
}

/// Determinant with the default method and a fixed seed.
pub fn det(a: &PolMat) -> Result<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde7);
    Ok(det_with(a, None, &mut rng)?.det)
}

/// How `reduce_basis` obtains its slice of `A^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    HighOrder,
    Newton,
}

/// Row reduced form `R = U A`, `U` unimodular, from a slice of `2d`
/// coefficients of `A^{-1}` at degree about `m d`.
pub fn reduce_basis(a: &PolMat) -> Result<PolMat> {
    reduce_basis_with(a, Expansion::HighOrder)
}

pub fn reduce_basis_with(a: &PolMat, how: Expansion) -> Result<PolMat> {
    let m = square(a)?;
    if m == 0 {
        return Ok(a.clone());
    }
    let target_deg = det(a)?.deg();
    if target_deg < 0 {
        return Err(Error::SingularMatrix);
    }
    let mut hl = HighOrderLifting::new(a)?;
    let d = hl.d();
    let mut i = 1;
    while hl.slice_start(i) < (m - 1) * d + 1 {
        i += 1;
    }
    // a later slice is tried once if the first one shares a factor with A
    for i in [i, i + 1] {
        let start = hl.slice_start(i);
        let slice = match how {
            Expansion::HighOrder => hl.slice(i),
            Expansion::Newton => newton_inv_trunc(a, start + 2 * d)?.slice(start, 2 * d),
        };
        let Ok(desc) = fracrec_series(&slice, d) else { continue };
        let r = desc.q;
        if certify(a, &r, target_deg)? {
            return Ok(r);
        }
    }
    Err(Error::ReconstructionFailed("slice did not yield a unimodular multiple".into()))
}

/// `R` reduced, `R = U A` for a polynomial `U`, and `deg det R = deg det A`.
fn certify(a: &PolMat, r: &PolMat, target_deg: i64) -> Result<bool> {
    let m = a.rows();
    let zero = Shift::zeros(m);
    if !is_reduced(r, &zero)? {
        return Ok(false);
    }
    let sum: i64 = (0..m).map(|i| r.row_deg(i)).sum();
    if sum != target_deg {
        return Ok(false);
    }
    // U = R A^{-1} has degree at most deg R + (m-1) deg A - deg det A
    let bound = (r.deg() + (m as i64 - 1) * a.deg().max(0) - target_deg).max(0) as usize + 1;
    let u = r.mul_trunc(&newton_inv_trunc(a, bound)?, bound);
    Ok(u.mul(a) == *r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::{FieldCtx, PRIME_60_NTT};

    fn f97() -> FieldCtx {
        FieldCtx::new(97).unwrap()
    }

    #[test]
    fn small_determinants() {
        let f = f97();
        let a = PolMat::from_i64(f, &[vec![vec![0, 1], vec![1]], vec![vec![1], vec![0, 1]]]);
        let expect = Poly::from_i64(f, &[-1, 0, 1]);
        assert_eq!(det_minors(&a).unwrap(), expect);
        assert_eq!(det_eval(&a).unwrap(), expect);
        assert_eq!(det_eval_general(&a).unwrap(), expect);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(det_linsolve(&a, &mut rng).unwrap(), expect);
        let one = PolMat::from_i64(f, &[vec![vec![3, 4, 5]]]);
        assert_eq!(det_minors(&one).unwrap(), Poly::from_i64(f, &[3, 4, 5]));
        let mut dg = PolMat::zeros(f, 2, 2);
        dg.set(0, 0, Poly::from_i64(f, &[0, 1]));
        dg.set(1, 1, Poly::from_i64(f, &[0, 0, 1]));
        assert_eq!(det_eval(&dg).unwrap(), Poly::from_i64(f, &[0, 0, 0, 1]));
        assert_eq!(det_linsolve(&PolMat::identity(f, 3), &mut rng).unwrap(), Poly::one(f));
    }

    #[test]
    fn methods_agree() {
        let f = FieldCtx::new(PRIME_60_NTT).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (m, d) in [(3, 5), (4, 6), (5, 4)] {
            let a = PolMat::random(f, m, m, d + 1, &mut rng);
            let x = det_minors(&a).unwrap();
            assert_eq!(det_eval(&a).unwrap(), x);
            assert_eq!(det_linsolve(&a, &mut rng).unwrap(), x);
        }
        let big = PolMat::identity(f, 9);
        assert_eq!(det_minors(&big), Err(Error::DimensionCap { cap: 8, got: 9 }));
    }

    #[test]
    fn reduce_recipe() {
        let f = FieldCtx::new(PRIME_60_NTT).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (m, d) in [(2, 3), (3, 6), (4, 3)] {
            let k = d / 3 + 1;
            let mut lo = PolMat::random(f, m, m, k, &mut rng);
            let mut up = PolMat::random(f, m, m, k, &mut rng);
            for i in 0..m {
                for j in 0..m {
                    if i == j {
                        lo.set(i, j, Poly::one(f));
                        up.set(i, j, Poly::one(f));
                    } else if i < j {
                        lo.set(i, j, Poly::zero(f));
                    } else {
                        up.set(i, j, Poly::zero(f));
                    }
                }
            }
            let base = PolMat::random(f, m, m, k, &mut rng);
            let a = lo.mul(&up).mul(&base);
            for how in [Expansion::HighOrder, Expansion::Newton] {
                let r = reduce_basis_with(&a, how).unwrap();
                assert!(is_reduced(&r, &Shift::zeros(m)).unwrap());
                assert_eq!(det(&r).unwrap().make_monic(), det(&a).unwrap().make_monic());
            }
        }
        let id = PolMat::identity(f, 3);
        let r = reduce_basis(&id).unwrap();
        assert_eq!(r.deg(), 0);
        assert!(r.coeff(0).det().unwrap() != 0);
    }
}
