//! Linear system solving over `K[x]`.

mod lifting;
mod ratrec;

pub use lifting::{dixon_solve, high_order_solve, newton_inv_trunc, HighOrderLifting};
pub use ratrec::vec_ratrec;

use crate::error::Result;
use crate::forms::Shift;
use crate::kernel::{kernel_zls, Flavor};
use crate::polmat::PolMat;
use crate::upoly::Poly;

/// `(u, f)` with `A u = f b`, `f` monic of minimal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSolution {
    pub u: PolMat,
    pub f: Poly,
}

impl RatSolution {
    /// Checks `A u = f b` exactly.
    pub fn verify(&self, a: &PolMat, b: &PolMat) -> bool {
        a.mul(&self.u) == b.mul_poly(&self.f)
    }
}

/// Result of the kernel-based solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelSolveOutcome {
    Solution(RatSolution),
    NoSolution,
    /// Columns generate all solutions: a column `[v; g]` with `g != 0`
    /// gives `A v = -g b`.
    Space(PolMat),
}

/// Solves `A u = f b` for any `A` through a right kernel basis of `[A | b]`.
pub fn kernel_solve(a: &PolMat, b: &PolMat) -> Result<KernelSolveOutcome> {
    let n = a.cols();
    let aug = a.hstack(b);
    let s: Vec<i64> = (0..=n).map(|j| aug.col_deg(j).max(0)).collect();
    let kb = kernel_zls(&aug.transpose(), &Shift::new(s), Flavor::Approx)?;
    let k = kb.k;
    if k.rows() == 0 || (0..k.rows()).all(|i| k.get(i, n).is_zero()) {
        return Ok(KernelSolveOutcome::NoSolution);
    }
    if k.rows() > 1 {
        return Ok(KernelSolveOutcome::Space(k.transpose()));
    }
    let g = k.get(0, n).clone();
    let f = *a.ctx();
    let c = f.neg(f.inv(g.lc()));
    let u = k.col_range(0, n).transpose().scale(c);
    Ok(KernelSolveOutcome::Solution(RatSolution { u, f: g.scale(f.neg(c)) }))
}

/// `p(x + beta)`.
pub fn taylor_shift(p: &Poly, beta: u64) -> Poly {
    let f = *p.ctx();
    let lin = Poly::new(f, vec![beta, 1]);
    p.coeffs().iter().rev().fold(Poly::zero(f), |acc, &c| &(&acc * &lin) + &Poly::constant(f, c))
}

/// Substitutes `x + beta` for `x`; useful when `A(0)` is singular but
/// `A(beta)` is not, undone by shifting back with `-beta`.
pub fn shift_x(a: &PolMat, beta: u64) -> PolMat {
    a.map(|p| taylor_shift(p, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::FieldCtx;

    #[test]
    fn kernel_solve_examples() {
        let f = FieldCtx::new(97).unwrap();
        let a = PolMat::from_i64(f, &[vec![vec![1]], vec![vec![1]]]);
        let b = PolMat::from_i64(f, &[vec![vec![1]], vec![vec![0]]]);
        assert_eq!(kernel_solve(&a, &b).unwrap(), KernelSolveOutcome::NoSolution);
        let a = PolMat::from_i64(f, &[vec![vec![1], vec![1]], vec![vec![1], vec![1]]]);
        let b = PolMat::from_i64(f, &[vec![vec![1]], vec![vec![1]]]);
        match kernel_solve(&a, &b).unwrap() {
            KernelSolveOutcome::Space(k) => assert!(k.cols() >= 1),
            other => panic!("expected a solution space, got {other:?}"),
        }
        let a = PolMat::from_i64(f, &[vec![vec![0, 1], vec![1]], vec![vec![1], vec![0, 1]]]);
        let b = PolMat::from_i64(f, &[vec![vec![1]], vec![vec![0]]]);
        let KernelSolveOutcome::Solution(s) = kernel_solve(&a, &b).unwrap() else { panic!() };
        assert!(s.verify(&a, &b));
        assert_eq!(s.f, Poly::from_i64(f, &[-1, 0, 1]));
        assert_eq!(s.u, PolMat::from_i64(f, &[vec![vec![0, 1]], vec![vec![-1]]]));
    }

    #[test]
    fn taylor_shift_roundtrip() {
        let f = FieldCtx::new(97).unwrap();
        let p = Poly::from_i64(f, &[3, 1, 4, 1, 5]);
        let q = taylor_shift(&p, 7);
        assert_eq!(q.eval(0), p.eval(7));
        assert_eq!(taylor_shift(&q, f.neg(7)), p);
    }
}
