//! Bivariate resultants and characteristic polynomials modulo a polynomial.

mod charpoly;
mod structured;
mod villard;

pub use charpoly::{charpoly, charpoly_bsgs_table, charpoly_direct, charpoly_generic, charpoly_naive_table, default_charpoly_m};
pub use structured::{structured_inverse_eval, StructuredInverseEval};
pub use villard::{default_resultant_m, resultant, villard_resultant, SylvesterCtx};

use rand::Rng;

use crate::error::{Error, Result};
use crate::modring::FieldCtx;
use crate::upoly::{interp_general, Poly, SubproductTree};

/// Polynomial in `K[x][z]`, stored as its `z`-coefficients (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    ctx: FieldCtx,
    coeffs: Vec<Poly>,
}

impl BivarPoly {
    pub fn new(ctx: FieldCtx, mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BivarPoly { ctx, coeffs }
    }

    pub fn from_i64(ctx: FieldCtx, c: &[Vec<i64>]) -> Self {
        BivarPoly::new(ctx, c.iter().map(|v| Poly::from_i64(ctx, v)).collect())
    }

    /// Random polynomial with `deg_z = nz` and `deg_x <= dx`.
    pub fn random(ctx: FieldCtx, nz: usize, dx: usize, rng: &mut impl Rng) -> Self {
        let mut c: Vec<Poly> = (0..=nz).map(|_| Poly::random(ctx, dx + 1, rng)).collect();
        while c[nz].is_zero() {
            c[nz] = Poly::random(ctx, dx + 1, rng);
        }
        BivarPoly { ctx, coeffs: c }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `z`; `-1` for zero.
    pub fn deg_z(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn deg_x(&self) -> i64 {
        self.coeffs.iter().map(Poly::deg).max().unwrap_or(-1)
    }

    pub fn lc_z(&self) -> Poly {
        self.coeffs.last().cloned().unwrap_or_else(|| Poly::zero(self.ctx))
    }

    /// Specialization `x = alpha`, a polynomial in `z`.
    pub fn eval_x(&self, alpha: u64) -> Poly {
        Poly::new(self.ctx, self.coeffs.iter().map(|c| c.eval(alpha)).collect())
    }

    pub fn mul(&self, o: &BivarPoly) -> BivarPoly {
        if self.is_zero() || o.is_zero() {
            return BivarPoly::new(self.ctx, vec![]);
        }
        let mut c = vec![Poly::zero(self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        BivarPoly::new(self.ctx, c)
    }

    /// `p nz dx`, then one line of `x`-coefficients per power of `z`.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.ctx.modulus(), self.deg_z(), self.deg_x().max(0));
        for c in &self.coeffs {
            let v: Vec<String> = c.coeffs().iter().map(u64::to_string).collect();
            s.push_str(&v.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<BivarPoly> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Parse("empty bivariate file".into()))?;
        let h: Vec<u64> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [p, nz, dx] = h[..] else {
            return Err(Error::Parse("header must be `p nz dx`".into()));
        };
        let ctx = FieldCtx::new(p)?;
        let mut coeffs = Vec::new();
        for _ in 0..=nz {
            let l = lines.next().ok_or_else(|| Error::Parse("missing z-coefficient line".into()))?;
            let c = Poly::parse_coeffs(ctx, l)?;
            if c.deg() > dx as i64 {
                return Err(Error::Parse(format!("x-degree {} exceeds declared {dx}", c.deg())));
            }
            coeffs.push(c);
        }
        Ok(BivarPoly::new(ctx, coeffs))
    }
}

/// Resultant of `f` and `g` with formal degrees `deg f`, `deg g`, by the
/// Euclidean algorithm.
pub fn univariate_resultant(f: &Poly, g: &Poly) -> u64 {
    let ctx = *f.ctx();
    if f.is_zero() || g.is_zero() {
        return 0;
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut acc = 1u64;
    loop {
        let (da, db) = (a.deg() as u64, b.deg() as u64);
        if db == 0 {
            return ctx.mul(acc, ctx.pow(b.lc(), da));
        }
        if da == 0 {
            return ctx.mul(acc, ctx.pow(a.lc(), db));
        }
        // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, a mod b)
        let r = a.rem(&b).expect("nonzero divisor");
        if r.is_zero() {
            return 0;
        }
        if da % 2 == 1 && db % 2 == 1 {
            acc = ctx.neg(acc);
        }
        acc = ctx.mul(acc, ctx.pow(b.lc(), da - r.deg() as u64));
        a = std::mem::replace(&mut b, r);
    }
}

/// Bound on `deg_x Res_z(F, G)`.
pub fn resultant_degree_bound(f: &BivarPoly, g: &BivarPoly) -> usize {
    let (a, b) = (f.deg_z().max(0) as usize, g.deg_z().max(0) as usize);
    a * g.deg_x().max(0) as usize + b * f.deg_x().max(0) as usize
}

/// `Res_z(F, G)` by evaluation at `0, 1, 2, ...` and interpolation, skipping
/// points where a leading coefficient vanishes.
pub fn resultant_direct(f: &BivarPoly, g: &BivarPoly) -> Result<Poly> {
    let ctx = *f.ctx();
    if f.deg_z() < 0 || g.deg_z() < 0 {
        return Err(Error::BadParams("zero polynomial in resultant".into()));
    }
    let need = resultant_degree_bound(f, g) + 1;
    let (lf, lg) = (f.lc_z(), g.lc_z());
    let mut pts = Vec::with_capacity(need);
    let mut x = 0u64;
    while pts.len() < need {
        if x >= ctx.modulus() {
            return Err(Error::FieldTooSmall(format!("{need} usable points needed")));
        }
        if lf.eval(x) != 0 && lg.eval(x) != 0 {
            pts.push(x);
        }
        x += 1;
    }
    let tree = SubproductTree::new(ctx, &pts);
    let fv: Vec<Vec<u64>> = f.coeffs().iter().map(|c| tree.eval(c)).collect();
    let gv: Vec<Vec<u64>> = g.coeffs().iter().map(|c| tree.eval(c)).collect();
    let vals: Vec<u64> = (0..pts.len())
        .map(|k| {
            let fa = Poly::new(ctx, fv.iter().map(|v| v[k]).collect());
            let ga = Poly::new(ctx, gv.iter().map(|v| v[k]).collect());
            univariate_resultant(&fa, &ga)
        })
        .collect();
    interp_general(ctx, &vals, &pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_sylvester;
    use rand::SeedableRng;

    fn f97() -> FieldCtx {
        FieldCtx::new(97).unwrap()
    }

    #[test]
    fn resultant_examples() {
        let f = f97();
        let fz = BivarPoly::from_i64(f, &[vec![0, -1], vec![1]]);
        let gz = BivarPoly::from_i64(f, &[vec![-1], vec![1]]);
        assert_eq!(resultant_direct(&fz, &gz).unwrap(), Poly::from_i64(f, &[-1, 1]));
        let fz = BivarPoly::from_i64(f, &[vec![0, 1], vec![], vec![1]]);
        let gz = BivarPoly::from_i64(f, &[vec![1], vec![1]]);
        assert_eq!(resultant_direct(&fz, &gz).unwrap(), Poly::from_i64(f, &[1, 1]));
        let a = BivarPoly::from_i64(f, &[vec![0, -1], vec![1]]);
        let b = a.mul(&BivarPoly::from_i64(f, &[vec![-1], vec![1]]));
        assert!(resultant_direct(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn univariate_matches_sylvester() {
        let f = FieldCtx::new(1_000_003).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for (a, b) in [(1, 1), (3, 2), (2, 5), (6, 6), (1, 4)] {
            let mut p = Poly::random(f, a + 1, &mut rng);
            let mut q = Poly::random(f, b + 1, &mut rng);
            while p.deg() != a as i64 {
                p = Poly::random(f, a + 1, &mut rng);
            }
            while q.deg() != b as i64 {
                q = Poly::random(f, b + 1, &mut rng);
            }
            assert_eq!(univariate_resultant(&p, &q), oracle_sylvester(&p, &q).unwrap().det().unwrap());
        }
    }

    #[test]
    fn text_roundtrip() {
        let f = f97();
        let b = BivarPoly::from_i64(f, &[vec![1, 2], vec![0, 0, 3], vec![5]]);
        assert_eq!(BivarPoly::from_text(&b.to_text()).unwrap(), b);
    }
}
