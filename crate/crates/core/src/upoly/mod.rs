//! Dense univariate polynomials over `F_p`.

mod eval;
mod euclid;
mod mul;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::modring::FieldCtx;

pub use eval::{eval_general, eval_geometric, interp_general, interp_geometric, GeomGrid, SubproductTree};
pub use euclid::{inv_trunc, xgcd};
pub(crate) use eval::chirp_eval;
pub(crate) use mul::{crt_fields, mul_coeffs, mul_slice, Crt};

/// Dense polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Takes coefficients already reduced mod p and strips trailing zeros.
    pub fn new(ctx: FieldCtx, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| c < ctx.modulus()));
        Poly { ctx, coeffs }
    }

    pub fn from_i64(ctx: FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        Poly { ctx, coeffs: Vec::new() }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: FieldCtx, c: u64) -> Self {
        Self::new(ctx, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(ctx: FieldCtx, c: u64, k: usize) -> Self {
        if c == 0 {
            return Self::zero(ctx);
        }
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly { ctx, coeffs: v }
    }

    pub fn x(ctx: FieldCtx) -> Self {
        Self::monomial(ctx, 1, 1)
    }

    /// Uniformly random polynomial with `len` coefficients (degree `< len`).
    pub fn random(ctx: FieldCtx, len: usize, rng: &mut impl Rng) -> Self {
        Self::new(ctx, (0..len).map(|_| ctx.random(rng)).collect())
    }

    #[inline]
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Degree, `-1` for the zero polynomial.
    #[inline]
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Number of stored coefficients (`deg + 1`).
    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Leading coefficient, 0 for the zero polynomial.
    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.ctx.inv(self.lc()))
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.ctx;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn eval(&self, pt: u64) -> u64 {
        let f = self.ctx;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul_add(acc, pt, c))
    }

    /// `self mod x^k`.
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::new(self.ctx, self.coeffs[..k.min(self.len())].to_vec())
    }

    /// Coefficients `lo .. lo+len` as a polynomial of degree `< len`.
    pub fn slice(&self, lo: usize, len: usize) -> Poly {
        if lo >= self.len() {
            return Poly::zero(self.ctx);
        }
        let hi = (lo + len).min(self.len());
        Poly::new(self.ctx, self.coeffs[lo..hi].to_vec())
    }

    /// `self * x^k`.
    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { ctx: self.ctx, coeffs: v }
    }

    /// `self div x^k`.
    pub fn shr(&self, k: usize) -> Poly {
        self.slice(k, usize::MAX - k)
    }

    /// `x^(n-1) * self(1/x)` for `n > deg self`.
    pub fn reverse(&self, n: usize) -> Poly {
        assert!(self.len() <= n);
        let mut v = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[n - 1 - i] = c;
        }
        Poly::new(self.ctx, v)
    }

    pub fn derivative(&self) -> Poly {
        let f = self.ctx;
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, i as u64 % f.modulus())).collect();
        Poly::new(f, v)
    }

    /// Exact product, algorithm chosen by size.
    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.ctx, other.ctx, "polynomials over different fields");
        Poly::new(self.ctx, mul_coeffs(&self.ctx, &self.coeffs, &other.coeffs))
    }

    /// `(self * other) mod x^k`.
    pub fn mul_trunc(&self, other: &Poly, k: usize) -> Poly {
        self.mul_slice(other, 0, k)
    }

    /// Coefficients `lo .. lo+len` of `self * other`.
    pub fn mul_slice(&self, other: &Poly, lo: usize, len: usize) -> Poly {
        assert_eq!(self.ctx, other.ctx, "polynomials over different fields");
        Poly::new(self.ctx, mul_slice(&self.ctx, &self.coeffs, &other.coeffs, lo, len))
    }

    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        euclid::divrem(self, d)
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Two-line text form: `p`, then coefficients low to high.
    pub fn to_text(&self) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}\n{}\n", self.ctx.modulus(), cs.join(" "))
    }

    pub fn from_text(s: &str) -> Result<Poly> {
        let mut lines = s.lines();
        let p = lines
            .next()
            .ok_or_else(|| Error::Parse("missing modulus line".into()))?
            .trim()
            .parse::<u64>()
            .map_err(|e| Error::Parse(format!("modulus: {e}")))?;
        let ctx = FieldCtx::new(p)?;
        let line = lines.next().unwrap_or("");
        Self::parse_coeffs(ctx, line)
    }

    /// Parses space-separated coefficients (signed values are reduced mod p).
    pub fn parse_coeffs(ctx: FieldCtx, line: &str) -> Result<Poly> {
        let cs = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i128>()
                    .map(|v| v.rem_euclid(ctx.modulus() as i128) as u64)
                    .map_err(|e| Error::Parse(format!("coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(ctx, cs))
    }

    fn check_ctx(&self, other: &Poly) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch);
        }
        Ok(())
    }
}

/// Product with a field check.
pub fn mul(f: &Poly, g: &Poly) -> Result<Poly> {
    f.check_ctx(g)?;
    Ok(f.mul(g))
}

/// Coefficients `c .. c+d-1` of `f * g`, for `deg f < c` and `deg g < c + d`.
pub fn middle_product(f: &Poly, g: &Poly, c: usize, d: usize) -> Result<Poly> {
    f.check_ctx(g)?;
    if f.deg() >= c as i64 {
        return Err(Error::DegreeTooLarge(format!("deg F = {} but c = {c}", f.deg())));
    }
    if g.deg() >= (c + d) as i64 {
        return Err(Error::DegreeTooLarge(format!("deg G = {} but c + d = {}", g.deg(), c + d)));
    }
    Ok(f.mul_slice(g, c, d))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.ctx, o.ctx, "polynomials over different fields");
        let f = self.ctx;
        let (long, short) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut v = long.coeffs.clone();
        for (a, &b) in v.iter_mut().zip(&short.coeffs) {
            *a = f.add(*a, b);
        }
        Poly::new(f, v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_eq!(self.ctx, o.ctx, "polynomials over different fields");
        let f = self.ctx;
        let n = self.len().max(o.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect();
        Poly::new(f, v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.ctx;
        Poly { ctx: f, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        Poly::mul(self, o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f97() -> FieldCtx {
        FieldCtx::new(97).unwrap()
    }

    #[test]
    fn normalization_and_degree() {
        let f = f97();
        assert_eq!(Poly::new(f, vec![1, 0, 0]).deg(), 0);
        assert_eq!(Poly::new(f, vec![0, 0]).deg(), -1);
        assert!(Poly::from_i64(f, &[97, -97]).is_zero());
    }

    #[test]
    fn square_of_one_plus_x() {
        let f = f97();
        let a = Poly::from_i64(f, &[1, 1]);
        assert_eq!(&a * &a, Poly::from_i64(f, &[1, 2, 1]));
        assert!((&a * &Poly::zero(f)).is_zero());
    }

    #[test]
    fn middle_product_examples() {
        let f = f97();
        let a = Poly::from_i64(f, &[1, 2]);
        let b = Poly::from_i64(f, &[1, 1, 1, 1]);
        assert_eq!(middle_product(&a, &b, 2, 2).unwrap(), Poly::from_i64(f, &[3, 3]));
        let g = Poly::from_i64(f, &[5, 6, 7, 8]);
        assert_eq!(middle_product(&Poly::one(f), &g, 1, 3).unwrap(), Poly::from_i64(f, &[6, 7, 8]));
        assert!(matches!(middle_product(&b, &a, 2, 2), Err(Error::DegreeTooLarge(_))));
    }

    #[test]
    fn ctx_mismatch() {
        let a = Poly::one(f97());
        let b = Poly::one(FieldCtx::new(101).unwrap());
        assert_eq!(mul(&a, &b), Err(Error::CtxMismatch));
    }

    #[test]
    fn text_round_trip() {
        let f = f97();
        let a = Poly::from_i64(f, &[3, 0, -1]);
        assert_eq!(a.to_text(), "97\n3 0 96\n");
        assert_eq!(Poly::from_text(&a.to_text()).unwrap(), a);
        assert!(Poly::from_text("97\n").unwrap().is_zero());
    }
}
