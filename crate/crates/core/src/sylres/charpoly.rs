use rand::Rng;

use super::{resultant_direct, univariate_resultant, BivarPoly};
use crate::detred::det;
use crate::error::{Error, Result};
use crate::fraction::fracrec_series;
use crate::matrix::Mat;
use crate::modring::FieldCtx;
use crate::polmat::PolMat;
use crate::upoly::{inv_trunc, xgcd, Poly};

/// `ceil(n^(1/3))`.
pub fn default_charpoly_m(n: usize) -> usize {
    ((n as f64).cbrt().ceil() as usize).max(1)
}

fn check_modulus(p: &Poly) -> Result<usize> {
    if p.deg() < 1 || !p.is_monic() {
        return Err(Error::BadParams("modulus must be monic of positive degree".into()));
    }
    Ok(p.deg() as usize)
}

/// Characteristic polynomial of multiplication by `A` modulo `P`, as
/// `Res_z(P(z), x - A(z))`.
pub fn charpoly_direct(a: &Poly, p: &Poly) -> Result<Poly> {
    check_modulus(p)?;
    let ctx = *p.ctx();
    let a = a.rem(p)?;
    let pb = BivarPoly::new(ctx, p.coeffs().iter().map(|&c| Poly::constant(ctx, c)).collect());
    let mut g: Vec<Poly> = a.coeffs().iter().map(|&c| Poly::constant(ctx, ctx.neg(c))).collect();
    if g.is_empty() {
        g.push(Poly::zero(ctx));
    }
    g[0] = &g[0] + &Poly::x(ctx);
    resultant_direct(&pb, &BivarPoly::new(ctx, g))
}

fn inverse_mod(a: &Poly, p: &Poly) -> Result<Poly> {
    let (g, s, _) = xgcd(&a.rem(p)?, p)?;
    if g.deg() != 0 {
        return Err(Error::NotInvertible);
    }
    s.rem(p)
}

fn table_to_polmat(ctx: FieldCtx, m: usize, delta: usize, h: impl Fn(usize, usize, usize) -> u64) -> PolMat {
    let entries = (0..m * m)
        .map(|ij| Poly::new(ctx, (0..delta).map(|k| h(ij / m, ij % m, k)).collect()))
        .collect();
    PolMat::from_entries(ctx, m, m, entries)
}

/// `h[i][j]` with coefficients `-coeff_i(z^j B^(k+1) mod P)`, `k < delta`,
/// one power of `B` at a time.
pub fn charpoly_naive_table(a: &Poly, p: &Poly, m: usize, delta: usize) -> Result<PolMat> {
    check_modulus(p)?;
    let ctx = *p.ctx();
    let b = inverse_mod(a, p)?;
    let mut vals = vec![0u64; m * m * delta];
    let mut bk = b.clone();
    for k in 0..delta {
        let mut w = bk.clone();
        for j in 0..m {
            for i in 0..m {
                vals[(i * m + j) * delta + k] = ctx.neg(w.coeff(i));
            }
            w = w.shl(1).rem(p)?;
        }
        bk = (&bk * &b).rem(p)?;
    }
    Ok(table_to_polmat(ctx, m, delta, |i, j, k| vals[(i * m + j) * delta + k]))
}

/// Same table by baby steps `B^t`, giant steps `B^(r s)`, and one constant
/// matrix product against the giant-step coefficient vectors.
pub fn charpoly_bsgs_table(a: &Poly, p: &Poly, m: usize, delta: usize) -> Result<PolMat> {
    let n = check_modulus(p)?;
    let ctx = *p.ctx();
    let b = inverse_mod(a, p)?;
    let r = (delta as f64).sqrt().ceil().max(1.0) as usize;
    let giants = delta.div_ceil(r);
    let mut baby = Vec::with_capacity(r);
    let mut c = b.clone();
    for _ in 0..r {
        baby.push(c.clone());
        c = (&c * &b).rem(p)?;
    }
    let br = baby[r - 1].clone();
    let mut giant = Vec::with_capacity(giants);
    let mut gs = Poly::one(ctx);
    for _ in 0..giants {
        giant.push(gs.clone());
        gs = (&gs * &br).rem(p)?;
    }

    // seq_i[l] = coeff_i(z^l mod P), from the recurrence of P
    let len = 2 * n + m;
    let rev = p.reverse(n + 1);
    let irev = inv_trunc(&rev, len)?;
    let seqs: Vec<Poly> = (0..m).map(|i| rev.shl(i).truncate(n).mul_trunc(&irev, len)).collect();

    // phi[i][t][l] = coeff_i(z^l C_t mod P), l < n + m
    let rows = m * m * r;
    let mut phi = Mat::zeros(ctx, rows, n);
    for (t, ct) in baby.iter().enumerate() {
        let crev = ct.reverse(n);
        for (i, seq) in seqs.iter().enumerate() {
            let v = crev.mul_slice(seq, n - 1, n + m);
            for j in 0..m {
                let row = phi.row_mut((i * m + j) * r + t);
                for (l, x) in row.iter_mut().enumerate() {
                    *x = v.coeff(j + l);
                }
            }
        }
    }
    let mut gm = Mat::zeros(ctx, n, giants);
    for (s, g) in giant.iter().enumerate() {
        for l in 0..n {
            gm.set(l, s, g.coeff(l));
        }
    }
    let prod = phi.mul(&gm);
    // B^(k+1) = C_t G_s with k + 1 = r s + t + 1
    Ok(table_to_polmat(ctx, m, delta, |i, j, k| {
        let (s, t) = (k / r, k % r);
        ctx.neg(prod.get((i * m + j) * r + t, s))
    }))
}

/// Characteristic polynomial of `A` modulo `P` for generic input, from the
/// minimal denominator of the top-left block of `(x I - M_A)^{-1}`.
pub fn charpoly_generic(a: &Poly, p: &Poly, m: Option<usize>, rng: &mut impl Rng) -> Result<Poly> {
    let n = check_modulus(p)?;
    let ctx = *p.ctx();
    let m = m.unwrap_or_else(|| default_charpoly_m(n));
    if m == 0 || m > n {
        return Err(Error::BadParams(format!("block size {m} not in 1..={n}")));
    }
    let dd = n.div_ceil(m);
    let h = charpoly_bsgs_table(a, p, m, 2 * dd)?;
    let desc = fracrec_series(&h, dd).map_err(|e| Error::GenericityFailure(e.to_string()))?;
    let dq = det(&desc.q)?;
    if dq.deg() != n as i64 {
        return Err(Error::GenericityFailure(format!("denominator determinant has degree {}", dq.deg())));
    }
    let out = dq.make_monic();
    let x0 = ctx.random(rng);
    let shifted = &Poly::constant(ctx, x0) - &a.rem(p)?;
    if out.eval(x0) != univariate_resultant(p, &shifted) {
        return Err(Error::GenericityFailure("verification mismatch".into()));
    }
    Ok(out)
}

/// Generic method with the direct method as fallback.
pub fn charpoly(a: &Poly, p: &Poly, m: Option<usize>, rng: &mut impl Rng) -> Result<Poly> {
    match charpoly_generic(a, p, m, rng) {
        Err(Error::GenericityFailure(_)) => charpoly_direct(a, p),
        r => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::PRIME_60_NTT;
    use crate::oracle::oracle_charpoly;
    use rand::SeedableRng;

    fn mult_matrix(a: &Poly, p: &Poly) -> Mat {
        let n = p.deg() as usize;
        let mut m = Mat::zeros(*p.ctx(), n, n);
        let mut w = a.rem(p).unwrap();
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, w.coeff(i));
            }
            w = w.shl(1).rem(p).unwrap();
        }
        m
    }

    #[test]
    fn small_examples() {
        let f = FieldCtx::new(97).unwrap();
        let p = Poly::from_i64(f, &[-1, 0, 1]);
        let a = Poly::x(f);
        let expect = Poly::from_i64(f, &[-1, 0, 1]);
        assert_eq!(charpoly_direct(&a, &p).unwrap(), expect);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert_eq!(charpoly_generic(&a, &p, Some(1), &mut rng).unwrap(), expect);
        let c = Poly::constant(f, 5);
        let p3 = Poly::from_i64(f, &[1, 2, 3, 1]);
        assert_eq!(charpoly_direct(&c, &p3).unwrap(), Poly::from_i64(f, &[-125, 75, -15, 1]));
    }

    #[test]
    fn tables_agree() {
        let f = FieldCtx::new(PRIME_60_NTT).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for (n, m, delta) in [(5, 2, 6), (9, 3, 7), (12, 1, 24)] {
            let mut p = Poly::random(f, n, &mut rng);
            p = &p + &Poly::monomial(f, 1, n);
            let a = Poly::random(f, n, &mut rng);
            assert_eq!(charpoly_bsgs_table(&a, &p, m, delta).unwrap(), charpoly_naive_table(&a, &p, m, delta).unwrap());
        }
    }

    #[test]
    fn random_matches_dense() {
        let f = FieldCtx::new(PRIME_60_NTT).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in [4usize, 16, 32] {
            let p = &Poly::random(f, n, &mut rng) + &Poly::monomial(f, 1, n);
            let a = Poly::random(f, n, &mut rng);
            let dense = oracle_charpoly(&mult_matrix(&a, &p)).unwrap();
            assert_eq!(charpoly_generic(&a, &p, None, &mut rng).unwrap(), dense);
            assert_eq!(charpoly_direct(&a, &p).unwrap(), dense);
        }
    }
}
