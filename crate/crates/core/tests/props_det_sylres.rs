//! Properties of determinants, row reduction, resultants and characteristic polynomials.

use pml::detred::{det_eval_general, det_linsolve, det_minors, reduce_basis, reduce_basis_with, Expansion};
use pml::forms::{is_reduced, rdeg};
use pml::oracle::{oracle_charpoly, oracle_dense_inverse, oracle_poly_det, oracle_sylvester};
use pml::sylres::{
    charpoly_direct, charpoly_generic, resultant_direct, structured_inverse_eval, univariate_resultant,
    villard_resultant, BivarPoly, SylvesterCtx,
};
use pml::{FieldCtx, Mat, PolMat, Poly, Shift};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field() -> FieldCtx {
    FieldCtx::new(pml::modring::PRIME_60_NTT).unwrap()
}

fn adjugate(a: &PolMat) -> PolMat {
    let f = *a.ctx();
    let m = a.rows();
    let mut adj = PolMat::zeros(f, m, m);
    for i in 0..m {
        for j in 0..m {
            let rows: Vec<usize> = (0..m).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..m).filter(|&c| c != j).collect();
            let minor = a.select_rows(&rows).select_cols(&cols);
            let d = if m == 1 { Poly::one(f) } else { oracle_poly_det(&minor).unwrap() };
            adj.set(j, i, if (i + j) % 2 == 1 { -&d } else { d });
        }
    }
    adj
}

/// A reduced random matrix scrambled by a lower unit triangular factor.
fn scrambled(f: FieldCtx, m: usize, d: usize, rng: &mut impl Rng) -> PolMat {
    let mut l = PolMat::identity(f, m);
    for i in 0..m {
        for j in 0..i {
            l.set(i, j, Poly::random(f, d + 1, rng));
        }
    }
    l.mul(&PolMat::random(f, m, m, d + 1, rng))
}

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

fn monic(f: FieldCtx, n: usize, rng: &mut impl Rng) -> Poly {
    &Poly::random(f, n, rng) + &Poly::monomial(f, 1, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn determinant_methods_agree(seed: u64, m in 1usize..6, d in 0usize..6) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PolMat::random(f, m, m, d + 1, &mut rng);
        let want = oracle_poly_det(&a).unwrap();
        prop_assert_eq!(det_minors(&a).unwrap(), want.clone());
        prop_assert_eq!(det_eval_general(&a).unwrap(), want.clone());
        if let Ok(p) = pml::detred::det_eval(&a) {
            prop_assert_eq!(p, want.clone());
        }
        if let Ok(p) = det_linsolve(&a, &mut rng) {
            prop_assert_eq!(p, want);
        }
    }

    #[test]
    fn reduction_keeps_the_module(seed: u64, m in 1usize..5, d in 1usize..4, newton: bool) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = scrambled(f, m, d, &mut rng);
        let deta = oracle_poly_det(&a).unwrap();
        prop_assume!(!deta.is_zero());
        let how = if newton { Expansion::Newton } else { Expansion::HighOrder };
        let r = reduce_basis_with(&a, how).unwrap();
        prop_assert_eq!(&r, &reduce_basis(&a).unwrap());
        let z = Shift::zeros(m);
        prop_assert!(is_reduced(&r, &z).unwrap());
        let sum: i64 = rdeg(&r, &z).unwrap().into_iter().map(|x| x.unwrap()).sum();
        prop_assert_eq!(sum, deta.deg());
        prop_assert_eq!(oracle_poly_det(&r).unwrap().deg(), deta.deg());
        let num = r.mul(&adjugate(&a));
        let mut u = PolMat::zeros(f, m, m);
        for i in 0..m {
            for j in 0..m {
                let (q, rem) = num.get(i, j).divrem(&deta).unwrap();
                prop_assert!(rem.is_zero());
                u.set(i, j, q);
            }
        }
        let du = oracle_poly_det(&u).unwrap();
        prop_assert_eq!(du.deg(), 0);
    }

    #[test]
    fn villard_matches_direct(seed: u64, n in 1usize..7, mm in 1usize..4) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fz = BivarPoly::random(f, n, n, &mut rng);
        let gz = BivarPoly::random(f, n, n, &mut rng);
        let want = resultant_direct(&fz, &gz).unwrap();
        if let Ok(sc) = SylvesterCtx::new(fz, gz, Some(mm.min(n))) {
            if let Ok(got) = villard_resultant(&sc, &mut rng) {
                prop_assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn resultant_is_multiplicative(seed: u64, n in 1usize..4) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = BivarPoly::random(f, n, n, &mut rng);
        let b = BivarPoly::random(f, n, n, &mut rng);
        let g = BivarPoly::random(f, n, n, &mut rng);
        let lhs = resultant_direct(&a.mul(&b), &g).unwrap();
        let rhs = resultant_direct(&a, &g).unwrap().mul(&resultant_direct(&b, &g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_on_common_factors(seed: u64, n in 1usize..4) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = BivarPoly::random(f, 1, 1, &mut rng);
        prop_assume!(c.deg_z() == 1);
        let a = BivarPoly::random(f, n, n, &mut rng);
        let b = BivarPoly::random(f, n, n, &mut rng);
        prop_assert!(resultant_direct(&a.mul(&c), &b.mul(&c)).unwrap().is_zero());
        let x0 = f.random(&mut rng);
        let r = resultant_direct(&a, &b).unwrap();
        let (ua, ub) = (a.eval_x(x0), b.eval_x(x0));
        if ua.deg() == a.deg_z() && ub.deg() == b.deg_z() {
            let g = pml::upoly::xgcd(&ua, &ub).unwrap().0;
            prop_assert_eq!(r.eval(x0) == 0, g.deg() > 0);
            prop_assert_eq!(r.eval(x0), univariate_resultant(&ua, &ub));
        }
    }

    #[test]
    fn charpoly_matches_dense(seed: u64, n in 1usize..24) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = monic(f, n, &mut rng);
        let a = Poly::random(f, n, &mut rng);
        let want = oracle_charpoly(&mult_matrix(&a, &p)).unwrap();
        let got = charpoly_generic(&a, &p, None, &mut rng).unwrap();
        prop_assert!(got.is_monic());
        prop_assert_eq!(got.deg(), n as i64);
        prop_assert_eq!(&got, &want);
        prop_assert_eq!(&charpoly_direct(&a, &p).unwrap(), &want);
        // Res_z(P, x - A) at x = 0
        let mut g: Vec<Poly> = a.coeffs().iter().map(|&c| Poly::constant(f, f.neg(c))).collect();
        g.resize(g.len().max(1), Poly::zero(f));
        g[0] = &g[0] + &Poly::x(f);
        let pz = BivarPoly::new(f, p.coeffs().iter().map(|&c| Poly::constant(f, c)).collect());
        let res = resultant_direct(&pz, &BivarPoly::new(f, g)).unwrap();
        prop_assert_eq!(res.eval(0), got.coeff(0));
    }

    #[test]
    fn structured_inverse_is_dense_block(seed: u64, a in 1usize..7, b in 1usize..7) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fa = monic(f, a, &mut rng);
        let ga = monic(f, b, &mut rng);
        let Ok(dense) = oracle_dense_inverse(&oracle_sylvester(&fa, &ga).unwrap()) else { return Ok(()) };
        let nu = a + b;
        for m in 1..=a.min(b) {
            let h = structured_inverse_eval(&fa, &ga, m).unwrap();
            let rows: Vec<usize> = (0..m).collect();
            let cols: Vec<usize> = (nu - m..nu).collect();
            prop_assert_eq!(h, dense.submatrix(&rows, &cols));
        }
    }
}
