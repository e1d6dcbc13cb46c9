//! Properties of approximant and interpolant bases and of fraction reconstruction.

use pml::appint::{mbasis1, pm_intbasis, pmbasis, EvalPoints};
use pml::forms::{is_owp, is_popov, rdeg};
use pml::fraction::{fracrec_points, fracrec_series};
use pml::oracle::{oracle_approx_module, oracle_interp_module, oracle_poly_det, LinearizedModule};
use pml::upoly::inv_trunc;
use pml::{FieldCtx, Mat, PolMat, Poly, Shift};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f97() -> FieldCtx {
    FieldCtx::new(97).unwrap()
}

/// Every `x^k row_i` of degree at most `d`.
fn shifted_rows(p: &PolMat, d: usize) -> Vec<Vec<Poly>> {
    let mut out = Vec::new();
    for i in 0..p.rows() {
        let rd = p.row_deg(i);
        if rd < 0 {
            continue;
        }
        for k in 0..=(d as i64 - rd).max(-1) {
            out.push(p.row(i).iter().map(|e| e.shl(k as usize)).collect());
        }
    }
    out
}

fn generates(p: &PolMat, module: &LinearizedModule, d: usize) -> bool {
    let rows = shifted_rows(p, d);
    rows.iter().all(|r| module.contains(r)) && module.span_dim(&rows) == module.dim()
}

fn distinct_points(f: &FieldCtx, k: usize, rng: &mut impl Rng) -> Vec<u64> {
    let mut pts = Vec::new();
    while pts.len() < k {
        let a = f.random(rng);
        if !pts.contains(&a) {
            pts.push(a);
        }
    }
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pmbasis_membership_form_generation(seed: u64, m in 1usize..5, n in 1usize..3, sigma in 1usize..17) {
        let f = f97();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fm = PolMat::random(f, m, n, sigma, &mut rng);
        let p = pmbasis(&fm, sigma, &Shift::zeros(m));
        prop_assert!(p.mul(&fm).truncate(sigma).is_zero());
        prop_assert!(is_owp(&p, &Shift::zeros(m)).unwrap());
        prop_assert!(oracle_poly_det(&p).unwrap().deg() <= (n * sigma) as i64);
        let module = oracle_approx_module(&fm, sigma, sigma).unwrap();
        prop_assert!(generates(&p, &module, sigma));
        // nothing nonzero sits below the smallest row degree
        let low = (0..m).map(|i| p.row_deg(i)).min().unwrap();
        if low > 0 {
            prop_assert_eq!(oracle_approx_module(&fm, sigma, (low - 1) as usize).unwrap().dim(), 0);
        }
    }

    #[test]
    fn pmbasis_shifted_form(seed: u64, m in 1usize..5, n in 1usize..3, sigma in 1usize..17) {
        let f = f97();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fm = PolMat::random(f, m, n, sigma, &mut rng);
        let s = Shift::new((0..m).map(|_| rng.gen_range(-3..4)).collect());
        let p = pmbasis(&fm, sigma, &s);
        prop_assert!(p.mul(&fm).truncate(sigma).is_zero());
        prop_assert!(is_owp(&p, &s).unwrap());
        prop_assert!(rdeg(&p, &s).unwrap().iter().all(Option::is_some));
    }

    #[test]
    fn intbasis_membership_form_generation(seed: u64, m in 1usize..5, n in 1usize..3, sigma in 1usize..17) {
        let f = f97();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = distinct_points(&f, sigma, &mut rng);
        let e: Vec<Mat> = (0..sigma).map(|_| Mat::random(f, m, n, &mut rng)).collect();
        let p = pm_intbasis(&e, &EvalPoints::General(pts.clone()), &Shift::zeros(m)).unwrap();
        prop_assert!(is_owp(&p, &Shift::zeros(m)).unwrap());
        for (el, &a) in e.iter().zip(&pts) {
            prop_assert!(p.eval(a).mul(el).is_zero());
        }
        let module = oracle_interp_module(&e, &pts, sigma).unwrap();
        prop_assert!(generates(&p, &module, sigma));
    }

    #[test]
    fn order_one_basis_is_popov(seed: u64, m in 1usize..6, n in 1usize..4) {
        let f = f97();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = Mat::random(f, m, n, &mut rng);
        let s = Shift::new((0..m).map(|_| rng.gen_range(0..3)).collect());
        let p = mbasis1(&r, &s);
        prop_assert!(is_popov(&p, &s).unwrap());
        prop_assert!(p.coeff(0).mul(&r).is_zero());
    }

    #[test]
    fn scalar_fraction_is_minimal(seed: u64, d in 1usize..8) {
        let f = f97();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut q = Poly::random(f, d + 1, &mut rng);
        q = &q + &Poly::monomial(f, 1, d);
        prop_assume!(q.coeff(0) != 0 && q.deg() == d as i64);
        let r = Poly::random(f, d, &mut rng);
        let h = r.mul(&inv_trunc(&q, 2 * d).unwrap()).truncate(2 * d);
        let desc = fracrec_series(&PolMat::from_entries(f, 1, 1, vec![h.clone()]), d).unwrap();
        let qq = desc.q.get(0, 0);
        prop_assert_eq!(qq.mul(&h).truncate(2 * d), desc.r.get(0, 0).clone());
        // the minimal denominator is q / gcd(q, r)
        let g = pml::upoly::xgcd(&q, &r).unwrap().0;
        prop_assert_eq!(qq.deg(), q.deg() - g.deg().max(0));
    }

    #[test]
    fn matrix_fraction_identity(seed: u64, n in 1usize..4, d in 1usize..4) {
        let f = f97();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut q0 = PolMat::random(f, n, n, d, &mut rng);
        for i in 0..n {
            q0.set(i, i, &Poly::monomial(f, 1, d) + q0.get(i, i));
        }
        prop_assume!(q0.coeff(0).det().unwrap() != 0);
        let r0 = PolMat::random(f, n, n, d, &mut rng);
        let h = pml::solve::newton_inv_trunc(&q0, 2 * d).unwrap().mul(&r0).truncate(2 * d);
        let desc = fracrec_series(&h, d).unwrap();
        prop_assert!(is_owp(&desc.q, &Shift::zeros(n)).unwrap());
        prop_assert_eq!(desc.q.mul(&h).truncate(2 * d), desc.r.clone());
        prop_assert!(oracle_poly_det(&desc.q).unwrap().deg() <= oracle_poly_det(&q0).unwrap().deg());

        let pts = distinct_points(&f, 2 * d, &mut rng);
        let vals: Option<Vec<Mat>> = pts.iter().map(|&a| q0.eval(a).inverse().ok().map(|qi| qi.mul(&r0.eval(a)))).collect();
        if let Some(vals) = vals {
            let pd = fracrec_points(&vals, &EvalPoints::General(pts.clone())).unwrap();
            prop_assert!(is_owp(&pd.q, &Shift::zeros(n)).unwrap());
            for (v, &a) in vals.iter().zip(&pts) {
                prop_assert_eq!(pd.q.eval(a).mul(v), pd.r.eval(a));
            }
        }
    }
}
