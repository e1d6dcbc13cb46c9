//! Properties of field, polynomial and polynomial matrix arithmetic.

use pml::forms::{is_owp, is_popov, is_reduced, rdeg};
use pml::modring::{PRIME_20_NTT, PRIME_60_GENERAL, PRIME_60_NTT};
use pml::polmat::{pm_mul_with, pm_middle_product, Strategy};
use pml::upoly::{eval_general, eval_geometric, interp_general, interp_geometric, inv_trunc, middle_product, GeomGrid};
use pml::{FieldCtx, Mat, NttPlan, PolMat, Poly, Shift};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 4] = [97, PRIME_20_NTT, PRIME_60_NTT, PRIME_60_GENERAL];

fn field(i: usize) -> FieldCtx {
    FieldCtx::new(PRIMES[i % PRIMES.len()]).unwrap()
}

fn naive_cyclic(f: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            out[(i + j) % n] = f.add(out[(i + j) % n], f.mul(a[i], b[j]));
        }
    }
    out
}

fn schoolbook(a: &PolMat, b: &PolMat) -> PolMat {
    let f = *a.ctx();
    let mut out = PolMat::zeros(f, a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = vec![0u64; (a.deg().max(0) + b.deg().max(0) + 1) as usize];
            for k in 0..a.cols() {
                for (u, &x) in a.get(i, k).coeffs().iter().enumerate() {
                    for (v, &y) in b.get(k, j).coeffs().iter().enumerate() {
                        acc[u + v] = f.add(acc[u + v], f.mul(x, y));
                    }
                }
            }
            out.set(i, j, Poly::new(f, acc));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ntt_round_trip_and_convolution(seed: u64, pi in 0usize..4, log in 0u32..7) {
        let f = field(pi);
        prop_assume!(log <= f.two_adicity());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let plan = NttPlan::new(f, log).unwrap();
        let n = 1usize << log;
        let a: Vec<u64> = (0..n).map(|_| f.random(&mut rng)).collect();
        let b: Vec<u64> = (0..n).map(|_| f.random(&mut rng)).collect();
        let fa = plan.forward(&a).unwrap();
        prop_assert_eq!(plan.inverse(&fa).unwrap(), a.clone());
        let fb = plan.forward(&b).unwrap();
        let pointwise: Vec<u64> = fa.iter().zip(&fb).map(|(x, y)| f.mul(*x, *y)).collect();
        prop_assert_eq!(pointwise, plan.forward(&naive_cyclic(&f, &a, &b)).unwrap());
    }

    #[test]
    fn field_axioms(seed: u64, pi in 0usize..4) {
        let f = field(pi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn poly_mul_ring_laws(seed: u64, pi in 0usize..4, la in 0usize..80, lb in 0usize..80, lc in 0usize..40) {
        let f = field(pi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (Poly::random(f, la, &mut rng), Poly::random(f, lb, &mut rng), Poly::random(f, lc, &mut rng));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(a.mul(&b).deg(), a.deg() + b.deg());
        }
    }

    #[test]
    fn middle_product_is_a_slice(seed: u64, pi in 0usize..4, la in 1usize..60, lb in 1usize..60, extra in 0usize..40, d in 0usize..40) {
        let f = field(pi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = la + extra;
        let (a, b) = (Poly::random(f, la, &mut rng), Poly::random(f, lb.min(c + d), &mut rng));
        prop_assert_eq!(middle_product(&a, &b, c, d).unwrap(), a.mul(&b).slice(c, d));
    }

    #[test]
    fn eval_interp_inverse(seed: u64, pi in 0usize..4, n in 1usize..40) {
        let f = field(pi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Poly::random(f, n, &mut rng);
        if let Ok(grid) = GeomGrid::find(f, n) {
            let v = eval_geometric(&p, &grid).unwrap();
            prop_assert_eq!(interp_geometric(&v, &grid).unwrap(), p.clone());
        }
        let mut pts: Vec<u64> = Vec::new();
        while pts.len() < n {
            let x = f.random(&mut rng);
            if !pts.contains(&x) {
                pts.push(x);
            }
        }
        let v = eval_general(&p, &pts).unwrap();
        prop_assert_eq!(interp_general(f, &v, &pts).unwrap(), p);
    }

    #[test]
    fn inv_trunc_prefix(seed: u64, pi in 0usize..4, len in 1usize..40, k in 1usize..100) {
        let f = field(pi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Poly::random(f, len, &mut rng);
        if p.coeff(0) == 0 {
            p = &p + &Poly::one(f);
        }
        let full = inv_trunc(&p, k).unwrap();
        prop_assert_eq!(full.truncate(k.div_ceil(2)), inv_trunc(&p, k.div_ceil(2)).unwrap());
        prop_assert_eq!(full.mul_trunc(&p, k), Poly::one(f));
    }

    #[test]
    fn pm_mul_strategies_agree(seed: u64, pi in 0usize..4, m in 1usize..5, k in 1usize..5, n in 1usize..5, d in 0usize..30) {
        let f = field(pi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PolMat::random(f, m, k, d + 1, &mut rng);
        let b = PolMat::random(f, k, n, 2 * d + 1, &mut rng);
        let want = schoolbook(&a, &b);
        for s in Strategy::ALL {
            if let Ok(c) = pm_mul_with(&a, &b, s) {
                prop_assert_eq!(&c, &want, "strategy {}", s);
            }
        }
        prop_assert!(want.deg() <= a.deg() + b.deg());
        let c0 = d + 1;
        prop_assert_eq!(pm_middle_product(&a, &b, c0, d + 1).unwrap(), want.slice(c0, d + 1));
    }

    #[test]
    fn view_round_trip(seed: u64, m in 0usize..5, n in 0usize..5, len in 0usize..10) {
        let f = field(0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PolMat::random(f, m, n, len, &mut rng);
        prop_assert_eq!(PolMat::from_view(&a.to_view()), a.clone());
        prop_assert_eq!(PolMat::from_text(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn form_hierarchy_and_row_scaling(seed: u64, n in 1usize..5, len in 1usize..6) {
        let f = field(0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = n;
        // a high-degree diagonal makes the forms reachable
        let mut a = PolMat::random(f, m, n, len, &mut rng);
        for i in 0..n {
            let lead = Poly::monomial(f, 1, len + rand::Rng::gen_range(&mut rng, 0..3));
            a.set(i, i, &lead + a.get(i, i));
        }
        let s = Shift::new((0..n).map(|_| rand::Rng::gen_range(&mut rng, 0..4)).collect());
        if is_popov(&a, &s).unwrap() {
            prop_assert!(is_owp(&a, &s).unwrap());
        }
        if is_owp(&a, &s).unwrap() {
            prop_assert!(is_reduced(&a, &s).unwrap());
        }
        let c = Mat::identity(f, m).scale(f.random_nonzero(&mut rng));
        prop_assert_eq!(rdeg(&a.mul_const_left(&c), &s).unwrap(), rdeg(&a, &s).unwrap());
    }
}
