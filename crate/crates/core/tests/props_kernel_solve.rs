//! Properties of kernel bases and of linear system solvers.

use pml::detred::det;
use pml::forms::{has_full_rank_leading, rdeg, rows_in_module};
use pml::kernel::{kernel_direct, kernel_zls, Flavor};
use pml::oracle::{oracle_min_denominator, oracle_min_kernel, oracle_rank};
use pml::solve::{dixon_solve, high_order_solve, kernel_solve, KernelSolveOutcome, RatSolution};
use pml::{FieldCtx, PolMat, Shift};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field() -> FieldCtx {
    FieldCtx::new(pml::modring::PRIME_20_NTT).unwrap()
}

fn sorted_sdegs(k: &PolMat, s: &Shift) -> Vec<i64> {
    let mut v: Vec<i64> = rdeg(k, s).unwrap().into_iter().map(|d| d.expect("zero kernel row")).collect();
    v.sort_unstable();
    v
}

fn random_system(seed: u64, n: usize, d: usize) -> Option<(PolMat, PolMat)> {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = PolMat::random(f, n, n, d + 1, &mut rng);
    if a.coeff(0).det().unwrap() == 0 {
        return None;
    }
    let b = PolMat::random(f, n, 1, d + 1, &mut rng);
    Some((a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kernel_bases_agree_with_oracle(seed: u64, m in 1usize..6, n in 1usize..5, d in 0usize..5, interp: bool) {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fm = PolMat::random(f, m, n, d + 1, &mut rng);
        let s = Shift::new((0..m).map(|_| rng.gen_range(0..3)).collect());
        let flavor = if interp { Flavor::Interp } else { Flavor::Approx };
        let kd = kernel_direct(&fm, &s, flavor).unwrap();
        let kz = kernel_zls(&fm, &s, flavor).unwrap();
        let rank = oracle_rank(&fm).unwrap();
        for kb in [&kd, &kz] {
            prop_assert!(kb.k.mul(&fm).is_zero());
            prop_assert_eq!(kb.dim(), m - rank);
            prop_assert!(kb.check_form().unwrap());
        }
        prop_assert!(rows_in_module(&kd.k, &kz.k, &s).unwrap());
        prop_assert!(rows_in_module(&kz.k, &kd.k, &s).unwrap());
        let want = oracle_min_kernel(&fm, &s).unwrap();
        prop_assert_eq!(sorted_sdegs(&kd.k, &s), want.clone());
        prop_assert_eq!(sorted_sdegs(&kz.k, &s), want);
    }

    #[test]
    fn hermite_shift_kernel_is_reduced(seed: u64, m in 2usize..5, n in 1usize..3, d in 1usize..4) {
        prop_assume!(n < m);
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fm = PolMat::random(f, m, n, d + 1, &mut rng);
        let t = (n * d + 1) as i64;
        let s = Shift::new((0..m as i64).map(|i| i * t).collect());
        let kb = kernel_direct(&fm, &s, Flavor::Approx).unwrap();
        prop_assert!(kb.k.mul(&fm).is_zero());
        prop_assert!(has_full_rank_leading(&kb.k, &s).unwrap());
    }

    #[test]
    fn solvers_agree_and_verify(seed: u64, n in 1usize..5, d in 1usize..6) {
        let Some((a, b)) = random_system(seed, n, d) else { return Ok(()) };
        let dx = dixon_solve(&a, &b).unwrap();
        let ho = high_order_solve(&a, &b).unwrap();
        prop_assert!(dx.verify(&a, &b));
        prop_assert!(ho.verify(&a, &b));
        prop_assert_eq!(&dx, &ho);
        match kernel_solve(&a, &b).unwrap() {
            KernelSolveOutcome::Solution(ks) => prop_assert_eq!(&ks, &dx),
            other => prop_assert!(false, "unexpected outcome {:?}", other),
        }
        prop_assert!(dx.f.is_monic());
        prop_assert!(det(&a).unwrap().rem(&dx.f).unwrap().is_zero());
    }

    #[test]
    fn solver_denominator_is_minimal(seed: u64, n in 1usize..4, d in 1usize..5) {
        let Some((a, b)) = random_system(seed, n, d) else { return Ok(()) };
        let RatSolution { f, .. } = dixon_solve(&a, &b).unwrap();
        prop_assert_eq!(f, oracle_min_denominator(&a, &b).unwrap());
    }
}
