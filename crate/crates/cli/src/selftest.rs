//! Oracle-equivalence suites at small sizes.

use pml::appint::{pm_intbasis, pmbasis, EvalPoints};
use pml::detred::{det_eval_general, det_linsolve, det_minors, reduce_basis};
use pml::forms::{is_owp, is_reduced, rdeg, rows_in_module};
use pml::kernel::{kernel_direct, kernel_zls, Flavor};
use pml::oracle::{
    oracle_approx_module, oracle_charpoly, oracle_dense_inverse, oracle_interp_module, oracle_min_denominator,
    oracle_min_kernel, oracle_poly_det, oracle_sylvester, LinearizedModule,
};
use pml::polmat::{pm_mul_with, Strategy};
use pml::solve::{dixon_solve, high_order_solve, kernel_solve, KernelSolveOutcome};
use pml::sylres::{charpoly_generic, resultant_direct, structured_inverse_eval, villard_resultant, SylvesterCtx};
use pml::{FieldCtx, Mat, PolMat, Poly, Shift};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checksum::Checksum;
use crate::gen::{charpoly_pair, reduction_input, sylvester_pair, PrimeClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
    /// Hash of every computed output, in order.
    pub checksum: String,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed == s.total)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.suites {
            s.push_str(&format!("{:<12} {}/{}\n", r.name, r.passed, r.total));
        }
        s.push_str(&format!("checksum {}\n", self.checksum));
        s
    }
}

type Suite = fn(&mut ChaCha8Rng, &mut Checksum) -> bool;

const SUITES: [(&str, Suite); 10] = [
    ("mul", mul_case),
    ("pmbasis", pmbasis_case),
    ("pmintbasis", intbasis_case),
    ("kernel", kernel_case),
    ("solve", solve_case),
    ("det", det_case),
    ("reduce", reduce_case),
    ("resultant", resultant_case),
    ("structured", structured_case),
    ("charpoly", charpoly_case),
];

/// Runs `cases` instances of every suite. The instances depend only on `seed`.
pub fn selftest(seed: u64, cases: usize) -> SelftestReport {
    let mut sum = Checksum::new();
    let mut suites = Vec::new();
    for (k, (name, case)) in SUITES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64 + 1) << 40));
        let passed = (0..cases).filter(|_| case(&mut rng, &mut sum)).count();
        suites.push(SuiteResult { name, passed, total: cases });
    }
    SelftestReport { suites, checksum: sum.finish() }
}

fn small_field(rng: &mut ChaCha8Rng) -> FieldCtx {
    [PrimeClass::SmallNtt, PrimeClass::LargeNtt, PrimeClass::General][rng.gen_range(0..3)].field()
}

fn mul_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = small_field(rng);
    let (m, k, n) = (rng.gen_range(1..5), rng.gen_range(1..5), rng.gen_range(1..5));
    let d = rng.gen_range(0..40);
    let a = PolMat::random(f, m, k, d + 1, rng);
    let b = PolMat::random(f, k, n, d + 1, rng);
    let want = pm_mul_with(&a, &b, Strategy::Naive).expect("naive always applies");
    sum.add(&want.to_text());
    Strategy::ALL.iter().all(|&s| pm_mul_with(&a, &b, s).map_or(true, |c| c == want))
}

fn generates(p: &PolMat, module: &LinearizedModule, d: usize) -> bool {
    let mut rows = Vec::new();
    for i in 0..p.rows() {
        let rd = p.row_deg(i);
        for k in 0..=(d as i64 - rd).max(-1) {
            rows.push(p.row(i).iter().map(|e| e.shl(k as usize)).collect::<Vec<_>>());
        }
    }
    rows.iter().all(|r| module.contains(r)) && module.span_dim(&rows) == module.dim()
}

fn pmbasis_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::SmallNtt.field();
    let (m, n, sigma) = (rng.gen_range(1..5), rng.gen_range(1..3), rng.gen_range(1..17));
    let fm = PolMat::random(f, m, n, sigma, rng);
    let z = Shift::zeros(m);
    let p = pmbasis(&fm, sigma, &z);
    sum.add(&p.to_text());
    let Ok(module) = oracle_approx_module(&fm, sigma, sigma) else { return false };
    p.mul(&fm).truncate(sigma).is_zero()
        && is_owp(&p, &z).unwrap_or(false)
        && generates(&p, &module, sigma)
}

fn intbasis_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::SmallNtt.field();
    let (m, n, sigma) = (rng.gen_range(1..5), rng.gen_range(1..3), rng.gen_range(1..17));
    let mut pts: Vec<u64> = Vec::new();
    while pts.len() < sigma {
        let a = f.random(rng);
        if !pts.contains(&a) {
            pts.push(a);
        }
    }
    let e: Vec<Mat> = (0..sigma).map(|_| Mat::random(f, m, n, rng)).collect();
    let z = Shift::zeros(m);
    let Ok(p) = pm_intbasis(&e, &EvalPoints::General(pts.clone()), &z) else { return false };
    sum.add(&p.to_text());
    let Ok(module) = oracle_interp_module(&e, &pts, sigma) else { return false };
    e.iter().zip(&pts).all(|(el, &a)| p.eval(a).mul(el).is_zero())
        && is_owp(&p, &z).unwrap_or(false)
        && generates(&p, &module, sigma)
}

fn sorted_sdegs(k: &PolMat, s: &Shift) -> Option<Vec<i64>> {
    let mut v = rdeg(k, s).ok()?.into_iter().collect::<Option<Vec<i64>>>()?;
    v.sort_unstable();
    Some(v)
}

fn kernel_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::SmallNtt.field();
    let (m, n, d) = (rng.gen_range(1..6), rng.gen_range(1..5), rng.gen_range(0..5));
    let fm = PolMat::random(f, m, n, d + 1, rng);
    let s = Shift::new((0..m).map(|_| rng.gen_range(0..3)).collect());
    let flavor = if rng.gen() { Flavor::Approx } else { Flavor::Interp };
    let (Ok(kd), Ok(kz)) = (kernel_direct(&fm, &s, flavor), kernel_zls(&fm, &s, flavor)) else { return false };
    sum.add(&kd.k.to_text());
    sum.add(&kz.k.to_text());
    let Ok(want) = oracle_min_kernel(&fm, &s) else { return false };
    kd.k.mul(&fm).is_zero()
        && kz.k.mul(&fm).is_zero()
        && rows_in_module(&kd.k, &kz.k, &s).unwrap_or(false)
        && rows_in_module(&kz.k, &kd.k, &s).unwrap_or(false)
        && sorted_sdegs(&kd.k, &s).as_ref() == Some(&want)
        && sorted_sdegs(&kz.k, &s).as_ref() == Some(&want)
}

fn invertible_at_zero(f: FieldCtx, n: usize, d: usize, rng: &mut ChaCha8Rng) -> PolMat {
    loop {
        let a = PolMat::random(f, n, n, d + 1, rng);
        if a.coeff(0).det().is_ok_and(|x| x != 0) {
            return a;
        }
    }
}

fn solve_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::LargeNtt.field();
    let (n, d) = (rng.gen_range(1..4), rng.gen_range(1..5));
    let a = invertible_at_zero(f, n, d, rng);
    let b = PolMat::random(f, n, 1, d + 1, rng);
    let (Ok(dx), Ok(ho), Ok(KernelSolveOutcome::Solution(ks))) = (dixon_solve(&a, &b), high_order_solve(&a, &b), kernel_solve(&a, &b)) else {
        return false;
    };
    sum.add(&crate::commands::solution_text(&dx));
    dx.verify(&a, &b) && dx == ho && dx == ks && oracle_min_denominator(&a, &b).is_ok_and(|g| g == dx.f)
}

fn det_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::LargeNtt.field();
    let (m, d) = (rng.gen_range(1..6), rng.gen_range(0..6));
    let a = PolMat::random(f, m, m, d + 1, rng);
    let Ok(want) = oracle_poly_det(&a) else { return false };
    sum.add(&want.to_text());
    det_minors(&a).is_ok_and(|x| x == want)
        && det_eval_general(&a).is_ok_and(|x| x == want)
        && det_linsolve(&a, rng).map_or(true, |x| x == want)
}

fn reduce_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::LargeNtt.field();
    let (m, d) = (rng.gen_range(1..5), 3 * rng.gen_range(1..3));
    let Ok(a) = reduction_input(f, m, d, rng) else { return false };
    let Ok(r) = reduce_basis(&a) else { return false };
    sum.add(&r.to_text());
    let z = Shift::zeros(m);
    let total: Option<i64> = rdeg(&r, &z).ok().and_then(|v| v.into_iter().sum());
    is_reduced(&r, &z).unwrap_or(false) && oracle_poly_det(&a).is_ok_and(|g| Some(g.deg()) == total)
}

fn resultant_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::LargeNtt.field();
    let n = rng.gen_range(2..7);
    let Ok((a, b)) = sylvester_pair(f, n, n, rng) else { return false };
    let Ok(want) = resultant_direct(&a, &b) else { return false };
    sum.add(&want.to_text());
    SylvesterCtx::new(a, b, None).and_then(|sc| villard_resultant(&sc, rng)).is_ok_and(|r| r == want)
}

fn structured_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::LargeNtt.field();
    let (a, b) = (rng.gen_range(1..7), rng.gen_range(1..7));
    let fa = &Poly::random(f, a, rng) + &Poly::monomial(f, 1, a);
    let ga = &Poly::random(f, b, rng) + &Poly::monomial(f, 1, b);
    let Ok(dense) = oracle_sylvester(&fa, &ga).and_then(|s| oracle_dense_inverse(&s)) else {
        // not coprime: the structured method must refuse too
        return structured_inverse_eval(&fa, &ga, 1).is_err();
    };
    let m = rng.gen_range(1..=a.min(b));
    let Ok(h) = structured_inverse_eval(&fa, &ga, m) else { return false };
    sum.add(&format!("{:?}", h.data()));
    let rows: Vec<usize> = (0..m).collect();
    let cols: Vec<usize> = (a + b - m..a + b).collect();
    h == dense.submatrix(&rows, &cols)
}

fn mult_matrix(a: &Poly, p: &Poly) -> Mat {
    let n = p.deg() as usize;
    let mut m = Mat::zeros(*p.ctx(), n, n);
    let mut w = a.rem(p).expect("monic modulus");
    for j in 0..n {
        for i in 0..n {
            m.set(i, j, w.coeff(i));
        }
        w = w.shl(1).rem(p).expect("monic modulus");
    }
    m
}

fn charpoly_case(rng: &mut ChaCha8Rng, sum: &mut Checksum) -> bool {
    let f = PrimeClass::LargeNtt.field();
    let n = rng.gen_range(1..24);
    let Ok((a, p)) = charpoly_pair(f, n, rng) else { return false };
    let Ok(want) = oracle_charpoly(&mult_matrix(&a, &p)) else { return false };
    sum.add(&want.to_text());
    charpoly_generic(&a, &p, None, rng).is_ok_and(|c| c == want)
}
