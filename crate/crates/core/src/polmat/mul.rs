use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::PolMat;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::modring::{FieldCtx, NttPlan};
use crate::tuning::tuning;
use crate::upoly::{chirp_eval, crt_fields, interp_geometric, Crt, GeomGrid, Poly};

/// Polynomial matrix product algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Entrywise polynomial products.
    Naive,
    /// Evaluation and interpolation at roots of unity.
    RootsOfUnity,
    /// Evaluation and interpolation on a geometric progression.
    Geometric,
    /// Evaluation and interpolation as dense Vandermonde products.
    Vandermonde,
    /// Roots of unity modulo three NTT primes, then CRT.
    CrtNtt,
}

impl Strategy {
    pub const ALL: [Strategy; 5] =
        [Strategy::Naive, Strategy::RootsOfUnity, Strategy::Geometric, Strategy::Vandermonde, Strategy::CrtNtt];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Strategy::Naive => "naive",
            Strategy::RootsOfUnity => "roots",
            Strategy::Geometric => "geometric",
            Strategy::Vandermonde => "vandermonde",
            Strategy::CrtNtt => "crt",
        };
        f.write_str(s)
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown strategy {s:?}")))
    }
}

/// Evaluation scheme with `len()` points, acting on whole batches of entries.
enum Scheme {
    Ntt(Arc<NttPlan>),
    Geom(GeomGrid),
    Vander { v: Mat, vinv: Mat },
}

impl Scheme {
    fn len(&self) -> usize {
        match self {
            Scheme::Ntt(p) => p.len(),
            Scheme::Geom(g) => g.len(),
            Scheme::Vander { v, .. } => v.rows(),
        }
    }

    fn forward(&self, f: &FieldCtx, entries: &[&[u64]]) -> Vec<Vec<u64>> {
        match self {
            Scheme::Ntt(plan) => entries.iter().map(|e| plan.forward_padded(e)).collect(),
            Scheme::Geom(g) => entries.iter().map(|e| chirp_eval(f, e, g.alpha(), g.len())).collect(),
            Scheme::Vander { v, .. } => {
                let l = v.rows();
                let mut c = Mat::zeros(*f, l, entries.len());
                for (j, e) in entries.iter().enumerate() {
                    debug_assert!(e.len() <= l);
                    for (k, &x) in e.iter().enumerate() {
                        c.set(k, j, x);
                    }
                }
                columns(&v.mul(&c))
            }
        }
    }

    fn inverse(&self, f: &FieldCtx, vals: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        match self {
            Scheme::Ntt(plan) => vals
                .into_iter()
                .map(|mut v| {
                    plan.inverse_in_place(&mut v).expect("plan-sized buffer");
                    v
                })
                .collect(),
            Scheme::Geom(g) => vals
                .iter()
                .map(|v| interp_geometric(v, g).expect("grid-sized values").into_coeffs())
                .collect(),
            Scheme::Vander { vinv, .. } => {
                let l = vinv.rows();
                let mut c = Mat::zeros(*f, l, vals.len());
                for (j, e) in vals.iter().enumerate() {
                    for (k, &x) in e.iter().enumerate() {
                        c.set(k, j, x);
                    }
                }
                columns(&vinv.mul(&c))
            }
        }
    }
}

fn columns(m: &Mat) -> Vec<Vec<u64>> {
    let t = m.transpose();
    (0..t.rows()).map(|j| t.row(j).to_vec()).collect()
}

fn vandermonde(f: FieldCtx, l: usize) -> Option<Scheme> {
    if l as u64 > f.modulus() {
        return None;
    }
    let mut v = Mat::zeros(f, l, l);
    for i in 0..l {
        let mut c = 1;
        for j in 0..l {
            v.set(i, j, c);
            c = f.mul(c, i as u64);
        }
    }
    let vinv = v.inverse().ok()?;
    Some(Scheme::Vander { v, vinv })
}

fn ntt_scheme(f: FieldCtx, len: usize) -> Option<Scheme> {
    let log = len.max(1).next_power_of_two().trailing_zeros();
    NttPlan::cached(f, log).ok().map(Scheme::Ntt)
}

fn scheme_for(f: FieldCtx, s: Strategy, len: usize) -> Result<Scheme> {
    let unavailable = || Error::BadParams(format!("strategy {s} unavailable for p = {} and {len} points", f.modulus()));
    match s {
        Strategy::RootsOfUnity => ntt_scheme(f, len).ok_or_else(unavailable),
        Strategy::Geometric => GeomGrid::find(f, len).map(Scheme::Geom).map_err(|_| unavailable()),
        Strategy::Vandermonde => vandermonde(f, len).ok_or_else(unavailable),
        Strategy::Naive | Strategy::CrtNtt => Err(unavailable()),
    }
}

/// Values at each point: `C(t) = A(t) B(t)` for all `t`.
fn pointwise(f: &FieldCtx, av: &[Vec<u64>], bv: &[Vec<u64>], m: usize, k: usize, n: usize, l: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; l]; m * n];
    let mut at = vec![0u64; m * k];
    let mut bt = vec![0u64; n * k];
    for t in 0..l {
        for (e, v) in av.iter().enumerate() {
            at[e] = v[t];
        }
        for r in 0..k {
            for c in 0..n {
                bt[c * k + r] = bv[r * n + c][t];
            }
        }
        for i in 0..m {
            let ar = &at[i * k..(i + 1) * k];
            for j in 0..n {
                out[i * n + j][t] = f.dot(ar.iter().copied(), bt[j * k..(j + 1) * k].iter().copied());
            }
        }
    }
    out
}

fn transform_product(
    f: &FieldCtx,
    scheme: &Scheme,
    a: &[&[u64]],
    b: &[&[u64]],
    dims: (usize, usize, usize),
) -> Vec<Vec<u64>> {
    let (m, k, n) = dims;
    let av = scheme.forward(f, a);
    let bv = scheme.forward(f, b);
    scheme.inverse(f, pointwise(f, &av, &bv, m, k, n, scheme.len()))
}

fn raw(m: &PolMat, cap: usize) -> Vec<&[u64]> {
    m.entries().iter().map(|p| &p.coeffs()[..p.len().min(cap)]).collect()
}

fn crt_product(f: &FieldCtx, a: &[&[u64]], b: &[&[u64]], dims: (usize, usize, usize), len: usize) -> Vec<Vec<u64>> {
    let crt = Crt::for_field(f);
    let parts: Vec<Vec<Vec<u64>>> = crt_fields()
        .iter()
        .map(|q| {
            let ra: Vec<Vec<u64>> = a.iter().map(|e| e.iter().map(|&x| q.reduce(x)).collect()).collect();
            let rb: Vec<Vec<u64>> = b.iter().map(|e| e.iter().map(|&x| q.reduce(x)).collect()).collect();
            let ra: Vec<&[u64]> = ra.iter().map(|v| v.as_slice()).collect();
            let rb: Vec<&[u64]> = rb.iter().map(|v| v.as_slice()).collect();
            let scheme = ntt_scheme(*q, len).expect("CRT primes support long transforms");
            transform_product(q, &scheme, &ra, &rb, dims)
        })
        .collect();
    (0..parts[0].len())
        .map(|e| (0..parts[0][e].len()).map(|t| crt.combine(parts[0][e][t], parts[1][e][t], parts[2][e][t])).collect())
        .collect()
}

fn naive(a: &PolMat, b: &PolMat) -> PolMat {
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let f = *a.ctx();
    let mut e = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut acc = Poly::zero(f);
            for l in 0..k {
                let (x, y) = (a.get(i, l), b.get(l, j));
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            e.push(acc);
        }
    }
    PolMat::from_entries(f, m, n, e)
}

fn assemble(f: FieldCtx, m: usize, n: usize, coeffs: Vec<Vec<u64>>, lo: usize, len: usize) -> PolMat {
    let e = coeffs
        .into_iter()
        .map(|c| {
            let hi = (lo + len).min(c.len());
            Poly::new(f, if lo < hi { c[lo..hi].to_vec() } else { Vec::new() })
        })
        .collect();
    PolMat::from_entries(f, m, n, e)
}

fn choose(f: &FieldCtx, full: usize) -> Strategy {
    let t = tuning();
    if full <= t.pm_eval_threshold {
        return Strategy::Naive;
    }
    if full.next_power_of_two().trailing_zeros() <= f.two_adicity() {
        return Strategy::RootsOfUnity;
    }
    if full <= 4 * t.pm_eval_threshold && (full as u64) < f.modulus() {
        return Strategy::Vandermonde;
    }
    if (full as u64) < f.modulus() {
        return Strategy::Geometric;
    }
    Strategy::CrtNtt
}

pub(super) fn mul_auto(a: &PolMat, b: &PolMat) -> PolMat {
    if a.is_zero() || b.is_zero() {
        return PolMat::zeros(*a.ctx(), a.rows(), b.cols());
    }
    let full = (a.deg() + b.deg() + 1) as usize;
    mul_with(a, b, choose(a.ctx(), full)).expect("chosen strategy is available")
}

pub(super) fn mul_with(a: &PolMat, b: &PolMat, s: Strategy) -> Result<PolMat> {
    let f = *a.ctx();
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    if a.is_zero() || b.is_zero() {
        return Ok(PolMat::zeros(f, m, n));
    }
    let full = (a.deg() + b.deg() + 1) as usize;
    let coeffs = match s {
        Strategy::Naive => return Ok(naive(a, b)),
        Strategy::CrtNtt => crt_product(&f, &raw(a, full), &raw(b, full), (m, k, n), full),
        _ => {
            let scheme = scheme_for(f, s, full)?;
            transform_product(&f, &scheme, &raw(a, full), &raw(b, full), (m, k, n))
        }
    };
    Ok(assemble(f, m, n, coeffs, 0, full))
}

pub(super) fn mul_slice(a: &PolMat, b: &PolMat, lo: usize, len: usize) -> PolMat {
    let f = *a.ctx();
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let hi = lo + len;
    let a = if a.deg() >= hi as i64 { a.truncate(hi) } else { a.clone() };
    let b = if b.deg() >= hi as i64 { b.truncate(hi) } else { b.clone() };
    if a.is_zero() || b.is_zero() || len == 0 {
        return PolMat::zeros(f, m, n);
    }
    let full = (a.deg() + b.deg() + 1) as usize;
    if lo >= full {
        return PolMat::zeros(f, m, n);
    }
    let cyc = (lo + len).min(full).max(full - lo);
    if choose(&f, full) == Strategy::RootsOfUnity {
        if let Some(scheme) = ntt_scheme(f, cyc) {
            let coeffs = transform_product(&f, &scheme, &raw(&a, hi), &raw(&b, hi), (m, k, n));
            return assemble(f, m, n, coeffs, lo, len.min(full - lo));
        }
    }
    mul_auto(&a, &b).slice(lo, len)
}

enum Kind {
    Naive,
    Direct(Scheme, Vec<Vec<u64>>),
    Crt(Crt, Vec<(FieldCtx, Scheme, Vec<Vec<u64>>)>),
}

/// `A` with its evaluations precomputed, for repeated products `A * B`
/// with `deg B <= bound`.
pub struct Multiplier {
    a: PolMat,
    bound: usize,
    kind: Kind,
}

impl Multiplier {
    pub fn new(a: &PolMat, bound: usize) -> Multiplier {
        let f = *a.ctx();
        let full = (a.deg().max(0) as usize) + bound + 1;
        let ra = raw(a, full);
        let kind = match choose(&f, full) {
            Strategy::Naive => Kind::Naive,
            Strategy::CrtNtt => {
                let parts = crt_fields()
                    .iter()
                    .map(|q| {
                        let red: Vec<Vec<u64>> = ra.iter().map(|e| e.iter().map(|&x| q.reduce(x)).collect()).collect();
                        let red: Vec<&[u64]> = red.iter().map(|v| v.as_slice()).collect();
                        let scheme = ntt_scheme(*q, full).expect("CRT primes support long transforms");
                        let vals = scheme.forward(q, &red);
                        (*q, scheme, vals)
                    })
                    .collect();
                Kind::Crt(Crt::for_field(&f), parts)
            }
            s => {
                let scheme = scheme_for(f, s, full).expect("chosen strategy is available");
                let vals = scheme.forward(&f, &ra);
                Kind::Direct(scheme, vals)
            }
        };
        Multiplier { a: a.clone(), bound, kind }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn apply(&self, b: &PolMat) -> Result<PolMat> {
        self.a.check_mul(b)?;
        if b.deg() > self.bound as i64 {
            return Err(Error::EnvelopeExceeded { bound: self.bound, got: b.deg() as usize });
        }
        let f = *self.a.ctx();
        let (m, k, n) = (self.a.rows(), self.a.cols(), b.cols());
        if self.a.is_zero() || b.is_zero() {
            return Ok(PolMat::zeros(f, m, n));
        }
        let full = (self.a.deg() + b.deg() + 1) as usize;
        let rb = raw(b, usize::MAX);
        let coeffs = match &self.kind {
            Kind::Naive => return Ok(naive(&self.a, b)),
            Kind::Direct(scheme, av) => {
                let bv = scheme.forward(&f, &rb);
                scheme.inverse(&f, pointwise(&f, av, &bv, m, k, n, scheme.len()))
            }
            Kind::Crt(crt, parts) => {
                let res: Vec<Vec<Vec<u64>>> = parts
                    .iter()
                    .map(|(q, scheme, av)| {
                        let red: Vec<Vec<u64>> = rb.iter().map(|e| e.iter().map(|&x| q.reduce(x)).collect()).collect();
                        let red: Vec<&[u64]> = red.iter().map(|v| v.as_slice()).collect();
                        let bv = scheme.forward(q, &red);
                        scheme.inverse(q, pointwise(q, av, &bv, m, k, n, scheme.len()))
                    })
                    .collect();
                (0..res[0].len())
                    .map(|e| (0..res[0][e].len()).map(|t| crt.combine(res[0][e][t], res[1][e][t], res[2][e][t])).collect())
                    .collect()
            }
        };
        Ok(assemble(f, m, n, coeffs, 0, full))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{pm_middle_product, pm_mul, pm_mul_with};
    use super::*;
    use crate::modring::{PRIME_60_GENERAL, PRIME_60_NTT};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn strategies_agree_with_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for p in [97u64, PRIME_60_NTT, PRIME_60_GENERAL] {
            let f = FieldCtx::new(p).unwrap();
            for _ in 0..10 {
                let a = PolMat::random(f, 4, 4, 16, &mut rng);
                let b = PolMat::random(f, 4, 4, 16, &mut rng);
                let want = pm_mul_with(&a, &b, Strategy::Naive).unwrap();
                for s in Strategy::ALL {
                    match pm_mul_with(&a, &b, s) {
                        Ok(c) => assert_eq!(c, want, "p={p} {s}"),
                        Err(e) => assert!(p != PRIME_60_NTT && s == Strategy::RootsOfUnity, "{s} failed: {e}"),
                    }
                }
                assert_eq!(pm_mul(&a, &b).unwrap(), want);
            }
        }
    }

    #[test]
    fn identity_and_scalar_case() {
        let f = FieldCtx::new(PRIME_60_NTT).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let a = PolMat::random(f, 5, 5, 9, &mut rng);
        assert_eq!(a.mul(&PolMat::identity(f, 5)), a);
        let x = PolMat::random(f, 1, 1, 40, &mut rng);
        let y = PolMat::random(f, 1, 1, 70, &mut rng);
        assert_eq!(*x.mul(&y).get(0, 0), x.get(0, 0) * y.get(0, 0));
    }

    #[test]
    fn middle_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for p in [97u64, PRIME_60_NTT] {
            let f = FieldCtx::new(p).unwrap();
            for _ in 0..30 {
                let c = rng.gen_range(1..40);
                let d = rng.gen_range(1..40);
                let a = PolMat::random(f, 3, 2, c, &mut rng);
                let b = PolMat::random(f, 2, 3, c + d, &mut rng);
                let got = pm_middle_product(&a, &b, c, d).unwrap();
                assert_eq!(got, pm_mul_with(&a, &b, Strategy::Naive).unwrap().slice(c, d));
            }
            let b = PolMat::random(f, 3, 2, 12, &mut rng);
            let id = PolMat::identity(f, 3);
            assert_eq!(pm_middle_product(&id, &b, 1, 11).unwrap(), b.slice(1, 11));
        }
    }

    #[test]
    fn multiplier_matches_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for p in [97u64, PRIME_60_NTT, PRIME_60_GENERAL] {
            let f = FieldCtx::new(p).unwrap();
            let a = PolMat::random(f, 3, 3, 30, &mut rng);
            let mult = Multiplier::new(&a, 40);
            for _ in 0..5 {
                let len = rng.gen_range(1..=41);
                let b = PolMat::random(f, 3, 2, len, &mut rng);
                assert_eq!(mult.apply(&b).unwrap(), pm_mul_with(&a, &b, Strategy::Naive).unwrap());
            }
            assert_eq!(mult.apply(&PolMat::identity(f, 3)).unwrap(), a);
            let big = PolMat::random(f, 3, 1, 50, &mut rng);
            assert!(matches!(mult.apply(&big), Err(Error::EnvelopeExceeded { bound: 40, .. })));
        }
    }
}
