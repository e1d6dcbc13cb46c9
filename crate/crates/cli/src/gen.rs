//! Deterministic random instances.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use pml::modring::{PRIME_20_NTT, PRIME_60_GENERAL, PRIME_60_NTT};
use pml::sylres::BivarPoly;
use pml::{Error, FieldCtx, PolMat, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum PrimeClass {
    /// 20-bit prime with a large power of two in `p - 1`.
    SmallNtt,
    /// 60-bit prime with a large power of two in `p - 1`.
    LargeNtt,
    /// 60-bit prime with small two-adicity.
    General,
}

impl PrimeClass {
    pub fn modulus(self) -> u64 {
        match self {
            PrimeClass::SmallNtt => PRIME_20_NTT,
            PrimeClass::LargeNtt => PRIME_60_NTT,
            PrimeClass::General => PRIME_60_GENERAL,
        }
    }

    pub fn field(self) -> FieldCtx {
        FieldCtx::new(self.modulus()).expect("built-in primes are valid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    RandomPolmat,
    ReductionInput,
    SylvesterPair,
    CharpolyPair,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> pml::Result<Kind> {
        <Kind as ValueEnum>::from_str(s, false).map_err(|_| Error::BadParams(format!("unknown instance kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub prime: PrimeClass,
}

/// Files of one instance as `(name, contents)`.
pub fn gen_instance(kind: Kind, params: GenParams, seed: u64) -> pml::Result<Vec<(String, String)>> {
    let f = params.prime.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let GenParams { m, n, d, .. } = params;
    Ok(match kind {
        Kind::RandomPolmat => {
            if m == 0 || n == 0 {
                return Err(Error::BadParams("dimensions must be positive".into()));
            }
            vec![("a.txt".into(), PolMat::random(f, m, n, d + 1, &mut rng).to_text())]
        }
        Kind::ReductionInput => vec![("a.txt".into(), reduction_input(f, m, d, &mut rng)?.to_text())],
        Kind::SylvesterPair => {
            let (a, b) = sylvester_pair(f, n, d, &mut rng)?;
            vec![("f.txt".into(), a.to_text()), ("g.txt".into(), b.to_text())]
        }
        Kind::CharpolyPair => {
            let (a, p) = charpoly_pair(f, n, &mut rng)?;
            vec![("a.txt".into(), a.to_text()), ("p.txt".into(), p.to_text())]
        }
    })
}

/// Random reduced matrix of degree `d/3`, multiplied on the left by random
/// lower and then upper unit triangular matrices of degree `d/3`.
pub fn reduction_input(f: FieldCtx, m: usize, d: usize, rng: &mut impl Rng) -> pml::Result<PolMat> {
    if m == 0 || d < 3 {
        return Err(Error::BadParams("reduction input needs m >= 1 and d >= 3".into()));
    }
    let e = d / 3;
    for _ in 0..64 {
        let a0 = PolMat::random(f, m, m, e + 1, rng);
        let lower = unit_triangular(f, m, e, true, rng);
        let a = unit_triangular(f, m, e, false, rng).mul(&lower.mul(&a0));
        if a.coeff(0).det()? != 0 {
            return Ok(a);
        }
    }
    Err(Error::BadParams("no instance with A(0) invertible found".into()))
}

fn unit_triangular(f: FieldCtx, m: usize, e: usize, lower: bool, rng: &mut impl Rng) -> PolMat {
    let mut t = PolMat::identity(f, m);
    for i in 0..m {
        for j in 0..m {
            if (lower && j < i) || (!lower && j > i) {
                t.set(i, j, Poly::random(f, e + 1, rng));
            }
        }
    }
    t
}

pub fn sylvester_pair(f: FieldCtx, n: usize, d: usize, rng: &mut impl Rng) -> pml::Result<(BivarPoly, BivarPoly)> {
    if n == 0 {
        return Err(Error::BadParams("z-degree must be positive".into()));
    }
    let mut one = || {
        for _ in 0..64 {
            let p = BivarPoly::random(f, n, d, rng);
            if p.deg_z() == n as i64 && p.lc_z().deg() == d as i64 {
                return Ok(p);
            }
        }
        Err(Error::BadParams("could not draw a polynomial with full degrees".into()))
    };
    Ok((one()?, one()?))
}

/// `(A, P)` with `P` monic of degree `n` and `deg A < n`.
pub fn charpoly_pair(f: FieldCtx, n: usize, rng: &mut impl Rng) -> pml::Result<(Poly, Poly)> {
    if n == 0 {
        return Err(Error::BadParams("modulus degree must be positive".into()));
    }
    let a = Poly::random(f, n, rng);
    let p = &Poly::random(f, n, rng) + &Poly::monomial(f, 1, n);
    Ok((a, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_files() {
        let p = GenParams { m: 3, n: 3, d: 6, prime: PrimeClass::SmallNtt };
        for kind in [Kind::RandomPolmat, Kind::ReductionInput, Kind::SylvesterPair, Kind::CharpolyPair] {
            assert_eq!(gen_instance(kind, p, 9).unwrap(), gen_instance(kind, p, 9).unwrap());
            assert_eq!(kind.to_string().parse::<Kind>().unwrap(), kind);
        }
    }

    #[test]
    fn reduction_input_is_usable() {
        let f = PrimeClass::LargeNtt.field();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = reduction_input(f, 4, 24, &mut rng).unwrap();
        assert_ne!(a.coeff(0).det().unwrap(), 0);
        assert!(a.deg() <= 24);
    }

    #[test]
    fn sylvester_pair_has_full_degrees() {
        let f = PrimeClass::LargeNtt.field();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (a, b) = sylvester_pair(f, 8, 8, &mut rng).unwrap();
        for p in [a, b] {
            assert_eq!(p.deg_z(), 8);
            assert!(!p.lc_z().is_zero());
        }
    }
}
