//! One function per file-based subcommand; each returns the output text.

use clap::ValueEnum;
use pml::appint::{m_intbasis, mbasis, pm_intbasis, pmbasis};
use pml::detred::{det_with, reduce_basis_with, DetMethod, Expansion};
use pml::kernel::{kernel_direct, kernel_zls, Flavor};
use pml::polmat::{pm_mul, pm_mul_with, Strategy};
use pml::solve::{dixon_solve, high_order_solve, kernel_solve, KernelSolveOutcome, RatSolution};
use pml::sylres::{charpoly, charpoly_direct, charpoly_generic, resultant, resultant_direct, villard_resultant, BivarPoly, SylvesterCtx};
use pml::{PolMat, Poly, Shift};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::io::Evaluations;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisAlgo {
    Iterative,
    DivideConquer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelAlgo {
    Direct,
    Zls,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Approx,
    Interp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveAlgo {
    Dixon,
    Highorder,
    Kernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpansionArg {
    Highorder,
    Newton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResultantAlgo {
    Direct,
    Villard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CharpolyAlgo {
    Direct,
    Bsgs,
}

fn shift_or_zero(shift: Option<Vec<i64>>, m: usize) -> CliResult<Shift> {
    match shift {
        None => Ok(Shift::zeros(m)),
        Some(s) if s.len() == m => Ok(Shift::new(s)),
        Some(s) => Err(CliError::Usage(format!("shift has {} entries, matrix has {m} rows", s.len()))),
    }
}

pub fn mul(a: &PolMat, b: &PolMat, strategy: Option<Strategy>) -> CliResult<String> {
    let c = match strategy {
        Some(s) => pm_mul_with(a, b, s)?,
        None => pm_mul(a, b)?,
    };
    Ok(c.to_text())
}

pub fn approximant(f: &PolMat, sigma: usize, shift: Option<Vec<i64>>, algo: BasisAlgo) -> CliResult<String> {
    let s = shift_or_zero(shift, f.rows())?;
    let p = match algo {
        BasisAlgo::Iterative => mbasis(f, sigma, &s),
        BasisAlgo::DivideConquer => pmbasis(f, sigma, &s),
    };
    Ok(p.to_text())
}

pub fn interpolant(e: &Evaluations, shift: Option<Vec<i64>>, algo: BasisAlgo) -> CliResult<String> {
    let m = e.values.first().map_or(0, |v| v.rows());
    let s = shift_or_zero(shift, m)?;
    let p = match algo {
        BasisAlgo::Iterative => m_intbasis(&e.values, &e.points, &s)?,
        BasisAlgo::DivideConquer => pm_intbasis(&e.values, &e.eval_points(), &s)?,
    };
    Ok(p.to_text())
}

pub fn kernel(f: &PolMat, shift: Option<Vec<i64>>, algo: KernelAlgo, flavor: FlavorArg) -> CliResult<String> {
    let s = shift_or_zero(shift, f.rows())?;
    let fl = match flavor {
        FlavorArg::Approx => Flavor::Approx,
        FlavorArg::Interp => Flavor::Interp,
    };
    let k = match algo {
        KernelAlgo::Direct => kernel_direct(f, &s, fl)?,
        KernelAlgo::Zls => kernel_zls(f, &s, fl)?,
    };
    Ok(k.k.to_text())
}

/// Output: the `(n + 1) x 1` matrix `[u; f]`.
pub fn solve(a: &PolMat, b: &PolMat, algo: SolveAlgo) -> CliResult<String> {
    let sol = match algo {
        SolveAlgo::Dixon => dixon_solve(a, b)?,
        SolveAlgo::Highorder => high_order_solve(a, b)?,
        SolveAlgo::Kernel => match kernel_solve(a, b)? {
            KernelSolveOutcome::Solution(s) => s,
            KernelSolveOutcome::NoSolution => return Err(CliError::Usage("system has no rational solution".into())),
            KernelSolveOutcome::Space(_) => return Err(CliError::Usage("matrix is singular; solution space has positive dimension".into())),
        },
    };
    Ok(solution_text(&sol))
}

pub fn solution_text(sol: &RatSolution) -> String {
    let f = *sol.f.ctx();
    sol.u.vstack(&PolMat::from_entries(f, 1, 1, vec![sol.f.clone()])).to_text()
}

pub fn det(a: &PolMat, method: Option<DetMethod>, seed: u64) -> CliResult<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(det_with(a, method, &mut rng)?.det.to_text())
}

pub fn reduce(a: &PolMat, how: ExpansionArg) -> CliResult<String> {
    let e = match how {
        ExpansionArg::Highorder => Expansion::HighOrder,
        ExpansionArg::Newton => Expansion::Newton,
    };
    Ok(reduce_basis_with(a, e)?.to_text())
}

pub fn resultant_cmd(f: &BivarPoly, g: &BivarPoly, algo: ResultantAlgo, m: Option<usize>, seed: u64, fallback: bool) -> CliResult<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = match (algo, fallback) {
        (ResultantAlgo::Direct, _) => resultant_direct(f, g)?,
        (ResultantAlgo::Villard, true) => resultant(f, g, m, &mut rng)?,
        (ResultantAlgo::Villard, false) => villard_resultant(&SylvesterCtx::new(f.clone(), g.clone(), m)?, &mut rng)?,
    };
    Ok(r.to_text())
}

pub fn charpoly_cmd(a: &Poly, p: &Poly, algo: CharpolyAlgo, m: Option<usize>, seed: u64, fallback: bool) -> CliResult<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = match (algo, fallback) {
        (CharpolyAlgo::Direct, _) => charpoly_direct(a, p)?,
        (CharpolyAlgo::Bsgs, true) => charpoly(a, p, m, &mut rng)?,
        (CharpolyAlgo::Bsgs, false) => charpoly_generic(a, p, m, &mut rng)?,
    };
    Ok(c.to_text())
}
