//! Timing grids written as CSV.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::ValueEnum;
use pml::appint::{m_intbasis, mbasis, pm_intbasis, pmbasis, EvalPoints};
use pml::detred::{det_eval, det_linsolve, det_minors, reduce_basis_with, Expansion};
use pml::kernel::{kernel_direct, kernel_zls, Flavor};
use pml::polmat::{pm_mul, pm_mul_with, Strategy};
use pml::solve::{dixon_solve, high_order_solve, kernel_solve, KernelSolveOutcome};
use pml::sylres::{charpoly, charpoly_direct, default_charpoly_m, default_resultant_m, resultant, resultant_direct};
use pml::tuning::tuning;
use pml::upoly::GeomGrid;
use pml::{Error, FieldCtx, Mat, PolMat, Shift};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::checksum;
use crate::commands::solution_text;
use crate::gen::{charpoly_pair, reduction_input, sylvester_pair, PrimeClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum BenchOp {
    Mul,
    Pmbasis,
    Pmintbasis,
    Kernel,
    Solve,
    Det,
    Reduce,
    Resultant,
    Charpoly,
    /// Fixed pairs of algorithms whose relative speed is reported.
    Trend,
}

impl BenchOp {
    pub fn algos(self) -> &'static [&'static str] {
        match self {
            BenchOp::Mul => &["auto", "naive", "roots", "geometric", "vandermonde", "crt"],
            BenchOp::Pmbasis => &["pmbasis", "mbasis"],
            BenchOp::Pmintbasis => &["pm_intbasis", "m_intbasis"],
            BenchOp::Kernel => &["zls-approx", "zls-interp", "direct-approx", "direct-interp"],
            BenchOp::Solve => &["dixon", "highorder", "kernel"],
            BenchOp::Det => &["eval", "linsolve", "minors"],
            BenchOp::Reduce => &["highorder", "newton"],
            BenchOp::Resultant => &["villard", "direct"],
            BenchOp::Charpoly => &["bsgs", "direct"],
            BenchOp::Trend => &[],
        }
    }

    pub fn default_algo(self) -> &'static str {
        self.algos().first().copied().unwrap_or("")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchSpec {
    pub op: BenchOp,
    pub algos: Vec<String>,
    /// `(m, n)` pairs; resultant and charpoly read only the degree list.
    pub sizes: Vec<(usize, usize)>,
    /// Degrees, or orders for the basis operations.
    pub degrees: Vec<usize>,
    pub prime: PrimeClass,
    pub seed: u64,
    pub reps: usize,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algo: String,
    pub p_bits: u32,
    pub m: usize,
    pub n: usize,
    pub d_or_sigma: usize,
    pub seconds: f64,
    /// Hash of the output; `pass` or `warn` on trend rows.
    pub checksum: String,
}

pub const CSV_HEADER: &str = "algo,p_bits,m,n,d_or_sigma,seconds,checksum";

impl BenchRow {
    pub fn is_trend(&self) -> bool {
        self.algo.starts_with("trend:")
    }

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{},{},{:.6},{}", self.algo, self.p_bits, self.m, self.n, self.d_or_sigma, self.seconds, self.checksum)
    }
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_csv());
        s.push('\n');
    }
    s
}

pub fn to_markdown(rows: &[BenchRow]) -> String {
    let mut s = String::from("| algo | p bits | m | n | d/sigma | seconds | checksum |\n|---|---|---|---|---|---|---|\n");
    for r in rows {
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | {:.4} | {} |\n",
            r.algo, r.p_bits, r.m, r.n, r.d_or_sigma, r.seconds, r.checksum
        ));
    }
    s
}

/// Threads for the grid: `POLMAT_THREADS` if set, else 1.
pub fn threads_from_env() -> usize {
    std::env::var("POLMAT_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&t| t > 0).unwrap_or(1)
}

#[derive(Clone, Debug)]
struct Job {
    op: BenchOp,
    algo: String,
    m: usize,
    n: usize,
    d: usize,
    seed: u64,
}

pub fn run_bench(spec: &BenchSpec) -> pml::Result<Vec<BenchRow>> {
    if spec.op == BenchOp::Trend {
        return run_trend(spec);
    }
    let algos: Vec<String> = if spec.algos.is_empty() { vec![spec.op.default_algo().into()] } else { spec.algos.clone() };
    if let Some(a) = algos.iter().find(|a| !spec.op.algos().contains(&a.as_str())) {
        return Err(Error::BadParams(format!("unknown algorithm {a:?} for {:?}", spec.op)));
    }
    let sizes = match spec.op {
        BenchOp::Resultant | BenchOp::Charpoly => vec![(0, 0)],
        _ => spec.sizes.clone(),
    };
    let mut jobs = Vec::new();
    for (ci, &(m, n)) in sizes.iter().enumerate() {
        for (di, &d) in spec.degrees.iter().enumerate() {
            // every algorithm of a cell sees the same instance
            let seed = spec.seed ^ ((ci as u64) << 48) ^ ((di as u64) << 32);
            for a in &algos {
                jobs.push(Job { op: spec.op, algo: a.clone(), m, n, d, seed });
            }
        }
    }
    run_jobs(&jobs, spec.prime.field(), spec.reps.max(1), spec.threads.max(1))
}

fn run_jobs(jobs: &[Job], f: FieldCtx, reps: usize, threads: usize) -> pml::Result<Vec<BenchRow>> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<pml::Result<BenchRow>>>> = Mutex::new(vec![None; jobs.len()]);
    std::thread::scope(|sc| {
        for _ in 0..threads.min(jobs.len()).max(1) {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(job) = jobs.get(i) else { break };
                let r = time_job(job, f, reps);
                out.lock().expect("no panics while holding the lock")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("workers finished").into_iter().map(|r| r.expect("every job ran")).collect()
}

fn time_job(job: &Job, f: FieldCtx, reps: usize) -> pml::Result<BenchRow> {
    let mut best = f64::INFINITY;
    let mut text = String::new();
    for _ in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
        let input = Input::build(job, f, &mut rng)?;
        let t = Instant::now();
        text = input.run(&job.algo, &mut rng)?;
        best = best.min(t.elapsed().as_secs_f64());
    }
    let (m, n) = match job.op {
        BenchOp::Resultant => (default_resultant_m(2 * job.d), job.d),
        BenchOp::Charpoly => (default_charpoly_m(job.d), job.d),
        _ => (job.m, job.n),
    };
    Ok(BenchRow { algo: job.algo.clone(), p_bits: f.bits(), m, n, d_or_sigma: job.d, seconds: best, checksum: checksum::of(&text) })
}

enum Input {
    Pair(PolMat, PolMat),
    Basis(PolMat, usize),
    Points(Vec<Mat>, EvalPoints),
    Single(PolMat),
    Bivar(pml::sylres::BivarPoly, pml::sylres::BivarPoly),
    Uni(pml::Poly, pml::Poly),
}

impl Input {
    fn build(job: &Job, f: FieldCtx, rng: &mut ChaCha8Rng) -> pml::Result<Input> {
        let Job { m, n, d, .. } = *job;
        Ok(match job.op {
            BenchOp::Mul => Input::Pair(PolMat::random(f, m, n, d + 1, rng), PolMat::random(f, n, m, d + 1, rng)),
            BenchOp::Pmbasis => Input::Basis(PolMat::random(f, m, n, d, rng), d),
            BenchOp::Pmintbasis => {
                let pts = match GeomGrid::find(f, d) {
                    Ok(g) => EvalPoints::Geometric { start: 1, ratio: g.alpha(), len: d },
                    Err(_) => EvalPoints::General((1..=d as u64).collect()),
                };
                Input::Points((0..d).map(|_| Mat::random(f, m, n, rng)).collect(), pts)
            }
            BenchOp::Kernel => Input::Single(PolMat::random(f, m, n, d + 1, rng)),
            BenchOp::Solve => {
                let a = loop {
                    let a = PolMat::random(f, m, m, d + 1, rng);
                    if a.coeff(0).det()? != 0 {
                        break a;
                    }
                };
                Input::Pair(a, PolMat::random(f, m, 1, d + 1, rng))
            }
            BenchOp::Det => Input::Single(PolMat::random(f, m, m, d + 1, rng)),
            BenchOp::Reduce => Input::Single(reduction_input(f, m, d, rng)?),
            BenchOp::Resultant => {
                let (a, b) = sylvester_pair(f, d, d, rng)?;
                Input::Bivar(a, b)
            }
            BenchOp::Charpoly => {
                let (a, p) = charpoly_pair(f, d, rng)?;
                Input::Uni(a, p)
            }
            BenchOp::Trend => unreachable!("trend cells are built directly"),
        })
    }

    fn run(&self, algo: &str, rng: &mut ChaCha8Rng) -> pml::Result<String> {
        Ok(match (self, algo) {
            (Input::Pair(a, b), "auto") => pm_mul(a, b)?.to_text(),
            (Input::Pair(a, b), "dixon") => solution_text(&dixon_solve(a, b)?),
            (Input::Pair(a, b), "highorder") => solution_text(&high_order_solve(a, b)?),
            (Input::Pair(a, b), "kernel") => match kernel_solve(a, b)? {
                KernelSolveOutcome::Solution(s) => solution_text(&s),
                other => format!("{other:?}"),
            },
            (Input::Pair(a, b), s) => pm_mul_with(a, b, s.parse::<Strategy>()?)?.to_text(),
            (Input::Basis(fm, sigma), "pmbasis") => pmbasis(fm, *sigma, &Shift::zeros(fm.rows())).to_text(),
            (Input::Basis(fm, sigma), _) => mbasis(fm, *sigma, &Shift::zeros(fm.rows())).to_text(),
            (Input::Points(e, pts), a) => {
                let s = Shift::zeros(e[0].rows());
                if a == "pm_intbasis" {
                    pm_intbasis(e, pts, &s)?.to_text()
                } else {
                    m_intbasis(e, &pts.to_vec(e[0].ctx()), &s)?.to_text()
                }
            }
            (Input::Single(fm), k) if k.contains('-') => {
                let s = Shift::zeros(fm.rows());
                let fl = if k.ends_with("interp") { Flavor::Interp } else { Flavor::Approx };
                let kb = if k.starts_with("zls") { kernel_zls(fm, &s, fl)? } else { kernel_direct(fm, &s, fl)? };
                kb.k.to_text()
            }
            (Input::Single(a), "eval") => det_eval(a)?.to_text(),
            (Input::Single(a), "linsolve") => det_linsolve(a, rng)?.to_text(),
            (Input::Single(a), "minors") => det_minors(a)?.to_text(),
            (Input::Single(a), "highorder") => reduce_basis_with(a, Expansion::HighOrder)?.to_text(),
            (Input::Single(a), "newton") => reduce_basis_with(a, Expansion::Newton)?.to_text(),
            (Input::Bivar(f, g), "villard") => resultant(f, g, None, rng)?.to_text(),
            (Input::Bivar(f, g), _) => resultant_direct(f, g)?.to_text(),
            (Input::Uni(a, p), "bsgs") => charpoly(a, p, None, rng)?.to_text(),
            (Input::Uni(a, p), _) => charpoly_direct(a, p)?.to_text(),
            (_, a) => return Err(Error::BadParams(format!("algorithm {a:?} does not apply"))),
        })
    }
}

/// `(name, op, fast, slow, m, n, d)`: `fast` is expected to beat `slow`.
type TrendCell = (&'static str, BenchOp, &'static str, &'static str, usize, usize, usize);

/// The desk-scale trend grid.
pub fn trend_cells() -> Vec<TrendCell> {
    let t = tuning().pmbasis_threshold;
    vec![
        ("trend:pmbasis<mbasis", BenchOp::Pmbasis, "pmbasis", "mbasis", 32, 16, 4 * t),
        ("trend:highorder<newton", BenchOp::Reduce, "highorder", "newton", 16, 16, 48),
        ("trend:dixon<highorder", BenchOp::Solve, "dixon", "highorder", 16, 16, 64),
    ]
}

fn run_trend(spec: &BenchSpec) -> pml::Result<Vec<BenchRow>> {
    let f = spec.prime.field();
    let mut rows = Vec::new();
    for (i, (name, op, fast, slow, m, n, d)) in trend_cells().into_iter().enumerate() {
        let seed = spec.seed ^ ((i as u64 + 1) << 56);
        let jobs: Vec<Job> = [fast, slow].iter().map(|a| Job { op, algo: (*a).into(), m, n, d, seed }).collect();
        let pair = run_jobs(&jobs, f, spec.reps.max(1), 1)?;
        let ratio = pair[0].seconds / pair[1].seconds.max(1e-12);
        let verdict = if ratio < 1.0 { "pass" } else { "warn" };
        rows.extend(pair);
        rows.push(BenchRow { algo: name.into(), p_bits: f.bits(), m, n, d_or_sigma: d, seconds: ratio, checksum: verdict.into() });
    }
    Ok(rows)
}
