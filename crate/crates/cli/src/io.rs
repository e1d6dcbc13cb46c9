//! Reading and writing the text formats.

use std::fs;
use std::path::Path;

use pml::appint::EvalPoints;
use pml::sylres::BivarPoly;
use pml::{Error, FieldCtx, Mat, PolMat, Poly};

use crate::error::{CliError, CliResult};

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Writes to `out` if given, else to stdout.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_polmat(path: &Path) -> CliResult<PolMat> {
    Ok(PolMat::from_text(&read(path)?)?)
}

pub fn read_poly(path: &Path) -> CliResult<Poly> {
    Ok(Poly::from_text(&read(path)?)?)
}

pub fn read_bivar(path: &Path) -> CliResult<BivarPoly> {
    Ok(BivarPoly::from_text(&read(path)?)?)
}

/// Values of an `m x n` matrix at `k` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluations {
    pub points: Vec<u64>,
    pub values: Vec<Mat>,
}

impl Evaluations {
    /// `p m n k`, a line of `k` points, then `k` blocks of `m` lines.
    pub fn to_text(&self) -> String {
        let f = self.values.first().map(|v| *v.ctx());
        let (m, n) = self.values.first().map_or((0, 0), |v| (v.rows(), v.cols()));
        let p = f.map_or(0, |f| f.modulus());
        let mut s = format!("{p} {m} {n} {}\n", self.points.len());
        s.push_str(&join(&self.points));
        s.push('\n');
        for v in &self.values {
            for i in 0..m {
                s.push_str(&join(v.row(i)));
                s.push('\n');
            }
        }
        s
    }

    pub fn from_text(text: &str) -> pml::Result<Evaluations> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = nums(lines.next().ok_or_else(|| Error::Parse("empty evaluation file".into()))?)?;
        let [p, m, n, k] = head[..] else {
            return Err(Error::Parse("header must be `p m n k`".into()));
        };
        let f = FieldCtx::new(p)?;
        let (m, n, k) = (m as usize, n as usize, k as usize);
        let points = nums(lines.next().unwrap_or(""))?;
        if points.len() != k {
            return Err(Error::LengthMismatch { expected: k, got: points.len() });
        }
        let mut values = Vec::with_capacity(k);
        for _ in 0..k {
            let mut data = Vec::with_capacity(m * n);
            for _ in 0..m {
                let row = nums(lines.next().ok_or_else(|| Error::Parse("missing matrix row".into()))?)?;
                if row.len() != n {
                    return Err(Error::LengthMismatch { expected: n, got: row.len() });
                }
                data.extend(row.into_iter().map(|v| f.reduce(v)));
            }
            values.push(Mat::from_vec(f, m, n, data));
        }
        Ok(Evaluations { points: points.into_iter().map(|a| f.reduce(a)).collect(), values })
    }

    pub fn eval_points(&self) -> EvalPoints {
        EvalPoints::General(self.points.clone())
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn nums(line: &str) -> pml::Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

/// Comma-separated integers, e.g. a shift.
pub fn parse_list(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|e| CliError::Usage(format!("bad list entry {t:?}: {e}"))))
        .collect()
}

/// `8x8,16x4` into `(m, n)` pairs.
pub fn parse_sizes(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(',')
        .map(|t| {
            let (a, b) = t.trim().split_once('x').ok_or_else(|| CliError::Usage(format!("size {t:?} is not MxN")))?;
            let p = |v: &str| v.parse::<usize>().map_err(|e| CliError::Usage(format!("size {t:?}: {e}")));
            Ok((p(a)?, p(b)?))
        })
        .collect()
}
