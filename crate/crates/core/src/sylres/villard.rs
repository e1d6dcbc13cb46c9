use rand::Rng;

use super::{resultant_degree_bound, resultant_direct, univariate_resultant, BivarPoly, StructuredInverseEval};
use crate::appint::EvalPoints;
use crate::detred::det;
use crate::error::{Error, Result};
use crate::fraction::fracrec_points;
use crate::matrix::Mat;
use crate::upoly::{eval_geometric, GeomGrid, Poly};

/// Resultant instance: `F`, `G`, Sylvester size `nu`, `x`-degree `d` and
/// block size `m`.
#[derive(Clone, Debug)]
pub struct SylvesterCtx {
    pub f: BivarPoly,
    pub g: BivarPoly,
    pub nu: usize,
    pub d: usize,
    pub m: usize,
}

/// `ceil(n^0.4)`.
pub fn default_resultant_m(n: usize) -> usize {
    ((n as f64).powf(0.4).ceil() as usize).max(1)
}

impl SylvesterCtx {
    pub fn new(f: BivarPoly, g: BivarPoly, m: Option<usize>) -> Result<Self> {
        if f.ctx() != g.ctx() {
            return Err(Error::CtxMismatch);
        }
        if f.deg_z() < 1 || g.deg_z() < 1 {
            return Err(Error::BadParams("both polynomials need positive degree in z".into()));
        }
        let nu = (f.deg_z() + g.deg_z()) as usize;
        let d = f.deg_x().max(g.deg_x()).max(0) as usize;
        let m = m.unwrap_or_else(|| default_resultant_m(f.deg_z().max(g.deg_z()) as usize));
        if m == 0 || m > nu {
            return Err(Error::BadParams(format!("block size {m} not in 1..={nu}")));
        }
        Ok(SylvesterCtx { f, g, nu, d, m })
    }

    /// Number of values of `H` needed.
    pub fn points_needed(&self) -> usize {
        2 * self.nu.div_ceil(self.m) * self.d + 1
    }

    fn block_at(&self, fa: Poly, ga: Poly) -> Option<Mat> {
        if fa.deg() != self.f.deg_z() || ga.deg() != self.g.deg_z() {
            return None;
        }
        StructuredInverseEval::new(&fa, &ga).ok().map(|s| s.top_right(self.m))
    }
}

fn specialize_geometric(b: &BivarPoly, grid: &GeomGrid) -> Result<Vec<Vec<u64>>> {
    b.coeffs().iter().map(|c| eval_geometric(c, grid)).collect()
}

fn column(vals: &[Vec<u64>], k: usize, ctx: crate::modring::FieldCtx) -> Poly {
    Poly::new(ctx, vals.iter().map(|v| v[k]).collect())
}

/// Values of `H` at a geometric progression, or at random points when the
/// progression hits a singular specialization or does not exist.
fn h_values(sc: &SylvesterCtx, rng: &mut impl Rng) -> Result<(Vec<Mat>, EvalPoints)> {
    let ctx = *sc.f.ctx();
    let len = sc.points_needed();
    if let Ok(grid) = GeomGrid::find(ctx, len) {
        let fv = specialize_geometric(&sc.f, &grid)?;
        let gv = specialize_geometric(&sc.g, &grid)?;
        let blocks: Option<Vec<Mat>> = (0..len).map(|k| sc.block_at(column(&fv, k, ctx), column(&gv, k, ctx))).collect();
        if let Some(b) = blocks {
            return Ok((b, EvalPoints::Geometric { start: 1, ratio: grid.alpha(), len }));
        }
    }
    let mut pts = Vec::with_capacity(len);
    let mut vals = Vec::with_capacity(len);
    let mut seen = std::collections::HashSet::new();
    let budget = 4 * len + 64;
    for _ in 0..budget {
        if pts.len() == len {
            break;
        }
        let x = ctx.random(rng);
        if !seen.insert(x) {
            continue;
        }
        if let Some(h) = sc.block_at(sc.f.eval_x(x), sc.g.eval_x(x)) {
            pts.push(x);
            vals.push(h);
        }
    }
    if pts.len() < len {
        return Err(Error::GenericityFailure("too many singular specializations".into()));
    }
    Ok((vals, EvalPoints::General(pts)))
}

/// `Res_z(F, G)` as the determinant of the denominator of the top-right
/// block of the inverse Sylvester matrix, reconstructed from its values.
pub fn villard_resultant(sc: &SylvesterCtx, rng: &mut impl Rng) -> Result<Poly> {
    let ctx = *sc.f.ctx();
    if sc.d == 0 {
        return resultant_direct(&sc.f, &sc.g);
    }
    let (vals, pts) = h_values(sc, rng)?;
    let desc = fracrec_points(&vals, &pts).map_err(|e| Error::GenericityFailure(e.to_string()))?;
    let dq = det(&desc.q)?;
    if dq.is_zero() {
        return Err(Error::GenericityFailure("singular denominator".into()));
    }
    let bound = resultant_degree_bound(&sc.f, &sc.g) as i64;
    if dq.deg() > bound {
        return Err(Error::GenericityFailure("denominator determinant too large".into()));
    }
    let res_at = |x: u64| {
        let (fa, ga) = (sc.f.eval_x(x), sc.g.eval_x(x));
        (fa.deg() == sc.f.deg_z() && ga.deg() == sc.g.deg_z()).then(|| univariate_resultant(&fa, &ga))
    };
    // fix the constant at one point, then check two more
    let mut scale = None;
    for _ in 0..32 {
        let x = ctx.random(rng);
        let (Some(r), q) = (res_at(x), dq.eval(x)) else { continue };
        if q != 0 {
            scale = Some(ctx.mul(r, ctx.inv(q)));
            break;
        }
    }
    let scale = scale.ok_or_else(|| Error::GenericityFailure("no usable normalization point".into()))?;
    let out = dq.scale(scale);
    let mut checked = 0;
    for _ in 0..32 {
        if checked == 2 {
            break;
        }
        let x = ctx.random(rng);
        if let Some(r) = res_at(x) {
            if out.eval(x) != r {
                return Err(Error::GenericityFailure("verification mismatch".into()));
            }
            checked += 1;
        }
    }
    if checked < 2 {
        return Err(Error::GenericityFailure("no usable verification point".into()));
    }
    Ok(out)
}

/// Villard's method with the direct method as fallback on non-generic input.
pub fn resultant(f: &BivarPoly, g: &BivarPoly, m: Option<usize>, rng: &mut impl Rng) -> Result<Poly> {
    match SylvesterCtx::new(f.clone(), g.clone(), m).and_then(|sc| villard_resultant(&sc, rng)) {
        Ok(r) => Ok(r),
        Err(Error::GenericityFailure(_)) | Err(Error::BadParams(_)) => resultant_direct(f, g),
        Err(e) => Err(e),
    }
}
