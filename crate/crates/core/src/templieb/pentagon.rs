//! Recoupling defects between the two ways of fusing `s (x) alpha (x) r`.

use nalgebra::DMatrix;
use serde::Serialize;

use super::linalg::{align_phase, phased_difference_norm, phased_row_norms};
use super::TlModel;
use crate::error::{Error, Result};
use crate::fusion::fusion_contains;

fn shifted(base: usize, by: i64, what: &str) -> Result<usize> {
    let v = base as i64 + by;
    if v < 0 {
        return Err(Error::Domain(format!("label {what} = {v} is negative")));
    }
    Ok(v as usize)
}

fn require(a: usize, b: usize, g: usize) -> Result<()> {
    if fusion_contains(a, b, g) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{g} does not occur in {a} (x) {b}")))
    }
}

/// The two compositions `H_{a+k+l} -> H_s (x) H_a (x) H_r`, in image-basis
/// coordinates: `(1_s (x) V^{a,r}_{a+l}) V^{s,a+l}_{a+k+l}` and
/// `(V^{s,a}_{a+k} (x) 1_r) V^{a+k,r}_{a+k+l}`.
pub(crate) fn compositions(
    model: &TlModel,
    alpha: usize,
    r: usize,
    s: usize,
    k: i64,
    l: i64,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let al = shifted(alpha, l, "alpha+l")?;
    let ak = shifted(alpha, k, "alpha+k")?;
    let akl = shifted(alpha, k + l, "alpha+k+l")?;
    require(alpha, r, al)?;
    require(s, al, akl)?;
    require(s, alpha, ak)?;
    require(ak, r, akl)?;
    let total = s + alpha + r;
    if total > model.max_strands() {
        return Err(Error::Resource(format!(
            "s + alpha + r = {total} exceeds the {} strand limit",
            model.max_strands()
        )));
    }
    let v_ar = model.fusion_isometry(alpha, r, al)?;
    let v_s_al = model.fusion_isometry(s, al, akl)?;
    let v_sa = model.fusion_isometry(s, alpha, ak)?;
    let v_ak_r = model.fusion_isometry(ak, r, akl)?;
    let first = DMatrix::<f64>::identity(s + 1, s + 1).kronecker(v_ar.coords()) * v_s_al.coords();
    let second = v_sa.coords().kronecker(&DMatrix::<f64>::identity(r + 1, r + 1)) * v_ak_r.coords();
    Ok((first, second))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PentagonDefect {
    pub alpha: usize,
    pub r: usize,
    pub s: usize,
    pub k: i64,
    pub l: i64,
    /// Operator norm of the difference, after phase alignment when requested.
    pub defect: f64,
    /// Difference without any phase adjustment.
    pub raw_defect: f64,
    /// Phase applied to the second composition.
    pub theta: f64,
    /// `q^{alpha + (k - r)/2}`.
    pub bound: f64,
}

impl PentagonDefect {
    /// `defect / bound`.
    pub fn constant(&self) -> f64 {
        self.defect / self.bound
    }
}

pub(crate) fn pentagon(
    model: &TlModel,
    alpha: usize,
    r: usize,
    s: usize,
    k: i64,
    l: i64,
    align: bool,
) -> Result<PentagonDefect> {
    let (first, second) = compositions(model, alpha, r, s, k, l)?;
    let raw = phased_difference_norm(&first, &second, 0.0);
    let (defect, theta) = if align { align_phase(&first, &second) } else { (raw, 0.0) };
    let q = model.param().q();
    Ok(PentagonDefect {
        alpha,
        r,
        s,
        k,
        l,
        defect: defect.min(raw),
        raw_defect: raw,
        theta: if defect <= raw { theta } else { 0.0 },
        bound: q.powf(alpha as f64 + (k - r as i64) as f64 / 2.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutatorEstimate {
    pub alpha: usize,
    pub k: i64,
    pub l: i64,
    /// Largest `||D^*(Q_s m (x) Q_a i (x) Q_r m')|| / ||Q_s m (x) Q_a i (x) Q_r m'||`
    /// over basis vectors, `D` the phase-aligned composition difference.
    pub weighted_defect: f64,
    /// Estimate of the cut-down commutator per unit norms: two weighted
    /// defect terms, or for `k = l = -1` the sum of the other three cases.
    pub estimate: f64,
    pub q_alpha: f64,
    /// `estimate / q^alpha`.
    pub ratio: f64,
    /// `2`, or `6` for `k = l = -1`.
    pub constant: f64,
}

fn weighted_defect(model: &TlModel, alpha: usize, k: i64, l: i64) -> Result<f64> {
    let (first, second) = compositions(model, alpha, 1, 1, k, l)?;
    let (_, theta) = align_phase(&first, &second);
    // the bases diagonalize every Q, so the weights factor out of each row
    Ok(phased_row_norms(&first, &second, theta)
        .into_iter()
        .fold(0.0, f64::max))
}

pub(crate) fn commutator(model: &TlModel, alpha: usize, k: i64, l: i64) -> Result<CommutatorEstimate> {
    if k.abs() != 1 || l.abs() != 1 {
        return Err(Error::Domain(format!("k, l must be +-1 when r = s = 1, got ({k}, {l})")));
    }
    let q_alpha = model.param().q().powi(alpha as i32);
    let (wd, estimate, constant) = if k == -1 && l == -1 {
        let wd = weighted_defect(model, alpha, k, l).unwrap_or(0.0);
        let mut total = 0.0;
        for (kk, ll) in [(1, 1), (1, -1), (-1, 1)] {
            total += match weighted_defect(model, alpha, kk, ll) {
                Ok(v) => 2.0 * v,
                Err(Error::Domain(_)) => 0.0,
                Err(e) => return Err(e),
            };
        }
        (wd, total, 6.0)
    } else {
        let wd = weighted_defect(model, alpha, k, l)?;
        (wd, 2.0 * wd, 2.0)
    };
    Ok(CommutatorEstimate {
        alpha,
        k,
        l,
        weighted_defect: wd,
        estimate,
        q_alpha,
        ratio: estimate / q_alpha,
        constant,
    })
}

/// Least-squares slope of `log y` against `x`.
pub fn log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (mut num, mut den) = (0.0, 0.0);
    for (x, y) in points {
        num += (x - mx) * (y.ln() - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}
