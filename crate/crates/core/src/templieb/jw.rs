//! Jones-Wenzl projections on the qubit chain, stored through an orthonormal
//! basis of their image.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::chain::{apply_cup_projector, cup_vector};
use super::linalg::{charge_diagonal, thin_op_norm};
use crate::chebyshev;
use crate::error::{Error, Result};
use crate::param::QParameter;

/// Tolerance on projection and annihilation residuals.
pub const JW_TOLERANCE: f64 = 1e-9;
/// Required separation between the eigenvalue clusters at 0 and 1.
pub const JW_MIN_GAP: f64 = 0.5;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct JwResiduals {
    /// Worst `||M^2 - M||` of the compressed recursion step and `||B^T B - I||`.
    pub idempotency: f64,
    /// `max_i ||e_i p_n||`.
    pub annihilation: f64,
    /// Smallest separation between eigenvalues kept and discarded.
    pub eigen_gap: f64,
    pub qtrace: f64,
    pub qtrace_expected: f64,
}

impl JwResiduals {
    pub fn qtrace_error(&self) -> f64 {
        (self.qtrace - self.qtrace_expected).abs()
    }
}

/// `p_n = B B^T` with `B` a `2^n x (n+1)` isometry. Columns of `B` are
/// eigenvectors of the `U(1)` charge (`#0 - #1`), ordered from charge `n`
/// down to `-n`, so that `Q_1^{(x) n}` compresses to a diagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct JWProjection {
    n: usize,
    basis: DMatrix<f64>,
    q_diag: Vec<f64>,
    residuals: JwResiduals,
}

impl JWProjection {
    pub fn strands(&self) -> usize {
        self.n
    }

    /// Orthonormal image basis, `2^n x (n+1)`.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    /// Diagonal of `Q_n` in the image basis: `q^{-n}, q^{-n+2}, ..., q^n`.
    pub fn q_diag(&self) -> &[f64] {
        &self.q_diag
    }

    pub fn residuals(&self) -> &JwResiduals {
        &self.residuals
    }

    /// Dense `p_n`; only sensible for small chains.
    pub fn matrix(&self) -> Result<DMatrix<f64>> {
        if self.n > super::chain::MAX_DENSE_STRANDS {
            return Err(Error::Resource(format!(
                "dense projection limited to {} strands",
                super::chain::MAX_DENSE_STRANDS
            )));
        }
        Ok(&self.basis * self.basis.transpose())
    }
}

/// Orthonormal basis of `im p_0 = C`.
fn trivial() -> JWProjection {
    JWProjection {
        n: 0,
        basis: DMatrix::from_element(1, 1, 1.0),
        q_diag: vec![1.0],
        residuals: JwResiduals {
            qtrace: 1.0,
            qtrace_expected: 1.0,
            eigen_gap: 1.0,
            ..Default::default()
        },
    }
}

/// Rotates an orthonormal basis of a charge-invariant subspace onto charge
/// eigenvectors, charges descending; signs make the largest entry positive.
fn align_to_charge(n: usize, b: DMatrix<f64>) -> DMatrix<f64> {
    let charge = charge_diagonal(n);
    let cb = DMatrix::from_fn(b.nrows(), b.ncols(), |r, c| charge[r] * b[(r, c)]);
    let compressed = b.transpose() * cb;
    let eig = SymmetricEigen::new(compressed);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let mut out = DMatrix::zeros(b.nrows(), b.ncols());
    for (k, &idx) in order.iter().enumerate() {
        let mut col = &b * eig.eigenvectors.column(idx);
        let pivot = col.iter().cloned().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
        if pivot < 0.0 {
            col = -col;
        }
        out.set_column(k, &col);
    }
    out
}

/// One step of the Wenzl recursion `p_{n+1} = p_n - ([n]/[n+1]) p_n e_n p_n`,
/// carried out inside `im(p_n (x) 1)`.
fn extend(param: &QParameter, prev: &JWProjection) -> Result<JWProjection> {
    let n = prev.n;
    let q = param.q();
    let nq = param.nq();
    let chain = n + 1;
    // C = B_n (x) I_2
    let b = &prev.basis;
    let mut c = DMatrix::zeros(b.nrows() * 2, b.ncols() * 2);
    for r in 0..b.nrows() {
        for k in 0..b.ncols() {
            let v = b[(r, k)];
            c[(2 * r, 2 * k)] = v;
            c[(2 * r + 1, 2 * k + 1)] = v;
        }
    }
    let ratio = chebyshev::q_number_in(n, &nq) / chebyshev::q_number_in(n + 1, &nq);
    let mut residuals = prev.residuals;
    let basis = if n == 0 {
        DMatrix::identity(2, 2)
    } else {
        let w = cup_vector(q);
        let ec = apply_cup_projector(chain, n - 1, &w, &c);
        let m = DMatrix::identity(c.ncols(), c.ncols()) - (c.transpose() * ec) * ratio;
        let idem = (&m * &m - &m).abs().max();
        residuals.idempotency = residuals.idempotency.max(idem);
        let eig = SymmetricEigen::new(m);
        let keep: Vec<usize> = (0..eig.eigenvalues.len())
            .filter(|&i| eig.eigenvalues[i] > 0.5)
            .collect();
        if keep.len() != n + 2 {
            return Err(Error::NumericalDegradation {
                context: format!("Jones-Wenzl rank at n = {chain}"),
                residual: (keep.len() as f64 - (n + 2) as f64).abs(),
                tolerance: 0.0,
            });
        }
        let lo_keep = keep.iter().map(|&i| eig.eigenvalues[i]).fold(f64::INFINITY, f64::min);
        let hi_drop = (0..eig.eigenvalues.len())
            .filter(|i| !keep.contains(i))
            .map(|i| eig.eigenvalues[i])
            .fold(f64::NEG_INFINITY, f64::max);
        residuals.eigen_gap = residuals.eigen_gap.min(lo_keep - hi_drop);
        let u = DMatrix::from_fn(c.ncols(), keep.len(), |r, k| eig.eigenvectors[(r, keep[k])]);
        c * u
    };
    let basis = align_to_charge(chain, basis);

    let ortho = (basis.transpose() * &basis - DMatrix::identity(chain + 1, chain + 1))
        .abs()
        .max();
    residuals.idempotency = residuals.idempotency.max(ortho);
    let w = cup_vector(q);
    for p in 0..chain.saturating_sub(1) {
        let eb = apply_cup_projector(chain, p, &w, &basis);
        residuals.annihilation = residuals.annihilation.max(thin_op_norm(&eb));
    }
    let charge = charge_diagonal(chain);
    let mut q_diag = Vec::with_capacity(chain + 1);
    for k in 0..=chain {
        let col = basis.column(k);
        let v: f64 = col
            .iter()
            .zip(&charge)
            .map(|(x, ch)| x * x * q.powf(-ch))
            .sum();
        q_diag.push(v);
    }
    residuals.qtrace = q_diag.iter().sum();
    residuals.qtrace_expected = chebyshev::q_number_in(chain + 1, &nq);

    let worst = residuals.idempotency.max(residuals.annihilation);
    if worst > JW_TOLERANCE || residuals.eigen_gap < JW_MIN_GAP {
        return Err(Error::NumericalDegradation {
            context: format!("Jones-Wenzl projection on {chain} strands"),
            residual: worst,
            tolerance: JW_TOLERANCE,
        });
    }
    Ok(JWProjection {
        n: chain,
        basis,
        q_diag,
        residuals,
    })
}

pub(crate) fn build_next(param: &QParameter, prev: &JWProjection) -> Result<JWProjection> {
    extend(param, prev)
}

pub(crate) fn trivial_projection() -> JWProjection {
    trivial()
}
