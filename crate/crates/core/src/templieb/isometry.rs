//! Fusion isometries `V^{a,b}_g : H_g -> H_a (x) H_b` realized on qubit chains.

use nalgebra::DMatrix;
use serde::Serialize;

use super::chain::cup_vector;
use super::jw::JWProjection;
use crate::error::{Error, Result};

/// Residual allowed when checking that `W^* W` is a multiple of the identity.
pub const SCALAR_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct IsometryResiduals {
    /// `||W^* W / c - I||` before normalization.
    pub scalar: f64,
    /// `||V^* V - I||`.
    pub isometry: f64,
    /// `||V Q_g - (Q_a (x) Q_b) V||`.
    pub q_intertwining: f64,
}

/// `V^{a,b}_g`, stored in the image bases of `p_a`, `p_b`, `p_g`: `coords` has
/// `(a+1)(b+1)` rows indexed by `i_a (b+1) + i_b` and `g+1` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionIsometry {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    coords: DMatrix<f64>,
    /// `c` in `W^* W = c I`.
    pub scale: f64,
    pub residuals: IsometryResiduals,
}

impl FusionIsometry {
    pub fn coords(&self) -> &DMatrix<f64> {
        &self.coords
    }

    /// `V` as a `2^{a+b} x (g+1)` matrix on the chain of `a+b` strands.
    pub fn chain_matrix(&self, pa: &JWProjection, pb: &JWProjection) -> DMatrix<f64> {
        pa.basis().kronecker(pb.basis()) * &self.coords
    }
}

/// `m` nested cups on `2m` qubits: `omega_m[a, mid, b] = w[a, b] omega_{m-1}[mid]`.
pub fn nested_cups(q: f64, m: usize) -> Vec<f64> {
    let w = cup_vector(q);
    let mut omega = vec![1.0];
    for k in 1..=m {
        let inner_bits = 2 * (k - 1);
        let mut next = vec![0.0; 1usize << (2 * k)];
        for a in 0..2 {
            for b in 0..2 {
                let wab = w[2 * a + b];
                if wab == 0.0 {
                    continue;
                }
                for (mid, v) in omega.iter().enumerate() {
                    let idx = (a << (inner_bits + 1)) | (mid << 1) | b;
                    next[idx] = wab * v;
                }
            }
        }
        omega = next;
    }
    omega
}

/// Coordinates of `(p_a (x) p_b) x` in the basis `B_a (x) B_b`, for a vector
/// `x` on `a+b` qubits.
fn product_coords(pa: &JWProjection, pb: &JWProjection, x: &[f64]) -> Vec<f64> {
    let (ba, bb) = (pa.basis(), pb.basis());
    let cols = bb.nrows();
    let xm = DMatrix::from_row_slice(ba.nrows(), cols, x);
    let c = ba.transpose() * xm * bb;
    let mut out = Vec::with_capacity(c.len());
    for i in 0..c.nrows() {
        for j in 0..c.ncols() {
            out.push(c[(i, j)]);
        }
    }
    out
}

pub(crate) fn build(
    q: f64,
    pa: &JWProjection,
    pb: &JWProjection,
    pg: &JWProjection,
) -> Result<FusionIsometry> {
    let (alpha, beta, gamma) = (pa.strands(), pb.strands(), pg.strands());
    let m = (alpha + beta - gamma) / 2;
    let omega = nested_cups(q, m);
    let right_bits = beta - m;
    let cup_bits = 2 * m;
    let total = alpha + beta;
    let bg = pg.basis();
    let rows = (alpha + 1) * (beta + 1);
    let mut w = DMatrix::zeros(rows, gamma + 1);
    for k in 0..=gamma {
        // insert the cups after the first alpha - m strands of the source
        let mut x = vec![0.0; 1usize << total];
        for (src, &v) in bg.column(k).iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let left = src >> right_bits;
            let right = src & ((1usize << right_bits) - 1);
            for (mid, &o) in omega.iter().enumerate() {
                if o == 0.0 {
                    continue;
                }
                let idx = (((left << cup_bits) | mid) << right_bits) | right;
                x[idx] += v * o;
            }
        }
        let c = product_coords(pa, pb, &x);
        for (r, v) in c.into_iter().enumerate() {
            w[(r, k)] = v;
        }
    }
    let gram = w.transpose() * &w;
    let scale = gram.trace() / (gamma + 1) as f64;
    if !(scale > 0.0) {
        return Err(Error::InternalConsistency {
            context: format!("fusion isometry V^({alpha},{beta})_{gamma} vanishes"),
            residual: scale,
        });
    }
    let id = DMatrix::<f64>::identity(gamma + 1, gamma + 1);
    let scalar = (&gram / scale - &id).abs().max();
    if scalar > SCALAR_TOLERANCE {
        return Err(Error::InternalConsistency {
            context: format!("W^* W for V^({alpha},{beta})_{gamma} is not scalar"),
            residual: scalar,
        });
    }
    let coords = w / scale.sqrt();
    let isometry = (coords.transpose() * &coords - &id).abs().max();
    let qab: Vec<f64> = pa
        .q_diag()
        .iter()
        .flat_map(|x| pb.q_diag().iter().map(move |y| x * y))
        .collect();
    let lhs = DMatrix::from_fn(rows, gamma + 1, |r, c| coords[(r, c)] * pg.q_diag()[c]);
    let rhs = DMatrix::from_fn(rows, gamma + 1, |r, c| qab[r] * coords[(r, c)]);
    let q_intertwining = (lhs - rhs).abs().max();
    Ok(FusionIsometry {
        alpha,
        beta,
        gamma,
        coords,
        scale,
        residuals: IsometryResiduals {
            scalar,
            isometry,
            q_intertwining,
        },
    })
}
