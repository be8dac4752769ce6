//! Temperley-Lieb generators on the qubit chain `(C^2)^{(x) n}`.
//!
//! Qubit 0 is the most significant bit of a basis index. The generator `e_i`
//! (`1 <= i < n`) acts on qubits `i-1, i` as the rank-one matrix `|w><w|`
//! with `w = q^{1/2}|01> - q^{-1/2}|10>`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::param::QParameter;

/// Largest chain for which dense `2^n x 2^n` generator matrices are built.
pub const MAX_DENSE_STRANDS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct TLRep {
    n: usize,
    delta: f64,
    /// Components of `w` on `|00>, |01>, |10>, |11>`.
    w: [f64; 4],
}

/// Cup vector `w` of the chain model.
pub fn cup_vector(q: f64) -> [f64; 4] {
    [0.0, q.sqrt(), -1.0 / q.sqrt(), 0.0]
}

impl TLRep {
    pub(crate) fn build(param: &QParameter, n: usize) -> TLRep {
        let q = param.q();
        TLRep {
            n,
            delta: q + 1.0 / q,
            w: cup_vector(q),
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// Loop value `<w|w> = q + 1/q`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn cup(&self) -> [f64; 4] {
        self.w
    }

    pub fn dim(&self) -> usize {
        1usize << self.n
    }

    /// `e_i X` for a `2^n x c` block of column vectors.
    pub fn apply(&self, i: usize, x: &DMatrix<f64>) -> DMatrix<f64> {
        assert!(i >= 1 && i < self.n, "generator index {i} out of range for {} strands", self.n);
        assert_eq!(x.nrows(), self.dim());
        apply_cup_projector(self.n, i - 1, &self.w, x)
    }

    /// Dense matrix of `e_i`.
    pub fn generator(&self, i: usize) -> Result<DMatrix<f64>> {
        if self.n > MAX_DENSE_STRANDS {
            return Err(Error::Resource(format!(
                "dense generators limited to {MAX_DENSE_STRANDS} strands, requested {}",
                self.n
            )));
        }
        Ok(self.apply(i, &DMatrix::identity(self.dim(), self.dim())))
    }

    /// Residuals of `e_i^2 = delta e_i`, `e_i e_{i+-1} e_i = e_i` and
    /// `e_i e_j = e_j e_i` (`|i-j| >= 2`) on the full chain, measured in the
    /// maximum row-sum norm, which bounds the operator norm of these
    /// symmetric or antisymmetric residuals.
    pub fn relation_residuals(&self) -> Result<TlResiduals> {
        if self.n > MAX_DENSE_STRANDS {
            return Err(Error::Resource(format!(
                "relation check limited to {MAX_DENSE_STRANDS} strands, requested {}",
                self.n
            )));
        }
        let id = DMatrix::identity(self.dim(), self.dim());
        let gens: Vec<DMatrix<f64>> = (1..self.n).map(|i| self.apply(i, &id)).collect();
        let mut out = TlResiduals::default();
        for i in 1..self.n {
            let e = &gens[i - 1];
            let sq = self.apply(i, e) - e * self.delta;
            out.idempotent = out.idempotent.max(row_sum_norm(&sq));
            for j in 1..self.n {
                if j == i {
                    continue;
                }
                if j.abs_diff(i) == 1 {
                    let eje = self.apply(i, &self.apply(j, e));
                    out.adjacent = out.adjacent.max(row_sum_norm(&(eje - e)));
                } else if j > i {
                    let ej = &gens[j - 1];
                    let c = self.apply(i, ej) - self.apply(j, e);
                    out.commuting = out.commuting.max(row_sum_norm(&c));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, serde::Serialize)]
pub struct TlResiduals {
    pub idempotent: f64,
    pub adjacent: f64,
    pub commuting: f64,
}

impl TlResiduals {
    pub fn max(&self) -> f64 {
        self.idempotent.max(self.adjacent).max(self.commuting)
    }
}

pub fn row_sum_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Applies `|w><w|` on qubits `(p, p+1)` of an `n`-qubit chain to every column.
pub(crate) fn apply_cup_projector(n: usize, p: usize, w: &[f64; 4], x: &DMatrix<f64>) -> DMatrix<f64> {
    let hi = 1usize << (n - 1 - p);
    let lo = 1usize << (n - 2 - p);
    let mut out = DMatrix::zeros(x.nrows(), x.ncols());
    for c in 0..x.ncols() {
        let col = x.column(c);
        for base in 0..x.nrows() {
            if base & (hi | lo) != 0 {
                continue;
            }
            let i01 = base | lo;
            let i10 = base | hi;
            let inner = w[1] * col[i01] + w[2] * col[i10];
            if inner != 0.0 {
                out[(i01, c)] = w[1] * inner;
                out[(i10, c)] = w[2] * inner;
            }
        }
    }
    out
}
