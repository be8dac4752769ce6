//! Temperley-Lieb intertwiner calculus on qubit chains: generators,
//! Jones-Wenzl projections, fusion isometries, `Q`-matrices, and the
//! recoupling defects between iterated fusions.
//!
//! Projections and isometries are memoized per parameter. Builders may race
//! on a key; construction is deterministic, so whichever value is published
//! last is identical to the others.

mod chain;
mod isometry;
mod jw;
pub mod linalg;
mod pentagon;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;

pub use chain::{cup_vector, row_sum_norm, TLRep, TlResiduals, MAX_DENSE_STRANDS};
pub use isometry::{nested_cups, FusionIsometry, IsometryResiduals, SCALAR_TOLERANCE};
pub use jw::{JWProjection, JwResiduals, JW_MIN_GAP, JW_TOLERANCE};
pub use pentagon::{log_slope, CommutatorEstimate, PentagonDefect};

use crate::error::{Error, Result};
use crate::fusion::fusion_contains;
use crate::param::QParameter;

/// Default bound on chain length (`2^14` amplitudes per vector).
pub const DEFAULT_MAX_STRANDS: usize = 14;

/// Chain model at a fixed `q` with memoized projections and isometries.
pub struct TlModel {
    param: QParameter,
    max_strands: usize,
    projections: Mutex<Vec<Arc<JWProjection>>>,
    isometries: Mutex<HashMap<(usize, usize, usize), Arc<FusionIsometry>>>,
}

impl TlModel {
    pub fn new(param: &QParameter) -> TlModel {
        TlModel {
            param: param.clone(),
            max_strands: DEFAULT_MAX_STRANDS,
            projections: Mutex::new(vec![Arc::new(jw::trivial_projection())]),
            isometries: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_max_strands(mut self, max: usize) -> TlModel {
        self.max_strands = max;
        self
    }

    pub fn param(&self) -> &QParameter {
        &self.param
    }

    pub fn max_strands(&self) -> usize {
        self.max_strands
    }

    fn check_strands(&self, n: usize) -> Result<()> {
        if n > self.max_strands {
            return Err(Error::Resource(format!(
                "{n} strands exceed the configured maximum of {}",
                self.max_strands
            )));
        }
        Ok(())
    }

    pub fn tl_rep(&self, n: usize) -> Result<TLRep> {
        if n == 0 {
            return Err(Error::Domain("a chain needs at least one strand".into()));
        }
        self.check_strands(n)?;
        Ok(TLRep::build(&self.param, n))
    }

    /// `p_n`; `n = 0` gives the trivial projection on `C`.
    pub fn jones_wenzl(&self, n: usize) -> Result<Arc<JWProjection>> {
        self.check_strands(n)?;
        let mut have = {
            let cache = self.projections.lock().expect("projection cache poisoned");
            if let Some(p) = cache.get(n) {
                return Ok(p.clone());
            }
            cache.last().expect("p_0 always present").clone()
        };
        while have.strands() < n {
            let next = Arc::new(jw::build_next(&self.param, &have)?);
            let mut cache = self.projections.lock().expect("projection cache poisoned");
            if cache.len() == next.strands() {
                cache.push(next.clone());
            }
            have = cache[next.strands()].clone();
        }
        Ok(have)
    }

    /// `Q_alpha`: compression of `diag(1/q, q)^{(x) alpha}` to the image of `p_alpha`.
    pub fn q_matrix(&self, alpha: usize) -> Result<DMatrix<f64>> {
        let p = self.jones_wenzl(alpha)?;
        let b = p.basis();
        let charge = linalg::charge_diagonal(alpha);
        let q = self.param.q();
        let db = DMatrix::from_fn(b.nrows(), b.ncols(), |r, c| q.powf(-charge[r]) * b[(r, c)]);
        Ok(b.transpose() * db)
    }

    pub fn fusion_isometry(&self, alpha: usize, beta: usize, gamma: usize) -> Result<Arc<FusionIsometry>> {
        if !fusion_contains(alpha, beta, gamma) {
            return Err(Error::Domain(format!(
                "{gamma} does not occur in {alpha} (x) {beta}"
            )));
        }
        self.check_strands(alpha + beta)?;
        let key = (alpha, beta, gamma);
        if let Some(v) = self.isometries.lock().expect("isometry cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let pa = self.jones_wenzl(alpha)?;
        let pb = self.jones_wenzl(beta)?;
        let pg = self.jones_wenzl(gamma)?;
        let v = Arc::new(isometry::build(self.param.q(), &pa, &pb, &pg)?);
        self.isometries
            .lock()
            .expect("isometry cache poisoned")
            .insert(key, v.clone());
        Ok(v)
    }

    /// `V` on the chain of `alpha + beta` strands.
    pub fn fusion_isometry_chain(&self, alpha: usize, beta: usize, gamma: usize) -> Result<DMatrix<f64>> {
        let v = self.fusion_isometry(alpha, beta, gamma)?;
        Ok(v.chain_matrix(&*self.jones_wenzl(alpha)?, &*self.jones_wenzl(beta)?))
    }

    /// `|| sum_g V_g V_g^* - p_a (x) p_b ||` on the chain of `a + b` strands.
    pub fn resolution_residual(&self, alpha: usize, beta: usize) -> Result<f64> {
        let pa = self.jones_wenzl(alpha)?;
        let pb = self.jones_wenzl(beta)?;
        let bab = pa.basis().kronecker(pb.basis());
        let mut sum = DMatrix::<f64>::zeros(bab.nrows(), bab.nrows());
        for g in crate::fusion::fuse(crate::fusion::IrrLabel(alpha), crate::fusion::IrrLabel(beta)) {
            let v = self.fusion_isometry_chain(alpha, beta, g.0)?;
            sum += &v * v.transpose();
        }
        let target = &bab * bab.transpose();
        Ok(row_sum_norm(&(sum - target)))
    }

    pub fn pentagon_defect(
        &self,
        alpha: usize,
        r: usize,
        s: usize,
        k: i64,
        l: i64,
        align_phase: bool,
    ) -> Result<PentagonDefect> {
        pentagon::pentagon(self, alpha, r, s, k, l, align_phase)
    }

    pub fn commutator_estimate(
        &self,
        alpha: usize,
        r: usize,
        s: usize,
        k: i64,
        l: i64,
    ) -> Result<CommutatorEstimate> {
        if r != 1 || s != 1 {
            return Err(Error::Domain(format!(
                "commutator estimate is defined for r = s = 1, got r = {r}, s = {s}"
            )));
        }
        pentagon::commutator(self, alpha, k, l)
    }
}

fn shared_model(param: &QParameter) -> Arc<TlModel> {
    static MODELS: OnceLock<Mutex<HashMap<u64, Arc<TlModel>>>> = OnceLock::new();
    let models = MODELS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = models.lock().expect("model registry poisoned");
    guard
        .entry(param.q().to_bits())
        .or_insert_with(|| Arc::new(TlModel::new(param)))
        .clone()
}

pub fn tl_rep(param: &QParameter, n: usize) -> Result<TLRep> {
    shared_model(param).tl_rep(n)
}

pub fn jones_wenzl(param: &QParameter, n: usize) -> Result<Arc<JWProjection>> {
    shared_model(param).jones_wenzl(n)
}

pub fn q_matrix(param: &QParameter, alpha: usize) -> Result<DMatrix<f64>> {
    shared_model(param).q_matrix(alpha)
}

pub fn fusion_isometry(param: &QParameter, alpha: usize, beta: usize, gamma: usize) -> Result<Arc<FusionIsometry>> {
    shared_model(param).fusion_isometry(alpha, beta, gamma)
}

pub fn pentagon_defect(
    param: &QParameter,
    alpha: usize,
    r: usize,
    s: usize,
    k: i64,
    l: i64,
    align_phase: bool,
) -> Result<PentagonDefect> {
    shared_model(param).pentagon_defect(alpha, r, s, k, l, align_phase)
}

pub fn commutator_estimate(
    param: &QParameter,
    alpha: usize,
    r: usize,
    s: usize,
    k: i64,
    l: i64,
) -> Result<CommutatorEstimate> {
    shared_model(param).commutator_estimate(alpha, r, s, k, l)
}

pub fn resolution_residual(param: &QParameter, alpha: usize, beta: usize) -> Result<f64> {
    shared_model(param).resolution_residual(alpha, beta)
}
