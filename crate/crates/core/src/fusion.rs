//! Fusion rules, classical and quantum dimensions of `O_N^+(F)`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::chebyshev;
use crate::numeric::HpFloat;
use crate::param::QParameter;

/// Irreducible representation label; `0` is the trivial representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IrrLabel(pub usize);

impl IrrLabel {
    pub fn alpha(self) -> usize {
        self.0
    }
}

/// `alpha (x) beta = |alpha-beta| + |alpha-beta|+2 + ... + alpha+beta`.
pub fn fuse(alpha: IrrLabel, beta: IrrLabel) -> Vec<IrrLabel> {
    let (a, b) = (alpha.0, beta.0);
    let lo = a.abs_diff(b);
    (lo..=a + b).step_by(2).map(IrrLabel).collect()
}

pub fn fusion_contains(alpha: usize, beta: usize, gamma: usize) -> bool {
    gamma >= alpha.abs_diff(beta) && gamma <= alpha + beta && (alpha + beta + gamma).is_multiple_of(2)
}

/// Classical dimensions `n_alpha` and quantum dimensions `[alpha+1]_q`.
#[derive(Debug, Clone)]
pub struct DimensionTable {
    param: QParameter,
    n: Vec<BigUint>,
    qdim: Vec<HpFloat>,
}

/// `n_0 = 1`, `n_1 = N`, `N n_a = n_{a+1} + n_{a-1}`.
pub fn classical_dims(n_fund: u32, alpha_max: usize) -> Vec<BigUint> {
    let mut n = Vec::with_capacity(alpha_max + 1);
    n.push(BigUint::one());
    if alpha_max >= 1 {
        n.push(BigUint::from(n_fund));
    }
    for a in 1..alpha_max {
        let next = &n[a] * n_fund - &n[a - 1];
        n.push(next);
    }
    n
}

pub fn dims(param: &QParameter, alpha_max: usize) -> DimensionTable {
    let n = classical_dims(param.n(), alpha_max);
    let nq = param.nq_hp(param.precision());
    let qdim = chebyshev::eval_table(alpha_max, &nq)
        .into_iter()
        .map(|(u, _)| u)
        .collect();
    DimensionTable {
        param: param.clone(),
        n,
        qdim,
    }
}

impl DimensionTable {
    pub fn param(&self) -> &QParameter {
        &self.param
    }

    pub fn alpha_max(&self) -> usize {
        self.n.len() - 1
    }

    pub fn n(&self, alpha: usize) -> &BigUint {
        &self.n[alpha]
    }

    pub fn n_values(&self) -> &[BigUint] {
        &self.n
    }

    /// `[alpha+1]_q` at the parameter's working precision.
    pub fn qdim_hp(&self, alpha: usize) -> &HpFloat {
        &self.qdim[alpha]
    }

    pub fn qdim(&self, alpha: usize) -> f64 {
        self.qdim[alpha].to_f64()
    }

    /// Exact `[alpha+1]_q` when `N_q` is rational.
    pub fn qdim_exact(&self, alpha: usize) -> Option<BigRational> {
        chebyshev::q_number_exact(alpha + 1, &self.param)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthRate {
    pub q0: f64,
    pub alpha: usize,
    /// `n_alpha^(1/alpha)`.
    pub root: f64,
    /// `n_alpha^(1/alpha) * q`.
    pub limsup_product: f64,
}

/// Finite-`alpha` probe of `limsup n_alpha^(1/alpha) q <= 1`.
pub fn growth_rate(param: &QParameter, alpha_probe: usize) -> crate::error::Result<GrowthRate> {
    if alpha_probe == 0 {
        return Err(crate::error::Error::Domain("growth probe needs alpha >= 1".into()));
    }
    let n = classical_dims(param.n(), alpha_probe);
    let root = (ln_biguint(&n[alpha_probe]) / alpha_probe as f64).exp();
    Ok(GrowthRate {
        q0: param.q0(),
        alpha: alpha_probe,
        root,
        limsup_product: root * param.q(),
    })
}

/// Natural log of a big unsigned integer, valid far beyond the `f64` range.
pub fn ln_biguint(v: &BigUint) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `n_alpha q0^alpha` in floating point, used to probe its convergence.
pub fn normalized_dim(n_fund: u32, alpha: usize) -> f64 {
    let n = classical_dims(n_fund, alpha);
    let q0 = crate::param::q0(n_fund);
    (ln_biguint(&n[alpha]) + alpha as f64 * q0.ln()).exp()
}

/// Sum rules `n_a n_b = sum n_g` and `[a+1][b+1] = sum [g+1]`, exactly.
/// Returns the first `(alpha, beta)` violating either rule.
pub fn check_sum_rules(param: &QParameter, max: usize) -> Option<(usize, usize)> {
    let n = classical_dims(param.n(), 2 * max);
    let qd: Option<Vec<BigRational>> = param.nq_exact().map(|nq| {
        chebyshev::eval_table(2 * max, &nq)
            .into_iter()
            .map(|(u, _)| u)
            .collect()
    });
    for a in 0..=max {
        for b in 0..=max {
            let fused = fuse(IrrLabel(a), IrrLabel(b));
            let classical: BigUint = fused.iter().map(|g| &n[g.0]).sum();
            if classical != &n[a] * &n[b] {
                return Some((a, b));
            }
            if let Some(qd) = &qd {
                let mut s = BigRational::zero();
                for g in &fused {
                    s += &qd[g.0];
                }
                if s != &qd[a] * &qd[b] {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fusion_examples() {
        let labels = |v: &[usize]| v.iter().map(|&a| IrrLabel(a)).collect::<Vec<_>>();
        assert_eq!(fuse(IrrLabel(2), IrrLabel(3)), labels(&[1, 3, 5]));
        assert_eq!(fuse(IrrLabel(0), IrrLabel(7)), labels(&[7]));
        assert_eq!(fuse(IrrLabel(3), IrrLabel(3)), labels(&[0, 2, 4, 6]));
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(fuse(IrrLabel(a), IrrLabel(b)), fuse(IrrLabel(b), IrrLabel(a)));
                for g in 0..20 {
                    assert_eq!(
                        fusion_contains(a, b, g),
                        fuse(IrrLabel(a), IrrLabel(b)).contains(&IrrLabel(g))
                    );
                }
            }
        }
    }

    #[test]
    fn dimension_examples() {
        let p3 = QParameter::kac(3).unwrap();
        let t = dims(&p3, 5);
        let n: Vec<u64> = t.n_values().iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(n, vec![1, 3, 8, 21, 55, 144]);
        let p2 = QParameter::kac(2).unwrap();
        let t2 = dims(&p2, 10);
        for a in 0..=10 {
            assert_eq!(t2.n(a).to_usize().unwrap(), a + 1);
            assert_eq!(t2.qdim(a), (a + 1) as f64);
        }
        let half = QParameter::parse(2, "0.5").unwrap();
        let th = dims(&half, 5);
        let expected = [1.0, 2.5, 5.25, 10.625, 21.3125, 42.65625];
        for (a, e) in expected.iter().enumerate() {
            assert_eq!(th.qdim(a), *e);
        }
    }

    #[test]
    fn qdim_dominates_classical_dim() {
        let p = QParameter::parse(3, "0.25").unwrap();
        let t = dims(&p, 30);
        for a in 0..=30 {
            assert!(t.qdim(a) >= t.n(a).to_f64().unwrap());
        }
        let k = dims(&QParameter::kac(3).unwrap(), 30);
        for a in 0..=30 {
            let rel = (k.qdim(a) - k.n(a).to_f64().unwrap()).abs() / k.qdim(a);
            assert!(rel < 1e-14);
        }
    }

    #[test]
    fn growth_probes() {
        let kac = growth_rate(&QParameter::kac(3).unwrap(), 60).unwrap();
        assert!((kac.limsup_product - 1.0).abs() < 0.05);
        let p = QParameter::parse(3, "0.25").unwrap();
        let g = growth_rate(&p, 60).unwrap();
        assert!((g.limsup_product - 0.25 / g.q0).abs() < 0.05);
        let two = growth_rate(&QParameter::kac(2).unwrap(), 60).unwrap();
        assert!((two.root - 61f64.powf(1.0 / 60.0)).abs() < 1e-12);
        assert!(growth_rate(&p, 0).is_err());
    }

    #[test]
    fn normalized_dimension_converges() {
        for a in [200, 250, 300] {
            assert!((normalized_dim(3, a + 1) - normalized_dim(3, a)).abs() <= 1e-6);
        }
    }

    #[test]
    fn sum_rules_small() {
        let p = QParameter::parse(2, "0.5").unwrap();
        assert_eq!(check_sum_rules(&p, 12), None);
        let t = dims(&p, 5);
        assert_eq!(t.qdim(2) * t.qdim(3), 55.78125);
        assert_eq!(t.qdim(1) + t.qdim(3) + t.qdim(5), 55.78125);
    }
}
