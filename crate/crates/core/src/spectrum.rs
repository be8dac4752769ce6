//! Eigenvalues `Delta_alpha = U'_alpha(N_q) / U_alpha(N_q)` of the Haar-state
//! Dirichlet form, the associated heat semigroup and resolvent, and the
//! eigenvalue-growth amenability test.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::chebyshev;
use crate::error::{Error, Result};
use crate::fusion::classical_dims;
use crate::numeric::{neumaier_sum, Field, HpFloat, Precision};
use crate::param::QParameter;

/// `Delta_alpha` at high precision.
pub fn delta_hp(param: &QParameter, alpha: usize, prec: Precision) -> HpFloat {
    let nq = param.nq_hp(prec);
    let (u, du) = chebyshev::eval_pair(alpha, &nq);
    du / u
}

/// `Delta_0 ..= Delta_alpha_max` at high precision, one recurrence pass.
pub fn delta_table_hp(param: &QParameter, alpha_max: usize, prec: Precision) -> Vec<HpFloat> {
    let nq = param.nq_hp(prec);
    chebyshev::eval_table(alpha_max, &nq)
        .into_iter()
        .map(|(u, du)| du / u)
        .collect()
}

/// Exact `Delta_alpha` when `N_q` is rational.
pub fn delta_exact(param: &QParameter, alpha: usize) -> Option<BigRational> {
    let nq = param.nq_exact()?;
    let (u, du) = chebyshev::eval_pair(alpha, &nq);
    Some(du / u)
}

/// `Delta_alpha` as a double. At `q = 1` this is `alpha (alpha + 2) / 6`.
pub fn delta(param: &QParameter, alpha: usize) -> f64 {
    if param.is_degenerate() {
        let a = alpha as f64;
        return a * (a + 2.0) / 6.0;
    }
    delta_hp(param, alpha, param.precision()).to_f64()
}

/// Limiting gap `lim (Delta_alpha - Delta_{alpha-1}) = 1/sqrt(N_q^2 - 4)`.
pub fn delta_asymptote(param: &QParameter) -> Result<f64> {
    if param.is_degenerate() {
        return Err(Error::Degenerate(
            "at q = 1 the eigenvalue gap grows linearly; no finite asymptote".into(),
        ));
    }
    // N_q^2 - 4 = (1/q - q)^2
    let q = param.q_hp(param.precision());
    Ok((q.recip() - q).recip().to_f64())
}

/// `c_alpha(t) = (U_alpha(q^t + q^-t) / U_alpha(q + 1/q))^3`.
pub fn semigroup_coeff(param: &QParameter, alpha: usize, t: f64) -> Result<f64> {
    if !(t > -1.0 && t <= 1.0) {
        return Err(Error::Domain(format!("t must lie in (-1, 1], got {t}")));
    }
    Ok(semigroup_coeff_hp(param, alpha, t, param.precision()).to_f64())
}

pub fn semigroup_coeff_hp(param: &QParameter, alpha: usize, t: f64, prec: Precision) -> HpFloat {
    let q = param.q_hp(prec);
    let qt = (q.ln() * HpFloat::from_f64(t, prec)).exp();
    let x = &qt + &qt.recip();
    let num = chebyshev::eval(alpha, &x);
    let den = chebyshev::eval(alpha, &param.nq_hp(prec));
    let r = num / den;
    &(&r * &r) * &r
}

/// Heat-semigroup multiplier `exp(-t Delta_alpha)`.
pub fn multiplier(param: &QParameter, alpha: usize, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t must be nonnegative, got {t}")));
    }
    Ok((-t * delta(param, alpha)).exp())
}

/// `k (-P(0) + (1/k) sum_{l=k+1}^{2k} P(1/l))`, which tends to `log(2) P'(0)`.
pub fn cesaro_limit<P: Fn(f64) -> f64>(p: P, k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let p0 = p(0.0);
    Ok(neumaier_sum((k + 1..=2 * k).map(|l| p(1.0 / l as f64) - p0)))
}

/// Finitely supported vector in `L_2` written in the matrix-coefficient basis
/// `e^alpha_{i,j}`, `1 <= i, j <= n_alpha`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpectralVector {
    coeffs: BTreeMap<(usize, usize, usize), Complex64>,
}

impl SpectralVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, alpha: usize, i: usize, j: usize, c: Complex64) -> Self {
        self.insert(alpha, i, j, c);
        self
    }

    pub fn insert(&mut self, alpha: usize, i: usize, j: usize, c: Complex64) {
        self.coeffs.insert((alpha, i, j), c);
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        SpectralVector {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Complex64)> {
        self.coeffs.iter()
    }

    pub fn max_alpha(&self) -> Option<usize> {
        self.coeffs.keys().map(|k| k.0).max()
    }

    fn validate(&self, n_fund: u32) -> Result<()> {
        let Some(amax) = self.max_alpha() else {
            return Ok(());
        };
        let dims = classical_dims(n_fund, amax);
        for &(a, i, j) in self.coeffs.keys() {
            let n = &dims[a];
            if i == 0 || j == 0 || BigUint::from(i) > *n || BigUint::from(j) > *n {
                return Err(Error::InvalidVector(format!(
                    "index ({a}, {i}, {j}) outside 1..=n_{a} = {n}"
                )));
            }
        }
        Ok(())
    }
}

/// `Q_N(xi) = sum_alpha sum_{i,j} Delta_alpha |<e^alpha_{i,j}, xi>|^2`.
pub fn dirichlet_form(param: &QParameter, xi: &SpectralVector) -> Result<f64> {
    xi.validate(param.n())?;
    let deltas = delta_levels(param, xi.max_alpha().unwrap_or(0));
    Ok(neumaier_sum(
        xi.iter().map(|(&(a, _, _), c)| deltas[a] * c.norm_sqr()),
    ))
}

/// `||Delta^{1/2} xi||_2^2`, the squared norm of the derivation applied to `xi`.
pub fn gradient_norm(param: &QParameter, xi: &SpectralVector) -> Result<f64> {
    xi.validate(param.n())?;
    let deltas = delta_levels(param, xi.max_alpha().unwrap_or(0));
    Ok(neumaier_sum(xi.iter().map(|(&(a, _, _), c)| {
        let v = c * deltas[a].sqrt();
        v.norm_sqr()
    })))
}

fn delta_levels(param: &QParameter, alpha_max: usize) -> Vec<f64> {
    if param.is_degenerate() {
        return (0..=alpha_max).map(|a| delta(param, a)).collect();
    }
    delta_table_hp(param, alpha_max, param.precision())
        .iter()
        .map(|d| d.to_f64())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Resolvent {
    /// `1 / (1 + eps Delta_alpha)`.
    pub r: f64,
    /// `Delta_alpha / (1 + eps Delta_alpha)`.
    pub delta_eps: f64,
}

pub fn resolvent_coeff(param: &QParameter, alpha: usize, eps: f64) -> Result<Resolvent> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {eps}")));
    }
    let d = delta(param, alpha);
    let denom = 1.0 + eps * d;
    Ok(Resolvent {
        r: 1.0 / denom,
        delta_eps: d / denom,
    })
}

/// Eigenvalue `Delta_alpha` of the isotypical component `alpha`, of
/// multiplicity `n_alpha^2` in `L_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDatum {
    pub alpha: usize,
    pub delta: f64,
    pub n: BigUint,
    pub multiplicity: BigUint,
    pub qdim: f64,
}

/// Lazy stream of spectral data in increasing `alpha`.
pub struct SpectralLevels {
    param: QParameter,
    alpha: usize,
    nq: HpFloat,
    // (U_{a-1}, U'_{a-1}) and (U_a, U'_a), with U_{-1} = U'_{-1} = 0
    prev: (HpFloat, HpFloat),
    cur: (HpFloat, HpFloat),
    // n_{a-1}, n_a with n_{-1} = 0
    n_prev: BigUint,
    n_cur: BigUint,
}

pub fn spectral_levels(param: &QParameter) -> SpectralLevels {
    let nq = param.nq_hp(param.precision());
    let zero = nq.int_like(0);
    let one = nq.int_like(1);
    SpectralLevels {
        param: param.clone(),
        alpha: 0,
        prev: (zero.clone(), zero.clone()),
        cur: (one, zero),
        nq,
        n_prev: BigUint::ZERO,
        n_cur: BigUint::one(),
    }
}

impl Iterator for SpectralLevels {
    type Item = SpectralDatum;

    fn next(&mut self) -> Option<SpectralDatum> {
        let alpha = self.alpha;
        let (u, du) = self.cur.clone();
        let delta = if self.param.is_degenerate() {
            let a = alpha as f64;
            a * (a + 2.0) / 6.0
        } else {
            (du.clone() / u.clone()).to_f64()
        };
        let n = self.n_cur.clone();

        let x = &self.nq;
        let next = (
            &(x * &u) - &self.prev.0,
            &(&u + &(x * &du)) - &self.prev.1,
        );
        self.prev = std::mem::replace(&mut self.cur, next);
        let n_next = &self.n_cur * self.param.n() - &self.n_prev;
        self.n_prev = std::mem::replace(&mut self.n_cur, n_next);
        self.alpha += 1;

        Some(SpectralDatum {
            alpha,
            delta,
            multiplicity: &n * &n,
            n,
            qdim: u.to_f64(),
        })
    }
}

/// One eigenvalue level of a spectrum given with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLevel {
    pub value: f64,
    pub multiplicity: BigUint,
}

impl From<SpectralDatum> for SpectralLevel {
    fn from(d: SpectralDatum) -> Self {
        SpectralLevel {
            value: d.delta,
            multiplicity: d.multiplicity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmenabilityOptions {
    /// Checkpoints with index `n <= warmup` are reported but not judged.
    /// `None` selects `n_max / 10`.
    pub warmup: Option<u64>,
    /// `lambda_n / log n` must exceed this at every judged checkpoint.
    pub threshold: f64,
}

impl Default for AmenabilityOptions {
    fn default() -> Self {
        AmenabilityOptions {
            warmup: None,
            threshold: 50.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioSample {
    pub n: u64,
    pub lambda: f64,
    pub ratio: f64,
    /// `inf` of the ratio over this and all later checkpoints.
    pub envelope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmenabilityReport {
    pub n_max: u64,
    pub warmup: u64,
    pub threshold: f64,
    pub samples: Vec<RatioSample>,
    /// Envelope value at the first judged checkpoint.
    pub liminf_estimate: f64,
    /// Ratio at `n_max`.
    pub final_ratio: f64,
    pub satisfied: bool,
}

impl AmenabilityReport {
    pub fn verdict(&self) -> &'static str {
        if self.satisfied {
            "satisfied"
        } else {
            "not-satisfied"
        }
    }
}

/// Checkpoints `10, 20, 50, 100, 200, 500, ...` up to `n_max`, plus `n_max`.
pub fn checkpoints(n_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 1u64;
    'outer: loop {
        for m in [10u64, 20, 50] {
            let Some(c) = decade.checked_mul(m) else {
                break 'outer;
            };
            if c >= n_max {
                break 'outer;
            }
            out.push(c);
        }
        decade = match decade.checked_mul(10) {
            Some(d) => d,
            None => break,
        };
    }
    out.push(n_max);
    out
}

/// Samples `lambda_n / log n` where `lambda_1 <= lambda_2 <= ...` lists the
/// spectrum with multiplicity. Levels are consumed lazily until `n_max`
/// eigenvalues are covered.
pub fn amenability_criterion<I>(
    spectrum: I,
    n_max: u64,
    options: AmenabilityOptions,
) -> Result<AmenabilityReport>
where
    I: IntoIterator<Item = SpectralLevel>,
{
    if n_max < 10 {
        return Err(Error::Domain(format!("n_max must be at least 10, got {n_max}")));
    }
    let points = checkpoints(n_max);
    let mut lambdas = Vec::with_capacity(points.len());
    let mut covered: u64 = 0;
    let mut last: Option<f64> = None;
    let mut levels = spectrum.into_iter().enumerate();
    let mut level_value = f64::NAN;
    for &c in &points {
        while covered < c {
            let Some((idx, level)) = levels.next() else {
                return if covered == 0 {
                    Err(Error::EmptySpectrum)
                } else {
                    Err(Error::Domain(format!(
                        "spectrum exhausted after {covered} eigenvalues, fewer than n_max = {n_max}"
                    )))
                };
            };
            if let Some(prev) = last {
                if level.value < prev {
                    return Err(Error::UnsortedSpectrum(idx));
                }
            }
            last = Some(level.value);
            level_value = level.value;
            let m = level.multiplicity.to_u64().unwrap_or(u64::MAX);
            covered = covered.saturating_add(m);
        }
        lambdas.push(level_value);
    }
    let mut samples: Vec<RatioSample> = points
        .iter()
        .zip(&lambdas)
        .map(|(&n, &lambda)| RatioSample {
            n,
            lambda,
            ratio: lambda / (n as f64).ln(),
            envelope: f64::NAN,
        })
        .collect();
    let mut env = f64::INFINITY;
    for s in samples.iter_mut().rev() {
        env = env.min(s.ratio);
        s.envelope = env;
    }
    let warmup = options.warmup.unwrap_or(n_max / 10);
    let judged: Vec<&RatioSample> = samples.iter().filter(|s| s.n > warmup).collect();
    let liminf_estimate = judged.first().map(|s| s.envelope).unwrap_or(f64::NAN);
    let satisfied = !judged.is_empty() && judged.iter().all(|s| s.ratio > options.threshold);
    Ok(AmenabilityReport {
        n_max,
        warmup,
        threshold: options.threshold,
        final_ratio: samples.last().map(|s| s.ratio).unwrap_or(f64::NAN),
        samples,
        liminf_estimate,
        satisfied,
    })
}

/// The model spectrum of `O_N^+(F)` at `q`, as an amenability input.
pub fn amenability_for(
    param: &QParameter,
    n_max: u64,
    options: AmenabilityOptions,
) -> Result<AmenabilityReport> {
    amenability_criterion(spectral_levels(param).map(SpectralLevel::from), n_max, options)
}
