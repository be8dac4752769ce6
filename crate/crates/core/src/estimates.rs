//! Second-difference gap estimates on the eigenvalues, the coefficient
//! skeleton of the gradient-form maps, and Hilbert-Schmidt summability
//! certificates.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Field, HpFloat, Precision};
use crate::param::QParameter;
use crate::spectrum;

/// One evaluation of `|Delta_{a+g} - Delta_a - Delta_b + Delta_{b-g}|` against
/// its bound `|g| |q^{2a+2g} - q^{2b+2g}| + b |q^{2b} - q^{2b-2g}| + a |q^{2a} - q^{2a+2g}|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapEvaluation {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: i64,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`; `0` when both vanish, `+inf` when only `rhs` does.
    pub ratio: f64,
}

fn check_shift(alpha: usize, beta: usize, gamma: i64) -> Result<()> {
    let (a, b) = (alpha as i64, beta as i64);
    if a + gamma < 0 || b - gamma < 0 {
        return Err(Error::Domain(format!(
            "shifted labels alpha+gamma = {}, beta-gamma = {} must be nonnegative",
            a + gamma,
            b - gamma
        )));
    }
    if gamma.unsigned_abs() as usize > alpha.max(beta) {
        return Err(Error::Domain(format!(
            "|gamma| = {} exceeds max(alpha, beta) = {}",
            gamma.abs(),
            alpha.max(beta)
        )));
    }
    Ok(())
}

/// Working precision able to resolve differences of size `q^{2 m}` between
/// eigenvalues of size `m`.
pub fn gap_precision(param: &QParameter, max_label: usize) -> Precision {
    if param.is_degenerate() {
        return param.precision();
    }
    let lost = 2.0 * max_label as f64 * (1.0 / param.q()).log2();
    Precision(param.precision().bits().max(lost.ceil() as usize + 128))
}

/// Precomputed `Delta_j` and `q^j` tables shared by gap evaluations.
struct GapTables {
    deltas: Vec<HpFloat>,
    // q^j for j in -offset..=offset, stored at j + offset
    qpow: Vec<HpFloat>,
    offset: i64,
    degenerate: bool,
}

impl GapTables {
    fn new(param: &QParameter, max_label: usize) -> GapTables {
        let prec = gap_precision(param, max_label);
        let degenerate = param.is_degenerate();
        let deltas = if degenerate {
            (0..=max_label)
                .map(|a| {
                    let a = a as i64;
                    HpFloat::from_i64(a * (a + 2), prec) / HpFloat::from_i64(6, prec)
                })
                .collect()
        } else {
            spectrum::delta_table_hp(param, max_label, prec)
        };
        let q = param.q_hp(prec);
        let offset = 2 * max_label as i64;
        let mut cur = q.recip().powi(offset);
        let mut qpow = Vec::with_capacity(4 * max_label + 1);
        for _ in -offset..=offset {
            qpow.push(cur.clone());
            cur = &cur * &q;
        }
        GapTables {
            deltas,
            qpow,
            offset,
            degenerate,
        }
    }

    fn eval(&self, alpha: usize, beta: usize, gamma: i64) -> GapEvaluation {
        let (a, b) = (alpha as i64, beta as i64);
        let d = |j: i64| &self.deltas[j as usize];
        let p = |j: i64| &self.qpow[(j + self.offset) as usize];
        let lhs = (&(&(d(a + gamma) - d(a)) - d(b)) + d(b - gamma)).abs();
        let rhs = if self.degenerate {
            lhs.int_like(0)
        } else {
            let g = lhs.int_like(gamma.abs());
            let t1 = &g * &(p(2 * a + 2 * gamma) - p(2 * b + 2 * gamma)).abs();
            let t2 = &lhs.int_like(b) * &(p(2 * b) - p(2 * b - 2 * gamma)).abs();
            let t3 = &lhs.int_like(a) * &(p(2 * a) - p(2 * a + 2 * gamma)).abs();
            &(&t1 + &t2) + &t3
        };
        let ratio = if Field::is_zero(&rhs) {
            if Field::is_zero(&lhs) {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (&lhs / &rhs).to_f64()
        };
        GapEvaluation {
            alpha,
            beta,
            gamma,
            lhs: lhs.to_f64(),
            rhs: rhs.to_f64(),
            ratio,
        }
    }
}

pub fn gap(param: &QParameter, alpha: usize, beta: usize, gamma: i64) -> Result<GapEvaluation> {
    check_shift(alpha, beta, gamma)?;
    let max_label = (alpha as i64 + gamma.abs()).max(beta as i64 + gamma.abs()) as usize;
    Ok(GapTables::new(param, max_label).eval(alpha, beta, gamma))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapScan {
    pub alpha_max: usize,
    pub gamma_max: usize,
    pub cells: usize,
    pub sup_ratio: f64,
    pub argmax: Option<GapEvaluation>,
    /// Sup over `alpha` in `[alpha_max/4, alpha_max/2]`.
    pub inner_sup: f64,
    /// Sup over `alpha` in `[alpha_max/2, alpha_max]`.
    pub outer_sup: f64,
    /// `|outer - inner| <= 0.1 inner`.
    pub stable: bool,
}

/// Sup of the gap ratio over `alpha, beta <= alpha_max`, `|gamma| <= gamma_max`,
/// `|beta - alpha| <= 2 gamma_max`, with a two-window stability report.
pub fn gap_constant_scan(param: &QParameter, alpha_max: usize, gamma_max: usize) -> Result<GapScan> {
    if alpha_max < 10 {
        return Err(Error::Domain(format!("alpha_max must be at least 10, got {alpha_max}")));
    }
    let tables = GapTables::new(param, alpha_max + gamma_max);
    let g = gamma_max as i64;
    let rows: Vec<Vec<GapEvaluation>> = (0..=alpha_max)
        .into_par_iter()
        .map(|alpha| {
            let mut row = Vec::new();
            let lo = alpha.saturating_sub(2 * gamma_max);
            let hi = (alpha + 2 * gamma_max).min(alpha_max);
            for beta in lo..=hi {
                for gamma in -g..=g {
                    if check_shift(alpha, beta, gamma).is_ok() {
                        row.push(tables.eval(alpha, beta, gamma));
                    }
                }
            }
            row
        })
        .collect();
    // fixed index order keeps the reduction reproducible
    let mut sup = 0.0f64;
    let mut argmax = None;
    let mut inner = 0.0f64;
    let mut outer = 0.0f64;
    let mut cells = 0;
    for cell in rows.iter().flatten() {
        cells += 1;
        if cell.ratio > sup {
            sup = cell.ratio;
            argmax = Some(*cell);
        }
        if 4 * cell.alpha >= alpha_max && 2 * cell.alpha <= alpha_max {
            inner = inner.max(cell.ratio);
        }
        if 2 * cell.alpha >= alpha_max {
            outer = outer.max(cell.ratio);
        }
    }
    let stable = sup.is_finite() && (outer - inner).abs() <= 0.1 * inner;
    Ok(GapScan {
        alpha_max,
        gamma_max,
        cells,
        sup_ratio: sup,
        argmax,
        inner_sup: inner,
        outer_sup: outer,
        stable,
    })
}

/// Scalar factors of one summand of the gradient-form coefficient expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HsCoefficient {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: i64,
    /// `|Delta_{a+g} - Delta_a - Delta_b + Delta_{b-g}|`.
    pub gap: f64,
    /// `|Delta_b - Delta_{b-g}|`.
    pub step: f64,
    /// `exp(-t Delta_b)`.
    pub damping: f64,
}

pub fn hs_coefficient(
    param: &QParameter,
    alpha: usize,
    beta: usize,
    gamma: i64,
    t: f64,
) -> Result<HsCoefficient> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t must be nonnegative, got {t}")));
    }
    let g = gap(param, alpha, beta, gamma)?;
    let step = (spectrum::delta(param, beta) - spectrum::delta(param, (beta as i64 - gamma) as usize)).abs();
    Ok(HsCoefficient {
        alpha,
        beta,
        gamma,
        gap: g.lhs,
        step,
        damping: (-t * spectrum::delta(param, beta)).exp(),
    })
}

/// All summands for `x` supported at `alpha` and `a`, `b` supported at `r`,
/// `s`: `alpha-r-s <= beta <= alpha+r+s`, `|gamma| <= max(r, s)`, dropping
/// cells whose shifted labels leave the admissible range.
pub fn hs_coefficient_skeleton(
    param: &QParameter,
    alpha: usize,
    r: usize,
    s: usize,
    t: f64,
) -> Result<Vec<HsCoefficient>> {
    let g = r.max(s) as i64;
    let lo = alpha.saturating_sub(r + s);
    let mut out = Vec::new();
    for beta in lo..=alpha + r + s {
        for gamma in -g..=g {
            if check_shift(alpha, beta, gamma).is_ok() {
                out.push(hs_coefficient(param, alpha, beta, gamma, t)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Finite,
    Divergent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Finite => "finite",
            Verdict::Divergent => "divergent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Thresholds turning a finite probe of the series into a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateOptions {
    /// Finite if `ratio_value <= 1 - margin`, divergent if `>= 1 + margin`.
    pub ratio_margin: f64,
    /// Divergent if the last term exceeds this fraction of the early scale.
    pub late_term_floor: f64,
    /// Early scale is the largest term with `alpha <= early_window`.
    pub early_window: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            ratio_margin: 0.01,
            late_term_floor: 1e-3,
            early_window: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HsCertificate {
    pub n: u32,
    pub q: f64,
    pub t: f64,
    pub alpha_max: usize,
    /// `n_a^2 (q^{2a} + q^a)^2 exp(-2 t a)`.
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// `n_a^2 q^{2a} exp(-2 t a)`.
    pub compressed_terms: Vec<f64>,
    pub compressed_partial_sums: Vec<f64>,
    /// `n_a^{2/a} q^2 exp(-2 t)` at `a = alpha_max`.
    pub ratio_value: f64,
    pub early_scale: f64,
    pub options: CertificateOptions,
    pub verdict: Verdict,
}

pub fn hs_certificate(param: &QParameter, t: f64, alpha_max: usize) -> Result<HsCertificate> {
    hs_certificate_with(param, t, alpha_max, CertificateOptions::default())
}

pub fn hs_certificate_with(
    param: &QParameter,
    t: f64,
    alpha_max: usize,
    options: CertificateOptions,
) -> Result<HsCertificate> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t must be nonnegative, got {t}")));
    }
    if alpha_max < 20 {
        return Err(Error::Domain(format!("alpha_max must be at least 20, got {alpha_max}")));
    }
    let q = param.q();
    let n = param.n() as f64;
    // m_a = n_a q^a obeys m_{a+1} = N q m_a - q^2 m_{a-1}; it stays bounded
    let mut m = Vec::with_capacity(alpha_max + 1);
    m.push(1.0f64);
    m.push(n * q);
    for a in 1..alpha_max {
        m.push(n * q * m[a] - q * q * m[a - 1]);
    }
    let mut terms = Vec::with_capacity(alpha_max + 1);
    let mut compressed = Vec::with_capacity(alpha_max + 1);
    for (a, &ma) in m.iter().enumerate() {
        let damp = (-2.0 * t * a as f64).exp();
        let qa = q.powi(a as i32);
        terms.push(ma * ma * (1.0 + qa) * (1.0 + qa) * damp);
        compressed.push(ma * ma * damp);
    }
    let prefix = |v: &[f64]| {
        let mut acc = 0.0;
        let mut comp = 0.0;
        v.iter()
            .map(|&x| {
                let y = x - comp;
                let s = acc + y;
                comp = (s - acc) - y;
                acc = s;
                acc
            })
            .collect::<Vec<f64>>()
    };
    let partial_sums = prefix(&terms);
    let compressed_partial_sums = prefix(&compressed);
    let ratio_value = m[alpha_max].powf(2.0 / alpha_max as f64) * (-2.0 * t).exp();
    let early_scale = terms[..=options.early_window.min(alpha_max)]
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    let last = terms[alpha_max];
    let verdict = if ratio_value <= 1.0 - options.ratio_margin {
        Verdict::Finite
    } else if last > options.late_term_floor * early_scale
        || ratio_value >= 1.0 + options.ratio_margin
    {
        Verdict::Divergent
    } else {
        Verdict::Inconclusive
    };
    Ok(HsCertificate {
        n: param.n(),
        q,
        t,
        alpha_max,
        terms,
        partial_sums,
        compressed_terms: compressed,
        compressed_partial_sums,
        ratio_value,
        early_scale,
        options,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub kac: bool,
    pub ighs: bool,
    pub ghs: bool,
}

/// The heat semigroup is IGHS for every admissible `q`, and GHS exactly off
/// the Kac point.
pub fn regime_classify(param: &QParameter) -> Regime {
    let margin = crate::param::KAC_TOLERANCE;
    Regime {
        kac: (param.q() - param.q0()).abs() <= margin,
        ighs: true,
        ghs: param.q() < param.q0() - margin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> QParameter {
        QParameter::parse(2, "0.5").unwrap()
    }

    #[test]
    fn gap_examples() {
        let p = half();
        let z = gap(&p, 7, 4, 0).unwrap();
        assert_eq!((z.lhs, z.rhs, z.ratio), (0.0, 0.0, 0.0));
        let g = gap(&p, 5, 5, 1).unwrap();
        assert!((g.lhs - 0.003180).abs() < 1e-6);
        assert!((g.rhs - 0.018311).abs() < 5e-7);
        assert!((g.ratio - 0.174).abs() < 5e-4);
        let d = |a| spectrum::delta(&p, a);
        let sym = gap(&p, 6, 6, 2).unwrap();
        assert!((sym.lhs - (d(8) + d(4) - 2.0 * d(6)).abs()).abs() < 1e-13);
    }

    #[test]
    fn gap_rejects_bad_shifts() {
        let p = half();
        assert!(matches!(gap(&p, 1, 4, -2), Err(Error::Domain(_))));
        assert!(matches!(gap(&p, 4, 1, 2), Err(Error::Domain(_))));
        assert!(matches!(gap(&p, 2, 2, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn degenerate_gap_has_infinite_ratio() {
        let p = QParameter::kac(2).unwrap();
        let g = gap(&p, 5, 3, 1).unwrap();
        // 2 g (a - b + g) / 6 at q = 1
        assert!((g.lhs - 1.0).abs() < 1e-15);
        assert_eq!(g.ratio, f64::INFINITY);
    }

    #[test]
    fn scan_with_only_gamma_zero() {
        let s = gap_constant_scan(&half(), 12, 0).unwrap();
        assert_eq!(s.sup_ratio, 0.0);
        assert!(s.cells > 0);
        assert!(gap_constant_scan(&half(), 5, 1).is_err());
    }

    #[test]
    fn hs_coefficient_examples() {
        let p = half();
        let z = hs_coefficient(&p, 4, 4, 0, 0.3).unwrap();
        assert_eq!((z.gap, z.step), (0.0, 0.0));
        let c = hs_coefficient(&p, 5, 5, 1, 0.0).unwrap();
        assert!((c.gap - 0.003180).abs() < 1e-6);
        assert!((c.step - 0.662103).abs() < 5e-7);
        assert_eq!(c.damping, 1.0);
        let far = hs_coefficient(&p, 5, 5, 1, 1e6).unwrap();
        assert_eq!(far.damping, 0.0);
    }

    #[test]
    fn skeleton_respects_ranges() {
        let p = half();
        let cells = hs_coefficient_skeleton(&p, 1, 1, 2, 0.5).unwrap();
        for c in &cells {
            assert!(c.beta <= 4);
            assert!(c.gamma.abs() <= 2);
            assert!(c.alpha as i64 + c.gamma >= 0 && c.beta as i64 - c.gamma >= 0);
        }
        assert!(cells.iter().any(|c| c.beta == 0));
    }

    #[test]
    fn certificate_verdicts() {
        let kac = QParameter::kac(3).unwrap();
        assert_eq!(hs_certificate(&kac, 0.1, 200).unwrap().verdict, Verdict::Finite);
        assert_eq!(hs_certificate(&kac, 0.0, 200).unwrap().verdict, Verdict::Divergent);
        let p = QParameter::parse(3, "0.25").unwrap();
        assert_eq!(hs_certificate(&p, 0.0, 200).unwrap().verdict, Verdict::Finite);
        assert!(hs_certificate(&p, 0.0, 10).is_err());
        assert!(hs_certificate(&p, -1.0, 50).is_err());
    }

    #[test]
    fn certificate_terms_match_dimensions() {
        let p = QParameter::parse(3, "0.25").unwrap();
        let c = hs_certificate(&p, 0.2, 30).unwrap();
        let dims = crate::fusion::classical_dims(3, 30);
        for a in [0usize, 1, 5, 17, 30] {
            let n = num_traits::ToPrimitive::to_f64(&dims[a]).unwrap();
            let qa = 0.25f64.powi(a as i32);
            let expected = n * n * (qa * qa + qa).powi(2) * (-0.4 * a as f64).exp();
            assert!((c.terms[a] - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn regime_examples() {
        let kac = regime_classify(&QParameter::kac(3).unwrap());
        assert_eq!(kac, Regime { kac: true, ighs: true, ghs: false });
        let p = regime_classify(&QParameter::parse(3, "0.25").unwrap());
        assert_eq!(p, Regime { kac: false, ighs: true, ghs: true });
        let two = regime_classify(&QParameter::kac(2).unwrap());
        assert_eq!(two, Regime { kac: true, ighs: true, ghs: false });
    }
}
