//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use qgs::estimates::{self, Verdict};
use qgs::freewords::{self, SweepOptions};
use qgs::numeric::HpFloat;
use qgs::spectrum::{self, AmenabilityOptions};
use qgs::{fusion, templieb, Error, Precision, QParameter};

type Outcome = Result<(bool, String), Error>;

fn q(n: u32, s: &str) -> QParameter {
    QParameter::parse(n, s).expect("admissible parameter")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn over_time(start: Instant, limit: Duration) -> Option<String> {
    let t = start.elapsed();
    (t >= limit).then(|| format!("runtime {:.2}s exceeds {:.0}s", t.as_secs_f64(), limit.as_secs_f64()))
}

/// `((a+1) coth((a+1)s) - coth s) / (2 sinh s)`, `s = ln(1/q)`.
fn hyperbolic_delta(alpha: usize, q: f64) -> f64 {
    let s = (1.0 / q).ln();
    let a1 = (alpha + 1) as f64;
    let coth = |x: f64| 1.0 / x.tanh();
    (a1 * coth(a1 * s) - coth(s)) / (2.0 * s.sinh())
}

fn eigenvalue_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for qs in ["0.2", "0.5", "0.8"] {
        let p = q(2, qs);
        for alpha in 1..=500 {
            worst = worst.max(rel(spectrum::delta(&p, alpha), hyperbolic_delta(alpha, p.q())));
        }
    }
    let half = q(2, "0.5");
    let spot = (spectrum::delta(&half, 1) - 0.4).abs().max((spectrum::delta(&half, 2) - 20.0 / 21.0).abs());
    let mut ok = worst <= 1e-10 && spot <= 1e-15;
    let mut msg = format!("max rel err {worst:.2e} (tol 1e-10), spot err {spot:.1e}");
    if let Some(t) = over_time(start, Duration::from_secs(5)) {
        ok = false;
        msg = format!("{msg}; {t}");
    }
    Ok((ok, msg))
}

fn linear_growth() -> Outcome {
    let p = q(2, "0.5");
    let prec = Precision(256);
    let d = spectrum::delta_hp(&p, 1000, prec) - spectrum::delta_hp(&p, 999, prec);
    let nq = p.nq();
    let target = 1.0 / (nq * nq - 4.0).sqrt();
    let err = (d.to_f64() - target).abs();
    Ok((err <= 1e-8, format!("|gap - 1/sqrt(Nq^2-4)| = {err:.2e} at alpha=1000 (tol 1e-8)")))
}

fn semigroup_generator() -> Outcome {
    let prec = Precision(192);
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for qs in ["0.3", "0.5"] {
        let p = q(2, qs);
        let qf = p.q();
        for alpha in 1..=50 {
            let up = spectrum::semigroup_coeff_hp(&p, alpha, 1.0 + h, prec);
            let down = spectrum::semigroup_coeff_hp(&p, alpha, 1.0 - h, prec);
            let fd = ((up - down) / HpFloat::from_f64(2.0 * h, prec)).to_f64();
            let expected = 3.0 * (qf - 1.0 / qf) * qf.ln() * spectrum::delta(&p, alpha);
            worst = worst.max(rel(fd, expected));
        }
    }
    Ok((worst <= 1e-6, format!("max rel err {worst:.2e} over alpha<=50 (tol 1e-6)")))
}

fn cesaro() -> Outcome {
    let ln2 = std::f64::consts::LN_2;
    let cases: [(&str, fn(f64) -> f64, f64); 3] = [
        ("x", |x| x, 1.0),
        ("x^2", |x| x * x, 0.0),
        ("exp(2x)", |x| (2.0 * x).exp(), 2.0),
    ];
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (name, f, dp0) in cases {
        let err = (spectrum::cesaro_limit(f, 100_000)? - ln2 * dp0).abs();
        worst = worst.max(err);
        parts.push(format!("{name}: {err:.1e}"));
    }
    Ok((worst <= 1e-3, format!("{} (tol 1e-3)", parts.join(", "))))
}

fn gap_boundedness() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for qs in ["0.3", "0.5", "0.7"] {
        let s = estimates::gap_constant_scan(&q(2, qs), 200, 5)?;
        ok &= s.sup_ratio.is_finite() && s.stable;
        parts.push(format!(
            "q={qs}: sup {:.4} inner {:.4} outer {:.4} stable={}",
            s.sup_ratio, s.inner_sup, s.outer_sup, s.stable
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn regime_classification() -> Outcome {
    let start = Instant::now();
    let kac = QParameter::kac(3)?;
    let quarter = q(3, "0.25");
    let cases = [
        (&kac, 0.1, Verdict::Finite),
        (&kac, 0.0, Verdict::Divergent),
        (&quarter, 0.0, Verdict::Finite),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, t, want) in cases {
        let c = estimates::hs_certificate(p, t, 200)?;
        ok &= c.verdict == want;
        parts.push(format!("q={:.6} t={t}: {}", p.q(), c.verdict.as_str()));
        // the GHS regime is exactly where the t = 0 series converges
        let r = estimates::regime_classify(p);
        if t == 0.0 {
            ok &= r.ghs == (c.verdict == Verdict::Finite) && r.ghs == (p.q() < p.q0());
        }
    }
    if let Some(t) = over_time(start, Duration::from_secs(10)) {
        ok = false;
        parts.push(t);
    }
    Ok((ok, parts.join("; ")))
}

fn temperley_lieb() -> Outcome {
    let mut tl: f64 = 0.0;
    let mut jw: f64 = 0.0;
    let mut qtr: f64 = 0.0;
    let mut res: f64 = 0.0;
    for qs in ["0.3", "0.5"] {
        let p = q(2, qs);
        for n in 1..=10 {
            tl = tl.max(templieb::tl_rep(&p, n)?.relation_residuals()?.max());
            let r = *templieb::jones_wenzl(&p, n)?.residuals();
            jw = jw.max(r.idempotency).max(r.annihilation);
            qtr = qtr.max(r.qtrace_error());
        }
        for a in 0..=8 {
            for b in 0..=8 - a {
                res = res.max(templieb::resolution_residual(&p, a, b)?);
            }
        }
    }
    let ok = tl <= 1e-12 && jw <= 1e-9 && qtr <= 1e-8 && res <= 1e-8;
    Ok((
        ok,
        format!("TL {tl:.1e} (1e-12), JW {jw:.1e} (1e-9), q-trace {qtr:.1e} (1e-8), resolution {res:.1e} (1e-8)"),
    ))
}

/// Defects below this are roundoff: the composed isometries coincide.
const VANISHING_DEFECT: f64 = 1e-12;

fn intertwiner_estimate() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    let mut worst_constant: f64 = 0.0;
    for qs in ["0.3", "0.5"] {
        let p = q(2, qs);
        let log_q = p.q().ln();
        for k in [-1i64, 1] {
            let mut points = Vec::new();
            let mut max_defect: f64 = 0.0;
            for alpha in 2..=8 {
                let d = templieb::pentagon_defect(&p, alpha, 1, 1, k, 1, true)?;
                ok &= d.constant() <= 2.0;
                worst_constant = worst_constant.max(d.constant());
                max_defect = max_defect.max(d.defect);
                points.push((alpha as f64, d.defect));
            }
            if max_defect <= VANISHING_DEFECT {
                parts.push(format!("q={qs} k={k:+}: defect vanishes (max {max_defect:.1e})"));
            } else {
                let slope = templieb::log_slope(&points);
                let dev = (slope - log_q).abs() / log_q.abs();
                ok &= dev <= 0.05;
                parts.push(format!("q={qs} k={k:+}: slope {slope:.4} vs log q {log_q:.4} ({:.2}%)", 100.0 * dev));
            }
        }
        for alpha in 0..=8 {
            for (k, l) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                match templieb::commutator_estimate(&p, alpha, 1, 1, k, l) {
                    Ok(c) => ok &= c.ratio <= c.constant,
                    Err(Error::Domain(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    parts.push(format!("max constant {worst_constant:.4} (<= 2); commutator constants 2/6 respected={ok}"));
    if let Some(t) = over_time(start, Duration::from_secs(60)) {
        ok = false;
        parts.push(t);
    }
    Ok((ok, parts.join("; ")))
}

fn fusion_exactness() -> Outcome {
    let half = q(2, "0.5");
    let three = q(3, "0.25");
    let violation = fusion::check_sum_rules(&half, 40).or(fusion::check_sum_rules(&three, 40));
    let table = fusion::dims(&half, 6);
    let qd = |a: usize| table.qdim_exact(a).expect("rational q");
    let spot = qd(2) * qd(3) == BigRational::new(5578125.into(), 100000.into()) && qd(2) * qd(3) == qd(1) + qd(3) + qd(5);
    let n2 = fusion::classical_dims(2, 40).iter().enumerate().all(|(a, n)| *n == BigUint::from(a + 1));
    let ok = violation.is_none() && spot && n2;
    Ok((ok, format!("first violation {violation:?}, [3][4] = 55.78125 = [2]+[4]+[6]: {spot}")))
}

fn expansion_identity() -> Outcome {
    let start = Instant::now();
    let s = freewords::sweep_patterns(SweepOptions { max_n: 4, max_km: 3, algebras: 3 })?;
    let mut ok = s.pass && s.failures.is_empty() && s.long_nonvanishing.is_empty();
    let mut msg = format!(
        "{}/{} patterns, {} long patterns all vanish={}, max ledger length {}",
        s.passed,
        s.patterns,
        s.long_patterns,
        s.long_nonvanishing.is_empty(),
        s.max_ledger_len
    );
    if let Some(t) = over_time(start, Duration::from_secs(120)) {
        ok = false;
        msg = format!("{msg}; {t}");
    }
    Ok((ok, msg))
}

fn amenability() -> Outcome {
    let n_max = 1_000_000;
    let two = QParameter::kac(2)?;
    let model_ok = (0..=50usize).all(|a| spectrum::delta(&two, a) == (a * (a + 2)) as f64 / 6.0);
    let r2 = spectrum::amenability_for(&two, n_max, AmenabilityOptions::default())?;
    let three = QParameter::kac(3)?;
    let r3 = spectrum::amenability_for(&three, n_max, AmenabilityOptions::default())?;
    let target = 1.0 / (2.0 * (1.0 / three.q0()).ln() * 5f64.sqrt());
    let dev = rel(r3.final_ratio, target);
    let ok = model_ok && r2.satisfied && !r3.satisfied && dev <= 0.1;
    Ok((
        ok,
        format!(
            "N=2: {}; N=3: {} with ratio {:.4} vs {target:.4} ({:.1}%)",
            r2.verdict(),
            r3.verdict(),
            r3.final_ratio,
            100.0 * dev
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("eigenvalue oracle agreement", eigenvalue_oracle),
        ("linear eigenvalue growth", linear_growth),
        ("semigroup generator", semigroup_generator),
        ("cesaro limit", cesaro),
        ("gap boundedness", gap_boundedness),
        ("regime classification", regime_classification),
        ("temperley-lieb suite", temperley_lieb),
        ("intertwiner estimate", intertwiner_estimate),
        ("fusion exactness", fusion_exactness),
        ("free-product expansion identity", expansion_identity),
        ("amenability criterion", amenability),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {name}: {detail} [{:.2}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
