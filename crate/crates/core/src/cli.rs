//! Batch command-line front end. Every subcommand maps onto one library
//! operation and produces a [`ReportRecord`].

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::estimates;
use crate::freewords::{self, PatternLimits, SweepOptions, TypePattern};
use crate::numeric::Precision;
use crate::param::QParameter;
use crate::report::{num, Cell, ReportRecord, Table};
use crate::{fusion, spectrum, templieb};

/// Exit status of a run whose verdicts all pass.
pub const EXIT_PASS: u8 = 0;
/// At least one verdict failed.
pub const EXIT_FAIL: u8 = 1;
/// Invalid parameters.
pub const EXIT_USAGE: u8 = 2;
/// A configured size limit would be exceeded.
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "qgs", version, about = "Spectral and intertwiner checks for free orthogonal quantum groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Working precision of the high-precision routes; overrides QGS_PRECISION_BITS.
    #[arg(long, global = true)]
    pub precision_bits: Option<usize>,
    /// Add wall time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Fail unless the reported verdict equals this value.
    #[arg(long, global = true)]
    pub expect: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct ParamArgs {
    /// Size of the fundamental representation.
    #[arg(long = "N", default_value_t = 2)]
    pub n: u32,
    /// Deformation parameter: a decimal, a fraction `p/r`, or `q0` for the Kac point.
    #[arg(long, default_value = "q0")]
    pub q: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues, dimensions and quantum dimensions per irreducible.
    Spectrum {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 100)]
        alpha_max: usize,
    },
    /// Dimension tables, exact sum rules and the growth probe.
    Fusion {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 40)]
        alpha_max: usize,
    },
    /// Hilbert-Schmidt summability certificate for the gradient coefficients.
    HsCert {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, default_value_t = 200)]
        alpha_max: usize,
    },
    /// Supremum of the eigenvalue-gap ratio over a label grid.
    GapScan {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 200)]
        alpha_max: usize,
        #[arg(long, default_value_t = 5)]
        gamma_max: usize,
    },
    /// Temperley-Lieb relations, Jones-Wenzl projections and fusion resolutions.
    JwVerify {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Largest `alpha + beta` in the resolution-of-identity check.
        #[arg(long, default_value_t = 8)]
        fusion_max: usize,
    },
    /// Recoupling defect between the two fusions of `s (x) alpha (x) r`.
    Pentagon {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long)]
        alpha: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        /// Scan `alpha..=alpha_to` and fit the decay rate.
        #[arg(long)]
        alpha_to: Option<usize>,
        /// Skip the phase alignment.
        #[arg(long)]
        no_align: bool,
        /// Allowed `defect / bound`.
        #[arg(long, default_value_t = 2.0)]
        constant: f64,
    },
    /// Commutator estimates of the cut-down multiplication maps for `r = s = 1`.
    Lemma65 {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 8)]
        alpha_max: usize,
    },
    /// Exact check of the free-product expansion of `Psi`.
    FreeprodVerify {
        /// One pattern `B/X/A` of algebra digits; sweeps all patterns when absent.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_km: usize,
        #[arg(long, default_value_t = 3)]
        algebras: u8,
    },
    /// Growth test `liminf lambda_n / log n` on the Dirichlet spectrum.
    Amenability {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 1_000_000)]
        n_max: u64,
        #[arg(long)]
        warmup: Option<u64>,
        #[arg(long, default_value_t = 50.0)]
        threshold: f64,
    },
    /// Cesaro-type limit `sum_{l=k+1}^{2k} (P(1/l) - P(0))`.
    Cesaro {
        #[arg(long, value_enum, default_value = "x")]
        function: TestFunction,
        #[arg(long, default_value_t = 100_000)]
        k: u64,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestFunction {
    /// `P(x) = x`
    X,
    /// `P(x) = x^2`
    X2,
    /// `P(x) = exp(2x)`
    Exp2x,
}

impl TestFunction {
    fn eval(self, x: f64) -> f64 {
        match self {
            TestFunction::X => x,
            TestFunction::X2 => x * x,
            TestFunction::Exp2x => (2.0 * x).exp(),
        }
    }

    fn derivative_at_zero(self) -> f64 {
        match self {
            TestFunction::X => 1.0,
            TestFunction::X2 => 0.0,
            TestFunction::Exp2x => 2.0,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TestFunction::X => "x",
            TestFunction::X2 => "x^2",
            TestFunction::Exp2x => "exp(2x)",
        }
    }
}

/// Precision from the flag, else the environment, else the default.
pub fn resolve_precision(flag: Option<usize>) -> Precision {
    match flag {
        Some(bits) => Precision(bits.max(16)),
        None => Precision::from_env(),
    }
}

fn param(args: &ParamArgs, prec: Precision) -> Result<QParameter> {
    Ok(QParameter::parse(args.n, &args.q)?.with_precision(prec))
}

fn echo_param(r: &mut ReportRecord, p: &QParameter) {
    r.input("N", p.n()).input("q", num(p.q())).input("q0", num(p.q0()));
}

/// Runs one subcommand. Errors are library errors; verdicts live in the record.
pub fn execute(cli: &Cli) -> Result<ReportRecord> {
    let prec = resolve_precision(cli.global.precision_bits);
    let start = Instant::now();
    let mut r = match &cli.command {
        Command::Spectrum { param: pa, alpha_max } => run_spectrum(&param(pa, prec)?, *alpha_max)?,
        Command::Fusion { param: pa, alpha_max } => run_fusion(&param(pa, prec)?, *alpha_max)?,
        Command::HsCert { param: pa, t, alpha_max } => run_hs_cert(&param(pa, prec)?, *t, *alpha_max)?,
        Command::GapScan {
            param: pa,
            alpha_max,
            gamma_max,
        } => run_gap_scan(&param(pa, prec)?, *alpha_max, *gamma_max)?,
        Command::JwVerify {
            param: pa,
            n_max,
            fusion_max,
        } => run_jw_verify(&param(pa, prec)?, *n_max, *fusion_max)?,
        Command::Pentagon {
            param: pa,
            alpha,
            r,
            s,
            k,
            l,
            alpha_to,
            no_align,
            constant,
        } => run_pentagon(
            &param(pa, prec)?,
            PentagonArgs {
                alpha: *alpha,
                alpha_to: alpha_to.unwrap_or(*alpha),
                r: *r,
                s: *s,
                k: *k,
                l: *l,
                align: !no_align,
                constant: *constant,
            },
        )?,
        Command::Lemma65 { param: pa, alpha_max } => run_commutators(&param(pa, prec)?, *alpha_max)?,
        Command::FreeprodVerify {
            pattern,
            max_n,
            max_km,
            algebras,
        } => match pattern {
            Some(p) => run_pattern(&TypePattern::parse(p)?, *max_n, *max_km)?,
            None => run_sweep(SweepOptions {
                max_n: *max_n,
                max_km: *max_km,
                algebras: *algebras,
            })?,
        },
        Command::Amenability {
            param: pa,
            n_max,
            warmup,
            threshold,
        } => run_amenability(&param(pa, prec)?, *n_max, *warmup, *threshold)?,
        Command::Cesaro { function, k, tolerance } => run_cesaro(*function, *k, *tolerance)?,
    };
    r.input("precision_bits", prec.bits());
    if let Some(expected) = &cli.global.expect {
        let got = r.verdict.clone().unwrap_or_default();
        r.pass = r.pass && &got == expected;
        r.input("expect", expected.clone());
    }
    if cli.global.timing {
        r.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(r)
}

fn pass_fail(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.into()
}

fn run_spectrum(p: &QParameter, alpha_max: usize) -> Result<ReportRecord> {
    let mut r = ReportRecord::new("spectrum");
    echo_param(&mut r, p);
    r.input("alpha_max", alpha_max);
    r.table = Table::new(&["alpha", "n", "qdim", "delta", "gap"]);
    let mut prev = 0.0;
    for d in spectrum::spectral_levels(p).take(alpha_max + 1) {
        let gap = if d.alpha == 0 { 0.0 } else { d.delta - prev };
        prev = d.delta;
        r.table.push(vec![
            Cell::int(d.alpha),
            Cell::int(&d.n),
            d.qdim.into(),
            d.delta.into(),
            gap.into(),
        ]);
    }
    match spectrum::delta_asymptote(p) {
        Ok(a) => r.result("gap_asymptote", num(a)),
        Err(_) => r.result("gap_asymptote", Value::Null),
    };
    Ok(r)
}

fn run_fusion(p: &QParameter, alpha_max: usize) -> Result<ReportRecord> {
    let mut r = ReportRecord::new("fusion");
    echo_param(&mut r, p);
    r.input("alpha_max", alpha_max);
    let table = fusion::dims(p, alpha_max);
    r.table = Table::new(&["alpha", "n", "qdim"]);
    for a in 0..=alpha_max {
        r.table.push(vec![Cell::int(a), Cell::int(table.n(a)), table.qdim(a).into()]);
    }
    let violation = fusion::check_sum_rules(p, alpha_max);
    r.result(
        "sum_rule_violation",
        violation.map(|(a, b)| json!([a, b])).unwrap_or(Value::Null),
    );
    r.result("sum_rules_exact", p.nq_exact().is_some());
    if alpha_max >= 1 {
        let g = fusion::growth_rate(p, alpha_max)?;
        r.result("growth_root", num(g.root));
        r.result("growth_limsup_product", num(g.limsup_product));
    }
    r.pass = violation.is_none();
    r.verdict = Some(pass_fail(r.pass));
    Ok(r)
}

fn run_hs_cert(p: &QParameter, t: f64, alpha_max: usize) -> Result<ReportRecord> {
    let c = estimates::hs_certificate(p, t, alpha_max)?;
    let reg = estimates::regime_classify(p);
    let mut r = ReportRecord::new("hs-cert");
    echo_param(&mut r, p);
    r.input("t", num(t)).input("alpha_max", alpha_max);
    r.table = Table::new(&[
        "alpha",
        "term",
        "partial_sum",
        "compressed_term",
        "compressed_partial_sum",
    ]);
    for a in 0..c.terms.len() {
        r.table.push(vec![
            Cell::int(a),
            c.terms[a].into(),
            c.partial_sums[a].into(),
            c.compressed_terms[a].into(),
            c.compressed_partial_sums[a].into(),
        ]);
    }
    r.result("ratio_value", num(c.ratio_value))
        .result("early_scale", num(c.early_scale))
        .result("kac", reg.kac)
        .result("ighs", reg.ighs)
        .result("ghs", reg.ghs);
    r.tolerance("ratio_margin", c.options.ratio_margin)
        .tolerance("late_term_floor", c.options.late_term_floor);
    // informational unless --expect is given
    r.verdict = Some(c.verdict.as_str().into());
    Ok(r)
}

fn run_gap_scan(p: &QParameter, alpha_max: usize, gamma_max: usize) -> Result<ReportRecord> {
    let s = estimates::gap_constant_scan(p, alpha_max, gamma_max)?;
    let mut r = ReportRecord::new("gap-scan");
    echo_param(&mut r, p);
    r.input("alpha_max", alpha_max).input("gamma_max", gamma_max);
    r.table = Table::new(&[
        "cells",
        "sup_ratio",
        "argmax_alpha",
        "argmax_beta",
        "argmax_gamma",
        "inner_sup",
        "outer_sup",
        "stable",
    ]);
    let (aa, ab, ag) = s
        .argmax
        .map(|g| (Cell::int(g.alpha), Cell::int(g.beta), Cell::int(g.gamma)))
        .unwrap_or((Cell::text(""), Cell::text(""), Cell::text("")));
    r.table.push(vec![
        Cell::int(s.cells),
        s.sup_ratio.into(),
        aa,
        ab,
        ag,
        s.inner_sup.into(),
        s.outer_sup.into(),
        s.stable.into(),
    ]);
    r.result("sup_ratio", num(s.sup_ratio))
        .result("inner_sup", num(s.inner_sup))
        .result("outer_sup", num(s.outer_sup))
        .result("stable", s.stable);
    r.tolerance("window_relative", 0.1);
    r.pass = s.sup_ratio.is_finite() && s.stable;
    r.verdict = Some(pass_fail(r.pass));
    Ok(r)
}

const TL_TOLERANCE: f64 = 1e-12;
const QTRACE_TOLERANCE: f64 = 1e-8;
const RESOLUTION_TOLERANCE: f64 = 1e-8;

fn run_jw_verify(p: &QParameter, n_max: usize, fusion_max: usize) -> Result<ReportRecord> {
    // fail before doing the feasible prefix of the work
    if n_max > templieb::MAX_DENSE_STRANDS {
        return Err(Error::Resource(format!(
            "relation check limited to {} strands, requested {n_max}",
            templieb::MAX_DENSE_STRANDS
        )));
    }
    if fusion_max > templieb::DEFAULT_MAX_STRANDS {
        return Err(Error::Resource(format!(
            "fusion resolution limited to alpha + beta <= {}, requested {fusion_max}",
            templieb::DEFAULT_MAX_STRANDS
        )));
    }
    let mut r = ReportRecord::new("jw-verify");
    echo_param(&mut r, p);
    r.input("n_max", n_max).input("fusion_max", fusion_max);
    r.table = Table::new(&[
        "n",
        "tl_relations",
        "idempotency",
        "annihilation",
        "eigen_gap",
        "qtrace",
        "qtrace_expected",
        "qtrace_error",
    ]);
    let mut ok = true;
    for n in 1..=n_max {
        let tl = templieb::tl_rep(p, n)?.relation_residuals()?;
        let tl_worst = tl.idempotent.max(tl.adjacent).max(tl.commuting);
        let jw = templieb::jones_wenzl(p, n)?;
        let res = jw.residuals();
        ok &= tl_worst <= TL_TOLERANCE
            && res.idempotency <= templieb::JW_TOLERANCE
            && res.annihilation <= templieb::JW_TOLERANCE
            && res.qtrace_error() <= QTRACE_TOLERANCE;
        r.table.push(vec![
            Cell::int(n),
            tl_worst.into(),
            res.idempotency.into(),
            res.annihilation.into(),
            res.eigen_gap.into(),
            res.qtrace.into(),
            res.qtrace_expected.into(),
            res.qtrace_error().into(),
        ]);
    }
    let mut worst_resolution: f64 = 0.0;
    for a in 0..=fusion_max {
        for b in 0..=fusion_max - a {
            worst_resolution = worst_resolution.max(templieb::resolution_residual(p, a, b)?);
        }
    }
    ok &= worst_resolution <= RESOLUTION_TOLERANCE;
    r.result("resolution_residual", num(worst_resolution));
    r.tolerance("tl_relations", TL_TOLERANCE)
        .tolerance("jw_residual", templieb::JW_TOLERANCE)
        .tolerance("qtrace", QTRACE_TOLERANCE)
        .tolerance("resolution", RESOLUTION_TOLERANCE);
    r.pass = ok;
    r.verdict = Some(pass_fail(ok));
    Ok(r)
}

struct PentagonArgs {
    alpha: usize,
    alpha_to: usize,
    r: usize,
    s: usize,
    k: i64,
    l: i64,
    align: bool,
    constant: f64,
}

fn run_pentagon(p: &QParameter, a: PentagonArgs) -> Result<ReportRecord> {
    if a.alpha_to < a.alpha {
        return Err(Error::Domain(format!(
            "alpha_to = {} is below alpha = {}",
            a.alpha_to, a.alpha
        )));
    }
    let mut r = ReportRecord::new("pentagon");
    echo_param(&mut r, p);
    r.input("alpha", a.alpha)
        .input("alpha_to", a.alpha_to)
        .input("r", a.r)
        .input("s", a.s)
        .input("k", a.k)
        .input("l", a.l)
        .input("align_phase", a.align);
    r.table = Table::new(&["alpha", "defect", "raw_defect", "theta", "bound", "constant"]);
    let mut ok = true;
    let mut points = Vec::new();
    let mut worst: f64 = 0.0;
    for alpha in a.alpha..=a.alpha_to {
        let d = templieb::pentagon_defect(p, alpha, a.r, a.s, a.k, a.l, a.align)?;
        ok &= d.defect <= a.constant * d.bound;
        worst = worst.max(d.constant());
        points.push((alpha as f64, d.defect));
        r.table.push(vec![
            Cell::int(alpha),
            d.defect.into(),
            d.raw_defect.into(),
            d.theta.into(),
            d.bound.into(),
            d.constant().into(),
        ]);
        if a.alpha == a.alpha_to {
            r.result("defect", num(d.defect)).result("bound", num(d.bound));
        }
    }
    r.result("max_constant", num(worst));
    if points.len() >= 2 {
        r.result("fitted_slope", num(templieb::log_slope(&points)))
            .result("log_q", num(p.q().ln()));
    }
    r.tolerance("constant", a.constant);
    r.pass = ok;
    r.verdict = Some(pass_fail(ok));
    Ok(r)
}

fn run_commutators(p: &QParameter, alpha_max: usize) -> Result<ReportRecord> {
    let mut r = ReportRecord::new("lemma65");
    echo_param(&mut r, p);
    r.input("alpha_max", alpha_max);
    r.table = Table::new(&[
        "alpha",
        "k",
        "l",
        "weighted_defect",
        "estimate",
        "q_alpha",
        "ratio",
        "constant",
    ]);
    let mut ok = true;
    for alpha in 0..=alpha_max {
        for (k, l) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let c = match templieb::commutator_estimate(p, alpha, 1, 1, k, l) {
                Ok(c) => c,
                // labels below zero are not admissible at small alpha
                Err(Error::Domain(_)) => continue,
                Err(e) => return Err(e),
            };
            ok &= c.ratio <= c.constant;
            r.table.push(vec![
                Cell::int(alpha),
                Cell::int(k),
                Cell::int(l),
                c.weighted_defect.into(),
                c.estimate.into(),
                c.q_alpha.into(),
                c.ratio.into(),
                c.constant.into(),
            ]);
        }
    }
    r.pass = ok;
    r.verdict = Some(pass_fail(ok));
    Ok(r)
}

fn run_pattern(p: &TypePattern, max_n: usize, max_km: usize) -> Result<ReportRecord> {
    let rep = freewords::verify_expansion_identity_with(p, PatternLimits { max_n, max_km })?;
    let mut r = ReportRecord::new("freeprod-verify");
    r.input("pattern", p.to_string());
    r.table = Table::new(&["part", "word", "coefficient"]);
    for (w, c) in rep.residual.terms() {
        r.table.push(vec![Cell::text("residual"), Cell::text(w.to_string()), Cell::text(c.to_string())]);
    }
    for (group, e) in &rep.ledger.groups {
        for (w, c) in e.terms() {
            r.table.push(vec![Cell::text(group.clone()), Cell::text(w.to_string()), Cell::text(c.to_string())]);
        }
    }
    r.result("lhs_terms", rep.lhs_terms)
        .result("main_positions", json!(rep.main_positions))
        .result("residual_terms", rep.residual.len())
        .result("ledger_terms", rep.ledger.total.len())
        .result("max_ledger_len", rep.ledger.max_word_len())
        .result("length_bound", rep.length_bound)
        .result(
            "long_word_vanishes",
            rep.long_word_vanishes.map(Value::Bool).unwrap_or(Value::Null),
        );
    r.pass = rep.pass && rep.long_word_vanishes != Some(false);
    r.verdict = Some(pass_fail(r.pass));
    Ok(r)
}

fn run_sweep(opts: SweepOptions) -> Result<ReportRecord> {
    if opts.algebras == 0 || opts.algebras > 10 {
        return Err(Error::Domain(format!("algebras must lie in 1..=10, got {}", opts.algebras)));
    }
    let s = freewords::sweep_patterns(opts)?;
    let mut r = ReportRecord::new("freeprod-verify");
    r.input("max_n", opts.max_n)
        .input("max_km", opts.max_km)
        .input("algebras", opts.algebras);
    r.table = Table::new(&["pattern", "kind"]);
    for p in &s.failures {
        r.table.push(vec![Cell::text(p.to_string()), Cell::text("residual-or-length")]);
    }
    for p in &s.long_nonvanishing {
        r.table.push(vec![Cell::text(p.to_string()), Cell::text("long-word-nonzero")]);
    }
    r.result("patterns", s.patterns)
        .result("passed", s.passed)
        .result("long_patterns", s.long_patterns)
        .result("max_ledger_len", s.max_ledger_len)
        .result("ledger_terms", s.ledger_terms);
    r.pass = s.pass;
    r.verdict = Some(pass_fail(s.pass));
    Ok(r)
}

fn run_amenability(p: &QParameter, n_max: u64, warmup: Option<u64>, threshold: f64) -> Result<ReportRecord> {
    let rep = spectrum::amenability_for(p, n_max, spectrum::AmenabilityOptions { warmup, threshold })?;
    let mut r = ReportRecord::new("amenability");
    echo_param(&mut r, p);
    r.input("n_max", n_max).input("threshold", num(threshold));
    r.table = Table::new(&["n", "lambda", "ratio", "envelope"]);
    for s in &rep.samples {
        r.table
            .push(vec![Cell::int(s.n), s.lambda.into(), s.ratio.into(), s.envelope.into()]);
    }
    r.result("warmup", rep.warmup)
        .result("liminf_estimate", num(rep.liminf_estimate))
        .result("final_ratio", num(rep.final_ratio));
    r.verdict = Some(rep.verdict().into());
    Ok(r)
}

fn run_cesaro(f: TestFunction, k: u64, tolerance: f64) -> Result<ReportRecord> {
    let value = spectrum::cesaro_limit(|x| f.eval(x), k)?;
    let expected = std::f64::consts::LN_2 * f.derivative_at_zero();
    let err = (value - expected).abs();
    let mut r = ReportRecord::new("cesaro");
    r.input("function", f.name()).input("k", k);
    r.table = Table::new(&["k", "value", "expected", "error"]);
    r.table
        .push(vec![Cell::int(k), value.into(), expected.into(), err.into()]);
    r.result("value", num(value))
        .result("expected", num(expected))
        .result("error", num(err));
    r.tolerance("absolute", tolerance);
    r.pass = err <= tolerance;
    r.verdict = Some(pass_fail(r.pass));
    Ok(r)
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::NumericalDegradation { .. } | Error::InternalConsistency { .. } => EXIT_FAIL,
        Error::Domain(_)
        | Error::Degenerate(_)
        | Error::InvalidVector(_)
        | Error::NotReduced(_)
        | Error::EmptySpectrum
        | Error::UnsortedSpectrum(_) => EXIT_USAGE,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Domain(_) => "domain",
        Error::Degenerate(_) => "degenerate",
        Error::InvalidVector(_) => "invalid-vector",
        Error::Resource(_) => "resource",
        Error::NumericalDegradation { .. } => "numerical-degradation",
        Error::InternalConsistency { .. } => "internal-consistency",
        Error::NotReduced(_) => "not-reduced",
        Error::EmptySpectrum => "empty-spectrum",
        Error::UnsortedSpectrum(_) => "unsorted-spectrum",
    }
}

/// Structured error record written to standard error.
pub fn error_record(kind: &str, message: &str, code: u8) -> String {
    let v = json!({ "error": { "kind": kind, "message": message, "exit_code": code } });
    format!("{v}\n")
}

pub fn library_error_record(err: &Error) -> String {
    error_record(error_kind(err), &err.to_string(), exit_code(err))
}

/// Rendered report in the requested format.
pub fn render(r: &ReportRecord, format: Format) -> std::result::Result<String, csv::Error> {
    match format {
        Format::Json => Ok(r.render_json()),
        Format::Csv => r.render_csv(),
    }
}
