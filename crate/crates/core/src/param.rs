//! Deformation data `(q, N)` fixing an `O_N^+(F)` model.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, HpFloat, Precision};

#[derive(Clone, Debug, PartialEq)]
enum QKind {
    /// q known exactly as a rational number.
    Exact(BigRational),
    /// q equals the Kac value q0 of N (irrational for N >= 3).
    Kac,
    /// q given as a binary double.
    Float,
}

/// `q`, `N`, `N_q = q + 1/q` and the Kac value `q0` (smallest positive root of
/// `x^2 - N x + 1`). Admissible parameters satisfy `0 < q <= q0 <= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct QParameter {
    n: u32,
    q: f64,
    kind: QKind,
    precision: Precision,
}

/// Distance from `q0` below which a parameter counts as Kac type.
pub const KAC_TOLERANCE: f64 = 1e-9;

/// `q0 = (N - sqrt(N^2 - 4)) / 2`, evaluated without cancellation.
pub fn q0(n: u32) -> f64 {
    let n = n as f64;
    2.0 / (n + (n * n - 4.0).max(0.0).sqrt())
}

pub fn q0_hp(n: u32, prec: Precision) -> HpFloat {
    let nn = HpFloat::from_i64(n as i64, prec);
    let disc = &(&nn * &nn) - &HpFloat::from_i64(4, prec);
    HpFloat::from_i64(2, prec) / (nn + disc.sqrt())
}

impl QParameter {
    fn validate(n: u32, q: f64) -> Result<()> {
        if n < 2 {
            return Err(Error::Domain(format!("N must be at least 2, got {n}")));
        }
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::Domain(format!("q must lie in (0, 1], got {q}")));
        }
        let q0 = q0(n);
        if q > q0 + KAC_TOLERANCE {
            return Err(Error::Domain(format!(
                "q = {q} exceeds q0 = {q0} for N = {n} (would give N_q < N)"
            )));
        }
        Ok(())
    }

    pub fn new(n: u32, q: f64) -> Result<Self> {
        Self::validate(n, q)?;
        let kind = if q == 1.0 {
            QKind::Exact(BigRational::one())
        } else {
            QKind::Float
        };
        Ok(QParameter {
            n,
            q,
            kind,
            precision: Precision::DEFAULT,
        })
    }

    pub fn from_ratio(n: u32, q: BigRational) -> Result<Self> {
        let qf = q.to_f64().unwrap_or(f64::NAN);
        if !q.is_positive() || q > BigRational::one() {
            return Err(Error::Domain(format!("q must lie in (0, 1], got {q}")));
        }
        Self::validate(n, qf)?;
        Ok(QParameter {
            n,
            q: qf,
            kind: QKind::Exact(q),
            precision: Precision::DEFAULT,
        })
    }

    /// The Kac point `q = q0(N)`, where `N_q = N` holds exactly.
    pub fn kac(n: u32) -> Result<Self> {
        if n == 2 {
            return Self::from_ratio(2, BigRational::one());
        }
        Self::validate(n, q0(n))?;
        Ok(QParameter {
            n,
            q: q0(n),
            kind: QKind::Kac,
            precision: Precision::DEFAULT,
        })
    }

    /// Accepts `q0`/`kac`, a decimal literal, or a fraction `p/r`. Decimal
    /// literals are kept exact.
    pub fn parse(n: u32, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q0") || t.eq_ignore_ascii_case("kac") {
            return Self::kac(n);
        }
        let r = parse_rational(t).ok_or_else(|| Error::Domain(format!("cannot parse q = {s:?}")))?;
        Self::from_ratio(n, r)
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn q0(&self) -> f64 {
        q0(self.n)
    }

    /// `N_q = q + 1/q`.
    pub fn nq(&self) -> f64 {
        match &self.kind {
            QKind::Kac => self.n as f64,
            QKind::Exact(r) => (r + r.recip()).to_f64().unwrap_or(f64::NAN),
            QKind::Float => self.q + 1.0 / self.q,
        }
    }

    pub fn is_kac(&self) -> bool {
        matches!(self.kind, QKind::Kac) || (self.q - self.q0()).abs() <= KAC_TOLERANCE
    }

    /// `q = 1`, only possible for `N = 2`.
    pub fn is_degenerate(&self) -> bool {
        self.q == 1.0
    }

    pub fn q_exact(&self) -> Option<&BigRational> {
        match &self.kind {
            QKind::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// `N_q` as an exact rational whenever it is one (exact q, or the Kac point).
    pub fn nq_exact(&self) -> Option<BigRational> {
        match &self.kind {
            QKind::Exact(r) => Some(r + r.recip()),
            QKind::Kac => Some(BigRational::from_integer(BigInt::from(self.n))),
            QKind::Float => None,
        }
    }

    pub fn q_hp(&self, prec: Precision) -> HpFloat {
        match &self.kind {
            QKind::Exact(r) => HpFloat::from_ratio(r, prec),
            QKind::Kac => q0_hp(self.n, prec),
            QKind::Float => HpFloat::from_f64(self.q, prec),
        }
    }

    pub fn nq_hp(&self, prec: Precision) -> HpFloat {
        match self.nq_exact() {
            Some(r) => HpFloat::from_ratio(&r, prec),
            None => {
                let q = self.q_hp(prec);
                &q + &q.recip()
            }
        }
    }

    /// Short human-readable label used in reports.
    pub fn label(&self) -> String {
        match &self.kind {
            QKind::Kac if !self.is_degenerate() => format!("q0(N={})", self.n),
            QKind::Exact(r) if !r.denom().is_one() || r.is_zero() => format!("{r}"),
            _ => format!("{}", self.q),
        }
    }
}

impl fmt::Display for QParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}, q={}", self.n, self.label())
    }
}
