//! The map `Psi_0^{a,b*}(x) = b Delta(x a) - Delta(b x a) - b Delta(x) a + Delta(b x) a`
//! and the exact check of its reduction to single-algebra `Psi` letters plus a
//! finite-rank remainder.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::expr::{apply_generator, Expr, Word};
use super::symbols::{phi, Atom, Gen, Letter, Poly, Role};
use crate::error::{Error, Result};

/// The four summands of `Psi_0^{a,b*}(x)` before signs are applied:
/// `b Delta(xa)`, `Delta(bxa)`, `b Delta(x) a`, `Delta(bx) a`.
pub fn psi_terms(a: &Word, b: &Word, x: &Word) -> [Expr; 4] {
    let (a, b, x) = (Expr::word(a.clone()), Expr::word(b.clone()), Expr::word(x.clone()));
    let xa = x.mul(&a);
    let bx = b.mul(&x);
    [
        b.mul(&apply_generator(&xa)),
        apply_generator(&bx.mul(&a)),
        b.mul(&apply_generator(&x)).mul(&a),
        apply_generator(&bx).mul(&a),
    ]
}

const SIGNS: [i64; 4] = [1, -1, -1, 1];

pub fn psi_map(a: &Word, b: &Word, x: &Word) -> Result<Expr> {
    for w in [a, b, x] {
        Word::new(w.letters().to_vec())?;
    }
    let mut out = Expr::zero();
    for (t, s) in psi_terms(a, b, x).iter().zip(SIGNS) {
        if s > 0 {
            out.add_assign(t);
        } else {
            out.sub_assign(t);
        }
    }
    Ok(out)
}

/// Algebra types of `b`, `x` and `a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TypePattern {
    pub b: Vec<u8>,
    pub x: Vec<u8>,
    pub a: Vec<u8>,
}

impl TypePattern {
    pub fn new(b: Vec<u8>, x: Vec<u8>, a: Vec<u8>) -> TypePattern {
        TypePattern { b, x, a }
    }

    /// Parses `B/X/A` with each part a string of algebra digits, e.g. `01/10/2`;
    /// an empty part is an empty word.
    pub fn parse(s: &str) -> Result<TypePattern> {
        let parts: Vec<&str> = s.split('/').collect();
        if parts.len() != 3 {
            return Err(Error::Domain(format!("pattern '{s}' must have the form B/X/A")));
        }
        let digits = |p: &str| -> Result<Vec<u8>> {
            p.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Domain(format!("'{c}' is not an algebra index")))
                })
                .collect()
        };
        Ok(TypePattern::new(digits(parts[0])?, digits(parts[1])?, digits(parts[2])?))
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn k(&self) -> usize {
        self.b.len()
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn words(&self) -> Result<(Word, Word, Word)> {
        Ok((
            Word::from_type(Role::B, &self.b)?,
            Word::from_type(Role::X, &self.x)?,
            Word::from_type(Role::A, &self.a)?,
        ))
    }
}

impl fmt::Display for TypePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[u8]| v.iter().map(|d| d.to_string()).collect::<String>();
        write!(f, "{}/{}/{}", show(&self.b), show(&self.x), show(&self.a))
    }
}

/// Size limits on the words of a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatternLimits {
    pub max_n: usize,
    pub max_km: usize,
}

impl Default for PatternLimits {
    fn default() -> Self {
        PatternLimits { max_n: 4, max_km: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LedgerKind {
    F,
    G,
}

/// Finite-rank remainder: the terms whose word no longer contains an `x` atom.
/// Terms are grouped by the summand of `Psi` they come from (1 to 4); a term
/// is of kind `G` when its word still carries a `Delta` letter and `F` otherwise.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RemainderLedger {
    pub groups: BTreeMap<String, Expr>,
    pub total: Expr,
}

impl RemainderLedger {
    pub fn max_word_len(&self) -> usize {
        self.total.max_word_len()
    }

    pub fn group(&self, kind: LedgerKind, origin: usize) -> Option<&Expr> {
        self.groups.get(&group_key(kind, origin))
    }
}

fn group_key(kind: LedgerKind, origin: usize) -> String {
    format!("{kind:?}{origin}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub pattern: TypePattern,
    /// Terms of `Psi_0^{a,b*}(x)`.
    pub lhs_terms: usize,
    /// Positions `i` contributing a single-algebra `Psi` letter.
    pub main_positions: Vec<usize>,
    /// Terms of `Psi(x) - main sum` whose word still contains an `x` atom.
    pub residual: Expr,
    pub ledger: RemainderLedger,
    /// `k + m`.
    pub length_bound: usize,
    /// Set when `n > k + m - 1`: whether `Psi(x)` vanishes identically.
    pub long_word_vanishes: Option<bool>,
    /// Residual empty and every ledger word within `length_bound`.
    pub pass: bool,
}

fn x_free(w: &Word) -> bool {
    !w.contains_role(Role::X)
}

fn atom_gen(role: Role, index: usize, alg: u8) -> Gen {
    Gen::Atom(Atom::new(role, index as u8, alg))
}

fn atom_word(role: Role, types: &[u8], range: std::ops::RangeInclusive<usize>) -> Word {
    let letters = range
        .map(|j| Letter::atom(Atom::new(role, j as u8, types[j - 1])))
        .collect();
    Word::new(letters).expect("subword of a reduced word is reduced")
}

/// `sum_i phi(b_k x_1)...phi(b_{k-i+2} x_{i-1}) phi(x_n a_1)...phi(x_{i+1} a_{n-i})
///   b_1...b_{k-i} Psi_{X_i}(x_i)° a_{n-i+2}...a_m` over the positions where
/// `b_{k-i+1}`, `x_i` and `a_{n-i+1}` share one algebra.
pub fn main_sum(p: &TypePattern) -> Result<(Expr, Vec<usize>)> {
    let (n, k, m) = (p.n(), p.k(), p.m());
    let mut out = Expr::zero();
    let mut positions = Vec::new();
    for i in 1..=n {
        if i > k || n + 1 > m + i {
            continue;
        }
        let alg = p.x[i - 1];
        if p.b[k - i] != alg || p.a[n - i] != alg {
            continue;
        }
        let mut coeff = Poly::one();
        for j in 1..i {
            let bj = k - j + 1;
            coeff = coeff.mul(&phi(&[
                atom_gen(Role::B, bj, p.b[bj - 1]),
                atom_gen(Role::X, j, p.x[j - 1]),
            ]));
        }
        for j in 1..=n - i {
            let xj = n - j + 1;
            coeff = coeff.mul(&phi(&[
                atom_gen(Role::X, xj, p.x[xj - 1]),
                atom_gen(Role::A, j, p.a[j - 1]),
            ]));
        }
        positions.push(i);
        if coeff.is_zero() {
            continue;
        }
        let local = psi_map(
            &atom_word(Role::A, &p.a, n - i + 1..=n - i + 1),
            &atom_word(Role::B, &p.b, k - i + 1..=k - i + 1),
            &atom_word(Role::X, &p.x, i..=i),
        )?;
        let (_, centred) = local.partition(Word::is_empty);
        let prefix = Expr::word(atom_word(Role::B, &p.b, 1..=k - i));
        let suffix = Expr::word(atom_word(Role::A, &p.a, n - i + 2..=m));
        out.add_assign(&prefix.mul(&centred).mul(&suffix).scaled(&coeff));
    }
    Ok((out, positions))
}

pub fn verify_expansion_identity(p: &TypePattern) -> Result<IdentityReport> {
    verify_expansion_identity_with(p, PatternLimits::default())
}

pub fn verify_expansion_identity_with(p: &TypePattern, limits: PatternLimits) -> Result<IdentityReport> {
    if p.n() > limits.max_n || p.k() > limits.max_km || p.m() > limits.max_km {
        return Err(Error::Resource(format!(
            "pattern {p} exceeds n <= {}, k, m <= {}",
            limits.max_n, limits.max_km
        )));
    }
    let (b, x, a) = p.words()?;
    let terms = psi_terms(&a, &b, &x);
    let mut lhs = Expr::zero();
    let mut ledger = RemainderLedger::default();
    for (origin, (t, s)) in terms.iter().zip(SIGNS).enumerate() {
        let signed = if s > 0 { t.clone() } else { t.scaled_rational((-1).into()) };
        lhs.add_assign(&signed);
        let (free, _) = signed.partition(x_free);
        let (g, f) = free.partition(Word::contains_delta);
        for (kind, part) in [(LedgerKind::F, f), (LedgerKind::G, g)] {
            if !part.is_zero() {
                ledger.groups.insert(group_key(kind, origin + 1), part);
            }
        }
    }
    let (main, positions) = main_sum(p)?;
    let mut diff = lhs.clone();
    diff.sub_assign(&main);
    let (total, residual) = diff.partition(x_free);
    ledger.total = total;

    let mut grouped = Expr::zero();
    for e in ledger.groups.values() {
        grouped.add_assign(e);
    }
    let (main_free, _) = main.partition(x_free);
    grouped.sub_assign(&main_free);
    if grouped != ledger.total {
        return Err(Error::InternalConsistency {
            context: format!("ledger groups do not add up for pattern {p}"),
            residual: f64::NAN,
        });
    }

    let length_bound = p.k() + p.m();
    let long_word_vanishes = (p.n() + 1 > length_bound).then(|| lhs.is_zero());
    let pass = residual.is_zero() && ledger.max_word_len() <= length_bound;
    Ok(IdentityReport {
        pattern: p.clone(),
        lhs_terms: lhs.len(),
        main_positions: positions,
        residual,
        ledger,
        length_bound,
        long_word_vanishes,
        pass,
    })
}

/// Ranges of an exhaustive pattern sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepOptions {
    pub max_n: usize,
    pub max_km: usize,
    pub algebras: u8,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_n: 4,
            max_km: 3,
            algebras: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub options: SweepOptions,
    pub patterns: usize,
    pub passed: usize,
    pub failures: Vec<TypePattern>,
    /// Patterns with `n > k + m - 1`.
    pub long_patterns: usize,
    pub long_nonvanishing: Vec<TypePattern>,
    pub max_ledger_len: usize,
    pub ledger_terms: usize,
    pub pass: bool,
}

/// Every reduced type of length exactly `len` over `algebras` indices.
pub fn reduced_types(len: usize, algebras: u8) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for c in 0..algebras {
                if t.last() != Some(&c) {
                    let mut v = t.clone();
                    v.push(c);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

pub fn sweep_patterns(opts: SweepOptions) -> Result<SweepReport> {
    let short: Vec<Vec<u8>> = (0..=opts.max_km).flat_map(|l| reduced_types(l, opts.algebras)).collect();
    let xs: Vec<Vec<u8>> = (1..=opts.max_n).flat_map(|l| reduced_types(l, opts.algebras)).collect();
    let mut patterns = Vec::with_capacity(short.len() * short.len() * xs.len());
    for b in &short {
        for x in &xs {
            for a in &short {
                patterns.push(TypePattern::new(b.clone(), x.clone(), a.clone()));
            }
        }
    }
    let limits = PatternLimits {
        max_n: opts.max_n,
        max_km: opts.max_km,
    };
    let reports: Vec<IdentityReport> = patterns
        .par_iter()
        .map(|p| verify_expansion_identity_with(p, limits))
        .collect::<Result<_>>()?;
    let mut out = SweepReport {
        options: opts,
        patterns: reports.len(),
        passed: 0,
        failures: Vec::new(),
        long_patterns: 0,
        long_nonvanishing: Vec::new(),
        max_ledger_len: 0,
        ledger_terms: 0,
        pass: true,
    };
    for r in &reports {
        if r.pass {
            out.passed += 1;
        } else {
            out.failures.push(r.pattern.clone());
        }
        if let Some(v) = r.long_word_vanishes {
            out.long_patterns += 1;
            if !v {
                out.long_nonvanishing.push(r.pattern.clone());
            }
        }
        out.max_ledger_len = out.max_ledger_len.max(r.ledger.max_word_len());
        out.ledger_terms += r.ledger.total.len();
    }
    out.pass = out.failures.is_empty() && out.long_nonvanishing.is_empty();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> TypePattern {
        TypePattern::parse(s).unwrap()
    }

    #[test]
    fn distinct_algebras_give_zero() {
        let r = verify_expansion_identity(&pat("0/1/2")).unwrap();
        assert_eq!(r.lhs_terms, 0);
        assert!(r.main_positions.is_empty());
        assert!(r.ledger.total.is_zero());
        assert!(r.pass);
    }

    #[test]
    fn empty_side_gives_zero() {
        let a = Word::from_type(Role::A, &[0, 1]).unwrap();
        let b = Word::from_type(Role::B, &[1, 0]).unwrap();
        let x = Word::from_type(Role::X, &[0, 1, 0]).unwrap();
        assert!(psi_map(&a, &Word::empty(), &x).unwrap().is_zero());
        assert!(psi_map(&Word::empty(), &b, &x).unwrap().is_zero());
    }

    #[test]
    fn trivial_x_leaves_the_junction_defect() {
        // Delta is not a derivation across the fused junction b2 a1
        let a = Word::from_type(Role::A, &[0, 1]).unwrap();
        let b = Word::from_type(Role::B, &[1, 0]).unwrap();
        assert!(!psi_map(&a, &b, &Word::empty()).unwrap().is_zero());
    }

    #[test]
    fn single_shared_algebra() {
        let r = verify_expansion_identity(&pat("0/0/0")).unwrap();
        assert_eq!(r.main_positions, vec![1]);
        assert!(r.residual.is_zero());
        assert!(r.pass);
    }

    #[test]
    fn oversized_pattern_is_a_resource_error() {
        assert!(matches!(
            verify_expansion_identity(&pat("0101/0/0")),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn reduced_type_counts() {
        assert_eq!(reduced_types(0, 3).len(), 1);
        assert_eq!(reduced_types(3, 3).len(), 12);
        assert_eq!(reduced_types(4, 2).len(), 2);
    }

    #[test]
    fn pattern_round_trip() {
        let p = pat("01//2");
        assert_eq!(p.to_string(), "01//2");
        assert!(p.x.is_empty());
        assert!(TypePattern::parse("0/1").is_err());
    }
}
