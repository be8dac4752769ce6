//! Letters, generators and state symbols of the formal free-product calculus.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Which of the three input words an atom belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    B,
    X,
    A,
}

impl Role {
    fn prefix(self) -> char {
        match self {
            Role::B => 'b',
            Role::X => 'x',
            Role::A => 'a',
        }
    }
}

/// An opaque mean-zero element `b_j`, `x_j` or `a_j` of algebra `alg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub role: Role,
    /// 1-based position inside its word.
    pub index: u8,
    pub alg: u8,
    pub star: bool,
}

impl Atom {
    pub fn new(role: Role, index: u8, alg: u8) -> Atom {
        Atom {
            role,
            index,
            alg,
            star: false,
        }
    }

    pub fn adjoint(self) -> Atom {
        Atom {
            star: !self.star,
            ..self
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.role.prefix(), self.index)?;
        if self.star {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// A generator inside one algebra: an atom, or the generator applied to a
/// circled monomial, `Delta((g_1...g_r)°)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Atom(Atom),
    Delta(Vec<Gen>),
}

impl Gen {
    pub fn alg(&self) -> u8 {
        match self {
            Gen::Atom(a) => a.alg,
            Gen::Delta(m) => m[0].alg(),
        }
    }

    pub fn contains_role(&self, role: Role) -> bool {
        match self {
            Gen::Atom(a) => a.role == role,
            Gen::Delta(m) => m.iter().any(|g| g.contains_role(role)),
        }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self, Gen::Delta(_))
    }

    /// Adjoint; the generator commutes with `*`.
    pub fn adjoint(&self) -> Gen {
        match self {
            Gen::Atom(a) => Gen::Atom(a.adjoint()),
            Gen::Delta(m) => Gen::Delta(adjoint_monomial(m)),
        }
    }
}

pub(crate) fn adjoint_monomial(m: &[Gen]) -> Vec<Gen> {
    m.iter().rev().map(Gen::adjoint).collect()
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &[Gen]) -> fmt::Result {
    for g in m {
        write!(f, "{g}")?;
    }
    Ok(())
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Atom(a) => write!(f, "{a}"),
            Gen::Delta(m) => {
                f.write_str("D(")?;
                write_monomial(f, m)?;
                f.write_str(")")
            }
        }
    }
}

/// The state of a monomial of length at least two, kept as an opaque symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhiSymbol(pub Vec<Gen>);

impl fmt::Display for PhiSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("phi(")?;
        write_monomial(f, &self.0)?;
        f.write_str(")")
    }
}

/// Polynomial in state symbols with rational coefficients. Monomials are
/// sorted multisets of symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly(BTreeMap<Vec<PhiSymbol>, Rational64>);

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational64::one())
    }

    pub fn constant(c: Rational64) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.0.insert(Vec::new(), c);
        }
        p
    }

    pub fn symbol(s: PhiSymbol) -> Poly {
        let mut p = Poly::zero();
        p.0.insert(vec![s], Rational64::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[PhiSymbol], &Rational64)> {
        self.0.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn add_term(&mut self, mono: Vec<PhiSymbol>, c: Rational64) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (k, v) in &other.0 {
            self.add_term(k.clone(), *v);
        }
    }

    pub fn scaled(&self, c: Rational64) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn neg(&self) -> Poly {
        self.scaled(-Rational64::one())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (k1, v1) in &self.0 {
            for (k2, v2) in &other.0 {
                let mut k = Vec::with_capacity(k1.len() + k2.len());
                k.extend(k1.iter().cloned());
                k.extend(k2.iter().cloned());
                k.sort();
                out.add_term(k, v1 * v2);
            }
        }
        out
    }

    /// Every symbol in the polynomial.
    pub fn symbols(&self) -> impl Iterator<Item = &PhiSymbol> {
        self.0.keys().flatten()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, (mono, c)) in self.0.iter().enumerate() {
            let neg = *c < Rational64::zero();
            if n > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let mag = c.abs();
            let show_c = !mag.is_one() || mono.is_empty();
            if show_c {
                write!(f, "{mag}")?;
            }
            for (i, s) in mono.iter().enumerate() {
                if i > 0 || show_c {
                    f.write_str("*")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `phi` of a monomial: 1 on the empty monomial, 0 on a single generator
/// (atoms are centred and `phi o Delta = 0`) and on alternating mixtures of
/// centred elements from two algebras, an opaque symbol otherwise.
pub fn phi(m: &[Gen]) -> Poly {
    if m.windows(2).any(|w| w[0].alg() != w[1].alg()) {
        return Poly::zero();
    }
    match m.len() {
        0 => Poly::one(),
        1 => Poly::zero(),
        _ => Poly::symbol(PhiSymbol(m.to_vec())),
    }
}

/// A centred letter `(g_1...g_r)°` of one algebra, `r >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    alg: u8,
    gens: Vec<Gen>,
}

impl Letter {
    pub fn atom(a: Atom) -> Letter {
        Letter {
            alg: a.alg,
            gens: vec![Gen::Atom(a)],
        }
    }

    /// `(g_1...g_r)°`; all generators must live in one algebra.
    pub fn fused(gens: Vec<Gen>) -> Result<Letter> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidVector("a letter needs at least one generator".into()));
        };
        let alg = first.alg();
        if gens.iter().any(|g| g.alg() != alg) {
            return Err(Error::NotReduced(
                "generators of a fused letter must share one algebra".into(),
            ));
        }
        Ok(Letter { alg, gens })
    }

    pub(crate) fn from_parts(alg: u8, gens: Vec<Gen>) -> Letter {
        Letter { alg, gens }
    }

    pub fn alg(&self) -> u8 {
        self.alg
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    /// True for fusions of two or more generators.
    pub fn is_fused(&self) -> bool {
        self.gens.len() > 1
    }

    /// True when the letter is `Delta(...)`.
    pub fn is_generator_applied(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_delta()
    }

    pub fn contains_role(&self, role: Role) -> bool {
        self.gens.iter().any(|g| g.contains_role(role))
    }

    pub fn contains_delta(&self) -> bool {
        self.gens.iter().any(Gen::is_delta)
    }

    /// `Delta(letter)`, again a single centred generator.
    pub fn delta(&self) -> Letter {
        Letter {
            alg: self.alg,
            gens: vec![Gen::Delta(self.gens.clone())],
        }
    }

    pub fn adjoint(&self) -> Letter {
        Letter {
            alg: self.alg,
            gens: adjoint_monomial(&self.gens),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_fused() {
            f.write_str("(")?;
            write_monomial(f, &self.gens)?;
            f.write_str(")°")
        } else {
            write_monomial(f, &self.gens)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn phi_rules() {
        let b = Gen::Atom(Atom::new(Role::B, 1, 0));
        let x = Gen::Atom(Atom::new(Role::X, 1, 0));
        assert_eq!(phi(&[]), Poly::one());
        assert!(phi(std::slice::from_ref(&b)).is_zero());
        assert!(phi(&[Gen::Delta(vec![b.clone()])]).is_zero());
        assert_eq!(phi(&[b.clone(), x.clone()]).to_string(), "phi(b1x1)");
        let y = Gen::Atom(Atom::new(Role::X, 2, 1));
        assert!(phi(&[b, y]).is_zero());
    }

    #[test]
    fn poly_cancellation() {
        let s = PhiSymbol(vec![
            Gen::Atom(Atom::new(Role::B, 1, 0)),
            Gen::Atom(Atom::new(Role::X, 1, 0)),
        ]);
        let mut p = Poly::symbol(s.clone());
        p.add_assign(&Poly::symbol(s).neg());
        assert!(p.is_zero());
        let mut q = Poly::constant(r(2));
        q.add_term(Vec::new(), r(-2));
        assert!(q.is_zero());
    }

    #[test]
    fn fused_letters_share_an_algebra() {
        let b = Gen::Atom(Atom::new(Role::B, 1, 0));
        let x = Gen::Atom(Atom::new(Role::X, 1, 1));
        assert!(matches!(Letter::fused(vec![b, x]), Err(Error::NotReduced(_))));
        assert!(Letter::fused(Vec::new()).is_err());
    }

    #[test]
    fn adjoint_reverses() {
        let b = Gen::Atom(Atom::new(Role::B, 1, 0));
        let x = Gen::Atom(Atom::new(Role::X, 2, 0));
        let l = Letter::fused(vec![b, x]).unwrap();
        assert_eq!(l.adjoint().to_string(), "(x2*b1*)°");
        assert_eq!(l.adjoint().adjoint(), l);
    }
}
