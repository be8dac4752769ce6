//! Reduced words and their formal linear combinations.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use super::symbols::{phi, Atom, Letter, Poly, Role};
use crate::error::{Error, Result};

/// A reduced word: consecutive letters come from different algebras.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        if let Some(i) = letters.windows(2).position(|w| w[0].alg() == w[1].alg()) {
            return Err(Error::NotReduced(format!(
                "letters {} and {} both lie in algebra {}",
                i + 1,
                i + 2,
                letters[i].alg()
            )));
        }
        Ok(Word(letters))
    }

    /// `role_1 role_2 ...` with the given algebra type.
    pub fn from_type(role: Role, types: &[u8]) -> Result<Word> {
        Word::new(
            types
                .iter()
                .enumerate()
                .map(|(i, &alg)| Letter::atom(Atom::new(role, (i + 1) as u8, alg)))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_role(&self, role: Role) -> bool {
        self.0.iter().any(|l| l.contains_role(role))
    }

    pub fn contains_delta(&self) -> bool {
        self.0.iter().any(Letter::contains_delta)
    }

    /// Algebra indices of the letters.
    pub fn type_signature(&self) -> Vec<u8> {
        self.0.iter().map(Letter::alg).collect()
    }

    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::adjoint).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Finite sum of `poly * word` in canonical order; zero coefficients never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expr(BTreeMap<Word, Poly>);

impl Expr {
    pub fn zero() -> Expr {
        Expr::default()
    }

    pub fn one() -> Expr {
        Expr::word(Word::empty())
    }

    pub fn word(w: Word) -> Expr {
        let mut e = Expr::zero();
        e.add_term(w, Poly::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Poly)> {
        self.0.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Poly {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Expr) {
        for (w, c) in &other.0 {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Expr) {
        for (w, c) in &other.0 {
            self.add_term(w.clone(), c.neg());
        }
    }

    pub fn scaled(&self, c: &Poly) -> Expr {
        let mut out = Expr::zero();
        for (w, p) in &self.0 {
            out.add_term(w.clone(), p.mul(c));
        }
        out
    }

    pub fn scaled_rational(&self, c: Rational64) -> Expr {
        self.scaled(&Poly::constant(c))
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (w1, c1) in &self.0 {
            for (w2, c2) in &other.0 {
                let c = c1.mul(c2);
                for (w, p) in multiply_words(w1.letters(), w2.letters()) {
                    out.add_term(w, p.mul(&c));
                }
            }
        }
        out
    }

    /// Splits into the terms whose word satisfies `pred` and the rest.
    pub fn partition(&self, pred: impl Fn(&Word) -> bool) -> (Expr, Expr) {
        let (mut yes, mut no) = (Expr::zero(), Expr::zero());
        for (w, c) in &self.0 {
            if pred(w) {
                yes.0.insert(w.clone(), c.clone());
            } else {
                no.0.insert(w.clone(), c.clone());
            }
        }
        (yes, no)
    }

    pub fn max_word_len(&self) -> usize {
        self.0.keys().map(Word::len).max().unwrap_or(0)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}] {w}")?;
        }
        Ok(())
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (w, c) in &self.0 {
            seq.serialize_element(&(w.to_string(), c.to_string()))?;
        }
        seq.end()
    }
}

/// Product of two reduced words. At a same-algebra junction
/// `m1° m2° = (m1 m2)° - phi(m1) m2° - phi(m2) m1° + (phi(m1 m2) - phi(m1) phi(m2))`,
/// and the scalar part exposes the next junction.
pub fn multiply_words(left: &[Letter], right: &[Letter]) -> Vec<(Word, Poly)> {
    let mut out = Vec::new();
    multiply_into(left, right, Poly::one(), &mut out);
    out
}

fn multiply_into(left: &[Letter], right: &[Letter], coeff: Poly, out: &mut Vec<(Word, Poly)>) {
    let (Some(l), Some(r)) = (left.last(), right.first()) else {
        out.push((Word([left, right].concat()), coeff));
        return;
    };
    if l.alg() != r.alg() {
        out.push((Word([left, right].concat()), coeff));
        return;
    }
    let (m1, m2) = (l.gens(), r.gens());
    let head = &left[..left.len() - 1];
    let tail = &right[1..];
    let joined = [m1, m2].concat();

    let mut fused = head.to_vec();
    fused.push(Letter::from_parts(l.alg(), joined.clone()));
    fused.extend_from_slice(tail);
    out.push((Word(fused), coeff.clone()));

    let p1 = phi(m1);
    if !p1.is_zero() {
        out.push((Word([head, right].concat()), coeff.mul(&p1).neg()));
    }
    let p2 = phi(m2);
    if !p2.is_zero() {
        out.push((Word([left, tail].concat()), coeff.mul(&p2).neg()));
    }
    let mut scalar = phi(&joined);
    scalar.add_assign(&p1.mul(&p2).neg());
    if !scalar.is_zero() {
        multiply_into(head, tail, coeff.mul(&scalar), out);
    }
}

/// Expansion of `b x a` into reduced words.
pub fn reduce_product(b: &Word, x: &Word, a: &Word) -> Result<Expr> {
    for w in [b, x, a] {
        Word::new(w.letters().to_vec())?;
    }
    Ok(Expr::word(b.clone())
        .mul(&Expr::word(x.clone()))
        .mul(&Expr::word(a.clone())))
}

/// Leibniz rule: `Delta(l_1...l_n) = sum_i l_1...Delta(l_i)...l_n`, `Delta(1) = 0`.
pub fn apply_generator(e: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (w, c) in e.terms() {
        for i in 0..w.len() {
            let mut letters = w.letters().to_vec();
            letters[i] = letters[i].delta();
            out.add_term(Word(letters), c.clone());
        }
    }
    out
}
