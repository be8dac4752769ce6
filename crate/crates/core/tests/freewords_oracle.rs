//! Products of reduced words against a brute-force expander working on raw
//! generator sequences.

use proptest::prelude::*;
use qgs::freewords::{
    self, phi, Atom, Expr, Gen, LedgerKind, Letter, Poly, Role, TypePattern, Word,
};

/// Maximal runs of generators sharing an algebra.
fn runs(raw: &[Gen]) -> Vec<Vec<Gen>> {
    let mut out: Vec<Vec<Gen>> = Vec::new();
    for g in raw {
        match out.last_mut() {
            Some(r) if r[0].alg() == g.alg() => r.push(g.clone()),
            _ => out.push(vec![g.clone()]),
        }
    }
    out
}

/// Reduced-word expansion of a raw product `g_1 ... g_n`.
///
/// Writes each run as `r = r° + phi(r)` and expands. Keeping every run
/// centred gives a reduced word; any other choice is a product of centred runs
/// that is re-expanded through `r° = r - phi(r)` into strictly shorter raw
/// words.
fn canon(raw: &[Gen]) -> Expr {
    let rs = runs(raw);
    let j = rs.len();
    if j == 0 {
        return Expr::one();
    }
    let mut out = Expr::zero();
    let letters: Vec<Letter> = rs.iter().map(|r| Letter::fused(r.clone()).unwrap()).collect();
    out.add_term(Word::new(letters).unwrap(), Poly::one());
    for kept in 0..(1u32 << j) - 1 {
        let mut coeff = Poly::one();
        let mut centred = Vec::new();
        for (i, r) in rs.iter().enumerate() {
            if kept & (1 << i) != 0 {
                centred.push(r);
            } else {
                coeff = coeff.mul(&phi(r));
            }
        }
        if coeff.is_zero() {
            continue;
        }
        for raw_choice in 0..(1u32 << centred.len()) {
            let mut c = coeff.clone();
            let mut word = Vec::new();
            for (i, r) in centred.iter().enumerate() {
                if raw_choice & (1 << i) != 0 {
                    word.extend(r.iter().cloned());
                } else {
                    c = c.mul(&phi(r).neg());
                }
            }
            if !c.is_zero() {
                out.add_assign(&canon(&word).scaled(&c));
            }
        }
    }
    out
}

/// `w` as a combination of raw words: each letter `m°` is `m - phi(m)`.
fn expand_raw(w: &Word) -> Vec<(Vec<Gen>, Poly)> {
    let mut acc = vec![(Vec::new(), Poly::one())];
    for l in w.letters() {
        let m = l.gens().to_vec();
        let p = phi(&m);
        let mut next = Vec::new();
        for (raw, c) in acc {
            let mut longer = raw.clone();
            longer.extend(m.iter().cloned());
            next.push((longer, c.clone()));
            if !p.is_zero() {
                next.push((raw, c.mul(&p.neg())));
            }
        }
        acc = next;
    }
    acc
}

fn oracle_product(u: &Word, v: &Word) -> Expr {
    let mut out = Expr::zero();
    for (ru, cu) in expand_raw(u) {
        for (rv, cv) in expand_raw(v) {
            let mut raw = ru.clone();
            raw.extend(rv);
            out.add_assign(&canon(&raw).scaled(&cu.mul(&cv)));
        }
    }
    out
}

/// Reduced word from letter specs `(alg, size)`; atoms are numbered in order.
fn build_word(role: Role, shape: &[(u8, usize)]) -> Option<Word> {
    let mut index = 0u8;
    let mut letters = Vec::new();
    for &(alg, size) in shape {
        let gens = (0..size)
            .map(|_| {
                index += 1;
                Gen::Atom(Atom::new(role, index, alg))
            })
            .collect();
        letters.push(Letter::fused(gens).ok()?);
    }
    Word::new(letters).ok()
}

fn word_shape() -> impl Strategy<Value = Vec<(u8, usize)>> {
    prop::collection::vec((0u8..3, 1usize..=2), 0..=3)
        .prop_filter("reduced", |s| s.windows(2).all(|w| w[0].0 != w[1].0))
}

fn gens(shape: &[(u8, usize)]) -> usize {
    shape.iter().map(|s| s.1).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_matches_brute_force(
        su in word_shape(),
        sv in word_shape(),
    ) {
        prop_assume!(gens(&su) + gens(&sv) <= 6);
        let u = build_word(Role::B, &su).unwrap();
        let v = build_word(Role::A, &sv).unwrap();
        let got = Expr::word(u.clone()).mul(&Expr::word(v.clone()));
        prop_assert_eq!(got, oracle_product(&u, &v));
    }

    #[test]
    fn triple_product_matches_brute_force(
        sb in word_shape(),
        sx in word_shape(),
        sa in word_shape(),
    ) {
        prop_assume!(gens(&sb) + gens(&sx) + gens(&sa) <= 6);
        let b = build_word(Role::B, &sb).unwrap();
        let x = build_word(Role::X, &sx).unwrap();
        let a = build_word(Role::A, &sa).unwrap();
        let got = freewords::reduce_product(&b, &x, &a).unwrap();
        let mut want = Expr::zero();
        for (w, c) in oracle_product(&b, &x).terms() {
            want.add_assign(&oracle_product(w, &a).scaled(c));
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn third_summand_leaves_no_ledger(
        b in prop::collection::vec(0u8..3, 0..=3),
        x in prop::collection::vec(0u8..3, 1..=4),
        a in prop::collection::vec(0u8..3, 0..=3),
    ) {
        let reduced = |t: &[u8]| t.windows(2).all(|w| w[0] != w[1]);
        prop_assume!(reduced(&b) && reduced(&x) && reduced(&a));
        let r = freewords::verify_expansion_identity(&TypePattern::new(b, x, a)).unwrap();
        prop_assert!(r.residual.is_zero());
        prop_assert!(r.ledger.group(LedgerKind::G, 3).is_none_or(Expr::is_zero));
    }
}

#[test]
fn single_generators_concatenate() {
    let u = build_word(Role::B, &[(0, 1)]).unwrap();
    let v = build_word(Role::A, &[(1, 1)]).unwrap();
    let got = Expr::word(u).mul(&Expr::word(v));
    assert_eq!(got.len(), 1);
    assert_eq!(got.to_string(), "[1] b1 a1");
}

#[test]
fn same_algebra_generators_fuse_with_a_scalar() {
    let u = build_word(Role::B, &[(0, 1)]).unwrap();
    let v = build_word(Role::A, &[(0, 1)]).unwrap();
    let got = Expr::word(u.clone()).mul(&Expr::word(v.clone()));
    assert_eq!(got, oracle_product(&u, &v));
    assert_eq!(got.len(), 2);
    assert_eq!(got.coefficient(&Word::empty()).to_string(), "phi(b1a1)");
}
