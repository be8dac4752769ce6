//! Formal calculus of reduced words in a free product of algebras with states.
//!
//! Letters are centred monomials `(g_1...g_r)°` of one algebra, where each
//! generator is an opaque atom or the semigroup generator applied to a
//! centred monomial. States of monomials are opaque symbols, so identities
//! verified here hold for every choice of algebras, states and generators.

mod expr;
mod psi;
mod symbols;

use std::collections::BTreeMap;

use serde::Serialize;

pub use expr::{apply_generator, multiply_words, reduce_product, Expr, Word};
pub use psi::{
    main_sum, psi_map, psi_terms, reduced_types, sweep_patterns, verify_expansion_identity,
    verify_expansion_identity_with, IdentityReport, LedgerKind, PatternLimits, RemainderLedger,
    SweepOptions, SweepReport, TypePattern,
};
pub use symbols::{phi, Atom, Gen, Letter, PhiSymbol, Poly, Role};

/// Norm bounds on the letters: `K` bounds letters of `x`, `C` of `a`, `D` of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormBounds {
    pub k: f64,
    pub c: f64,
    pub d: f64,
}

/// `2 ledger_hs + 2 (k+m-1)^2 K^{m+k} C^{2m} D^{2k} max_i hs_i`, the bound on the
/// squared Hilbert-Schmidt norm of `Psi` on words of a fixed type.
pub fn hs_propagation_bound(
    per_algebra_hs: &BTreeMap<u8, f64>,
    norms: NormBounds,
    m: usize,
    k: usize,
    ledger_hs: f64,
) -> f64 {
    let max = per_algebra_hs.values().cloned().fold(0.0, f64::max);
    let spread = (k as f64 + m as f64 - 1.0).powi(2);
    2.0 * ledger_hs
        + 2.0
            * spread
            * norms.k.powi((m + k) as i32)
            * norms.c.powi(2 * m as i32)
            * norms.d.powi(2 * k as i32)
            * max
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propagation_bound_examples() {
        let unit = NormBounds { k: 1.0, c: 1.0, d: 1.0 };
        let zeros: BTreeMap<u8, f64> = [(0, 0.0), (1, 0.0)].into();
        assert_eq!(hs_propagation_bound(&zeros, unit, 2, 3, 0.0), 0.0);
        let one: BTreeMap<u8, f64> = [(0, 1.0)].into();
        assert_eq!(hs_propagation_bound(&one, unit, 1, 1, 0.0), 2.0);
        let two: BTreeMap<u8, f64> = [(0, 2.0)].into();
        let norms = NormBounds { k: 1.5, c: 0.7, d: 2.0 };
        let base = hs_propagation_bound(&one, norms, 2, 1, 0.3) - 0.6;
        let doubled = hs_propagation_bound(&two, norms, 2, 1, 0.3) - 0.6;
        assert!((doubled - 2.0 * base).abs() < 1e-12 * base);
    }
}
