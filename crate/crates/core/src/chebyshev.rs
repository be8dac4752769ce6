//! Chebyshev polynomials of the second kind `U_alpha`, their derivatives, and
//! quantum integers `[n]_q = U_{n-1}(q + 1/q)`.
//!
//! Two evaluation routes are provided. [`ChebyshevPoly`] carries the exact
//! integer coefficients and evaluates them by Horner's rule; the free
//! functions [`eval`] and [`eval_derivative`] run the three-term recurrence
//! directly on values, which is `O(alpha)` and stable for `x > 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::numeric::{Field, HpFloat};
use crate::param::QParameter;

/// `U_alpha` with exact coefficients in ascending powers of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevPoly {
    degree: usize,
    coeffs: Vec<BigInt>,
}

/// Builds `U_alpha` from `U_0 = 1`, `U_1 = x`, `U_{a+1} = x U_a - U_{a-1}`.
pub fn build_poly(alpha: usize) -> ChebyshevPoly {
    let mut prev: Vec<BigInt> = vec![BigInt::from(1)];
    if alpha == 0 {
        return ChebyshevPoly {
            degree: 0,
            coeffs: prev,
        };
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)];
    for _ in 1..alpha {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    ChebyshevPoly {
        degree: alpha,
        coeffs: cur,
    }
}

impl ChebyshevPoly {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients of `U'_alpha`, ascending.
    pub fn derivative_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect()
    }

    pub fn eval<F: Field>(&self, x: &F) -> F {
        horner(&self.coeffs, x)
    }

    pub fn eval_derivative<F: Field>(&self, x: &F) -> F {
        horner(&self.derivative_coeffs(), x)
    }
}

fn bigint_in<F: Field>(like: &F, c: &BigInt) -> F {
    match c.to_i64() {
        Some(v) => like.int_like(v),
        None => {
            // split into 2^32 limbs so arbitrary coefficients stay exact
            let (sign, digits) = c.to_u32_digits();
            let base = like.int_like(1i64 << 32);
            let mut acc = like.int_like(0);
            for d in digits.iter().rev() {
                acc = acc * base.clone() + like.int_like(*d as i64);
            }
            if sign == num_bigint::Sign::Minus {
                -acc
            } else {
                acc
            }
        }
    }
}

fn horner<F: Field>(coeffs: &[BigInt], x: &F) -> F {
    let mut acc = x.int_like(0);
    for c in coeffs.iter().rev() {
        acc = acc * x.clone() + bigint_in(x, c);
    }
    acc
}

/// `(U_alpha(x), U'_alpha(x))` by the value-domain recurrence and its
/// derivative `U'_{a+1} = U_a + x U'_a - U'_{a-1}`.
pub fn eval_pair<F: Field>(alpha: usize, x: &F) -> (F, F) {
    let mut u_prev = x.int_like(1);
    let mut d_prev = x.int_like(0);
    if alpha == 0 {
        return (u_prev, d_prev);
    }
    let mut u = x.clone();
    let mut d = x.int_like(1);
    for _ in 1..alpha {
        let u_next = x.clone() * u.clone() - u_prev;
        let d_next = u.clone() + x.clone() * d.clone() - d_prev;
        u_prev = std::mem::replace(&mut u, u_next);
        d_prev = std::mem::replace(&mut d, d_next);
    }
    (u, d)
}

/// `(U_a(x), U'_a(x))` for every `a` in `0..=alpha_max`.
pub fn eval_table<F: Field>(alpha_max: usize, x: &F) -> Vec<(F, F)> {
    let mut out = Vec::with_capacity(alpha_max + 1);
    out.push((x.int_like(1), x.int_like(0)));
    if alpha_max == 0 {
        return out;
    }
    out.push((x.clone(), x.int_like(1)));
    for a in 1..alpha_max {
        let (u, d) = out[a].clone();
        let (u_prev, d_prev) = out[a - 1].clone();
        let u_next = x.clone() * u.clone() - u_prev;
        let d_next = u + x.clone() * d - d_prev;
        out.push((u_next, d_next));
    }
    out
}

pub fn eval<F: Field>(alpha: usize, x: &F) -> F {
    eval_pair(alpha, x).0
}

pub fn eval_derivative<F: Field>(alpha: usize, x: &F) -> F {
    eval_pair(alpha, x).1
}

/// `[n]_q` given `N_q` in any field: `[0] = 0`, `[n] = U_{n-1}(N_q)`.
pub fn q_number_in<F: Field>(n: usize, nq: &F) -> F {
    if n == 0 {
        nq.int_like(0)
    } else {
        eval(n - 1, nq)
    }
}

/// `[n]_q` exactly, when `N_q` is rational.
pub fn q_number_exact(n: usize, param: &QParameter) -> Option<BigRational> {
    param.nq_exact().map(|nq| q_number_in(n, &nq))
}

pub fn q_number_hp(n: usize, param: &QParameter) -> HpFloat {
    q_number_in(n, &param.nq_hp(param.precision()))
}

/// `[n]_q` as a double, computed exactly or at the parameter's precision.
pub fn q_number(n: usize, param: &QParameter) -> f64 {
    match q_number_exact(n, param) {
        Some(r) if n < 2000 => Field::to_f64(&r),
        _ => q_number_hp(n, param).to_f64(),
    }
}
