//! Named stock polynomials used across tests, benchmarks, and the CLI.
//!
//! - `s<k>`: the standard polynomial of arity `k` — the alternating sum
//!   over all orderings of `x1..xk`. `s_{2n}` vanishes identically on
//!   `n x n` matrices, and no polynomial of lower degree does.
//! - `hall`: `comm(x1,x2)^2`, central for `2 x 2` matrices.
//! - `L`: a multilinear polynomial central for `2 x 2` matrices,
//!   `comm(x1,x2)*comm(x3,x4) + comm(x3,x4)*comm(x1,x2)`.

use itertools::Itertools;
use thiserror::Error;

use crate::freealg::{Monomial, NcPolynomial, Variable};
use crate::gf::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("standard polynomial needs arity >= 2, got {0}")]
    ArityTooSmall(usize),
    #[error("unknown fixture name {0:?}")]
    UnknownName(String),
}

/// The standard polynomial `s_k = sum_sigma sign(sigma) x_{sigma(1)} ... x_{sigma(k)}`
/// with signs reduced into `field` (over characteristic 2 every sign is `+1`).
/// It has `k!` terms, one per ordering, and is multilinear in `x1..xk`.
pub fn standard_polynomial(k: usize, field: &FieldSpec) -> Result<NcPolynomial, FixtureError> {
    if k < 2 {
        return Err(FixtureError::ArityTooSmall(k));
    }
    let plus = field.one();
    let minus = field.neg(plus);
    let mut poly = NcPolynomial::zero(field);
    for perm in (1..=k as u32).permutations(k) {
        let coeff = if inversions(&perm) % 2 == 0 { plus } else { minus };
        let word = perm.into_iter().map(Variable::Original).collect();
        poly.add_term(Monomial::from_word(word), coeff);
    }
    Ok(poly)
}

fn inversions(perm: &[u32]) -> usize {
    let mut count = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                count += 1;
            }
        }
    }
    count
}

/// `comm(x1,x2)^2`: takes only scalar values on `2 x 2` matrices (the
/// square of a trace-zero matrix), and a nonzero value at `(e12, e21)`.
pub fn hall_polynomial(field: &FieldSpec) -> NcPolynomial {
    let c = NcPolynomial::var(field, 1)
        .commutator(&NcPolynomial::var(field, 2))
        .expect("same field");
    c.pow(2)
}

/// `comm(x1,x2)*comm(x3,x4) + comm(x3,x4)*comm(x1,x2)`: multilinear and
/// central for `2 x 2` matrices; the identity matrix is among its values.
pub fn multilinear_central_m2(field: &FieldSpec) -> NcPolynomial {
    let a = NcPolynomial::var(field, 1)
        .commutator(&NcPolynomial::var(field, 2))
        .expect("same field");
    let b = NcPolynomial::var(field, 3)
        .commutator(&NcPolynomial::var(field, 4))
        .expect("same field");
    a.mul(&b)
        .and_then(|ab| b.mul(&a).and_then(|ba| ab.add(&ba)))
        .expect("same field")
}

/// Resolve a fixture by name: `s2`..`s8`, `hall`, or `L`.
pub fn builtin(name: &str, field: &FieldSpec) -> Result<NcPolynomial, FixtureError> {
    match name {
        "hall" => Ok(hall_polynomial(field)),
        "L" => Ok(multilinear_central_m2(field)),
        _ => {
            if let Some(rest) = name.strip_prefix('s') {
                if let Ok(k) = rest.parse::<usize>() {
                    if (2..=8).contains(&k) {
                        return standard_polynomial(k, field);
                    }
                }
            }
            Err(FixtureError::UnknownName(name.to_string()))
        }
    }
}
