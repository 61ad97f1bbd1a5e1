//! Helpers shared by the integration suites: a seeded generator of random
//! multihomogeneous polynomials and the sum-substitution expansion oracle.

#![allow(dead_code)]

use std::collections::BTreeMap;

use centralpoly::freealg::{Monomial, NcPolynomial, Variable};
use centralpoly::gf::{FieldElem, FieldSpec};
use centralpoly::linearize::{enumerate_specs, partial_linearize};
use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_nonzero(rng: &mut ChaCha8Rng, field: &FieldSpec) -> FieldElem {
    field.elem_at(rng.random_range(1..field.order() as u64))
}

/// A random nonzero multihomogeneous polynomial: pick a multidegree, then
/// sum a few shuffles of its letter multiset with random nonzero
/// coefficients (collisions may merge or cancel terms; retry on zero).
pub fn random_multihomogeneous(
    rng: &mut ChaCha8Rng,
    field: &FieldSpec,
    max_vars: u32,
    max_total_degree: u32,
    max_terms: usize,
) -> NcPolynomial {
    loop {
        let nvars = rng.random_range(1..=max_vars.min(max_total_degree));
        let mut degrees = vec![1u32; nvars as usize];
        let mut total = nvars;
        while total < max_total_degree && rng.random_range(0..3) > 0 {
            degrees[rng.random_range(0..nvars as usize)] += 1;
            total += 1;
        }
        let mut letters = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            for _ in 0..d {
                letters.push(Variable::Original(i as u32 + 1));
            }
        }
        let mut poly = NcPolynomial::zero(field);
        for _ in 0..rng.random_range(1..=max_terms) {
            let mut word = letters.clone();
            for i in (1..word.len()).rev() {
                word.swap(i, rng.random_range(0..=i));
            }
            poly.add_term(Monomial::from_word(word), random_nonzero(rng, field));
        }
        if !poly.is_zero() {
            return poly;
        }
    }
}

/// Substitute `x_i -> y_{i,1} + ... + y_{i,splits[i]}` for every variable
/// of `f` and expand.
pub fn sum_of_splits_substitution(
    f: &NcPolynomial,
    splits: &BTreeMap<u32, u32>,
) -> NcPolynomial {
    let field = f.field();
    let bindings: BTreeMap<Variable, NcPolynomial> = splits
        .iter()
        .map(|(&i, &s)| {
            let sum = (1..=s)
                .map(|j| NcPolynomial::variable(field, Variable::Split { parent: i, slot: j }))
                .reduce(|a, b| a.add(&b).unwrap())
                .unwrap();
            (Variable::Original(i), sum)
        })
        .collect();
    f.substitute(&bindings).unwrap()
}

/// The same expansion assembled the long way round: the sum, over all
/// linearizations with at most `splits[i]` parts per variable, of the
/// linearized polynomial with its slots renamed along every strictly
/// increasing choice of split indices.
pub fn increasing_relabeling_sum(
    f: &NcPolynomial,
    splits: &BTreeMap<u32, u32>,
) -> NcPolynomial {
    let field = f.field();
    let md = f.multidegree().unwrap();
    let mut acc = NcPolynomial::zero(field);
    for spec in enumerate_specs(&md).unwrap() {
        if spec
            .per_var()
            .iter()
            .any(|(i, comp)| comp.len() as u32 > splits[i])
        {
            continue;
        }
        let lin = partial_linearize(f, &spec).unwrap();
        let per_var_options: Vec<Vec<(u32, Vec<u32>)>> = spec
            .per_var()
            .iter()
            .map(|(&i, comp)| {
                (1..=splits[&i])
                    .combinations(comp.len())
                    .map(|c| (i, c))
                    .collect()
            })
            .collect();
        for pick in per_var_options.into_iter().multi_cartesian_product() {
            let rename: BTreeMap<Variable, NcPolynomial> = pick
                .iter()
                .flat_map(|(i, targets)| {
                    targets.iter().enumerate().map(move |(j, &q)| {
                        (
                            Variable::Split {
                                parent: *i,
                                slot: j as u32 + 1,
                            },
                            NcPolynomial::variable(field, Variable::Split { parent: *i, slot: q }),
                        )
                    })
                })
                .collect();
            acc = acc.add(&lin.substitute(&rename).unwrap()).unwrap();
        }
    }
    acc
}
