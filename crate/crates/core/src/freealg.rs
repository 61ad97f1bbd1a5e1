//! Noncommutative polynomials over a finite field: the free associative
//! algebra `K<x1, x2, ...>`.
//!
//! A polynomial is a canonical sparse map from words (monomials) to nonzero
//! coefficients. Beyond the original generators `x1, x2, ...` there is a
//! second tier of *split* variables `y<i>_<j>` produced when an occurrence
//! of `x<i>` is distributed over fresh slots; keeping them a distinct
//! constructor makes it impossible to confuse the two namespaces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::gf::{FieldElem, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("operands live over different fields: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("polynomial is not multihomogeneous: monomials `{0}` and `{1}` have different multidegrees")]
    NotMultihomogeneous(String, String),
    #[error("coefficients are not all in the prime subfield")]
    NonPrimeCoefficients,
}

/// A generator of the free algebra.
///
/// The derived order puts all original variables before all split ones and
/// otherwise compares indices; monomial order inherits this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// `x<i>`, `i >= 1`.
    Original(u32),
    /// `y<parent>_<slot>`: slot number `slot` of a split of `x<parent>`.
    Split { parent: u32, slot: u32 },
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Original(i) => write!(f, "x{i}"),
            Variable::Split { parent, slot } => write!(f, "y{parent}_{slot}"),
        }
    }
}

/// A word in the generators. The empty word is the multiplicative unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    word: Vec<Variable>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { word: Vec::new() }
    }

    pub fn from_word(word: Vec<Variable>) -> Self {
        Monomial { word }
    }

    pub fn single(v: Variable) -> Self {
        Monomial { word: vec![v] }
    }

    pub fn word(&self) -> &[Variable] {
        &self.word
    }

    pub fn total_degree(&self) -> usize {
        self.word.len()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Monomial { word }
    }

    /// Exponent of each variable appearing in the word.
    pub fn multidegree(&self) -> MultiDegree {
        let mut degrees = BTreeMap::new();
        for &v in &self.word {
            *degrees.entry(v).or_insert(0u32) += 1;
        }
        MultiDegree { degrees }
    }
}

/// Graded-lexicographic order: shorter words first, then left-to-right by
/// the variable order. Gives `1 < x1 < x2 < x1*x1 < x1*x2 < ...`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        // Collapse runs of equal variables into powers.
        let mut parts: Vec<String> = Vec::new();
        let mut run_var = self.word[0];
        let mut run_len = 1usize;
        for &v in &self.word[1..] {
            if v == run_var {
                run_len += 1;
            } else {
                parts.push(format_power(run_var, run_len));
                run_var = v;
                run_len = 1;
            }
        }
        parts.push(format_power(run_var, run_len));
        write!(f, "{}", parts.join("*"))
    }
}

fn format_power(v: Variable, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Exponent vector of a multihomogeneous polynomial; only variables that
/// actually occur are listed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiDegree {
    degrees: BTreeMap<Variable, u32>,
}

impl MultiDegree {
    pub fn degrees(&self) -> &BTreeMap<Variable, u32> {
        &self.degrees
    }

    pub fn degree_of(&self, v: Variable) -> u32 {
        self.degrees.get(&v).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.degrees.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .map(|(v, d)| format!("{v}:{d}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Sparse noncommutative polynomial with coefficients in a fixed field.
/// Zero coefficients are never stored, so derived equality is semantic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPolynomial {
    field: FieldSpec,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl NcPolynomial {
    pub fn zero(field: &FieldSpec) -> Self {
        NcPolynomial {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FieldSpec, c: FieldElem) -> Self {
        let mut poly = Self::zero(field);
        poly.add_term(Monomial::one(), c);
        poly
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, field.one())
    }

    pub fn variable(field: &FieldSpec, v: Variable) -> Self {
        let mut poly = Self::zero(field);
        poly.add_term(Monomial::single(v), field.one());
        poly
    }

    /// Generator `x<i>`.
    pub fn var(field: &FieldSpec, i: u32) -> Self {
        Self::variable(field, Variable::Original(i))
    }

    pub fn from_terms<I>(field: &FieldSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElem)>,
    {
        let mut poly = Self::zero(field);
        for (m, c) in terms {
            poly.add_term(m, c);
        }
        poly
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).copied().unwrap_or_default()
    }

    /// Accumulate `c * m`, dropping the entry if the total cancels.
    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.field.add(*o.get(), c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_field(&self, other: &NcPolynomial) -> Result<(), AlgError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgError::FieldMismatch(
                self.field.clone(),
                other.field.clone(),
            ))
        }
    }

    pub fn add(&self, other: &NcPolynomial) -> Result<NcPolynomial, AlgError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcPolynomial) -> Result<NcPolynomial, AlgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPolynomial {
        let mut out = Self::zero(&self.field);
        for (m, c) in self.terms() {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: FieldElem) -> NcPolynomial {
        let mut out = Self::zero(&self.field);
        if c.is_zero() {
            return out;
        }
        for (m, a) in self.terms() {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &NcPolynomial) -> Result<NcPolynomial, AlgError> {
        self.check_field(other)?;
        let mut out = Self::zero(&self.field);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.concat(m2), self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> NcPolynomial {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// `[a, b] = a*b - b*a`.
    pub fn commutator(&self, other: &NcPolynomial) -> Result<NcPolynomial, AlgError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Variables occurring with nonzero exponent anywhere in the support.
    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut vars = BTreeSet::new();
        for (m, _) in self.terms() {
            vars.extend(m.word().iter().copied());
        }
        vars
    }

    /// Largest `i` such that `x<i>` occurs (0 if none do).
    pub fn max_original_index(&self) -> u32 {
        self.variables()
            .iter()
            .filter_map(|v| match v {
                Variable::Original(i) => Some(*i),
                Variable::Split { .. } => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// The common multidegree, if one exists (i.e. the polynomial is
    /// multihomogeneous). The zero polynomial counts as multihomogeneous
    /// with empty multidegree.
    pub fn multidegree(&self) -> Result<MultiDegree, AlgError> {
        let mut iter = self.terms();
        let first = match iter.next() {
            None => return Ok(MultiDegree::default()),
            Some((m, _)) => m,
        };
        let md = first.multidegree();
        for (m, _) in iter {
            if m.multidegree() != md {
                return Err(AlgError::NotMultihomogeneous(
                    first.to_string(),
                    m.to_string(),
                ));
            }
        }
        Ok(md)
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.multidegree().is_ok()
    }

    /// The part of the polynomial whose monomials have exactly the given
    /// multidegree (in every variable, including absent ones held at 0).
    pub fn homogeneous_component(&self, md: &MultiDegree) -> NcPolynomial {
        let mut out = Self::zero(&self.field);
        for (m, c) in self.terms() {
            if &m.multidegree() == md {
                out.terms.insert(m.clone(), c);
            }
        }
        out
    }

    /// Simultaneously replace each bound variable by the corresponding
    /// polynomial; unbound variables map to themselves. Substitution is a
    /// ring homomorphism, applied factor by factor along each word.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<Variable, NcPolynomial>,
    ) -> Result<NcPolynomial, AlgError> {
        for image in bindings.values() {
            self.check_field(image)?;
        }
        let mut out = Self::zero(&self.field);
        for (m, c) in self.terms() {
            let mut acc = Self::constant(&self.field, c);
            for &v in m.word() {
                acc = match bindings.get(&v) {
                    Some(image) => acc.mul(image)?,
                    None => acc.mul(&Self::variable(&self.field, v))?,
                };
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// True iff every coefficient lies in the prime subfield.
    pub fn has_prime_coefficients(&self) -> bool {
        self.terms()
            .all(|(_, c)| self.field.in_prime_subfield(c))
    }

    /// Reinterpret over `target`, which must have the same characteristic.
    /// Requires either equal fields or all coefficients in the prime
    /// subfield (those embed with identical coordinates).
    pub fn embed_into(&self, target: &FieldSpec) -> Result<NcPolynomial, AlgError> {
        if &self.field == target {
            return Ok(self.clone());
        }
        if self.field.characteristic() != target.characteristic()
            || !self.has_prime_coefficients()
        {
            return Err(AlgError::FieldMismatch(self.field.clone(), target.clone()));
        }
        let mut out = Self::zero(target);
        for (m, c) in self.terms() {
            // Prime-subfield elements have the same coordinate vector in
            // every extension of the same characteristic.
            out.terms.insert(m.clone(), c);
        }
        Ok(out)
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let coeff = self.field.format_elem(c);
                if m.word().is_empty() {
                    coeff
                } else if coeff == "1" {
                    m.to_string()
                } else if coeff.contains(['+', '-']) {
                    // Extension-field coefficients like t+1 need parentheses.
                    format!("({coeff})*{m}")
                } else {
                    format!("{coeff}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn variable_order_and_display() {
        let x3 = Variable::Original(3);
        let y12 = Variable::Split { parent: 1, slot: 2 };
        assert!(x3 < y12); // originals sort before splits
        assert_eq!(x3.to_string(), "x3");
        assert_eq!(y12.to_string(), "y1_2");
    }

    #[test]
    fn monomial_order_is_graded() {
        let f = f3();
        let x1 = Monomial::single(Variable::Original(1));
        let x2 = Monomial::single(Variable::Original(2));
        let x1x1 = x1.concat(&x1);
        assert!(Monomial::one() < x1);
        assert!(x1 < x2);
        assert!(x2 < x1x1);
        let _ = f;
    }

    #[test]
    fn commutator_square_expansion() {
        // (x1*x2 - x2*x1)^2 = x1x2x1x2 - x1x2^2x1 - x2x1^2x2 + x2x1x2x1.
        let f = f3();
        let x1 = NcPolynomial::var(&f, 1);
        let x2 = NcPolynomial::var(&f, 2);
        let c = x1.commutator(&x2).unwrap();
        let sq = c.pow(2);
        assert_eq!(sq.num_terms(), 4);
        assert_eq!(
            sq.to_string(),
            "x1*x2*x1*x2 + 2*x1*x2^2*x1 + 2*x2*x1^2*x2 + x2*x1*x2*x1"
        );
        // Over F_2 the signs collapse to +1.
        let f2 = FieldSpec::prime(2).unwrap();
        let c2 = NcPolynomial::var(&f2, 1)
            .commutator(&NcPolynomial::var(&f2, 2))
            .unwrap();
        assert_eq!(
            c2.pow(2).to_string(),
            "x1*x2*x1*x2 + x1*x2^2*x1 + x2*x1^2*x2 + x2*x1*x2*x1"
        );
    }

    #[test]
    fn addition_cancels_to_zero() {
        let f = f3();
        let x1 = NcPolynomial::var(&f, 1);
        let sum = x1.add(&x1.neg()).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.to_string(), "0");
    }

    #[test]
    fn multidegree_detects_inhomogeneity() {
        let f = f3();
        let x1 = NcPolynomial::var(&f, 1);
        let x2 = NcPolynomial::var(&f, 2);
        let cube = x1.pow(3);
        let md = cube.multidegree().unwrap();
        assert_eq!(md.degree_of(Variable::Original(1)), 3);
        assert_eq!(md.total(), 3);
        assert!(cube.is_multihomogeneous());

        let mixed = cube.add(&x2).unwrap();
        assert!(!mixed.is_multihomogeneous());

        // x1*x2 + x2*x1 is multihomogeneous (same exponents, different order).
        let sym = x1.mul(&x2).unwrap().add(&x2.mul(&x1).unwrap()).unwrap();
        assert!(sym.is_multihomogeneous());

        assert!(NcPolynomial::zero(&f).is_multihomogeneous());
        assert!(NcPolynomial::zero(&f).multidegree().unwrap().is_empty());
    }

    #[test]
    fn substitute_expands_sums() {
        // x1^2 with x1 -> x1 + x2 gives all four words.
        let f = f3();
        let x1 = NcPolynomial::var(&f, 1);
        let x2 = NcPolynomial::var(&f, 2);
        let sq = x1.pow(2);
        let mut bind = BTreeMap::new();
        bind.insert(Variable::Original(1), x1.add(&x2).unwrap());
        let out = sq.substitute(&bind).unwrap();
        assert_eq!(out.num_terms(), 4);
        assert_eq!(out.to_string(), "x1^2 + x1*x2 + x2*x1 + x2^2");
    }

    #[test]
    fn substitute_leaves_unbound_variables() {
        let f = f3();
        let x1 = NcPolynomial::var(&f, 1);
        let x2 = NcPolynomial::var(&f, 2);
        let prod = x1.mul(&x2).unwrap();
        let mut bind = BTreeMap::new();
        bind.insert(Variable::Original(1), x2.clone());
        let out = prod.substitute(&bind).unwrap();
        assert_eq!(out.to_string(), "x2^2");
    }

    #[test]
    fn homogeneous_component_selects_exact_multidegree() {
        let f = f3();
        let x1 = NcPolynomial::var(&f, 1);
        let x2 = NcPolynomial::var(&f, 2);
        // x1^2 + x1*x2 + x2
        let p = x1
            .pow(2)
            .add(&x1.mul(&x2).unwrap())
            .unwrap()
            .add(&x2)
            .unwrap();
        let md = x1.mul(&x2).unwrap().multidegree().unwrap();
        let comp = p.homogeneous_component(&md);
        assert_eq!(comp.to_string(), "x1*x2");
    }

    #[test]
    fn display_extension_coefficients_parenthesized() {
        let f4 = FieldSpec::with_default_modulus(2, 2).unwrap();
        let theta = f4.basis_power(1);
        let theta_plus_one = f4.add(theta, f4.one());
        let x1 = NcPolynomial::var(&f4, 1);
        let p = x1.scale(theta_plus_one);
        assert_eq!(p.to_string(), "(t+1)*x1");
        let q = NcPolynomial::constant(&f4, theta).add(&x1).unwrap();
        assert_eq!(q.to_string(), "t + x1");
    }

    #[test]
    fn embedding_requires_prime_coefficients() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f4 = FieldSpec::with_default_modulus(2, 2).unwrap();
        let p = NcPolynomial::var(&f2, 1);
        let embedded = p.embed_into(&f4).unwrap();
        assert_eq!(embedded.field(), &f4);
        assert_eq!(embedded.to_string(), "x1");

        let theta_poly = NcPolynomial::var(&f4, 1).scale(f4.basis_power(1));
        assert!(theta_poly.embed_into(&f2).is_err());
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(p.embed_into(&f3).is_err());
    }

    #[test]
    fn prime_coefficient_check() {
        let f4 = FieldSpec::with_default_modulus(2, 2).unwrap();
        let x1 = NcPolynomial::var(&f4, 1);
        assert!(x1.has_prime_coefficients());
        assert!(!x1.scale(f4.basis_power(1)).has_prime_coefficients());
    }

    #[test]
    fn max_original_index_ignores_splits() {
        let f = f3();
        let mut p = NcPolynomial::var(&f, 7);
        p.add_term(
            Monomial::single(Variable::Split { parent: 9, slot: 1 }),
            f.one(),
        );
        assert_eq!(p.max_original_index(), 7);
        assert_eq!(NcPolynomial::zero(&f).max_original_index(), 0);
    }
}
