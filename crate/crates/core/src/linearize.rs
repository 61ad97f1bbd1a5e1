//! Partial linearization of multihomogeneous noncommutative polynomials.
//!
//! For a polynomial of degree `m_i` in `x<i>`, choose a composition
//! `b = (b_1, ..., b_k)` of `m_i` and split `x<i>` into fresh slot
//! variables `y<i>_1, ..., y<i>_k`. The partial linearization is the part
//! of `f(..., y<i>_1 + ... + y<i>_k, ...)` that has degree exactly `b_j`
//! in each `y<i>_j`. Concretely, every monomial of `f` fans out into one
//! term per way of distributing the occurrences of `x<i>` so that slot `j`
//! receives `b_j` of them.
//!
//! A [`LinearizationSpec`] picks one composition per variable;
//! [`enumerate_specs`] walks the full cartesian family in a fixed order, so
//! scans over specs (and reported witnesses) are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::freealg::{Monomial, MultiDegree, NcPolynomial, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("polynomial is not multihomogeneous: {0}")]
    NotMultihomogeneous(String),
    #[error("polynomial contains split variables; linearization expects originals only")]
    SplitVariablesPresent,
    #[error("spec does not match the polynomial: {0}")]
    SpecMismatch(String),
    #[error("cannot parse spec `{text}`: {msg}")]
    BadSpecSyntax { text: String, msg: String },
}

/// An ordered tuple of positive parts with a fixed sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, LinError> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(LinError::BadSpecSyntax {
                text: format!("{parts:?}"),
                msg: "composition parts must be positive".to_string(),
            });
        }
        Ok(Composition { parts })
    }

    pub fn single(m: u32) -> Self {
        Composition { parts: vec![m] }
    }

    pub fn all_ones(m: u32) -> Self {
        Composition {
            parts: vec![1; m as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// True iff every part is a power of `p` (including `p^0 = 1`).
    pub fn all_parts_p_power(&self, p: u64) -> bool {
        self.parts.iter().all(|&part| {
            let mut v = u64::from(part);
            while v % p == 0 {
                v /= p;
            }
            v == 1
        })
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().map(|p| p.to_string()).join(","))
    }
}

/// All compositions of `m`, ordered by number of parts and, within one
/// length, with earlier parts as large as possible first:
/// `compositions_of(3)` is `[(3), (2,1), (1,2), (1,1,1)]`.
pub fn compositions_of(m: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    for k in 1..=m {
        let mut prefix = Vec::with_capacity(k as usize);
        push_compositions(m, k, &mut prefix, &mut out);
    }
    out
}

fn push_compositions(m: u32, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if k == 1 {
        prefix.push(m);
        out.push(Composition {
            parts: prefix.clone(),
        });
        prefix.pop();
        return;
    }
    // Leave at least 1 for each of the remaining k-1 parts.
    for first in (1..=m - (k - 1)).rev() {
        prefix.push(first);
        push_compositions(m - first, k - 1, prefix, out);
        prefix.pop();
    }
}

/// One composition per variable: how each `x<i>` splits into slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizationSpec {
    per_var: BTreeMap<u32, Composition>,
}

impl LinearizationSpec {
    pub fn new(per_var: BTreeMap<u32, Composition>) -> Self {
        LinearizationSpec { per_var }
    }

    /// The spec that leaves every variable whole (one slot each).
    pub fn trivial_for(md: &MultiDegree) -> Result<Self, LinError> {
        Self::uniform_for(md, Composition::single)
    }

    /// The spec that fully multilinearizes (all parts equal to one).
    pub fn full_for(md: &MultiDegree) -> Result<Self, LinError> {
        Self::uniform_for(md, Composition::all_ones)
    }

    fn uniform_for(md: &MultiDegree, make: fn(u32) -> Composition) -> Result<Self, LinError> {
        let mut per_var = BTreeMap::new();
        for (&v, &d) in md.degrees() {
            let Variable::Original(i) = v else {
                return Err(LinError::SplitVariablesPresent);
            };
            per_var.insert(i, make(d));
        }
        Ok(LinearizationSpec { per_var })
    }

    pub fn per_var(&self) -> &BTreeMap<u32, Composition> {
        &self.per_var
    }

    pub fn composition_for(&self, var: u32) -> Option<&Composition> {
        self.per_var.get(&var)
    }

    /// All slot variables `y<i>_<j>` in ascending `(i, j)` order. This is
    /// the canonical order in which scans index assignment tuples.
    pub fn slots(&self) -> Vec<Variable> {
        let mut slots = Vec::new();
        for (&parent, comp) in &self.per_var {
            for slot in 1..=comp.len() as u32 {
                slots.push(Variable::Split { parent, slot });
            }
        }
        slots
    }

    pub fn num_slots(&self) -> usize {
        self.per_var.values().map(Composition::len).sum()
    }

    /// The multidegree of the linearized polynomial: slot `y<i>_<j>` has
    /// degree equal to part `j` of the composition for `x<i>`.
    pub fn slot_multidegree(&self) -> BTreeMap<Variable, u32> {
        let mut md = BTreeMap::new();
        for (&parent, comp) in &self.per_var {
            for (j, &part) in comp.parts().iter().enumerate() {
                md.insert(
                    Variable::Split {
                        parent,
                        slot: j as u32 + 1,
                    },
                    part,
                );
            }
        }
        md
    }

    pub fn without_var(&self, var: u32) -> LinearizationSpec {
        let mut per_var = self.per_var.clone();
        per_var.remove(&var);
        LinearizationSpec { per_var }
    }

    pub fn with_var(&self, var: u32, comp: Composition) -> LinearizationSpec {
        let mut per_var = self.per_var.clone();
        per_var.insert(var, comp);
        LinearizationSpec { per_var }
    }

    /// Check this spec against a multidegree: same variables, matching sums.
    pub fn validate_against(&self, md: &MultiDegree) -> Result<(), LinError> {
        for (&v, &d) in md.degrees() {
            let Variable::Original(i) = v else {
                return Err(LinError::SplitVariablesPresent);
            };
            match self.per_var.get(&i) {
                None => {
                    return Err(LinError::SpecMismatch(format!(
                        "no composition for x{i} (degree {d})"
                    )))
                }
                Some(comp) if comp.sum() != d => {
                    return Err(LinError::SpecMismatch(format!(
                        "composition {comp} for x{i} sums to {}, degree is {d}",
                        comp.sum()
                    )))
                }
                Some(_) => {}
            }
        }
        for &i in self.per_var.keys() {
            if md.degree_of(Variable::Original(i)) == 0 {
                return Err(LinError::SpecMismatch(format!(
                    "spec mentions x{i}, which does not occur"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for LinearizationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .per_var
            .iter()
            .map(|(i, comp)| format!("x{i}:{comp}"))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl FromStr for LinearizationSpec {
    type Err = LinError;

    /// Parse `x1:2,1|x2:1`.
    fn from_str(text: &str) -> Result<Self, LinError> {
        let bad = |msg: String| LinError::BadSpecSyntax {
            text: text.to_string(),
            msg,
        };
        let mut per_var = BTreeMap::new();
        for chunk in text.split('|') {
            let chunk = chunk.trim();
            let (var, parts_text) = chunk
                .split_once(':')
                .ok_or_else(|| bad(format!("`{chunk}` is missing `:`")))?;
            let var = var.trim();
            let index: u32 = var
                .strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| bad(format!("`{var}` is not a variable")))?;
            let mut parts = Vec::new();
            for p in parts_text.split(',') {
                let part: u32 = p
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("`{p}` is not a part")))?;
                if part == 0 {
                    return Err(bad("composition parts must be positive".to_string()));
                }
                parts.push(part);
            }
            if per_var.insert(index, Composition { parts }).is_some() {
                return Err(bad(format!("x{index} listed twice")));
            }
        }
        if per_var.is_empty() {
            return Err(bad("empty spec".to_string()));
        }
        Ok(LinearizationSpec { per_var })
    }
}

/// Every spec for the given multidegree: the cartesian product of
/// `compositions_of(m_i)` over the variables, with the composition of the
/// highest-indexed variable cycling fastest (odometer order, `x1` slowest).
pub fn enumerate_specs(md: &MultiDegree) -> Result<Vec<LinearizationSpec>, LinError> {
    let mut vars = Vec::new();
    for (&v, &d) in md.degrees() {
        let Variable::Original(i) = v else {
            return Err(LinError::SplitVariablesPresent);
        };
        vars.push((i, compositions_of(d)));
    }
    if vars.is_empty() {
        return Ok(vec![LinearizationSpec {
            per_var: BTreeMap::new(),
        }]);
    }
    let specs = vars
        .iter()
        .map(|(_, comps)| comps.iter())
        .multi_cartesian_product()
        .map(|choice| {
            let per_var = vars
                .iter()
                .map(|(i, _)| *i)
                .zip(choice.into_iter().cloned())
                .collect();
            LinearizationSpec { per_var }
        })
        .collect();
    Ok(specs)
}

/// Keep only specs all of whose composition parts are powers of `p`.
///
/// Over characteristic `p` these are the linearizations that can carry
/// independent information; the rest are redundant for identity testing
/// once the whole family is scanned.
pub fn filter_p_power(specs: Vec<LinearizationSpec>, p: u64) -> Vec<LinearizationSpec> {
    specs
        .into_iter()
        .filter(|s| s.per_var.values().all(|c| c.all_parts_p_power(p)))
        .collect()
}

/// The partial linearization of `f` along `spec`.
///
/// `f` must be multihomogeneous in original variables and `spec` must cover
/// exactly its variables with matching degree sums. The result lives in the
/// slot variables `y<i>_<j>`.
pub fn partial_linearize(
    f: &NcPolynomial,
    spec: &LinearizationSpec,
) -> Result<NcPolynomial, LinError> {
    let md = f
        .multidegree()
        .map_err(|e| LinError::NotMultihomogeneous(e.to_string()))?;
    spec.validate_against(&md)?;

    let mut out = NcPolynomial::zero(f.field());
    for (mono, coeff) in f.terms() {
        let word = mono.word();
        // Positions of each variable within this word.
        let mut positions: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (pos, &v) in word.iter().enumerate() {
            let Variable::Original(i) = v else {
                return Err(LinError::SplitVariablesPresent);
            };
            positions.entry(i).or_default().push(pos);
        }
        // For each variable, every way to deal its positions into slots of
        // the prescribed sizes; a coloring records (position, slot) pairs.
        let per_var_colorings: Vec<Vec<Vec<(usize, u32)>>> = positions
            .iter()
            .map(|(i, pos)| {
                let comp = spec.per_var.get(i).expect("validated above");
                slot_colorings(pos, comp.parts())
            })
            .collect();

        let mut emit = |choice: &[&Vec<(usize, u32)>]| {
            let mut new_word: Vec<Variable> = word.to_vec();
            for (var_idx, coloring) in choice.iter().enumerate() {
                let parent = *positions.keys().nth(var_idx).expect("aligned");
                for &(pos, slot) in coloring.iter() {
                    new_word[pos] = Variable::Split { parent, slot };
                }
            }
            out.add_term(Monomial::from_word(new_word), coeff);
        };

        if per_var_colorings.is_empty() {
            // Constant monomial: nothing to split.
            out.add_term(mono.clone(), coeff);
        } else {
            for choice in per_var_colorings.iter().multi_cartesian_product() {
                emit(&choice);
            }
        }
    }
    Ok(out)
}

/// All ways to label `positions` with slots `1..=k` so that slot `j` gets
/// exactly `parts[j-1]` labels. Generated by choosing slot 1's positions,
/// then slot 2's from the remainder, and so on.
fn slot_colorings(positions: &[usize], parts: &[u32]) -> Vec<Vec<(usize, u32)>> {
    fn recurse(
        remaining: &[usize],
        parts: &[u32],
        slot: u32,
        acc: &mut Vec<(usize, u32)>,
        out: &mut Vec<Vec<(usize, u32)>>,
    ) {
        match parts {
            [] => out.push(acc.clone()),
            [first, rest @ ..] => {
                for chosen in remaining.iter().copied().combinations(*first as usize) {
                    let next: Vec<usize> = remaining
                        .iter()
                        .copied()
                        .filter(|p| !chosen.contains(p))
                        .collect();
                    let mark = acc.len();
                    acc.extend(chosen.iter().map(|&p| (p, slot)));
                    recurse(&next, rest, slot + 1, acc, out);
                    acc.truncate(mark);
                }
            }
        }
    }
    let mut out = Vec::new();
    recurse(positions, parts, 1, &mut Vec::new(), &mut out);
    out
}

/// The complete multilinearization: every variable split into degree-1
/// slots. The result is multilinear in `sum(m_i)` slot variables.
pub fn full_multilinearization(f: &NcPolynomial) -> Result<NcPolynomial, LinError> {
    let md = f
        .multidegree()
        .map_err(|e| LinError::NotMultihomogeneous(e.to_string()))?;
    partial_linearize(f, &LinearizationSpec::full_for(&md)?)
}
