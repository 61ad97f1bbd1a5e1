//! Identity and centrality testing for `M_n` over finite fields.
//!
//! The workhorse is a scan of every partial linearization of a
//! multihomogeneous polynomial, evaluated at every tuple of matrix units.
//! If the whole family vanishes, the polynomial vanishes on all of `M_n`:
//! expanding each argument in the matrix-unit basis and collecting terms by
//! slot degrees rewrites any evaluation as a combination of exactly these
//! scanned values. The converse direction is delicate over a finite
//! coefficient field (isolating one linearization needs more scalars than
//! the field may have), so a non-vanishing scan refutes the polynomial
//! itself only when it also yields a direct witness; otherwise it refutes
//! the linearization family, and results are reported with that
//! distinction.
//!
//! Scans run over a single global index space — specs in enumeration
//! order, unit tuples in mixed-radix order within each spec — so the first
//! hit is canonical. The parallel engine uses a position-ordered search and
//! returns the same witness as the sequential one.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freealg::{AlgError, NcPolynomial, Variable};
use crate::gf::{FieldSpec, GfError};
use crate::linearize::{
    enumerate_specs, filter_p_power, partial_linearize, LinError, LinearizationSpec,
};
use crate::mateval::{
    evaluate, matrix_count, matrix_from_index, matrix_units, Assignment, FFMatrix, MatError,
};

/// Default ceiling on evaluations per scan phase.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Default number of random trials for sampled checks.
pub const DEFAULT_SAMPLE_TRIALS: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("polynomial is zero or constant; there is nothing to test")]
    EmptyOrConstant,
    #[error("this test requires coefficients in the prime subfield")]
    NonPrimeCoefficients,
    #[error("scan needs {needed} evaluations, budget is {budget}")]
    CapExceeded { needed: u128, budget: u64 },
    #[error(
        "no nonzero value found: units and {sampled} random samples vanished{}",
        if *.exhausted { ", exhaustive search vanished" } else { ", exhaustive search skipped (over budget)" }
    )]
    NoWitnessFound { sampled: u64, exhausted: bool },
    #[error("witness does not match: recomputed {recomputed}, recorded {recorded}")]
    WitnessMismatch {
        recomputed: String,
        recorded: String,
    },
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// How scan loops execute. `Parallel` degrades to sequential execution when
/// the `parallel` feature is disabled; results are identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Sequential,
    Parallel,
}

impl Default for Engine {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Engine::Parallel
        } else {
            Engine::Sequential
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Restrict scans to linearizations whose composition parts are all
    /// powers of the characteristic.
    pub p_power_filter: bool,
    /// Hard ceiling on planned evaluations per scan phase.
    pub budget: u64,
    /// Trials for sampled checks.
    pub sample_trials: u64,
    /// Seed for sampled checks; equal seeds give equal runs.
    pub seed: u64,
    pub engine: Engine,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            p_power_filter: false,
            budget: DEFAULT_BUDGET,
            sample_trials: DEFAULT_SAMPLE_TRIALS,
            seed: 0,
            engine: Engine::default(),
        }
    }
}

/// A checkable certificate: an assignment together with the value it
/// produces. When `spec` is present the assignment binds the slot variables
/// of that linearization and the value belongs to the linearized
/// polynomial; otherwise it binds the polynomial's own variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub spec: Option<LinearizationSpec>,
    pub assignment: Assignment,
    pub value: FFMatrix,
}

impl Witness {
    /// Recompute the value of this witness against `f`.
    pub fn recompute(&self, f: &NcPolynomial) -> Result<FFMatrix, VerifyError> {
        let poly = match &self.spec {
            Some(spec) => partial_linearize(f, spec)?,
            None => f.clone(),
        };
        Ok(evaluate(&poly, &self.assignment)?)
    }

    /// Recompute and compare with the recorded value.
    pub fn replay(&self, f: &NcPolynomial) -> Result<(), VerifyError> {
        let recomputed = self.recompute(f)?;
        if recomputed == self.value {
            Ok(())
        } else {
            Err(VerifyError::WitnessMismatch {
                recomputed: recomputed.to_string(),
                recorded: self.value.to_string(),
            })
        }
    }

    pub fn to_record(&self) -> WitnessRecord {
        WitnessRecord {
            field: self.assignment.field().to_string(),
            n: self.assignment.n(),
            spec: self.spec.as_ref().map(|s| s.to_string()),
            assignment: self
                .assignment
                .bindings()
                .iter()
                .map(|(v, m)| (v.to_string(), m.to_string()))
                .collect(),
            value: self.value.to_string(),
        }
    }
}

/// Serializable form of a [`Witness`]; everything is plain text so records
/// survive in reports and can be replayed later.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub field: String,
    pub n: usize,
    pub spec: Option<String>,
    pub assignment: BTreeMap<String, String>,
    pub value: String,
}

impl WitnessRecord {
    pub fn to_witness(&self) -> Result<Witness, VerifyError> {
        let field = FieldSpec::parse(&self.field)?;
        let spec = match &self.spec {
            None => None,
            Some(text) => Some(text.parse::<LinearizationSpec>()?),
        };
        let mut assignment = Assignment::new(self.n, &field);
        for (var_text, mat_text) in &self.assignment {
            let var = parse_variable(var_text).ok_or(LinError::BadSpecSyntax {
                text: var_text.clone(),
                msg: "not a variable".to_string(),
            })?;
            assignment.bind(var, FFMatrix::parse(mat_text, &field)?)?;
        }
        let value = FFMatrix::parse(&self.value, &field)?;
        Ok(Witness {
            spec,
            assignment,
            value,
        })
    }

    /// Parse, recompute against `f`, and compare with the recorded value.
    pub fn replay(&self, f: &NcPolynomial) -> Result<(), VerifyError> {
        self.to_witness()?.replay(f)
    }
}

fn parse_variable(text: &str) -> Option<Variable> {
    if let Some(rest) = text.strip_prefix('x') {
        let i: u32 = rest.parse().ok()?;
        (i >= 1).then_some(Variable::Original(i))
    } else if let Some(rest) = text.strip_prefix('y') {
        let (parent, slot) = rest.split_once('_')?;
        let parent: u32 = parent.parse().ok()?;
        let slot: u32 = slot.parse().ok()?;
        (parent >= 1 && slot >= 1).then_some(Variable::Split { parent, slot })
    } else {
        None
    }
}

/// Totals for one scan phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanSummary {
    /// Linearizations scanned (0 for direct scans).
    pub specs: usize,
    /// Size of the scanned tuple space.
    pub tuples: u128,
    /// True iff every evaluation vanished.
    pub vanished: bool,
}

/// Result of a linearization-family scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    /// True iff every linearization vanished at every unit tuple. This
    /// certifies that the polynomial vanishes on all of `M_n`.
    pub holds: bool,
    /// First failing evaluation in canonical order, if any.
    pub witness: Option<Witness>,
    pub specs_scanned: usize,
    pub tuples_total: u128,
    /// Evaluations a sequential scan performs: the witness position + 1,
    /// or the whole space. Deterministic across engines.
    pub evaluations: u128,
}

/// Result of a direct scan or sampling run over matrix tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectOutcome {
    /// True iff every tried evaluation vanished. For exhaustive scans this
    /// certifies the polynomial vanishes on `M_n`; for sampled runs it
    /// only reports that no counterexample was found.
    pub holds: bool,
    pub witness: Option<Witness>,
    pub tuples_total: u128,
    pub evaluations: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// The full linearization family vanishes on matrix units, so the
    /// polynomial vanishes on `M_n`.
    Identity,
    /// All commutators with a fresh variable vanish (every value is
    /// scalar), and a nonzero value is exhibited.
    Central,
    /// Some linearization takes a non-scalar value on matrix units; the
    /// certificate pins it down.
    Neither,
}

/// Outcome of [`classify_central`], with the certificates backing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// `Central`: a direct nonzero-value witness. `Neither`: a witness
    /// whose linearization takes a non-scalar value. `Identity`: empty
    /// (the certificate is the exhaustive scan itself).
    pub certificates: Vec<Witness>,
    /// Scan of the polynomial's own linearization family.
    pub self_scan: ScanSummary,
    /// Scan of the commutator with a fresh variable (absent when the
    /// polynomial was already an identity).
    pub commutator_scan: Option<ScanSummary>,
    /// Total evaluations across all phases, deterministic across engines.
    pub evaluations: u128,
}

// ---------------------------------------------------------------------------
// Scan plumbing.

/// One linearization prepared for scanning.
struct TableEntry {
    spec: LinearizationSpec,
    poly: NcPolynomial,
    slots: Vec<Variable>,
}

/// The full family of linearizations of one polynomial, with prefix sums
/// for addressing a global (spec, tuple) index space.
struct LinTable {
    entries: Vec<TableEntry>,
    prefix: Vec<u128>,
    total: u128,
}

fn build_table(f: &NcPolynomial, n: usize, p_power_filter: bool) -> Result<LinTable, VerifyError> {
    let md = f.multidegree()?;
    let mut specs = enumerate_specs(&md)?;
    if p_power_filter {
        specs = filter_p_power(specs, f.field().characteristic());
    }
    let base = (n * n) as u128;
    let mut entries = Vec::with_capacity(specs.len());
    let mut prefix = Vec::with_capacity(specs.len());
    let mut total: u128 = 0;
    for spec in specs {
        let poly = partial_linearize(f, &spec)?;
        let slots = spec.slots();
        let tuples = base
            .checked_pow(slots.len() as u32)
            .unwrap_or(u128::MAX);
        prefix.push(total);
        total = total.saturating_add(tuples);
        entries.push(TableEntry { spec, poly, slots });
    }
    Ok(LinTable {
        entries,
        prefix,
        total,
    })
}

impl LinTable {
    /// Build the witness for a global index, evaluating the linearization
    /// at the unit tuple the index encodes. Returns `None` if it vanishes.
    fn check(
        &self,
        units: &[FFMatrix],
        n: usize,
        field: &FieldSpec,
        global: u64,
    ) -> Option<Witness> {
        let global = u128::from(global);
        // Find the entry whose range contains `global`.
        let k = match self.prefix.binary_search(&global) {
            Ok(k) => k,
            Err(k) => k - 1,
        };
        let entry = &self.entries[k];
        let mut local = (global - self.prefix[k]) as u64;
        let base = (n * n) as u64;
        let len = entry.slots.len();
        let mut digits = vec![0usize; len];
        for s in (0..len).rev() {
            digits[s] = (local % base) as usize;
            local /= base;
        }
        let mut assignment = Assignment::new(n, field);
        for (slot, &d) in entry.slots.iter().zip(&digits) {
            assignment
                .bind(*slot, units[d].clone())
                .expect("units share the scan field");
        }
        let value = evaluate(&entry.poly, &assignment).expect("all slots bound");
        if value.is_zero() {
            None
        } else {
            Some(Witness {
                spec: Some(entry.spec.clone()),
                assignment,
                value,
            })
        }
    }
}

/// Find the lowest index in `0..total` at which `check` yields a witness.
/// Both engines return the same (leftmost) result.
fn find_first<F>(total: u64, engine: Engine, check: F) -> Option<(u64, Witness)>
where
    F: Fn(u64) -> Option<Witness> + Sync,
{
    match engine {
        Engine::Sequential => (0..total).find_map(|i| check(i).map(|w| (i, w))),
        Engine::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..total)
                    .into_par_iter()
                    .find_map_first(|i| check(i).map(|w| (i, w)))
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..total).find_map(|i| check(i).map(|w| (i, w)))
            }
        }
    }
}

fn require_scannable(f: &NcPolynomial) -> Result<(), VerifyError> {
    let md = f.multidegree()?;
    if md.is_empty() {
        return Err(VerifyError::EmptyOrConstant);
    }
    Ok(())
}

/// Scan every partial linearization of `f` at every matrix-unit tuple of
/// `M_n` over `f`'s coefficient field. Accepts extension-field
/// coefficients; see [`is_absolute_identity`] for the prime-coefficient
/// entry point.
pub fn scan_linearizations(
    f: &NcPolynomial,
    n: usize,
    opts: &VerifyOptions,
) -> Result<ScanOutcome, VerifyError> {
    require_scannable(f)?;
    let table = build_table(f, n, opts.p_power_filter)?;
    if table.total > u128::from(opts.budget) {
        return Err(VerifyError::CapExceeded {
            needed: table.total,
            budget: opts.budget,
        });
    }
    let field = f.field().clone();
    let units = matrix_units(n, &field);
    let total = table.total as u64;
    let hit = find_first(total, opts.engine, |g| table.check(&units, n, &field, g));
    Ok(match hit {
        Some((g, witness)) => ScanOutcome {
            holds: false,
            witness: Some(witness),
            specs_scanned: table.entries.len(),
            tuples_total: table.total,
            evaluations: u128::from(g) + 1,
        },
        None => ScanOutcome {
            holds: true,
            witness: None,
            specs_scanned: table.entries.len(),
            tuples_total: table.total,
            evaluations: table.total,
        },
    })
}

/// Absolute-identity test: scan the complete linearization family of a
/// prime-coefficient polynomial on matrix units.
///
/// `holds = true` certifies that `f` vanishes on `M_n(F)` for *every*
/// field `F` of the coefficient characteristic — unit tuples have 0/1
/// entries, so the scanned values do not depend on the argument field.
/// When the scan fails, the witness exhibits a partial linearization with
/// a nonzero value; that refutes `f` itself whenever the witness spec
/// leaves the variables whole (or `f` is multilinear), and refutes the
/// linearization family otherwise.
pub fn is_absolute_identity(
    f: &NcPolynomial,
    n: usize,
    opts: &VerifyOptions,
) -> Result<ScanOutcome, VerifyError> {
    if !f.has_prime_coefficients() {
        return Err(VerifyError::NonPrimeCoefficients);
    }
    scan_linearizations(f, n, opts)
}

/// Planned scan size for [`scan_linearizations`]: the number of
/// linearizations and the number of evaluations (unit tuples across all of
/// them, saturating on overflow).
pub fn cost_estimate(
    f: &NcPolynomial,
    n: usize,
    p_power_filter: bool,
) -> Result<(usize, u128), VerifyError> {
    require_scannable(f)?;
    let table = build_table(f, n, p_power_filter)?;
    Ok((table.entries.len(), table.total))
}

// ---------------------------------------------------------------------------
// Direct scans in the polynomial's own variables.

/// Scan `f` over all tuples drawn from `choices`, in mixed-radix index
/// order (first variable most significant).
fn scan_choices(
    f: &NcPolynomial,
    vars: &[Variable],
    choices: &[FFMatrix],
    n: usize,
    field: &FieldSpec,
    engine: Engine,
) -> (u128, Option<(u64, Witness)>) {
    let base = choices.len() as u128;
    let total = base.checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    debug_assert!(total <= u128::from(u64::MAX));
    let check = |mut local: u64| -> Option<Witness> {
        let mut digits = vec![0usize; vars.len()];
        for s in (0..vars.len()).rev() {
            digits[s] = (local % base as u64) as usize;
            local /= base as u64;
        }
        let mut assignment = Assignment::new(n, field);
        for (&v, &d) in vars.iter().zip(&digits) {
            assignment
                .bind(v, choices[d].clone())
                .expect("choices share the scan field");
        }
        let value = evaluate(f, &assignment).expect("all variables bound");
        (!value.is_zero()).then_some(Witness {
            spec: None,
            assignment,
            value,
        })
    };
    (total, find_first(total as u64, engine, check))
}

/// Exhaustive identity test: evaluate `f` at every tuple of matrices over
/// its coefficient field. Fails with `CapExceeded` if `q^(n^2 * d)` tuples
/// exceed the budget.
pub fn is_identity_bruteforce(
    f: &NcPolynomial,
    n: usize,
    opts: &VerifyOptions,
) -> Result<DirectOutcome, VerifyError> {
    require_scannable(f)?;
    let field = f.field().clone();
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    let per_var = matrix_count(n, &field).ok_or(VerifyError::CapExceeded {
        needed: u128::MAX,
        budget: opts.budget,
    })?;
    let total = per_var
        .checked_pow(vars.len() as u32)
        .unwrap_or(u128::MAX);
    if total > u128::from(opts.budget) {
        return Err(VerifyError::CapExceeded {
            needed: total,
            budget: opts.budget,
        });
    }
    let choices: Vec<FFMatrix> = (0..per_var as u64)
        .map(|i| matrix_from_index(n, &field, i))
        .collect();
    let (tuples_total, hit) = scan_choices(f, &vars, &choices, n, &field, opts.engine);
    Ok(match hit {
        Some((g, witness)) => DirectOutcome {
            holds: false,
            witness: Some(witness),
            tuples_total,
            evaluations: u128::from(g) + 1,
        },
        None => DirectOutcome {
            holds: true,
            witness: None,
            tuples_total,
            evaluations: tuples_total,
        },
    })
}

/// Randomized identity check: evaluate `f` at `sample_trials` uniformly
/// random matrix tuples (entries drawn independently). A found witness is
/// conclusive; `holds = true` only means no counterexample turned up.
pub fn is_identity_sampled(
    f: &NcPolynomial,
    n: usize,
    opts: &VerifyOptions,
) -> Result<DirectOutcome, VerifyError> {
    require_scannable(f)?;
    let field = f.field().clone();
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    let order = u64::try_from(field.order()).expect("field too large to sample");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for trial in 0..opts.sample_trials {
        let mut assignment = Assignment::new(n, &field);
        for &v in &vars {
            let entries: Vec<_> = (0..n * n)
                .map(|_| field.elem_at(rng.random_range(0..order)))
                .collect();
            let m = FFMatrix::from_entries(n, &field, entries).expect("square entry count");
            assignment.bind(v, m).expect("same field");
        }
        let value = evaluate(f, &assignment).expect("all variables bound");
        if !value.is_zero() {
            return Ok(DirectOutcome {
                holds: false,
                witness: Some(Witness {
                    spec: None,
                    assignment,
                    value,
                }),
                tuples_total: u128::from(opts.sample_trials),
                evaluations: u128::from(trial) + 1,
            });
        }
    }
    Ok(DirectOutcome {
        holds: true,
        witness: None,
        tuples_total: u128::from(opts.sample_trials),
        evaluations: u128::from(opts.sample_trials),
    })
}

/// Search for a tuple of matrices where `f` evaluates to something
/// nonzero: first matrix-unit tuples, then (budget permitting) all
/// matrices, then random samples. The returned witness is canonical
/// whenever the unit or exhaustive stage finds it.
///
/// Also returns the number of evaluations spent.
pub fn find_nonzero_value(
    f: &NcPolynomial,
    n: usize,
    opts: &VerifyOptions,
) -> Result<(Witness, u128), VerifyError> {
    require_scannable(f)?;
    let field = f.field().clone();
    let vars: Vec<Variable> = f.variables().into_iter().collect();
    let mut evaluations: u128 = 0;

    // Stage 1: matrix-unit tuples.
    let units = matrix_units(n, &field);
    let unit_total = ((n * n) as u128)
        .checked_pow(vars.len() as u32)
        .unwrap_or(u128::MAX);
    if unit_total <= u128::from(opts.budget) {
        let (total, hit) = scan_choices(f, &vars, &units, n, &field, opts.engine);
        match hit {
            Some((g, witness)) => return Ok((witness, u128::from(g) + 1)),
            None => evaluations += total,
        }
    }

    // Stage 2: every matrix tuple, if it fits the budget.
    let mut exhausted = false;
    match is_identity_bruteforce(f, n, opts) {
        Ok(outcome) => {
            evaluations += outcome.evaluations;
            if let Some(witness) = outcome.witness {
                return Ok((witness, evaluations));
            }
            exhausted = true;
        }
        Err(VerifyError::CapExceeded { .. }) => {}
        Err(other) => return Err(other),
    }

    // Stage 3: random samples.
    if !exhausted {
        let outcome = is_identity_sampled(f, n, opts)?;
        evaluations += outcome.evaluations;
        if let Some(witness) = outcome.witness {
            return Ok((witness, evaluations));
        }
    }
    Err(VerifyError::NoWitnessFound {
        sampled: if exhausted { 0 } else { opts.sample_trials },
        exhausted,
    })
}

/// Classify `f` as an identity, a central polynomial, or neither, for
/// `M_n` over `f`'s coefficient field.
///
/// Three phases, each deterministic:
///
/// 1. scan `f`'s linearization family on unit tuples — if it vanishes,
///    `f` is an identity;
/// 2. scan the family of `[f, x_fresh]` the same way — if some
///    linearization takes a nonzero value, its projection onto `f`'s
///    variables takes a non-scalar value, and `f` is not (stably) central;
/// 3. otherwise every value of `f` on `M_n` is scalar; exhibit a nonzero
///    value to conclude `Central`, or fail with `NoWitnessFound`.
pub fn classify_central(
    f: &NcPolynomial,
    n: usize,
    opts: &VerifyOptions,
) -> Result<Verdict, VerifyError> {
    require_scannable(f)?;

    // Phase 1: is f itself an identity by the linearization criterion?
    let self_outcome = scan_linearizations(f, n, opts)?;
    let self_scan = ScanSummary {
        specs: self_outcome.specs_scanned,
        tuples: self_outcome.tuples_total,
        vanished: self_outcome.holds,
    };
    let mut evaluations = self_outcome.evaluations;
    if self_outcome.holds {
        return Ok(Verdict {
            status: Status::Identity,
            certificates: Vec::new(),
            self_scan,
            commutator_scan: None,
            evaluations,
        });
    }

    // Phase 2: does [f, x_fresh] vanish by the same criterion?
    let fresh = f.max_original_index() + 1;
    let fresh_poly = NcPolynomial::var(f.field(), fresh);
    let commutator = f.commutator(&fresh_poly)?;
    let comm_outcome = scan_linearizations(&commutator, n, opts)?;
    let commutator_scan = ScanSummary {
        specs: comm_outcome.specs_scanned,
        tuples: comm_outcome.tuples_total,
        vanished: comm_outcome.holds,
    };
    evaluations += comm_outcome.evaluations;

    if let Some(witness) = comm_outcome.witness {
        // Project away the fresh variable: the same unit assignment makes
        // the corresponding linearization of f itself non-scalar (it fails
        // to commute with the fresh slot's unit).
        let comm_spec = witness.spec.as_ref().expect("scan witnesses carry specs");
        let reduced_spec = comm_spec.without_var(fresh);
        let fresh_slot = Variable::Split {
            parent: fresh,
            slot: 1,
        };
        let mut reduced = Assignment::new(n, f.field());
        for (&v, m) in witness.assignment.bindings() {
            if v != fresh_slot {
                reduced.bind(v, m.clone())?;
            }
        }
        let lin = partial_linearize(f, &reduced_spec)?;
        let value = evaluate(&lin, &reduced)?;
        debug_assert!(!value.is_scalar());
        return Ok(Verdict {
            status: Status::Neither,
            certificates: vec![Witness {
                spec: Some(reduced_spec),
                assignment: reduced,
                value,
            }],
            self_scan,
            commutator_scan: Some(commutator_scan),
            evaluations,
        });
    }

    // Phase 3: all values are scalar; find one that is nonzero.
    let (witness, spent) = find_nonzero_value(f, n, opts)?;
    evaluations += spent;
    Ok(Verdict {
        status: Status::Central,
        certificates: vec![witness],
        self_scan,
        commutator_scan: Some(commutator_scan),
        evaluations,
    })
}
