//! Descent from extension-field to prime-field coefficients.
//!
//! A polynomial over `F_{p^m}` splits along the basis `1, t, ..., t^{m-1}`
//! into components with coefficients in `F_p`:
//! `c = c_0 + t*c_1 + ... + t^{m-1}*c_{m-1}`. Splitting commutes with
//! partial linearization and with evaluation at prime-field matrices, so:
//!
//! - if `c` is an identity, every component is an identity;
//! - if `c` is central for `M_n`, some component is itself central — and
//!   it has prime-field coefficients and the same multidegree.
//!
//! [`descend`] makes the second point effective: it classifies every
//! component and returns the first central one together with a replayable
//! certificate (the commutator scan, a nonzero-value witness, and the
//! classification of every sibling component).

use thiserror::Error;

use crate::freealg::{AlgError, NcPolynomial};
use crate::gf::{FieldElem, FieldSpec};
use crate::verify::{
    classify_central, scan_linearizations, ScanOutcome, ScanSummary, Status, VerifyError,
    VerifyOptions, Witness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescentError {
    #[error("input is not central: classified as {status:?}")]
    InputNotCentral {
        status: Status,
        /// The certificate behind the classification (a non-scalar value
        /// for `Neither`; absent for `Identity`).
        witness: Option<Box<Witness>>,
    },
    #[error("none of the {} prime-field components is central", reports.len())]
    NoCentralComponent {
        /// Classification of every component, in basis-power order.
        reports: Vec<ComponentReport>,
    },
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// One basis coordinate of a coefficient decomposition: the basis power
/// `t^power` and the prime-field polynomial it multiplies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub power: usize,
    /// `t^power` as an element of the extension field.
    pub eta: FieldElem,
    /// The component, with coefficients in `F_p`.
    pub poly: NcPolynomial,
}

/// A polynomial over `F_{p^m}` written as a combination of prime-field
/// polynomials along the power basis. Only nonzero components are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    field: FieldSpec,
    components: Vec<Component>,
}

impl Decomposition {
    /// The extension field the input lived over.
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// `sum_t t^power * component_t`, back over the extension field.
    /// Always reproduces the decomposed input exactly.
    pub fn reconstruct(&self) -> Result<NcPolynomial, AlgError> {
        let mut acc = NcPolynomial::zero(&self.field);
        for comp in &self.components {
            let embedded = comp.poly.embed_into(&self.field)?;
            acc = acc.add(&embedded.scale(comp.eta))?;
        }
        Ok(acc)
    }
}

/// Split every coefficient of `c` into its prime-field coordinates and
/// regroup by basis power. Requires a nonzero, non-constant,
/// multihomogeneous input; each component is then multihomogeneous of the
/// same multidegree (its support is a subset of the input's support).
pub fn fp_components(c: &NcPolynomial) -> Result<Decomposition, DescentError> {
    let md = c.multidegree().map_err(VerifyError::from)?;
    if md.is_empty() {
        return Err(VerifyError::EmptyOrConstant.into());
    }
    let field = c.field().clone();
    let prime = field.prime_subfield();
    let mut per_power: Vec<NcPolynomial> = (0..field.degree())
        .map(|_| NcPolynomial::zero(&prime))
        .collect();
    for (mono, coeff) in c.terms() {
        for (t, &coord) in field.decompose(coeff).iter().enumerate() {
            if coord != 0 {
                per_power[t].add_term(mono.clone(), prime.from_int(coord));
            }
        }
    }
    let components = per_power
        .into_iter()
        .enumerate()
        .filter(|(_, poly)| !poly.is_zero())
        .map(|(power, poly)| Component {
            power,
            eta: field.basis_power(power),
            poly,
        })
        .collect();
    Ok(Decomposition { field, components })
}

/// How one component fared during descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentStatus {
    Identity,
    Central,
    Neither,
    /// The commutator scan vanished but no nonzero value was found within
    /// the search limits, so central-vs-identity stayed open.
    Unresolved,
}

impl From<Status> for ComponentStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Identity => ComponentStatus::Identity,
            Status::Central => ComponentStatus::Central,
            Status::Neither => ComponentStatus::Neither,
        }
    }
}

/// Per-component diagnostic attached to every descent certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub power: usize,
    pub status: ComponentStatus,
}

/// Everything needed to re-check a descent result independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentCertificate {
    /// Basis power of the returned component.
    pub chosen_power: usize,
    /// Summary of the commutator-family scan that certifies the chosen
    /// component takes only scalar values.
    pub commutator_scan: ScanSummary,
    /// A tuple of prime-field matrices where the chosen component is
    /// nonzero.
    pub nonzero_witness: Witness,
    /// Witness from the centrality pre-check of the input (absent when
    /// the caller skipped the check).
    pub input_witness: Option<Witness>,
    /// Classification of every component, in basis-power order.
    pub components: Vec<ComponentReport>,
    /// Total evaluations across all scans, deterministic across engines.
    pub evaluations: u128,
}

/// A successful descent: a prime-field central polynomial plus its
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentOutcome {
    /// The chosen component, over `F_p`, same multidegree as the input.
    pub chosen: NcPolynomial,
    pub certificate: DescentCertificate,
}

/// From a central polynomial with extension-field coefficients, produce a
/// prime-field central polynomial of the same multidegree.
///
/// With `check_input` set, the input is first classified over its own
/// coefficient field and rejected unless `Central`. Every prime-field
/// component is then classified; the lowest basis power that classifies
/// `Central` wins. If no component can be certified central, the error
/// reports either the full diagnostics (`NoCentralComponent`) or, when
/// some component remained unresolved, the search failure that blocked
/// it.
pub fn descend(
    c: &NcPolynomial,
    n: usize,
    opts: &VerifyOptions,
    check_input: bool,
) -> Result<DescentOutcome, DescentError> {
    let decomposition = fp_components(c)?;
    let mut evaluations: u128 = 0;

    let mut input_witness = None;
    if check_input {
        let verdict = classify_central(c, n, opts)?;
        evaluations += verdict.evaluations;
        if verdict.status != Status::Central {
            return Err(DescentError::InputNotCentral {
                status: verdict.status,
                witness: verdict.certificates.into_iter().next().map(Box::new),
            });
        }
        input_witness = verdict.certificates.into_iter().next();
    }

    let mut reports = Vec::with_capacity(decomposition.components().len());
    let mut chosen: Option<(usize, crate::verify::Verdict)> = None;
    let mut first_unresolved: Option<VerifyError> = None;
    for (idx, comp) in decomposition.components().iter().enumerate() {
        match classify_central(&comp.poly, n, opts) {
            Ok(verdict) => {
                evaluations += verdict.evaluations;
                reports.push(ComponentReport {
                    power: comp.power,
                    status: verdict.status.into(),
                });
                if verdict.status == Status::Central && chosen.is_none() {
                    chosen = Some((idx, verdict));
                }
            }
            Err(err @ VerifyError::NoWitnessFound { .. }) => {
                reports.push(ComponentReport {
                    power: comp.power,
                    status: ComponentStatus::Unresolved,
                });
                first_unresolved.get_or_insert(err);
            }
            Err(other) => return Err(other.into()),
        }
    }

    match chosen {
        Some((idx, verdict)) => {
            let comp = &decomposition.components()[idx];
            Ok(DescentOutcome {
                chosen: comp.poly.clone(),
                certificate: DescentCertificate {
                    chosen_power: comp.power,
                    commutator_scan: verdict
                        .commutator_scan
                        .expect("central verdicts scan the commutator"),
                    nonzero_witness: verdict
                        .certificates
                        .into_iter()
                        .next()
                        .expect("central verdicts carry a witness"),
                    input_witness,
                    components: reports,
                    evaluations,
                },
            })
        }
        None => match first_unresolved {
            Some(err) => Err(err.into()),
            None => Err(DescentError::NoCentralComponent { reports }),
        },
    }
}

/// Identity testing through the decomposition: scan the input's
/// linearization family over its own field, and each prime-field
/// component's family over `F_p`.
///
/// The unit-tuple values of the input's linearizations decompose
/// coordinate-wise into the components' values, so the whole scan vanishes
/// exactly when every per-component scan does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySplit {
    /// Scan of the input over the extension field.
    pub whole: ScanOutcome,
    /// Per-component scans, in basis-power order.
    pub components: Vec<(usize, ScanOutcome)>,
}

impl IdentitySplit {
    /// Whether each component passed, in basis-power order.
    pub fn component_flags(&self) -> Vec<bool> {
        self.components.iter().map(|(_, o)| o.holds).collect()
    }
}

/// Run the whole-input scan and the per-component scans; see
/// [`IdentitySplit`].
pub fn identity_split(
    f: &NcPolynomial,
    n: usize,
    opts: &VerifyOptions,
) -> Result<IdentitySplit, DescentError> {
    let decomposition = fp_components(f)?;
    let whole = scan_linearizations(f, n, opts)?;
    let mut components = Vec::with_capacity(decomposition.components().len());
    for comp in decomposition.components() {
        let outcome = scan_linearizations(&comp.poly, n, opts)?;
        components.push((comp.power, outcome));
    }
    Ok(IdentitySplit { whole, components })
}
