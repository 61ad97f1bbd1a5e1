//! Square matrices over a finite field, matrix units, and evaluation of
//! noncommutative polynomials at matrix arguments.
//!
//! The matrix units `e_ij` (single 1 in row i, column j) are the canonical
//! basis that identity scans substitute into linearized polynomials; full
//! brute-force scans enumerate all of `M_n(F_q)` instead, in a fixed index
//! order so that reported witnesses are reproducible.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::freealg::{NcPolynomial, Variable};
use crate::gf::{FieldElem, FieldSpec, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix sizes differ: {0}x{0} vs {1}x{1}")]
    SizeMismatch(usize, usize),
    #[error("operands live over different fields: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("characteristic mismatch: coefficients mod {0}, matrices mod {1}")]
    CharacteristicMismatch(u64, u64),
    #[error("variable {0} has no matrix assigned")]
    UnboundVariable(String),
    #[error("enumeration needs {needed} matrices, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("matrix count overflows the supported range")]
    CountOverflow,
    #[error("cannot parse matrix `{text}`: {msg}")]
    BadMatrixSyntax { text: String, msg: String },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Dense `n x n` matrix over a fixed finite field, row-major entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFMatrix {
    n: usize,
    field: FieldSpec,
    entries: Vec<FieldElem>,
}

impl FFMatrix {
    pub fn zero(n: usize, field: &FieldSpec) -> Self {
        FFMatrix {
            n,
            field: field.clone(),
            entries: vec![FieldElem::default(); n * n],
        }
    }

    pub fn identity(n: usize, field: &FieldSpec) -> Self {
        let mut m = Self::zero(n, field);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// The matrix unit `e_ij` (1-based row and column).
    pub fn unit(n: usize, field: &FieldSpec, i: usize, j: usize) -> Self {
        assert!(i >= 1 && i <= n && j >= 1 && j <= n, "unit index out of range");
        let mut m = Self::zero(n, field);
        m.entries[(i - 1) * n + (j - 1)] = field.one();
        m
    }

    pub fn from_entries(
        n: usize,
        field: &FieldSpec,
        entries: Vec<FieldElem>,
    ) -> Result<Self, MatError> {
        if entries.len() != n * n {
            return Err(MatError::SizeMismatch(n, entries.len()));
        }
        Ok(FFMatrix {
            n,
            field: field.clone(),
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    /// Entry at 0-based `(row, col)`.
    pub fn at(&self, row: usize, col: usize) -> FieldElem {
        self.entries[row * self.n + col]
    }

    fn check_compat(&self, other: &FFMatrix) -> Result<(), MatError> {
        if self.n != other.n {
            return Err(MatError::SizeMismatch(self.n, other.n));
        }
        if self.field != other.field {
            return Err(MatError::FieldMismatch(
                self.field.clone(),
                other.field.clone(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &FFMatrix) -> Result<FFMatrix, MatError> {
        self.check_compat(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FFMatrix {
            n: self.n,
            field: self.field.clone(),
            entries,
        })
    }

    pub fn sub(&self, other: &FFMatrix) -> Result<FFMatrix, MatError> {
        self.check_compat(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(FFMatrix {
            n: self.n,
            field: self.field.clone(),
            entries,
        })
    }

    pub fn neg(&self) -> FFMatrix {
        FFMatrix {
            n: self.n,
            field: self.field.clone(),
            entries: self.entries.iter().map(|&a| self.field.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElem) -> FFMatrix {
        FFMatrix {
            n: self.n,
            field: self.field.clone(),
            entries: self.entries.iter().map(|&a| self.field.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix, MatError> {
        self.check_compat(other)?;
        let n = self.n;
        let mut entries = vec![FieldElem::default(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = self.field.mul(a, other.entries[k * n + j]);
                    entries[i * n + j] = self.field.add(entries[i * n + j], prod);
                }
            }
        }
        Ok(FFMatrix {
            n,
            field: self.field.clone(),
            entries,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElem::is_zero)
    }

    /// True iff the matrix is a scalar multiple of the identity (the
    /// center of the full matrix algebra); the zero matrix counts.
    pub fn is_scalar(&self) -> bool {
        let diag = self.entries[0];
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.entries[i * self.n + j];
                if i == j {
                    if e != diag {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reinterpret over `target`: allowed when the fields are equal, or the
    /// characteristics agree and every entry lies in the prime subfield.
    pub fn embed_into(&self, target: &FieldSpec) -> Result<FFMatrix, MatError> {
        if &self.field == target {
            return Ok(self.clone());
        }
        if self.field.characteristic() != target.characteristic() {
            return Err(MatError::CharacteristicMismatch(
                self.field.characteristic(),
                target.characteristic(),
            ));
        }
        if !self.entries.iter().all(|&e| self.field.in_prime_subfield(e)) {
            return Err(MatError::FieldMismatch(self.field.clone(), target.clone()));
        }
        Ok(FFMatrix {
            n: self.n,
            field: target.clone(),
            entries: self.entries.clone(),
        })
    }

    /// Parse `[1,0;0,t+1]`: rows separated by `;`, entries by `,`.
    pub fn parse(text: &str, field: &FieldSpec) -> Result<FFMatrix, MatError> {
        let bad = |msg: &str| MatError::BadMatrixSyntax {
            text: text.to_string(),
            msg: msg.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("expected surrounding brackets"))?;
        let rows: Vec<&str> = inner.split(';').collect();
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != n {
                return Err(bad(&format!(
                    "row `{row}` has {} entries, expected {n}",
                    cells.len()
                )));
            }
            for cell in cells {
                entries.push(field.parse_elem(cell.trim())?);
            }
        }
        Ok(FFMatrix {
            n,
            field: field.clone(),
            entries,
        })
    }
}

impl fmt::Display for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.field.format_elem(self.entries[i * self.n + j]))?;
            }
        }
        write!(f, "]")
    }
}

/// The matrix units of `M_n`, row-major: `e_11, e_12, ..., e_1n, e_21, ...`.
pub fn matrix_units(n: usize, field: &FieldSpec) -> Vec<FFMatrix> {
    let mut units = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            units.push(FFMatrix::unit(n, field, i, j));
        }
    }
    units
}

/// `|M_n(F_q)| = q^(n^2)`, or `None` on overflow.
pub fn matrix_count(n: usize, field: &FieldSpec) -> Option<u128> {
    let exp = u32::try_from(n * n).ok()?;
    field.order().checked_pow(exp)
}

/// The matrix with enumeration index `idx`: base-q digits of `idx` written
/// across the row-major entries, most significant digit first, each digit
/// an element index. Index 0 is the zero matrix.
pub fn matrix_from_index(n: usize, field: &FieldSpec, mut idx: u64) -> FFMatrix {
    let q = u64::try_from(field.order()).expect("field too large to enumerate");
    let mut entries = vec![FieldElem::default(); n * n];
    for k in (0..n * n).rev() {
        entries[k] = field.elem_at(idx % q);
        idx /= q;
    }
    debug_assert_eq!(idx, 0, "matrix index out of range");
    FFMatrix {
        n,
        field: field.clone(),
        entries,
    }
}

/// Every matrix in `M_n(F_q)` in index order, refusing to build more than
/// `cap` of them.
pub fn all_matrices(n: usize, field: &FieldSpec, cap: u64) -> Result<Vec<FFMatrix>, MatError> {
    let needed = matrix_count(n, field).ok_or(MatError::CountOverflow)?;
    if needed > u128::from(cap) {
        return Err(MatError::CapExceeded { needed, cap });
    }
    Ok((0..needed as u64)
        .map(|idx| matrix_from_index(n, field, idx))
        .collect())
}

/// A binding of variables to matrices, all of one size over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    n: usize,
    field: FieldSpec,
    bindings: BTreeMap<Variable, FFMatrix>,
}

impl Assignment {
    pub fn new(n: usize, field: &FieldSpec) -> Self {
        Assignment {
            n,
            field: field.clone(),
            bindings: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I>(n: usize, field: &FieldSpec, pairs: I) -> Result<Self, MatError>
    where
        I: IntoIterator<Item = (Variable, FFMatrix)>,
    {
        let mut a = Self::new(n, field);
        for (v, m) in pairs {
            a.bind(v, m)?;
        }
        Ok(a)
    }

    pub fn bind(&mut self, v: Variable, m: FFMatrix) -> Result<(), MatError> {
        if m.n != self.n {
            return Err(MatError::SizeMismatch(self.n, m.n));
        }
        if m.field != self.field {
            return Err(MatError::FieldMismatch(self.field.clone(), m.field));
        }
        self.bindings.insert(v, m);
        Ok(())
    }

    pub fn get(&self, v: Variable) -> Option<&FFMatrix> {
        self.bindings.get(&v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn bindings(&self) -> &BTreeMap<Variable, FFMatrix> {
        &self.bindings
    }
}

/// Evaluate `f` at the assignment: sum over terms of the coefficient times
/// the product of the bound matrices along the word. The empty word
/// contributes a scalar matrix.
///
/// The coefficient field may differ from the matrix field only if the
/// characteristics agree and all coefficients lie in the prime subfield
/// (prime-subfield elements carry over unchanged).
pub fn evaluate(f: &NcPolynomial, a: &Assignment) -> Result<FFMatrix, MatError> {
    if f.field() != a.field() {
        if f.field().characteristic() != a.field().characteristic() {
            return Err(MatError::CharacteristicMismatch(
                f.field().characteristic(),
                a.field().characteristic(),
            ));
        }
        if !f.has_prime_coefficients() {
            return Err(MatError::FieldMismatch(
                f.field().clone(),
                a.field().clone(),
            ));
        }
    }
    let mut acc = FFMatrix::zero(a.n(), a.field());
    for (mono, coeff) in f.terms() {
        let mut prod = FFMatrix::identity(a.n(), a.field());
        for &v in mono.word() {
            let m = a
                .get(v)
                .ok_or_else(|| MatError::UnboundVariable(v.to_string()))?;
            prod = prod.mul(m)?;
        }
        // Prime-subfield coordinates are identical across compatible
        // fields, so the raw element can be used in the matrix field.
        acc = acc.add(&prod.scale(coeff))?;
    }
    Ok(acc)
}
