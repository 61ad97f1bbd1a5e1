//! Exact arithmetic in prime fields `F_p` and extension fields `F_{p^m}`.
//!
//! An extension field is realized as `F_p[t]/(modulus)` for a monic
//! irreducible `modulus` of degree `m`. Elements are coordinate vectors in
//! the basis `1, t, ..., t^{m-1}`; the zero element is the all-zero vector,
//! so equality is plain coordinate comparison.
//!
//! Elements do not carry a back-reference to their field: all arithmetic
//! goes through [`FieldSpec`] methods, and containers (polynomials,
//! matrices) store the spec once and check compatibility at their own
//! boundaries.

use std::fmt;
use thiserror::Error;

/// Largest supported extension degree. Covers every `p^m <= 81` plus
/// F_32 and F_64 from the built-in modulus table.
pub const MAX_EXT_DEGREE: usize = 6;

/// Characteristics are kept small so products of residues fit in `u64`
/// and irreducibility can be checked by exhaustive trial division.
pub const MAX_CHARACTERISTIC: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u64),
    #[error("characteristic {0} exceeds the supported bound {MAX_CHARACTERISTIC}")]
    UnsupportedCharacteristic(u64),
    #[error("extension degree {0} outside supported range 1..={MAX_EXT_DEGREE}")]
    UnsupportedDegree(usize),
    #[error("modulus has degree {got}, expected {want}")]
    DegreeMismatch { got: usize, want: usize },
    #[error("modulus must be monic")]
    NonMonicModulus,
    #[error("modulus required for extension degree m > 1")]
    MissingModulus,
    #[error("prime field takes no modulus")]
    UnexpectedModulus,
    #[error("modulus is reducible over F_{p}: divisible by {factor}")]
    ReducibleModulus { p: u64, factor: String },
    #[error("no built-in modulus for F_{p}^{m}")]
    NoDefaultModulus { p: u64, m: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid coordinates for this field: {0}")]
    InvalidCoordinates(String),
    #[error("cannot parse field spec `{text}`: {msg}")]
    BadFieldSyntax { text: String, msg: String },
    #[error("cannot parse field element `{text}`: {msg}")]
    BadElementSyntax { text: String, msg: String },
}

/// Element of `F_{p^m}`: coordinates in the basis `1, t, ..., t^{m-1}`.
/// Coordinates at positions `>= m` are always zero, which keeps derived
/// equality and hashing canonical across fields of different degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    coords: [u64; MAX_EXT_DEGREE],
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Raw coordinate slice (full width; trailing entries are zero).
    pub fn raw_coords(&self) -> &[u64; MAX_EXT_DEGREE] {
        &self.coords
    }

    fn from_slice(coords: &[u64]) -> Self {
        let mut out = [0u64; MAX_EXT_DEGREE];
        out[..coords.len()].copy_from_slice(coords);
        FieldElem { coords: out }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self
            .coords
            .iter()
            .rposition(|&c| c != 0)
            .map_or(1, |i| i + 1);
        write!(f, "FieldElem{:?}", &self.coords[..last])
    }
}

/// A validated description of `F_p` or `F_{p^m} = F_p[t]/(modulus)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Ascending coefficients, length `m + 1`, monic; present iff `m > 1`.
    modulus: Option<Vec<u64>>,
}

/// Built-in default moduli for desk-scale fields (`p^m <= 81`).
const DEFAULT_MODULI: &[(u64, usize, &[u64])] = &[
    (2, 2, &[1, 1, 1]),          // t^2+t+1
    (2, 3, &[1, 1, 0, 1]),       // t^3+t+1
    (2, 4, &[1, 1, 0, 0, 1]),    // t^4+t+1
    (2, 5, &[1, 0, 1, 0, 0, 1]), // t^5+t^2+1
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),    // t^2+1
    (3, 3, &[1, 2, 0, 1]), // t^3+2t+1
    (3, 4, &[2, 1, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (7, 2, &[1, 0, 1]),
];

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, GfError> {
        Self::new(p, 1, None)
    }

    /// `F_{p^m}` with an explicit modulus (ascending coefficients, length `m+1`).
    pub fn extension(p: u64, m: usize, modulus: &[u64]) -> Result<Self, GfError> {
        Self::new(p, m, Some(modulus.to_vec()))
    }

    /// `F_{p^m}` using the built-in modulus table.
    pub fn with_default_modulus(p: u64, m: usize) -> Result<Self, GfError> {
        if m == 1 {
            return Self::prime(p);
        }
        let entry = DEFAULT_MODULI
            .iter()
            .find(|&&(tp, tm, _)| tp == p && tm == m)
            .ok_or(GfError::NoDefaultModulus { p, m })?;
        Self::new(p, m, Some(entry.2.to_vec()))
    }

    /// Full constructor. `modulus` is required iff `m > 1`; every
    /// invariant (primality, degree, monicity, irreducibility) is checked.
    pub fn new(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<Self, GfError> {
        if p > MAX_CHARACTERISTIC {
            return Err(GfError::UnsupportedCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(GfError::NonPrimeP(p));
        }
        if m < 1 || m > MAX_EXT_DEGREE {
            return Err(GfError::UnsupportedDegree(m));
        }
        if m == 1 {
            return match modulus {
                None => Ok(FieldSpec {
                    p,
                    m,
                    modulus: None,
                }),
                Some(_) => Err(GfError::UnexpectedModulus),
            };
        }
        let mut modulus = modulus.ok_or(GfError::MissingModulus)?;
        for c in modulus.iter_mut() {
            *c %= p;
        }
        upoly_trim(&mut modulus);
        if modulus.len() != m + 1 {
            return Err(GfError::DegreeMismatch {
                got: modulus.len().saturating_sub(1),
                want: m,
            });
        }
        if modulus[m] != 1 {
            return Err(GfError::NonMonicModulus);
        }
        // Trial division by every monic polynomial of degree 1..=m/2. Any
        // nontrivial factorization contains a factor in that range.
        for d in 1..=m / 2 {
            let mut candidate = vec![0u64; d + 1];
            candidate[d] = 1;
            loop {
                let (_, r) = upoly_divmod(&modulus, &candidate, p);
                if r.is_empty() {
                    return Err(GfError::ReducibleModulus {
                        p,
                        factor: format_upoly(&candidate),
                    });
                }
                // Next candidate: increment the d low coefficients base p.
                let mut i = 0;
                while i < d {
                    candidate[i] += 1;
                    if candidate[i] < p {
                        break;
                    }
                    candidate[i] = 0;
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
        }
        Ok(FieldSpec {
            p,
            m,
            modulus: Some(modulus),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Number of elements, `p^m`.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.m as u32)
    }

    /// The prime subfield `F_p`.
    pub fn prime_subfield(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            m: 1,
            modulus: None,
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::default()
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// Integer reduced into the prime subfield.
    pub fn from_int(&self, n: u64) -> FieldElem {
        let mut coords = [0u64; MAX_EXT_DEGREE];
        coords[0] = n % self.p;
        FieldElem { coords }
    }

    /// Element from explicit coordinates (length at most `m`, residues mod p).
    pub fn elem(&self, coords: &[u64]) -> Result<FieldElem, GfError> {
        if coords.len() > self.m {
            return Err(GfError::InvalidCoordinates(format!(
                "{} coordinates for extension degree {}",
                coords.len(),
                self.m
            )));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= self.p) {
            return Err(GfError::InvalidCoordinates(format!(
                "coordinate {c} not a residue mod {}",
                self.p
            )));
        }
        Ok(FieldElem::from_slice(coords))
    }

    /// `t^k` for `k < m` (the basis powers `1, t, ..., t^{m-1}`).
    pub fn basis_power(&self, k: usize) -> FieldElem {
        debug_assert!(k < self.m);
        let mut coords = [0u64; MAX_EXT_DEGREE];
        coords[k] = 1;
        FieldElem { coords }
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let mut coords = [0u64; MAX_EXT_DEGREE];
        for i in 0..self.m {
            coords[i] = (a.coords[i] + b.coords[i]) % self.p;
        }
        FieldElem { coords }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let mut coords = [0u64; MAX_EXT_DEGREE];
        for i in 0..self.m {
            coords[i] = (self.p - a.coords[i]) % self.p;
        }
        FieldElem { coords }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.m == 1 {
            let mut coords = [0u64; MAX_EXT_DEGREE];
            coords[0] = a.coords[0] * b.coords[0] % self.p;
            return FieldElem { coords };
        }
        // Schoolbook product followed by reduction by the monic modulus.
        let m = self.m;
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..m {
            if a.coords[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + a.coords[i] * b.coords[j]) % self.p;
            }
        }
        let modulus = self.modulus.as_ref().expect("extension field has modulus");
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let sub = c * modulus[j] % self.p;
                prod[i - m + j] = (prod[i - m + j] + self.p - sub) % self.p;
            }
        }
        let mut coords = [0u64; MAX_EXT_DEGREE];
        coords[..m].copy_from_slice(&prod[..m]);
        FieldElem { coords }
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        if self.m == 1 {
            // Fermat: a^(p-2).
            return Ok(self.pow(a, self.p - 2));
        }
        let modulus = self.modulus.as_ref().expect("extension field has modulus");
        let mut a_poly: Vec<u64> = a.coords[..self.m].to_vec();
        upoly_trim(&mut a_poly);
        let inv = upoly_modular_inverse(&a_poly, modulus, self.p);
        Ok(FieldElem::from_slice(&inv))
    }

    /// Coordinates of `a` in the basis `1, t, ..., t^{m-1}` (length `m`).
    pub fn decompose(&self, a: FieldElem) -> Vec<u64> {
        a.coords[..self.m].to_vec()
    }

    /// True iff `a` lies in the prime subfield.
    pub fn in_prime_subfield(&self, a: FieldElem) -> bool {
        a.coords[1..].iter().all(|&c| c == 0)
    }

    /// Element with enumeration index `e` (little-endian base-p digits),
    /// so index order is `0, 1, ..., p-1, t, t+1, ...`.
    pub fn elem_at(&self, mut e: u64) -> FieldElem {
        let mut coords = [0u64; MAX_EXT_DEGREE];
        for c in coords.iter_mut().take(self.m) {
            *c = e % self.p;
            e /= self.p;
        }
        debug_assert_eq!(e, 0, "index out of range for field order");
        FieldElem { coords }
    }

    pub fn elem_index(&self, a: FieldElem) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.m).rev() {
            idx = idx * self.p + a.coords[i];
        }
        idx
    }

    /// All elements in index order. Panics if the order exceeds `u64`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let order = u64::try_from(self.order()).expect("field too large to enumerate");
        (0..order).map(move |e| self.elem_at(e))
    }

    pub fn format_elem(&self, a: FieldElem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        if self.m == 1 {
            return a.coords[0].to_string();
        }
        format_upoly_trimmed(&a.coords[..self.m])
    }

    /// Parse an element: a nonnegative integer, or a polynomial in `t` of
    /// degree `< m` such as `t+1` or `2*t^2+t+1`.
    pub fn parse_elem(&self, text: &str) -> Result<FieldElem, GfError> {
        let coeffs = parse_upoly(text, self.p).map_err(|msg| GfError::BadElementSyntax {
            text: text.to_string(),
            msg,
        })?;
        if coeffs.len() > self.m {
            return Err(GfError::BadElementSyntax {
                text: text.to_string(),
                msg: format!("degree {} too large for this field", coeffs.len() - 1),
            });
        }
        Ok(FieldElem::from_slice(&coeffs))
    }

    /// Parse a field spec: `p`, `p^m` (built-in modulus), or `p^m:modulus`.
    pub fn parse(text: &str) -> Result<FieldSpec, GfError> {
        let bad = |msg: &str| GfError::BadFieldSyntax {
            text: text.to_string(),
            msg: msg.to_string(),
        };
        let text = text.trim();
        let (base, modulus_text) = match text.split_once(':') {
            Some((b, m)) => (b.trim(), Some(m.trim())),
            None => (text, None),
        };
        let (p_text, m_text) = match base.split_once('^') {
            Some((p, m)) => (p.trim(), Some(m.trim())),
            None => (base, None),
        };
        let p: u64 = p_text.parse().map_err(|_| bad("characteristic is not a number"))?;
        let m: usize = match m_text {
            Some(t) => t.parse().map_err(|_| bad("extension degree is not a number"))?,
            None => 1,
        };
        match modulus_text {
            None => {
                if m == 1 {
                    FieldSpec::prime(p)
                } else {
                    FieldSpec::with_default_modulus(p, m)
                }
            }
            Some(mt) => {
                let coeffs = parse_upoly(mt, p).map_err(|msg| GfError::BadFieldSyntax {
                    text: text.to_string(),
                    msg,
                })?;
                FieldSpec::new(p, m, Some(coeffs))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(
                f,
                "{}^{}:{}",
                self.p,
                self.m,
                format_upoly(self.modulus.as_ref().expect("extension field has modulus"))
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over F_p: ascending coefficients, no trailing
// zeros. Used only for modulus validation and extension-field inversion.

fn upoly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn upoly_divmod(num: &[u64], den: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem: Vec<u64> = num.to_vec();
    upoly_trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let lead_inv = fp_inv(den[dd], p);
    let mut quot = vec![0u64; rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem[rem.len() - 1] * lead_inv % p;
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            let sub = c * dj % p;
            rem[k + j] = (rem[k + j] + p - sub) % p;
        }
        upoly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    upoly_trim(&mut quot);
    (quot, rem)
}

fn upoly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    upoly_trim(&mut out);
    out
}

fn upoly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    upoly_trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `modulus`, by extended Euclid.
fn upoly_modular_inverse(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut r0: Vec<u64> = modulus.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = upoly_divmod(&r0, &r1, p);
        let t = upoly_sub(&t0, &upoly_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    // r0 is a nonzero constant: the modulus is irreducible and a is nonzero.
    assert_eq!(r0.len(), 1, "modulus not irreducible or zero operand");
    let scale = fp_inv(r0[0], p);
    let mut out = t0;
    for c in out.iter_mut() {
        *c = *c * scale % p;
    }
    let (_, reduced) = upoly_divmod(&out, modulus, p);
    reduced
}

fn format_upoly(coeffs: &[u64]) -> String {
    format_upoly_trimmed(coeffs)
}

fn format_upoly_trimmed(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}*t"),
            (k, 1) => format!("t^{k}"),
            (k, c) => format!("{c}*t^{k}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Parse `2*t^3+t+1`-style text into ascending coefficients mod p.
/// `+` and `-` are both accepted between terms.
fn parse_upoly(text: &str, p: u64) -> Result<Vec<u64>, String> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err("empty element".to_string());
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    let mut sign_neg = false;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign_neg = bytes[0] == b'-';
        i = 1;
    }
    loop {
        if i >= bytes.len() {
            return Err("trailing operator".to_string());
        }
        // term := nat ['*' tpow] | tpow ; tpow := 't' ['^' nat]
        let mut coeff: Option<u64> = None;
        if bytes[i].is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: u64 = text[start..i]
                .parse()
                .map_err(|_| "number too large".to_string())?;
            coeff = Some(n % p);
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                if i >= bytes.len() || bytes[i] != b't' {
                    return Err(format!("expected `t` at offset {i}"));
                }
            }
        }
        let mut power = 0usize;
        if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err("missing exponent".to_string());
                }
                power = text[start..i]
                    .parse()
                    .map_err(|_| "exponent too large".to_string())?;
            }
        } else if coeff.is_none() {
            return Err(format!("unexpected character at offset {i}"));
        }
        if power > MAX_EXT_DEGREE {
            return Err(format!("power t^{power} too large"));
        }
        let mut c = coeff.unwrap_or(1);
        if sign_neg {
            c = (p - c % p) % p;
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = (coeffs[power] + c) % p;
        if i == bytes.len() {
            break;
        }
        match bytes[i] {
            b'+' => sign_neg = false,
            b'-' => sign_neg = true,
            other => return Err(format!("unexpected `{}` at offset {i}", other as char)),
        }
        i += 1;
    }
    upoly_trim(&mut coeffs);
    Ok(coeffs)
}
