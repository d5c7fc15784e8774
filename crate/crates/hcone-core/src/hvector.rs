//! H-vectors and the grading they live under.
//!
//! An [`HVector`] is the finite sequence of graded-component dimensions of an
//! artinian module, widened to non-negative rationals so that cone arithmetic
//! is closed. Vectors are kept canonical: no trailing zeros, so the zero
//! vector is the empty sequence and equality is by value.

use std::cmp::Ordering;
use std::fmt;

use crate::rational::{ParseRationalError, Rational};

/// The grading weight: `deg(x) = 1` and `deg(y) = n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    n: usize,
}

impl Grading {
    pub fn new(n: usize) -> Result<Self, GradingError> {
        if n == 0 {
            return Err(GradingError);
        }
        Ok(Grading { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Splits `d = n*m + r` with `0 <= r <= n-1`.
    pub fn split(&self, d: usize) -> (usize, usize) {
        (d / self.n, d % self.n)
    }

    /// Entry `i` of the maximal h-vector: `floor(i/n) + 1`, and `1` for
    /// negative `i` (the convention used by the decomposition loop).
    pub fn max_coeff(&self, i: i64) -> usize {
        if i < 0 {
            1
        } else {
            (i as usize) / self.n + 1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingError;

impl fmt::Display for GradingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "grading weight must be >= 1")
    }
}

impl std::error::Error for GradingError {}

/// A finite sequence of non-negative rationals indexed by degree, canonical
/// (no trailing zeros). Vectors of different lengths compare by zero-padding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HVector {
    entries: Vec<Rational>,
}

impl HVector {
    /// Canonicalizes: trims trailing zeros. Rejects negative entries.
    pub fn new(mut entries: Vec<Rational>) -> Result<Self, HVectorError> {
        for (i, e) in entries.iter().enumerate() {
            if e.is_negative() {
                return Err(HVectorError::NegativeEntry {
                    index: i,
                    value: e.to_string(),
                });
            }
        }
        while entries.last().is_some_and(Rational::is_zero) {
            entries.pop();
        }
        Ok(HVector { entries })
    }

    pub fn zero() -> Self {
        HVector { entries: Vec::new() }
    }

    /// Convenience constructor from non-negative integers; panics on a
    /// negative input.
    pub fn from_ints(values: &[i64]) -> Self {
        let entries = values.iter().map(|&v| Rational::from_integer(v)).collect();
        HVector::new(entries).expect("negative entry in from_ints")
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The top degree, or `None` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        self.entries.len().checked_sub(1)
    }

    /// Entry at degree `i`, zero-padded beyond the stored length.
    pub fn get(&self, i: usize) -> Rational {
        self.entries.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().cloned().sum()
    }

    /// All entries are integers.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    pub fn scale(&self, q: &Rational) -> Result<HVector, HVectorError> {
        if q.is_negative() {
            return Err(HVectorError::NegativeCoefficient(q.to_string()));
        }
        HVector::new(self.entries.iter().map(|e| e * q).collect())
    }

    pub fn add(&self, other: &HVector) -> HVector {
        let len = self.len().max(other.len());
        let entries = (0..len).map(|i| self.get(i) + other.get(i)).collect();
        HVector::new(entries).expect("sum of non-negative vectors is non-negative")
    }

    /// Comma-separated text, `()` for the zero vector.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.entries.iter().map(Rational::to_string).collect();
        format!("({})", body.join(","))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|e| serde_json::Value::String(e.to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// The pointwise partial order after zero-padding. `None` when incomparable.
impl PartialOrd for HVector {
    fn partial_cmp(&self, other: &HVector) -> Option<Ordering> {
        let len = self.len().max(other.len());
        let mut seen_lt = false;
        let mut seen_gt = false;
        for i in 0..len {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Less => seen_lt = true,
                Ordering::Greater => seen_gt = true,
                Ordering::Equal => {}
            }
            if seen_lt && seen_gt {
                return None;
            }
        }
        Some(match (seen_lt, seen_gt) {
            (false, false) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (true, true) => unreachable!(),
        })
    }
}

/// `a <= b` pointwise, zero-padding the shorter vector.
pub fn leq_pointwise(a: &HVector, b: &HVector) -> bool {
    a.partial_cmp(b)
        .is_some_and(|ord| ord != Ordering::Greater)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HVectorError {
    NegativeEntry { index: usize, value: String },
    NegativeCoefficient(String),
    Parse(ParseRationalError),
    Json(String),
}

impl fmt::Display for HVectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HVectorError::NegativeEntry { index, value } => {
                write!(f, "negative entry {value} at degree {index}")
            }
            HVectorError::NegativeCoefficient(c) => {
                write!(f, "negative coefficient {c}")
            }
            HVectorError::Parse(e) => write!(f, "{e}"),
            HVectorError::Json(msg) => write!(f, "bad JSON h-vector: {msg}"),
        }
    }
}

impl std::error::Error for HVectorError {}

impl From<ParseRationalError> for HVectorError {
    fn from(e: ParseRationalError) -> Self {
        HVectorError::Parse(e)
    }
}

/// Parses an h-vector from either a comma-separated list of rationals
/// (`3,3,2,4` or `1/2, 0`) or a JSON array of strings/integers
/// (`["1/2", 3]`). The result is canonicalized.
pub fn parse_hvector(text: &str) -> Result<HVector, HVectorError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(HVectorError::Parse(ParseRationalError::Malformed(
            String::new(),
        )));
    }
    let entries = if trimmed.starts_with('[') {
        parse_json_entries(trimmed)?
    } else {
        trimmed
            .split(',')
            .map(|tok| tok.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?
    };
    HVector::new(entries)
}

fn parse_json_entries(text: &str) -> Result<Vec<Rational>, HVectorError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| HVectorError::Json(e.to_string()))?;
    let serde_json::Value::Array(items) = value else {
        return Err(HVectorError::Json("expected an array".into()));
    };
    items
        .into_iter()
        .map(|item| match item {
            serde_json::Value::String(s) => Ok(s.parse::<Rational>()?),
            serde_json::Value::Number(num) => {
                if let Some(n) = num.as_i64() {
                    Ok(Rational::from_integer(n))
                } else {
                    Err(HVectorError::Json(format!(
                        "non-integer number `{num}` (use a \"p/q\" string)"
                    )))
                }
            }
            other => Err(HVectorError::Json(format!("unexpected element `{other}`"))),
        })
        .collect()
}

/// Exact coefficient-weighted sum of h-vectors, canonicalized. Coefficients
/// must be non-negative; the empty sum is the zero vector.
pub fn linear_combine(terms: &[(Rational, HVector)]) -> Result<HVector, HVectorError> {
    let len = terms.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut acc = vec![Rational::zero(); len];
    for (coeff, vector) in terms {
        if coeff.is_negative() {
            return Err(HVectorError::NegativeCoefficient(coeff.to_string()));
        }
        for (slot, entry) in acc.iter_mut().zip(vector.entries()) {
            *slot += &(coeff * entry);
        }
    }
    HVector::new(acc)
}
