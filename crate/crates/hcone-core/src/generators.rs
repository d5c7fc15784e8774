//! The distinguished h-vectors generating the extremal rays of the cone, and
//! the recursive catalogue built from them.
//!
//! Writing `d = n*m + r` with `0 <= r <= n-1`, the catalogue is generated by
//! the maximal vector of each degree, the rectangular tower `t^d` for
//! `r != n-1`, and towers with another generator glued onto their right side.

use std::collections::BTreeSet;
use std::fmt;

use crate::hvector::{Grading, HVector, linear_combine};
use crate::rational::Rational;

/// A named generator of an extremal ray, interpreted relative to a [`Grading`].
///
/// Values are kept canonical: a tower whose degree is below the grading weight
/// is stored as `Max` (the two vectors coincide there), towers with
/// `d = n-1 mod n` are rejected outright (they decompose), and glue targets
/// must fit in the window left of the tower's top slab. Under these rules two
/// points are structurally equal exactly when their expansions agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtremalPoint {
    /// The entrywise-maximal h-vector of degree `d`.
    Max { d: usize },
    /// The rectangular tower of degree `d`.
    Tower { d: usize },
    /// A tower of degree `d` with `inner` glued on the right.
    Glued { d: usize, inner: Box<ExtremalPoint> },
}

impl ExtremalPoint {
    pub fn max(d: usize) -> Self {
        ExtremalPoint::Max { d }
    }

    /// Canonicalizing tower constructor: `d <= n-1` collapses to `Max(d)`,
    /// `d = n-1 mod n` with `d >= n` is not an extremal point.
    pub fn tower(n: Grading, d: usize) -> Result<Self, GeneratorError> {
        if d < n.n() {
            return Ok(ExtremalPoint::Max { d });
        }
        let (_, r) = n.split(d);
        if r == n.n() - 1 {
            return Err(GeneratorError::DecomposableTower { d });
        }
        Ok(ExtremalPoint::Tower { d })
    }

    pub fn glued(n: Grading, d: usize, inner: ExtremalPoint) -> Result<Self, GeneratorError> {
        let (_, r) = n.split(d);
        if r == n.n() - 1 {
            return Err(GeneratorError::DecomposableTower { d });
        }
        let window = (d as i64) - 2 * (r as i64) - 3;
        if window < 0 || (inner.degree() as i64) > window {
            return Err(GeneratorError::GlueTooLong {
                d,
                inner_degree: inner.degree(),
                window,
            });
        }
        inner.validate(n)?;
        Ok(ExtremalPoint::Glued { d, inner: Box::new(inner) })
    }

    pub fn degree(&self) -> usize {
        match self {
            ExtremalPoint::Max { d } | ExtremalPoint::Tower { d } | ExtremalPoint::Glued { d, .. } => *d,
        }
    }

    /// Checks the canonical-form invariants under `n`.
    pub fn validate(&self, n: Grading) -> Result<(), GeneratorError> {
        match self {
            ExtremalPoint::Max { .. } => Ok(()),
            ExtremalPoint::Tower { d } => {
                if *d < n.n() {
                    return Err(GeneratorError::NonCanonicalTower { d: *d });
                }
                let (_, r) = n.split(*d);
                if r == n.n() - 1 {
                    return Err(GeneratorError::DecomposableTower { d: *d });
                }
                Ok(())
            }
            ExtremalPoint::Glued { d, inner } => {
                let (_, r) = n.split(*d);
                if r == n.n() - 1 {
                    return Err(GeneratorError::DecomposableTower { d: *d });
                }
                let window = (*d as i64) - 2 * (r as i64) - 3;
                if window < 0 || (inner.degree() as i64) > window {
                    return Err(GeneratorError::GlueTooLong {
                        d: *d,
                        inner_degree: inner.degree(),
                        window,
                    });
                }
                inner.validate(n)
            }
        }
    }

    /// The h-vector this point names. Total on canonical values; the first
    /// entry is always 1.
    pub fn expand(&self, n: Grading) -> HVector {
        match self {
            ExtremalPoint::Max { d } => max_vector(n, *d),
            ExtremalPoint::Tower { d } => tower_vector(n, *d),
            ExtremalPoint::Glued { d, inner } => {
                glue(n, *d, &inner.expand(n)).expect("canonical glued point expands")
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ExtremalPoint::Max { d } => serde_json::json!({"kind": "max", "d": d}),
            ExtremalPoint::Tower { d } => serde_json::json!({"kind": "tower", "d": d}),
            ExtremalPoint::Glued { d, inner } => {
                serde_json::json!({"kind": "glued", "d": d, "inner": inner.to_json()})
            }
        }
    }

    pub fn from_json(n: Grading, value: &serde_json::Value) -> Result<Self, GeneratorError> {
        let bad = || GeneratorError::Json(value.to_string());
        let kind = value.get("kind").and_then(|k| k.as_str()).ok_or_else(bad)?;
        let d = value.get("d").and_then(|d| d.as_u64()).ok_or_else(bad)? as usize;
        let point = match kind {
            "max" => ExtremalPoint::max(d),
            "tower" => ExtremalPoint::tower(n, d)?,
            "glued" => {
                let inner = value.get("inner").ok_or_else(bad)?;
                ExtremalPoint::glued(n, d, ExtremalPoint::from_json(n, inner)?)?
            }
            _ => return Err(bad()),
        };
        point.validate(n).map(|_| point)
    }
}

/// Prints in the `s^d` / `t^d` / `t^d*s^e` notation.
impl fmt::Display for ExtremalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalPoint::Max { d } => write!(f, "s^{d}"),
            ExtremalPoint::Tower { d } => write!(f, "t^{d}"),
            ExtremalPoint::Glued { d, inner } => write!(f, "t^{d}*{inner}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    /// Towers of degree `n-1 mod n` decompose into maximal vectors.
    DecomposableTower { d: usize },
    /// A tower below degree `n` should have been stored as `Max`.
    NonCanonicalTower { d: usize },
    GlueTooLong { d: usize, inner_degree: usize, window: i64 },
    BadGlueVector { d: usize, len: usize, window: i64 },
    ZeroTowerCount,
    Json(String),
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::DecomposableTower { d } => {
                write!(f, "tower of degree {d} is decomposable, not extremal")
            }
            GeneratorError::NonCanonicalTower { d } => {
                write!(f, "tower of degree {d} coincides with the maximal vector")
            }
            GeneratorError::GlueTooLong { d, inner_degree, window } => write!(
                f,
                "glue of degree {inner_degree} does not fit degree-{d} tower (window {window})"
            ),
            GeneratorError::BadGlueVector { d, len, window } => write!(
                f,
                "glue vector of length {len} does not fit degree-{d} tower (window {window})"
            ),
            GeneratorError::ZeroTowerCount => write!(f, "tower decomposition needs m >= 1"),
            GeneratorError::Json(v) => write!(f, "bad extremal point JSON: {v}"),
        }
    }
}

impl std::error::Error for GeneratorError {}

/// The maximal h-vector of degree `d`: entries `floor(i/n) + 1`.
pub fn max_vector(n: Grading, d: usize) -> HVector {
    let entries = (0..=d)
        .map(|i| Rational::from(n.max_coeff(i as i64)))
        .collect();
    HVector::new(entries).expect("maximal vector entries are positive")
}

/// The tower of degree `d = n*m + r`: entry 1 exactly at degrees `0..r mod n`.
/// Its staircase is the `(r+1) x (m+1)` rectangle.
pub fn tower_vector(n: Grading, d: usize) -> HVector {
    let (_, r) = n.split(d);
    let entries = (0..=d)
        .map(|i| {
            if i % n.n() <= r {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    HVector::new(entries).expect("tower entries are non-negative")
}

/// Glues `h` onto the right side of the degree-`d` tower:
/// `t^d + (0^{r+1}, h_0, ..., h_{nm-r-3}, 0^{r+2})`.
///
/// Requires `r != n-1` and `degree(h) <= d - 2r - 3`.
pub fn glue(n: Grading, d: usize, h: &HVector) -> Result<HVector, GeneratorError> {
    let (_, r) = n.split(d);
    if r == n.n() - 1 {
        return Err(GeneratorError::DecomposableTower { d });
    }
    let window = (d as i64) - 2 * (r as i64) - 3;
    if (h.len() as i64) > window + 1 {
        return Err(GeneratorError::BadGlueVector { d, len: h.len(), window });
    }
    let tower = tower_vector(n, d);
    let mut entries: Vec<Rational> = tower.entries().to_vec();
    for (t, value) in h.entries().iter().enumerate() {
        entries[r + 1 + t] += value;
    }
    Ok(HVector::new(entries).expect("glued entries are non-negative"))
}

/// The extremal points of the cone in degrees `<= d`, deduplicated and in a
/// deterministic order. Built bottom-up so lower degrees are shared.
pub fn extremal_points(n: Grading, d: usize) -> Vec<ExtremalPoint> {
    let mut table: Vec<BTreeSet<ExtremalPoint>> = Vec::with_capacity(d + 1);
    for e in 0..=d {
        let mut set: BTreeSet<ExtremalPoint> = if e == 0 {
            BTreeSet::new()
        } else {
            table[e - 1].clone()
        };
        if e < n.n() {
            set.insert(ExtremalPoint::max(e));
        } else {
            let (_, r) = n.split(e);
            set.insert(ExtremalPoint::max(e));
            if r != n.n() - 1 {
                set.insert(ExtremalPoint::tower(n, e).expect("r != n-1"));
                let window = (e as i64) - 2 * (r as i64) - 3;
                if window >= 0 {
                    let inner_points = table[window as usize].clone();
                    for inner in inner_points {
                        set.insert(
                            ExtremalPoint::glued(n, e, inner).expect("inner fits the window"),
                        );
                    }
                }
            }
        }
        table.push(set);
    }
    table.pop().map(|set| set.into_iter().collect()).unwrap_or_default()
}

/// Membership in the catalogue without materializing it: a canonical point of
/// degree `<= d` is exactly a point the recursion produces.
pub fn in_catalogue(n: Grading, d: usize, point: &ExtremalPoint) -> bool {
    point.degree() <= d && point.validate(n).is_ok()
}

/// A positive rational combination of extremal points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    terms: Vec<(Rational, ExtremalPoint)>,
}

impl Decomposition {
    /// Merges duplicate points additively, drops zero terms, rejects negative
    /// coefficients. Terms are stored largest-expansion first, which for a
    /// chain is the order the vectors nest in.
    pub fn new(
        n: Grading,
        terms: Vec<(Rational, ExtremalPoint)>,
    ) -> Result<Self, DecompositionError> {
        let mut merged: Vec<(Rational, ExtremalPoint)> = Vec::new();
        for (coeff, point) in terms {
            if coeff.is_negative() {
                return Err(DecompositionError::NegativeCoefficient {
                    coeff: coeff.to_string(),
                    point: point.to_string(),
                });
            }
            if coeff.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|(_, p)| *p == point) {
                Some((c, _)) => *c += &coeff,
                None => merged.push((coeff, point)),
            }
        }
        let mut keyed: Vec<(Vec<Rational>, (Rational, ExtremalPoint))> = merged
            .into_iter()
            .map(|(c, p)| (p.expand(n).entries().to_vec(), (c, p)))
            .collect();
        keyed.sort_by(|a, b| {
            b.0.len()
                .cmp(&a.0.len())
                .then_with(|| crate::rational::cmp_slices(&b.0, &a.0))
        });
        Ok(Decomposition {
            terms: keyed.into_iter().map(|(_, t)| t).collect(),
        })
    }

    pub fn empty() -> Self {
        Decomposition { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(Rational, ExtremalPoint)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The exact weighted sum of the expanded terms.
    pub fn reconstruct(&self, n: Grading) -> HVector {
        let terms: Vec<(Rational, HVector)> = self
            .terms
            .iter()
            .map(|(c, p)| (c.clone(), p.expand(n)))
            .collect();
        linear_combine(&terms).expect("coefficients are positive")
    }

    pub fn to_json(&self, n: Grading) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(coeff, point)| {
                    serde_json::json!({
                        "coeff": coeff.to_string(),
                        "point": point.to_json(),
                        "expansion": point.expand(n).to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| {
                if *c == Rational::one() {
                    p.to_string()
                } else {
                    format!("{c}*{p}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    NegativeCoefficient { coeff: String, point: String },
}

impl fmt::Display for DecompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionError::NegativeCoefficient { coeff, point } => {
                write!(f, "negative coefficient {coeff} on {point}")
            }
        }
    }
}

impl std::error::Error for DecompositionError {}

/// Decomposes the all-ones vector of length `n*m` (the degree `n*m - 1`
/// tower) into maximal vectors: coefficient `1/m` on degree `n*m - 1` and
/// `1/l - sum of the higher coefficients` on degree `n*l - 1` below, which
/// telescopes to `1/(l*(l+1))`. Exact reconstruction is checked by tests.
pub fn tower_decomposition(n: Grading, m: usize) -> Result<Decomposition, GeneratorError> {
    if m == 0 {
        return Err(GeneratorError::ZeroTowerCount);
    }
    let mut coeffs: Vec<(usize, Rational)> = Vec::with_capacity(m);
    let mut tail = Rational::zero();
    for level in (1..=m).rev() {
        let q = if level == m {
            Rational::one() / Rational::from(m)
        } else {
            Rational::one() / Rational::from(level) - tail.clone()
        };
        tail += &q;
        coeffs.push((level, q));
    }
    let terms = coeffs
        .into_iter()
        .map(|(level, q)| (q, ExtremalPoint::max(n.n() * level - 1)))
        .collect();
    Decomposition::new(n, terms).map_err(|_| GeneratorError::ZeroTowerCount)
}
