//! Membership and decomposition for the cone of h-vectors.
//!
//! `decompose` drives a stack machine that strips rational multiples of the
//! maximal vector, and when stripping stalls on a reduced vector, peels the
//! tower slab at the top degree and recurses into the piece glued to its
//! right. Each recursion level carries a height budget; unwinding a level
//! turns its coefficients into glued points one tower out. Every certificate
//! is re-validated (exact reconstruction plus the chain property) before it
//! is returned.

use std::collections::BTreeMap;
use std::fmt;

use crate::generators::{Decomposition, ExtremalPoint, in_catalogue, tower_vector};
use crate::hvector::{Grading, HVector, linear_combine};
use crate::rational::Rational;

/// A height budget: the root level is unbounded, pushed levels carry the
/// height of the tower slab that spawned them.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Budget {
    Unbounded,
    Finite(Rational),
}

impl Budget {
    fn exceeds(&self, q: &Rational) -> bool {
        match self {
            Budget::Unbounded => true,
            Budget::Finite(p) => p > q,
        }
    }

    fn cap(&self, value: &Rational) -> Rational {
        match self {
            Budget::Unbounded => value.clone(),
            Budget::Finite(p) => value.clone().min(p.clone()),
        }
    }

    fn subtract(&mut self, q: &Rational) {
        if let Budget::Finite(p) = self {
            *p -= q;
            debug_assert!(!p.is_negative(), "budget went negative");
        }
    }

    fn take(&mut self) -> Rational {
        match self {
            Budget::Unbounded => unreachable!("the root budget is never exhausted"),
            Budget::Finite(p) => std::mem::replace(p, Rational::zero()),
        }
    }
}

/// Where a rejection happened.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RejectStep {
    /// A reduced vector whose top degree is `n-1 mod n` at the root level.
    ReducedTopLevel,
    /// Removing a residue column drove an entry negative.
    ColumnNegative,
    /// Subtracting the tower slab drove an entry negative at the first level.
    TowerNegative,
    /// The piece cut off right of a tower had a negative entry.
    CutNegative,
}

impl RejectStep {
    pub fn as_str(&self) -> &'static str {
        match self {
            RejectStep::ReducedTopLevel => "reduced_top_level",
            RejectStep::ColumnNegative => "column_negative",
            RejectStep::TowerNegative => "tower_negative",
            RejectStep::CutNegative => "cut_negative",
        }
    }
}

/// Non-membership witness: the rejecting step, the working degree at which it
/// fired, and the recursion depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub step: RejectStep,
    pub degree: i64,
    pub depth: usize,
}

impl Witness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "step": self.step.as_str(),
            "degree": self.degree,
            "depth": self.depth,
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at degree {} (depth {})", self.step.as_str(), self.degree, self.depth)
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipCertificate {
    Member(Decomposition),
    NotMember(Witness),
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipCertificate::Member(_))
    }

    pub fn to_json(&self, n: Grading) -> serde_json::Value {
        match self {
            MembershipCertificate::Member(dec) => {
                serde_json::json!({"member": true, "terms": dec.to_json(n)})
            }
            MembershipCertificate::NotMember(witness) => {
                serde_json::json!({"member": false, "witness": witness.to_json()})
            }
        }
    }
}

/// A broken internal invariant; never returned as a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InternalError {
    StepBudgetExceeded { steps: usize },
    NegativeAfterReassemble { degree: usize },
    ReconstructionMismatch,
    ChainViolation,
}

impl fmt::Display for InternalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InternalError::StepBudgetExceeded { steps } => {
                write!(f, "state machine exceeded its step budget of {steps}")
            }
            InternalError::NegativeAfterReassemble { degree } => {
                write!(f, "negative entry at degree {degree} after reassembly")
            }
            InternalError::ReconstructionMismatch => {
                write!(f, "certificate does not reconstruct its input")
            }
            InternalError::ChainViolation => {
                write!(f, "certificate terms are not totally ordered")
            }
        }
    }
}

impl std::error::Error for InternalError {}

/// Strips the largest multiple of the maximal vector of degree `d` that
/// keeps the remainder non-negative, capped by `budget`:
/// `q = min(budget, min_j h_j / s_j)` over `0 <= j <= d`, and zero when
/// `d < 0`. Returns `q` and the remainder.
pub fn strip_max(
    n: Grading,
    h: &HVector,
    d: i64,
    budget: Option<&Rational>,
) -> (Rational, HVector) {
    let raw = raw_strip_ratio(n, h.entries(), d);
    let q = match budget {
        Some(p) => raw.min(p.clone()),
        None => raw,
    };
    if q.is_zero() {
        return (q, h.clone());
    }
    let mut entries = h.entries().to_vec();
    for (j, entry) in entries.iter_mut().enumerate().take(d as usize + 1) {
        *entry -= &(&q * &Rational::from(n.max_coeff(j as i64)));
    }
    let rest = HVector::new(entries).expect("strip keeps entries non-negative");
    (q, rest)
}

/// `min_j h_j / s_j` over `0 <= j <= d`, zero-padded; zero for `d < 0`.
fn raw_strip_ratio(n: Grading, entries: &[Rational], d: i64) -> Rational {
    if d < 0 {
        return Rational::zero();
    }
    let mut best: Option<Rational> = None;
    for j in 0..=(d as usize) {
        let value = entries.get(j).cloned().unwrap_or_else(Rational::zero);
        let ratio = value / Rational::from(n.max_coeff(j as i64));
        best = Some(match best {
            None => ratio,
            Some(b) => b.min(ratio),
        });
    }
    best.expect("d >= 0 yields at least one ratio")
}

/// A reduced vector: positive at its working degree but with a zero strictly
/// below it, the state in which maximal-vector stripping stalls.
pub fn is_reduced(h: &HVector, d: usize) -> bool {
    h.get(d).is_positive() && (0..d).any(|k| h.get(k).is_zero())
}

struct Frame {
    push_degree: usize,
    residue: usize,
    /// The parent vector minus the tower slab, kept for reassembly.
    remainder: Vec<Rational>,
}

struct Machine {
    n: Grading,
    /// Working entries, fixed length `d0 + 1`; zero above the working degree.
    h: Vec<Rational>,
    d: i64,
    budgets: Vec<Budget>,
    frames: Vec<Frame>,
    coeffs: Vec<BTreeMap<ExtremalPoint, Rational>>,
    steps: usize,
    step_limit: usize,
}

enum Flow {
    Continue,
    Reassemble,
    Done(Option<Witness>),
}

impl Machine {
    fn new(n: Grading, h: &HVector) -> Self {
        let d0 = h.len();
        Machine {
            n,
            h: h.entries().to_vec(),
            d: d0 as i64 - 1,
            budgets: vec![Budget::Unbounded],
            frames: Vec::new(),
            coeffs: vec![BTreeMap::new()],
            steps: 0,
            step_limit: 8 * (d0 + 2) * (d0 + 2) + 64,
        }
    }

    fn depth(&self) -> usize {
        self.budgets.len() - 1
    }

    fn record(&mut self, point: ExtremalPoint, q: Rational) {
        if q.is_positive() {
            let map = self.coeffs.last_mut().expect("at least the root map");
            *map.entry(point).or_insert_with(Rational::zero) += &q;
        }
    }

    fn entry(&self, j: i64) -> Rational {
        if j < 0 {
            Rational::zero()
        } else {
            self.h.get(j as usize).cloned().unwrap_or_else(Rational::zero)
        }
    }

    fn run(&mut self) -> Result<MembershipCertificate, InternalError> {
        loop {
            self.steps += 1;
            if self.steps > self.step_limit {
                return Err(InternalError::StepBudgetExceeded { steps: self.step_limit });
            }
            match self.strip_round()? {
                Flow::Continue => {}
                Flow::Reassemble => self.reassemble()?,
                Flow::Done(None) => return self.finish(),
                Flow::Done(Some(witness)) => {
                    return Ok(MembershipCertificate::NotMember(witness));
                }
            }
        }
    }

    /// One pass of the main loop: strip at the working degree, then advance,
    /// reject, column-remove, or push a tower level.
    fn strip_round(&mut self) -> Result<Flow, InternalError> {
        let q = raw_strip_ratio(self.n, &self.h, self.d);
        let budget = self.budgets.last_mut().expect("budget stack is never empty");
        if !budget.exceeds(&q) {
            // budget exhausted: hand the remaining height to the maximal
            // vector of this degree and unwind
            let leftover = budget.take();
            if self.d >= 0 {
                let d = self.d as usize;
                self.record(ExtremalPoint::max(d), leftover);
            }
            return Ok(Flow::Reassemble);
        }
        budget.subtract(&q);
        if q.is_positive() {
            let d = self.d as usize;
            for j in 0..=d {
                let s = Rational::from(self.n.max_coeff(j as i64));
                self.h[j] -= &(&q * &s);
            }
            self.record(ExtremalPoint::max(d), q);
        }

        if self.entry(self.d).is_zero() {
            return self.advance();
        }

        // the vector is reduced at degree d
        let d = self.d as usize;
        let (_, r) = self.n.split(d);
        if r == self.n.n() - 1 {
            if self.depth() == 0 {
                return Ok(Flow::Done(Some(Witness {
                    step: RejectStep::ReducedTopLevel,
                    degree: self.d,
                    depth: 0,
                })));
            }
            return self.remove_column(d, r);
        }
        self.push_tower(d, r)
    }

    /// The working entry at `d` is zero: lower the degree, and below degree
    /// one flush the degree-zero remainder.
    fn advance(&mut self) -> Result<Flow, InternalError> {
        self.d -= 1;
        if self.d >= 1 {
            return Ok(Flow::Continue);
        }
        let h0 = self.entry(0);
        let budget = self.budgets.last().expect("budget stack is never empty");
        let amount = budget.cap(&h0);
        if self.depth() == 0 {
            self.record(ExtremalPoint::max(0), amount);
            return Ok(Flow::Done(None));
        }
        self.record(ExtremalPoint::max(0), amount.clone());
        self.budgets
            .last_mut()
            .expect("budget stack is never empty")
            .subtract(&amount);
        Ok(Flow::Reassemble)
    }

    /// Subtracts the top entry along its residue class and lowers the degree.
    /// Only reachable at positive depth.
    fn remove_column(&mut self, d: usize, r: usize) -> Result<Flow, InternalError> {
        let top = self.h[d].clone();
        let mut negative = false;
        for j in (0..=d).filter(|j| j % self.n.n() == r) {
            self.h[j] -= &top;
            if self.h[j].is_negative() {
                negative = true;
            }
        }
        if negative {
            return Ok(Flow::Done(Some(Witness {
                step: RejectStep::ColumnNegative,
                degree: d as i64,
                depth: self.depth(),
            })));
        }
        self.d -= 1;
        Ok(Flow::Continue)
    }

    /// Peels the tower slab of height `h_d` (capped by the budget) and
    /// descends into the piece glued right of the tower.
    fn push_tower(&mut self, d: usize, r: usize) -> Result<Flow, InternalError> {
        let budget = self.budgets.last().expect("budget stack is never empty");
        let height = budget.cap(&self.h[d]);
        self.h[d] = height.clone();

        let tower = tower_vector(self.n, d);
        let mut remainder = self.h.clone();
        let mut negative = false;
        for (j, entry) in tower.entries().iter().enumerate() {
            remainder[j] -= &(&height * entry);
            if remainder[j].is_negative() {
                negative = true;
            }
        }
        if negative {
            if self.depth() == 0 {
                return Ok(Flow::Done(Some(Witness {
                    step: RejectStep::TowerNegative,
                    degree: d as i64,
                    depth: 1,
                })));
            }
            // drop the tentative level and remove the residue column instead
            return self.remove_column(d, r);
        }

        let window = d as i64 - 2 * r as i64 - 3;
        let (m, _) = self.n.split(d);
        let mut cut = vec![Rational::zero(); self.h.len()];
        let mut first_negative: Option<usize> = None;
        if window >= 0 {
            for j in 0..=(window as usize) {
                let src = j + r + 1;
                let mut value = remainder[src].clone();
                let k = src % self.n.n();
                if k < r {
                    value -= &remainder[m * self.n.n() + k];
                }
                if value.is_negative() && first_negative.is_none() {
                    first_negative = Some(j);
                }
                cut[j] = value;
            }
        }
        if first_negative.is_some() {
            return Ok(Flow::Done(Some(Witness {
                step: RejectStep::CutNegative,
                degree: d as i64,
                depth: self.depth() + 1,
            })));
        }

        self.budgets
            .last_mut()
            .expect("budget stack is never empty")
            .subtract(&height);
        self.budgets.push(Budget::Finite(height));
        self.frames.push(Frame { push_degree: d, residue: r, remainder });
        self.coeffs.push(BTreeMap::new());
        self.h = cut;
        self.d = window;
        Ok(Flow::Continue)
    }

    /// Pops one level: the level's coefficients become glued points one
    /// tower out, leftover height goes to the bare tower, and the working
    /// vector is recomputed from the stored remainder.
    fn reassemble(&mut self) -> Result<(), InternalError> {
        let frame = self.frames.pop().expect("reassemble only below a frame");
        let child = self.coeffs.pop().expect("child coefficient map");
        let leftover = self.budgets.pop().expect("child budget");

        let mut h = frame.remainder;
        let offset = frame.residue + 1;
        for (point, q) in &child {
            let expansion = point.expand(self.n);
            for (t, entry) in expansion.entries().iter().enumerate() {
                h[offset + t] -= &(q * entry);
                if h[offset + t].is_negative() {
                    return Err(InternalError::NegativeAfterReassemble { degree: offset + t });
                }
            }
        }
        self.h = h;
        self.d = frame.push_degree as i64 - 1;

        for (point, q) in child {
            let glued = ExtremalPoint::glued(self.n, frame.push_degree, point)
                .expect("child points fit the glue window");
            self.record(glued, q);
        }
        if let Budget::Finite(left) = leftover {
            if left.is_positive() {
                let tower = ExtremalPoint::tower(self.n, frame.push_degree)
                    .expect("pushed towers are extremal");
                self.record(tower, left);
            }
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<MembershipCertificate, InternalError> {
        debug_assert_eq!(self.coeffs.len(), 1);
        let terms: Vec<(Rational, ExtremalPoint)> = self
            .coeffs
            .pop()
            .expect("root coefficient map")
            .into_iter()
            .map(|(p, q)| (q, p))
            .collect();
        let dec = Decomposition::new(self.n, terms).expect("coefficients are positive");
        Ok(MembershipCertificate::Member(dec))
    }
}

/// Decides membership of `h` in the cone and, for members, returns a positive
/// rational decomposition into extremal points forming a totally ordered
/// chain. Certificates are validated before they are returned; a validation
/// failure is an [`InternalError`], never a silent verdict.
pub fn decompose(n: Grading, h: &HVector) -> Result<MembershipCertificate, InternalError> {
    if h.is_zero() {
        return Ok(MembershipCertificate::Member(Decomposition::empty()));
    }
    let certificate = Machine::new(n, h).run()?;
    if let MembershipCertificate::Member(dec) = &certificate {
        if !validate_decomposition(n, h, dec) {
            return Err(InternalError::ReconstructionMismatch);
        }
        if !is_chain(n, dec) {
            return Err(InternalError::ChainViolation);
        }
    }
    Ok(certificate)
}

/// A decomposition is valid for `target` when every coefficient is positive,
/// every point belongs to the catalogue up to `degree(target)`, and the
/// weighted expansions sum to `target` exactly.
pub fn validate_decomposition(n: Grading, target: &HVector, dec: &Decomposition) -> bool {
    let bound = match target.degree() {
        Some(d) => d,
        None => return dec.is_empty(),
    };
    for (coeff, point) in dec.terms() {
        if !coeff.is_positive() || !in_catalogue(n, bound, point) {
            return false;
        }
    }
    let terms: Vec<(Rational, HVector)> = dec
        .terms()
        .iter()
        .map(|(c, p)| (c.clone(), p.expand(n)))
        .collect();
    match linear_combine(&terms) {
        Ok(sum) => sum == *target,
        Err(_) => false,
    }
}

/// The expansions of the decomposition's points are pairwise comparable in
/// the pointwise partial order.
pub fn is_chain(n: Grading, dec: &Decomposition) -> bool {
    let expansions: Vec<HVector> = dec.terms().iter().map(|(_, p)| p.expand(n)).collect();
    for (idx, a) in expansions.iter().enumerate() {
        for b in &expansions[idx + 1..] {
            if a.partial_cmp(b).is_none() {
                return false;
            }
        }
    }
    true
}
