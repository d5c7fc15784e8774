//! Ground truth for membership: exact rational linear feasibility over the
//! diagram conditions, an independent feasibility check over the enumerated
//! extremal points, and the extremality test itself.
//!
//! Two LP backends back the same interface. Small systems go through
//! Fourier-Motzkin elimination, larger ones through an exact simplex
//! phase one with Bland's rule; an equivalence sweep between the two is part
//! of the self-test suite. Every feasibility witness is verified by
//! substitution before it leaves this module.

mod fm;
mod simplex;

use std::fmt;

use crate::diagram::{HDiagram, check_hdiagram};
use crate::generators::{ExtremalPoint, extremal_points, in_catalogue};
use crate::hvector::{Grading, HVector};
use crate::rational::Rational;

/// Constraint relation: `>=` or `=`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    GreaterEq,
    Eq,
}

/// One linear constraint `sum(coeffs[j] * x_j) relation rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// A finite system of exact linear constraints over free variables.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem { num_vars, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Sparse helper: coefficients given as `(var, value)` pairs.
    pub fn push_sparse(
        &mut self,
        terms: &[(usize, Rational)],
        relation: Relation,
        rhs: Rational,
    ) {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for (var, value) in terms {
            coeffs[*var] += value;
        }
        self.push(coeffs, relation, rhs);
    }

    pub fn var_nonnegative(&mut self, var: usize) {
        self.push_sparse(&[(var, Rational::one())], Relation::GreaterEq, Rational::zero());
    }

    fn check_shape(&self) -> Result<(), LpError> {
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(LpError::RowShape {
                    row,
                    len: c.coeffs.len(),
                    expected: self.num_vars,
                });
            }
        }
        Ok(())
    }

    fn satisfied_by(&self, point: &[Rational]) -> bool {
        self.constraints.iter().all(|c| {
            let lhs: Rational = c
                .coeffs
                .iter()
                .zip(point)
                .map(|(a, x)| a * x)
                .sum();
            match c.relation {
                Relation::GreaterEq => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    RowShape { row: usize, len: usize, expected: usize },
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::RowShape { row, len, expected } => {
                write!(f, "constraint {row} has {len} coefficients, expected {expected}")
            }
        }
    }
}

impl std::error::Error for LpError {}

/// Elimination is only competitive while the system is genuinely small: the
/// diagram-condition systems couple per-degree sum rows with dominance
/// chains, and past roughly a dozen variables the product rows of each
/// elimination step stop deduplicating and the row count grows
/// combinatorially (a 21-variable instance already runs for minutes, where
/// the tableau needs about a millisecond).
const FM_VAR_LIMIT: usize = 12;

/// Exact feasibility with a witness point. Dispatches to Fourier-Motzkin for
/// systems of at most [`FM_VAR_LIMIT`] variables and to the exact simplex
/// phase one otherwise. The witness is substituted back into every
/// constraint before being returned.
pub fn lp_feasible(sys: &LinearSystem) -> Result<Feasibility, LpError> {
    sys.check_shape()?;
    let result = if sys.num_vars <= FM_VAR_LIMIT {
        fm::feasible(sys)
    } else {
        simplex::feasible(sys)
    };
    Ok(verified(sys, result))
}

/// Fourier-Motzkin backend, exposed for the backend-equivalence sweep.
pub fn lp_feasible_fm(sys: &LinearSystem) -> Result<Feasibility, LpError> {
    sys.check_shape()?;
    Ok(verified(sys, fm::feasible(sys)))
}

/// Exact simplex backend, exposed for the backend-equivalence sweep.
pub fn lp_feasible_simplex(sys: &LinearSystem) -> Result<Feasibility, LpError> {
    sys.check_shape()?;
    Ok(verified(sys, simplex::feasible(sys)))
}

fn verified(sys: &LinearSystem, result: Feasibility) -> Feasibility {
    if let Feasibility::Feasible(point) = &result {
        assert_eq!(point.len(), sys.num_vars(), "witness has wrong arity");
        assert!(sys.satisfied_by(point), "witness fails substitution check");
    }
    result
}

/// Result of [`membership_oracle`]: the verdict and, for members, a valid
/// diagram assembled from the LP witness.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub diagram: Option<HDiagram>,
}

/// Decides membership by exact feasibility of the diagram conditions: one
/// variable per (degree, row) cell, rows weakly decreasing, cells dominating
/// the cell one row up `n` degrees later, and per-degree sums equal to `h`.
pub fn membership_oracle(n: Grading, h: &HVector) -> Membership {
    let Some(d) = h.degree() else {
        return Membership { member: true, diagram: Some(HDiagram::new(n, Vec::new())) };
    };

    // variable layout: cell (degree i, row j) for 1 <= j <= s_i
    let mut index: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    let mut num_vars = 0;
    for i in 0..=d {
        let rows = n.max_coeff(i as i64);
        index.push((0..rows).map(|j| num_vars + j).collect());
        num_vars += rows;
    }

    let mut sys = LinearSystem::new(num_vars);
    for vars in &index {
        for &v in vars {
            sys.var_nonnegative(v);
        }
    }
    // rows weakly decrease along the degree axis
    for i in 0..d {
        for j in 0..index[i].len() {
            sys.push_sparse(
                &[(index[i][j], Rational::one()), (index[i + 1][j], -Rational::one())],
                Relation::GreaterEq,
                Rational::zero(),
            );
        }
    }
    // each cell dominates the cell one row up, n degrees later
    for i in 0..=d {
        let up = i + n.n();
        if up > d {
            continue;
        }
        for j in 0..index[i].len() {
            sys.push_sparse(
                &[(index[i][j], Rational::one()), (index[up][j + 1], -Rational::one())],
                Relation::GreaterEq,
                Rational::zero(),
            );
        }
    }
    // per-degree sums reproduce h
    for i in 0..=d {
        let terms: Vec<(usize, Rational)> =
            index[i].iter().map(|&v| (v, Rational::one())).collect();
        sys.push_sparse(&terms, Relation::Eq, h.get(i));
    }

    match lp_feasible(&sys).expect("membership system is well-formed") {
        Feasibility::Infeasible => Membership { member: false, diagram: None },
        Feasibility::Feasible(point) => {
            let row_count = n.max_coeff(d as i64);
            let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(row_count);
            for j in 0..row_count {
                let start = n.n() * j;
                let mut row: Vec<Rational> = (start..=d)
                    .map(|i| point[index[i][j]].clone())
                    .collect();
                while row.last().is_some_and(Rational::is_zero) {
                    row.pop();
                }
                rows.push(row);
            }
            while rows.last().is_some_and(|row| row.is_empty()) {
                rows.pop();
            }
            let diagram = HDiagram::new(n, rows);
            assert_eq!(
                check_hdiagram(&diagram, h),
                Ok(()),
                "oracle witness must convert to a valid diagram"
            );
            Membership { member: true, diagram: Some(diagram) }
        }
    }
}

/// Independent second characterization: `h` is a non-negative rational
/// combination of the enumerated extremal points.
pub fn cone_membership_via_ex(
    n: Grading,
    h: &HVector,
) -> (bool, Option<Vec<(Rational, ExtremalPoint)>>) {
    let Some(d) = h.degree() else {
        return (true, Some(Vec::new()));
    };
    let points = extremal_points(n, d);
    let expansions: Vec<HVector> = points.iter().map(|p| p.expand(n)).collect();
    let mut sys = LinearSystem::new(points.len());
    for v in 0..points.len() {
        sys.var_nonnegative(v);
    }
    for i in 0..=d {
        let terms: Vec<(usize, Rational)> = expansions
            .iter()
            .enumerate()
            .map(|(v, e)| (v, e.get(i)))
            .collect();
        sys.push_sparse(&terms, Relation::Eq, h.get(i));
    }
    match lp_feasible(&sys).expect("combination system is well-formed") {
        Feasibility::Infeasible => (false, None),
        Feasibility::Feasible(weights) => {
            let combo: Vec<(Rational, ExtremalPoint)> = weights
                .into_iter()
                .zip(points)
                .filter(|(w, _)| w.is_positive())
                .map(|(w, p)| (w, p))
                .collect();
            (true, Some(combo))
        }
    }
}

/// True when `candidate` is not a non-negative combination of the catalogue
/// points other than itself.
pub fn is_extremal_vector(n: Grading, d: usize, candidate: &HVector) -> bool {
    let others: Vec<HVector> = extremal_points(n, d)
        .iter()
        .map(|p| p.expand(n))
        .filter(|e| e != candidate)
        .collect();
    // constrain every degree any expansion can reach, zero-padding the rest
    let len = others
        .iter()
        .map(HVector::len)
        .max()
        .unwrap_or(0)
        .max(candidate.len());
    let mut sys = LinearSystem::new(others.len());
    for v in 0..others.len() {
        sys.var_nonnegative(v);
    }
    for i in 0..len {
        let terms: Vec<(usize, Rational)> = others
            .iter()
            .enumerate()
            .map(|(v, e)| (v, e.get(i)))
            .collect();
        sys.push_sparse(&terms, Relation::Eq, candidate.get(i));
    }
    match lp_feasible(&sys).expect("extremality system is well-formed") {
        Feasibility::Infeasible => true,
        Feasibility::Feasible(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    NotInCatalogue { point: String, d: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotInCatalogue { point, d } => {
                write!(f, "{point} is not a catalogue point for degree bound {d}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// The extremality test for a catalogue point: its expansion must not be a
/// non-negative combination of the remaining points.
pub fn is_extremal_oracle(
    n: Grading,
    d: usize,
    point: &ExtremalPoint,
) -> Result<bool, OracleError> {
    if !in_catalogue(n, d, point) {
        return Err(OracleError::NotInCatalogue { point: point.to_string(), d });
    }
    Ok(is_extremal_vector(n, d, &point.expand(n)))
}
