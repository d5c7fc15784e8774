//! Fourier-Motzkin elimination with witness recovery.
//!
//! Equalities enter as pairs of inequalities, which keeps the mostly-sparse
//! systems this crate builds sparse; variables are eliminated one at a time,
//! always the one producing the fewest product rows, with parallel rows
//! merged to their strongest representative after every step. The
//! elimination trace is kept so a feasible point can be rebuilt by
//! back-substitution.

use std::collections::HashMap;

use crate::rational::Rational;

use super::{Feasibility, LinearSystem, Relation};

/// An inequality `sum(coeffs[j] * x_j) >= rhs`.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

impl Row {
    fn eval_excluding(&self, var: usize, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(j, a)| *j != var && !a.is_zero())
            .map(|(j, a)| a * &point[j])
            .sum()
    }
}

/// One elimination step with the rows that bounded the variable.
struct Step {
    var: usize,
    lowers: Vec<Row>,
    uppers: Vec<Row>,
}

pub(super) fn feasible(sys: &LinearSystem) -> Feasibility {
    let num_vars = sys.num_vars();
    let mut rows: Vec<Row> = Vec::new();
    for c in sys.constraints() {
        rows.push(Row { coeffs: c.coeffs.clone(), rhs: c.rhs.clone() });
        if c.relation == Relation::Eq {
            let flipped: Vec<Rational> = c.coeffs.iter().map(|a| -a).collect();
            rows.push(Row { coeffs: flipped, rhs: -c.rhs.clone() });
        }
    }

    let mut steps: Vec<Step> = Vec::new();
    let mut remaining: Vec<usize> = (0..num_vars).collect();
    while !remaining.is_empty() {
        if let Some(verdict) = prune(&mut rows) {
            return verdict;
        }
        let var = cheapest_variable(&rows, &remaining);
        remaining.retain(|&v| v != var);

        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        let mut kept = Vec::new();
        for row in rows.drain(..) {
            if row.coeffs[var].is_positive() {
                lowers.push(row);
            } else if row.coeffs[var].is_negative() {
                uppers.push(row);
            } else {
                kept.push(row);
            }
        }
        for low in &lowers {
            for up in &uppers {
                kept.push(combine(low, up, var));
            }
        }
        rows = kept;
        steps.push(Step { var, lowers, uppers });
    }
    if let Some(Feasibility::Infeasible) = prune(&mut rows) {
        return Feasibility::Infeasible;
    }

    // back-substitute a witness in reverse elimination order: the rows of
    // each step involve only its own variable and later-eliminated ones
    let mut point = vec![Rational::zero(); num_vars];
    for step in steps.iter().rev() {
        let mut lower: Option<Rational> = None;
        for row in &step.lowers {
            let bound =
                (&row.rhs - &row.eval_excluding(step.var, &point)) / &row.coeffs[step.var];
            lower = Some(match lower {
                None => bound,
                Some(cur) => {
                    if bound > cur {
                        bound
                    } else {
                        cur
                    }
                }
            });
        }
        let mut upper: Option<Rational> = None;
        for row in &step.uppers {
            let bound =
                (&row.rhs - &row.eval_excluding(step.var, &point)) / &row.coeffs[step.var];
            upper = Some(match upper {
                None => bound,
                Some(cur) => {
                    if bound < cur {
                        bound
                    } else {
                        cur
                    }
                }
            });
        }
        point[step.var] = match (lower, upper) {
            (Some(lo), Some(hi)) => {
                debug_assert!(lo <= hi, "elimination guarantees a non-empty interval");
                lo
            }
            (Some(lo), None) => lo,
            (None, Some(hi)) => hi,
            (None, None) => Rational::zero(),
        };
    }
    Feasibility::Feasible(point)
}

/// Positive combination of a lower and an upper bound row cancelling `var`.
fn combine(low: &Row, up: &Row, var: usize) -> Row {
    let a = low.coeffs[var].clone();
    let b = -up.coeffs[var].clone();
    let coeffs = low
        .coeffs
        .iter()
        .zip(&up.coeffs)
        .map(|(l, u)| &(&b * l) + &(&a * u))
        .collect();
    let rhs = &(&b * &low.rhs) + &(&a * &up.rhs);
    Row { coeffs, rhs }
}

/// Drops tautologies, merges parallel rows keeping the strongest, and spots
/// constant contradictions. Returns the verdict when one is decided.
fn prune(rows: &mut Vec<Row>) -> Option<Feasibility> {
    let mut strongest: HashMap<Vec<Rational>, Rational> = HashMap::new();
    for row in rows.drain(..) {
        let first = row.coeffs.iter().find(|a| !a.is_zero());
        match first {
            None => {
                if row.rhs.is_positive() {
                    return Some(Feasibility::Infeasible);
                }
            }
            Some(lead) => {
                let scale = lead.abs().recip();
                let key: Vec<Rational> = row.coeffs.iter().map(|a| a * &scale).collect();
                let rhs = &row.rhs * &scale;
                strongest
                    .entry(key)
                    .and_modify(|cur| {
                        if rhs > *cur {
                            *cur = rhs.clone();
                        }
                    })
                    .or_insert(rhs);
            }
        }
    }
    rows.extend(
        strongest
            .into_iter()
            .map(|(coeffs, rhs)| Row { coeffs, rhs }),
    );
    None
}

/// The variable whose elimination creates the fewest product rows.
fn cheapest_variable(rows: &[Row], remaining: &[usize]) -> usize {
    let mut best = remaining[0];
    let mut best_cost = usize::MAX;
    for &var in remaining {
        let pos = rows.iter().filter(|r| r.coeffs[var].is_positive()).count();
        let neg = rows.iter().filter(|r| r.coeffs[var].is_negative()).count();
        let cost = pos * neg;
        if cost < best_cost {
            best = var;
            best_cost = cost;
        }
    }
    best
}
