//! Exact phase-one simplex over the rationals.
//!
//! Variables covered by an explicit `x >= 0` row keep a single column;
//! the rest are split into differences of non-negatives. Surplus columns
//! enter the starting basis wherever their sign allows it, so artificials
//! are only created for the remaining rows (typically the equalities), and
//! pivots walk the nonzero entries of the pivot row only. The sum of the
//! artificials is minimized with Bland's rule, which never cycles, so
//! termination needs no perturbation and exact arithmetic needs no scaling.

use crate::rational::Rational;

use super::{Feasibility, LinearSystem, Relation};

enum VarCols {
    /// A non-negative variable, one column.
    Plain(usize),
    /// A free variable `x = u - w`, two columns.
    Split(usize, usize),
}

pub(super) fn feasible(sys: &LinearSystem) -> Feasibility {
    let n_free = sys.num_vars();

    // explicit singleton rows `c * x >= 0` with `c > 0` mark their variable
    // non-negative and become part of the column domain
    let mut nonneg = vec![false; n_free];
    let mut skip_row = vec![false; sys.constraints().len()];
    for (idx, c) in sys.constraints().iter().enumerate() {
        if c.relation != Relation::GreaterEq || !c.rhs.is_zero() {
            continue;
        }
        let mut support = c.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero());
        if let (Some((var, coeff)), None) = (support.next(), support.next()) {
            if coeff.is_positive() {
                nonneg[var] = true;
                skip_row[idx] = true;
            }
        }
    }

    let mut cols = 0;
    let var_cols: Vec<VarCols> = (0..n_free)
        .map(|v| {
            if nonneg[v] {
                let c = cols;
                cols += 1;
                VarCols::Plain(c)
            } else {
                let (u, w) = (cols, cols + 1);
                cols += 2;
                VarCols::Split(u, w)
            }
        })
        .collect();

    struct PreparedRow {
        coeffs: Vec<Rational>,
        rhs: Rational,
        surplus: Option<usize>,
        flipped: bool,
    }

    let mut prepared: Vec<PreparedRow> = Vec::new();
    for (idx, c) in sys.constraints().iter().enumerate() {
        if skip_row[idx] {
            continue;
        }
        let flip = c.rhs.is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        let mut coeffs = vec![Rational::zero(); cols];
        for (v, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let value = &sign * a;
            match var_cols[v] {
                VarCols::Plain(col) => coeffs[col] = value,
                VarCols::Split(u, w) => {
                    coeffs[w] = -&value;
                    coeffs[u] = value;
                }
            }
        }
        let surplus = (c.relation == Relation::GreaterEq).then_some(0); // column assigned below
        prepared.push(PreparedRow {
            coeffs,
            rhs: &sign * &c.rhs,
            surplus,
            flipped: flip,
        });
    }
    let m = prepared.len();
    if m == 0 {
        return Feasibility::Feasible(vec![Rational::zero(); n_free]);
    }
    for row in prepared.iter_mut() {
        if row.surplus.is_some() {
            row.surplus = Some(cols);
            cols += 1;
        }
    }

    // a surplus column with coefficient +1 can start in the basis; other
    // rows get an artificial column
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut artificial_rows: Vec<usize> = Vec::new();
    let art_base_hint = cols;
    for row in &prepared {
        let mut full = row.coeffs.clone();
        full.resize(art_base_hint, Rational::zero());
        if let Some(s) = row.surplus {
            // surplus enters as -1 before any flip; the flip negated it
            full[s] = if row.flipped { Rational::one() } else { -Rational::one() };
            if row.rhs.is_zero() && full[s].is_negative() {
                // scaling a zero-rhs row is free and lets the surplus start basic
                for entry in full.iter_mut() {
                    if !entry.is_zero() {
                        *entry = -&*entry;
                    }
                }
            }
        }
        tableau.push(full);
    }
    let mut art_cols = 0;
    for (i, row) in prepared.iter().enumerate() {
        let basic_surplus = row.surplus.filter(|&s| tableau[i][s].is_positive());
        match basic_surplus {
            Some(s) => basis.push(s),
            None => {
                artificial_rows.push(i);
                basis.push(art_base_hint + art_cols);
                art_cols += 1;
            }
        }
    }
    let art_base = art_base_hint;
    let total_cols = art_base + art_cols;
    for (i, row) in tableau.iter_mut().enumerate() {
        row.resize(total_cols + 1, Rational::zero());
        let rhs = prepared[i].rhs.clone();
        row[total_cols] = rhs;
        if basis[i] >= art_base {
            let col = basis[i];
            row[col] = Rational::one();
        }
    }

    // objective: minimize the artificial sum; reduced costs are the negated
    // column sums over the artificial rows
    let mut objective = vec![Rational::zero(); total_cols + 1];
    for &i in &artificial_rows {
        for (j, value) in tableau[i].iter().enumerate() {
            if !value.is_zero() {
                objective[j] -= value;
            }
        }
    }
    for &i in &artificial_rows {
        objective[basis[i]] = Rational::zero();
    }
    tableau.push(objective);

    let mut pivots = 0usize;
    loop {
        let entering = (0..total_cols).find(|&j| tableau[m][j].is_negative());
        let Some(col) = entering else { break };

        let mut leaving: Option<usize> = None;
        let mut best_ratio: Option<Rational> = None;
        for i in 0..m {
            if !tableau[i][col].is_positive() {
                continue;
            }
            let ratio = &tableau[i][total_cols] / &tableau[i][col];
            let better = match &best_ratio {
                None => true,
                Some(cur) => {
                    ratio < *cur || (ratio == *cur && basis[i] < basis[leaving.unwrap()])
                }
            };
            if better {
                best_ratio = Some(ratio);
                leaving = Some(i);
            }
        }
        let row = leaving.expect("phase one objective is bounded below");

        pivot(&mut tableau, row, col);
        basis[row] = col;
        pivots += 1;
        assert!(pivots < 200_000, "simplex exceeded its pivot budget");
    }

    let infeasibility: Rational = basis
        .iter()
        .enumerate()
        .filter(|(_, var)| **var >= art_base)
        .map(|(i, _)| tableau[i][total_cols].clone())
        .sum();
    if !infeasibility.is_zero() {
        return Feasibility::Infeasible;
    }

    let mut column_values = vec![Rational::zero(); total_cols];
    for (i, &var) in basis.iter().enumerate() {
        column_values[var] = tableau[i][total_cols].clone();
    }
    let point = var_cols
        .iter()
        .map(|vc| match vc {
            VarCols::Plain(c) => column_values[*c].clone(),
            VarCols::Split(u, w) => &column_values[*u] - &column_values[*w],
        })
        .collect();
    Feasibility::Feasible(point)
}

/// Gaussian pivot touching only the nonzero columns of the pivot row.
fn pivot(tableau: &mut [Vec<Rational>], row: usize, col: usize) {
    let scale = tableau[row][col].clone();
    if scale != Rational::one() {
        for entry in tableau[row].iter_mut() {
            if !entry.is_zero() {
                *entry = &*entry / &scale;
            }
        }
    }
    let (pivot_row, nonzero_cols): (Vec<Rational>, Vec<usize>) = {
        let r = &tableau[row];
        let idx: Vec<usize> = r
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, _)| j)
            .collect();
        (r.clone(), idx)
    };
    for (i, r) in tableau.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = std::mem::replace(&mut r[col], Rational::zero());
        for &j in &nonzero_cols {
            if j == col {
                continue;
            }
            r[j] -= &(&factor * &pivot_row[j]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{LinearSystem, Relation, lp_feasible_simplex};
    use super::*;

    fn one() -> Rational {
        Rational::one()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn feasible_with_equalities_and_bounds() {
        // x + y = 3, x >= 1, y >= 1
        let mut sys = LinearSystem::new(2);
        sys.push(vec![one(), one()], Relation::Eq, q("3"));
        sys.push(vec![one(), Rational::zero()], Relation::GreaterEq, one());
        sys.push(vec![Rational::zero(), one()], Relation::GreaterEq, one());
        match lp_feasible_simplex(&sys).unwrap() {
            Feasibility::Feasible(p) => assert_eq!(&p[0] + &p[1], q("3")),
            Feasibility::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn infeasible_band() {
        // x >= 2 and -x >= -1
        let mut sys = LinearSystem::new(1);
        sys.push(vec![one()], Relation::GreaterEq, q("2"));
        sys.push(vec![-one()], Relation::GreaterEq, q("-1"));
        assert_eq!(lp_feasible_simplex(&sys).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn negative_solution_is_reachable() {
        // x = -5/2 needs the split representation
        let mut sys = LinearSystem::new(1);
        sys.push(vec![one()], Relation::Eq, q("-5/2"));
        match lp_feasible_simplex(&sys).unwrap() {
            Feasibility::Feasible(p) => assert_eq!(p, vec![q("-5/2")]),
            Feasibility::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn nonneg_rows_become_domains() {
        // x >= 0, y >= 0, x + y = 2, x - y >= 2 forces (2, 0)
        let mut sys = LinearSystem::new(2);
        sys.var_nonnegative(0);
        sys.var_nonnegative(1);
        sys.push(vec![one(), one()], Relation::Eq, q("2"));
        sys.push(vec![one(), -one()], Relation::GreaterEq, q("2"));
        match lp_feasible_simplex(&sys).unwrap() {
            Feasibility::Feasible(p) => assert_eq!(p, vec![q("2"), q("0")]),
            Feasibility::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        let sys = LinearSystem::new(4);
        assert!(lp_feasible_simplex(&sys).unwrap().is_feasible());
    }

    #[test]
    fn zero_rhs_nonneg_conflict() {
        // x >= 0 twice plus x <= -1 is infeasible
        let mut sys = LinearSystem::new(1);
        sys.var_nonnegative(0);
        sys.var_nonnegative(0);
        sys.push(vec![-one()], Relation::GreaterEq, one());
        assert_eq!(lp_feasible_simplex(&sys).unwrap(), Feasibility::Infeasible);
    }
}
