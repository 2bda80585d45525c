//! Exact phase-one simplex for feasibility of `A x = b, x ≥ 0`.
//!
//! Dense tableau over the rationals with Bland's rule for both the entering and
//! the leaving variable, so the method terminates without cycling.

use num::{Signed, Zero};

use crate::rational::Rational;

/// Returns some `x ≥ 0` with `A x = b`, or `None` when the system is infeasible.
///
/// `a` has one row per equation and `ncols` columns.
pub fn find_feasible(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per row");
    let m = a.len();
    if m == 0 {
        return Some(vec![Rational::zero(); ncols]);
    }
    // Columns: structural 0..ncols, artificial ncols..ncols+m, then the RHS.
    let width = ncols + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t: Vec<Rational> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        t.resize(width + 1, Rational::zero());
        t[ncols + i] = Rational::from_integer(1.into());
        t[width] = if flip { -rhs.clone() } else { rhs.clone() };
        tab.push(t);
    }
    let mut basis: Vec<usize> = (ncols..width).collect();

    // Reduced costs of the phase-one objective (sum of artificials):
    // cost_j = -sum_i tab[i][j] for structural j, 0 for artificials.
    let mut cost = vec![Rational::zero(); width + 1];
    for row in &tab {
        for j in 0..ncols {
            cost[j] -= &row[j];
        }
        cost[width] -= &row[width];
    }

    // Bland: smallest index with negative reduced cost.
    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        // Ratio test; ties broken by the smallest basic variable index.
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][width] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-one objective is bounded below by zero.
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    // Optimal value is -cost[width]; feasible iff it is zero.
    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &var) in basis.iter().enumerate() {
        if var < ncols {
            x[var] = tab[i][width].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let width = cost.len();
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for j in 0..width {
            if !pivot_row[j].is_zero() {
                r[j] -= &factor * &pivot_row[j];
            }
        }
    }
    if !cost[col].is_zero() {
        let factor = cost[col].clone();
        for j in 0..width {
            if !pivot_row[j].is_zero() {
                cost[j] -= &factor * &pivot_row[j];
            }
        }
    }
}
