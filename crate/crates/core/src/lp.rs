//! Exact LP feasibility over the rationals.
//!
//! Phase one of the tableau simplex method with Bland's rule: entering
//! variable is the lowest-index column with negative reduced cost, leaving
//! row is the minimum ratio with ties broken by lowest basic index. Bland's
//! rule cannot cycle, so the loop terminates on every input.

use num_traits::{Signed, Zero};

use crate::poly::Rational;

/// Find `x >= 0` with `A x = b`, or `None` if the system is infeasible.
///
/// `a` is given by rows; all rows must have the same length.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per row");
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|row| row.len() == n), "ragged constraint matrix");
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }

    // columns: x_0..x_{n-1}, artificial a_0..a_{m-1}, rhs
    let width = n + m + 1;
    let rhs = n + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, c) in row.iter().enumerate() {
            t[j] = if flip { -c } else { c.clone() };
        }
        t[n + i] = Rational::from_integer(1.into());
        t[rhs] = if flip { -bi } else { bi.clone() };
        tab.push(t);
    }
    // reduced costs of the phase-one objective Σ a_i; last entry is -w
    let mut cost = vec![Rational::zero(); width];
    for row in &tab {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }
    tab.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| tab[m][j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(k) => {
                    let ri = &tab[i][rhs] / &tab[i][enter];
                    let rk = &tab[k][rhs] / &tab[k][enter];
                    if ri < rk || (ri == rk && basis[i] < basis[k]) {
                        Some(i)
                    } else {
                        Some(k)
                    }
                }
            };
        }
        // phase one is bounded below by zero, so a leaving row exists
        let leave = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, leave, enter);
        basis[leave] = enter;
    }

    if !tab[m][rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tab[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}
