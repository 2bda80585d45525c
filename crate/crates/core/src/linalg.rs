//! Dense exact linear algebra over the rationals.

use num::{One, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form of `matrix`, with the list of pivot columns.
pub fn rref(matrix: &[Vec<Rational>], ncols: usize) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = matrix.to_vec();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m {
            break;
        }
        let Some(found) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(found, row);
        let pivot = a[row][col].clone();
        if !pivot.is_one() {
            for v in a[row].iter_mut().skip(col) {
                *v /= &pivot;
            }
        }
        for r in 0..m {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..ncols {
                let delta = &factor * &a[row][c];
                a[r][c] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Basis of `{u : A u = 0}`, one vector per free column in increasing order.
/// Each vector has a 1 at its free column and zeros at the other free columns.
pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(matrix, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[r][free].clone();
            }
            v
        })
        .collect()
}

pub fn rank(matrix: &[Vec<Rational>], ncols: usize) -> usize {
    rref(matrix, ncols).1.len()
}

pub fn transpose(matrix: &[Vec<Rational>], ncols: usize) -> Matrix {
    (0..ncols)
        .map(|c| matrix.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub fn mat_vec(matrix: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn nullspace_of_single_row() {
        let a = m(&[&[1, 1, 1, 1]]);
        let basis = nullspace(&a, 4);
        assert_eq!(basis.len(), 3);
        assert_eq!(basis[0], vec![int(-1), int(1), int(0), int(0)]);
        for v in &basis {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rank_and_identity() {
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1]]), 2), 2);
        assert!(nullspace(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]]), 2), 1);
        assert_eq!(transpose(&m(&[&[1, 2, 3]]), 3), m(&[&[1], &[2], &[3]]));
    }
}
