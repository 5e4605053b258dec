//! Small exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::Rational;

/// Reduced row echelon form; zero rows are dropped.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

pub fn rank(rows: Vec<Vec<Rational>>) -> usize {
    rref(rows).len()
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
        }
    }
    det
}

/// Unique solution of `m z = rhs`, or `None` when `m` is singular.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let augmented = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let reduced = rref(augmented);
    if reduced.len() != n || (0..n).any(|i| !reduced[i][i].is_one()) {
        return None;
    }
    Some(reduced.into_iter().map(|row| row[n].clone()).collect())
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect()
}
