//! Exact dense linear algebra over the rationals: reduced row echelon
//! form, nullspaces, rank, and span membership. Cells are small at desk
//! scale, so dense rows are fine.

use crate::scalar::Scalar;

/// Brings `rows` into reduced row echelon form in place, drops zero rows,
/// and returns the pivot column of each remaining row (ascending).
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row_i = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (row_i..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row_i, pivot_row);
        let inv = rows[row_i][col].inv();
        for x in rows[row_i][col..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[row_i].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == row_i || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(pivot[col..].iter()) {
                *x = &*x - &(&factor * p);
            }
        }
        pivots.push(col);
        row_i += 1;
        if row_i == rows.len() {
            break;
        }
    }
    rows.truncate(row_i);
    pivots
}

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    rref(&mut rows).len()
}

/// A basis of the right nullspace of the matrix, each vector scaled so its
/// first nonzero entry is 1. Deterministic: one vector per free column,
/// in column order.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut work: Vec<Vec<Scalar>> = rows.to_vec();
    let pivots = rref(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &p) in work.iter().zip(pivots.iter()) {
            v[p] = -&row[free];
        }
        // normalize: first nonzero entry 1
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            let inv = first.inv();
            for x in v.iter_mut() {
                *x = &*x * &inv;
            }
        }
        basis.push(v);
    }
    basis
}

/// Whether `v` lies in the row span of an already-reduced system.
pub fn in_row_span(rref_rows: &[Vec<Scalar>], pivots: &[usize], v: &[Scalar]) -> bool {
    let mut v = v.to_vec();
    for (row, &p) in rref_rows.iter().zip(pivots.iter()) {
        if v[p].is_zero() {
            continue;
        }
        let factor = v[p].clone();
        for (x, r) in v.iter_mut().zip(row.iter()) {
            *x = &*x - &(&factor * r);
        }
    }
    v.iter().all(|x| x.is_zero())
}
