//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Everything here is plain Gaussian elimination with exact pivoting; the
//! matrices involved are small (one row per defined sum of a table, one
//! column per element), so no fraction-free tricks are needed.

use num::rational::BigRational;
use num::{One, Zero};

pub type Row = Vec<BigRational>;

/// Outcome of solving `A x = b` exactly.
#[derive(Debug, Clone)]
pub enum Solution {
    /// No solution.
    Inconsistent,
    /// Solution set is `particular + span(nullspace)`; `nullspace` is empty
    /// for a unique solution.
    Affine {
        particular: Vec<BigRational>,
        nullspace: Vec<Vec<BigRational>>,
    },
}

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row.
pub fn rref(mat: &mut Vec<Row>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &mat[r][j];
                    mat[i][j] = &mat[i][j] - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a matrix.
pub fn rank(rows: &[Row]) -> usize {
    let mut m: Vec<Row> = rows.to_vec();
    rref(&mut m).len()
}

/// Solves `A x = b` where `system` holds rows `(a_i, b_i)`.
pub fn solve(system: &[(Row, BigRational)], num_vars: usize) -> Solution {
    let mut aug: Vec<Row> = system
        .iter()
        .map(|(a, b)| {
            debug_assert_eq!(a.len(), num_vars);
            let mut row = a.clone();
            row.push(b.clone());
            row
        })
        .collect();
    if aug.is_empty() {
        aug.push(vec![BigRational::zero(); num_vars + 1]);
    }
    let pivots = rref(&mut aug);
    // A pivot in the constant column means 0 = 1.
    if pivots.contains(&num_vars) {
        return Solution::Inconsistent;
    }
    let mut particular = vec![BigRational::zero(); num_vars];
    for (row_idx, &col) in pivots.iter().enumerate() {
        particular[col] = aug[row_idx][num_vars].clone();
    }
    let free: Vec<usize> = (0..num_vars).filter(|c| !pivots.contains(c)).collect();
    let mut nullspace = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![BigRational::zero(); num_vars];
        v[fc] = BigRational::one();
        for (row_idx, &col) in pivots.iter().enumerate() {
            v[col] = -aug[row_idx][fc].clone();
        }
        nullspace.push(v);
    }
    Solution::Affine {
        particular,
        nullspace,
    }
}

/// Inverse of a square matrix, if it exists.
pub fn invert(mat: &[Row]) -> Option<Vec<Row>> {
    let n = mat.len();
    let mut aug: Vec<Row> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Singular inputs pivot into the appended identity columns.
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Dot product.
pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}
