//! Small exact-rational linear algebra helpers: Gaussian elimination for
//! dense systems, ranks, and null spaces.  Everything here is desk-scale
//! (tens of rows); the large structured eliminations live in `localring`.

use num_traits::Zero;

use crate::poly::Rational;

pub(crate) enum Solution {
    Unique(Vec<Rational>),
    Underdetermined,
    Inconsistent,
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Reduces `rows` (each of width `cols`) to row echelon form in place and
/// returns the pivot column indices.
fn echelon(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(src) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, src);
        let inv = rows[row][col].recip();
        for entry in rows[row][col..cols].iter_mut() {
            let v = &*entry * &inv;
            *entry = v;
        }
        let pivot_row = rows[row].clone();
        for (r, other) in rows.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (entry, p) in other[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                    let v = &*entry - &(&factor * p);
                    *entry = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    echelon(&mut rows, cols).len()
}

/// Affine rank of a point set: rank of the differences to the first point.
/// An affinely independent set of k+1 points has affine rank k.
pub(crate) fn affine_rank(points: &[Vec<Rational>]) -> usize {
    match points.split_first() {
        None | Some((_, [])) => 0,
        Some((base, rest)) => rank(
            rest.iter()
                .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
                .collect(),
        ),
    }
}

/// Solves `A x = b` exactly.
pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut rows, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][cols].clone();
    }
    Solution::Unique(x)
}

/// Basis of the null space `{x : A x = 0}`.
pub(crate) fn null_space(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = a.to_vec();
    let pivots = echelon(&mut rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::from_integer(1.into());
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][f].clone();
        }
        basis.push(v);
    }
    basis
}
