//! Small dense integer and rational matrix routines.
//!
//! Matrices are row lists. Sizes here are tiny (n x n with n the ambient
//! dimension), so nothing is tuned for speed.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Q;

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result has one row per pivot; row `k` has its pivot in a column
/// strictly right of row `k - 1`'s pivot, pivots are positive, and entries
/// above a pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row >= a.len() {
            break;
        }
        // gcd-combine every row below into the pivot row
        for r in pivot_row + 1..a.len() {
            if a[r][col] == 0 {
                continue;
            }
            let (x, y) = (a[pivot_row][col], a[r][col]);
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (xg, yg) = (x / g, y / g);
            let top: Vec<i128> = (0..ncols)
                .map(|c| s * a[pivot_row][c] + t * a[r][c])
                .collect();
            let bottom: Vec<i128> = (0..ncols)
                .map(|c| -yg * a[pivot_row][c] + xg * a[r][c])
                .collect();
            a[pivot_row] = top;
            a[r] = bottom;
        }
        if a[pivot_row][col] == 0 {
            continue;
        }
        if a[pivot_row][col] < 0 {
            for v in a[pivot_row].iter_mut() {
                *v = -*v;
            }
        }
        let (above, rest) = a.split_at_mut(pivot_row);
        let pivot = &rest[0];
        for row in above {
            let f = row[col].div_euclid(pivot[col]);
            if f != 0 {
                for (x, y) in row.iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    a.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("hermite form entry overflows i64"))
                .collect()
        })
        .collect()
}

/// Lower-triangular basis of a full-rank lattice in `Z^n`.
///
/// Row `i` is supported on columns `0..=i` and has a positive diagonal entry.
/// Returns `None` when `rows` does not span a full-rank lattice.
pub fn lower_triangular_basis(rows: &[Vec<i64>], n: usize) -> Option<Vec<Vec<i64>>> {
    let reversed: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().rev().copied().collect())
        .collect();
    let h = hermite_rows(&reversed, n);
    if h.len() != n || (0..n).any(|k| h[k][k] == 0) {
        return None;
    }
    let mut basis: Vec<Vec<i64>> = h
        .into_iter()
        .map(|r| r.into_iter().rev().collect())
        .collect();
    basis.reverse();
    Some(basis)
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|c| m.iter().map(|r| r[c].clone()).collect())
        .collect()
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col];
        det *= pivot;
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower {
            let f = row[col] / pivot;
            if f.is_zero() {
                continue;
            }
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * *y;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse, `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let pivot = a[col][col];
        for v in a[col].iter_mut() {
            *v /= pivot;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= f * *y;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
