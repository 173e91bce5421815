//! Exact integer linear algebra on small dense matrices.

use nalgebra::DMatrix;
use num_rational::Ratio;

pub type IntMatrix = DMatrix<i64>;
type Q128 = Ratio<i128>;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn int_det(m: &IntMatrix) -> i128 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)] as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<Q128>>> {
    let n = m.nrows();
    if n != m.ncols() {
        return None;
    }
    let zero = Q128::from_integer(0);
    let one = Q128::from_integer(1);
    let mut a: Vec<Vec<Q128>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Q128::from_integer(m[(i, j)] as i128)
                    } else if j - n == i {
                        one
                    } else {
                        zero
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != zero)?;
        a.swap(piv, col);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != zero {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Inverse of an integer matrix when it is again integral.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let inv = rational_inverse(m)?;
    let n = m.nrows();
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let q = inv[i][j];
            if !q.is_integer() {
                return None;
            }
            out[(i, j)] = i64::try_from(q.to_integer()).ok()?;
        }
    }
    Some(out)
}

/// Nonzero invariant factors (Smith normal form diagonal), in divisibility order.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<i64> {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<i128>> = (0..rows).map(|i| (0..cols).map(|j| m[(i, j)] as i128).collect()).collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // move a smaller remainder into the pivot slot and repeat
                let mut best = (t, t);
                for i in t..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j];
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs() as i64);
        t += 1;
    }
    out
}

/// Whether the columns extend to a basis of the ambient integer lattice.
pub fn is_primitive_system(columns: &[Vec<i64>]) -> bool {
    if columns.is_empty() {
        return true;
    }
    let dim = columns[0].len();
    if columns.iter().any(|c| c.len() != dim) || columns.len() > dim {
        return false;
    }
    let m = IntMatrix::from_fn(dim, columns.len(), |i, j| columns[j][i]);
    let ed = elementary_divisors(&m);
    ed.len() == columns.len() && ed.iter().all(|&d| d == 1)
}

/// Solves `A x = b` over the rationals for full-column-rank `A`, if consistent.
pub fn solve_rational(a: &IntMatrix, b: &[i64]) -> Option<Vec<Ratio<i64>>> {
    let (rows, cols) = a.shape();
    let zero = Q128::from_integer(0);
    let mut m: Vec<Vec<Q128>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| Q128::from_integer(a[(i, j)] as i128))
                .chain(std::iter::once(Q128::from_integer(b[i] as i128)))
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let p = (pivot_row..rows).find(|&r| m[r][col] != zero)?;
        m.swap(p, pivot_row);
        let pv = m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x /= pv;
        }
        for r in 0..rows {
            if r != pivot_row && m[r][col] != zero {
                let f = m[r][col];
                for c in 0..=cols {
                    let v = m[pivot_row][c];
                    m[r][c] -= f * v;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| m[r][cols] != zero) {
        return None;
    }
    pivots
        .iter()
        .map(|&r| {
            let q = m[r][cols];
            Some(Ratio::new(i64::try_from(*q.numer()).ok()?, i64::try_from(*q.denom()).ok()?))
        })
        .collect()
}

pub fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum()).collect()
}

pub fn column(m: &IntMatrix, j: usize) -> Vec<i64> {
    m.column(j).iter().copied().collect()
}
