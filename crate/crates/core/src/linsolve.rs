//! Exact dense linear solves over the rationals.

use rug::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("matrix is singular")]
    Singular,
    #[error("expected a square system, got {rows}x{cols} with {rhs} right-hand entries")]
    Shape { rows: usize, cols: usize, rhs: usize },
}

/// Solves `matrix · x = rhs` by Gaussian elimination with partial pivoting
/// on magnitude. Row order of `matrix` is the equation order.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, SolveError> {
    let n = matrix.len();
    if rhs.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(SolveError::Shape { rows: n, cols: matrix.first().map_or(0, Vec::len), rhs: rhs.len() });
    }
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| aug[r][col] != 0)
            .max_by(|&a, &b| aug[a][col].cmp_abs(&aug[b][col]).then(b.cmp(&a)))
            .ok_or(SolveError::Singular)?;
        aug.swap(col, pivot);
        let (upper, lower) = aug.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        let inv = Rational::from(pivot_row[col].recip_ref());
        for row in lower.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let factor = Rational::from(&row[col] * &inv);
            row[col] = Rational::new();
            for (target, source) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                if *source != 0 {
                    *target -= Rational::from(&factor * source);
                }
            }
        }
    }

    let mut x = vec![Rational::new(); n];
    for i in (0..n).rev() {
        let mut acc = aug[i][n].clone();
        for j in i + 1..n {
            if aug[i][j] != 0 {
                acc -= Rational::from(&aug[i][j] * &x[j]);
            }
        }
        x[i] = acc / &aug[i][i];
    }
    Ok(x)
}

/// Solves `Σ_j x_j^i z_j = b_i`, `i = 0..n`, by the Björck–Pereyra scheme
/// in `O(n²)` operations. The `x_j` must be distinct.
pub fn solve_vandermonde(x: &[Rational], rhs: &[Rational]) -> Result<Vec<Rational>, SolveError> {
    let n = x.len();
    if rhs.len() != n {
        return Err(SolveError::Shape { rows: n, cols: n, rhs: rhs.len() });
    }
    let mut b = rhs.to_vec();
    if n == 0 {
        return Ok(b);
    }
    for (k, xk) in x.iter().enumerate().take(n - 1) {
        for i in (k + 1..n).rev() {
            let t = Rational::from(xk * &b[i - 1]);
            b[i] -= t;
        }
    }
    for k in (0..n - 1).rev() {
        for i in k + 1..n {
            let d = Rational::from(&x[i] - &x[i - k - 1]);
            if d == 0 {
                return Err(SolveError::Singular);
            }
            b[i] /= d;
        }
        for i in k..n - 1 {
            let t = b[i + 1].clone();
            b[i] -= t;
        }
    }
    Ok(b)
}
