//! Small dense integer and rational matrix helpers (rank at most 8 in practice).

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rational = Ratio<i64>;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IMat {
    n: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IMat { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IMat {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> IMat {
        let n = self.n;
        let mut out = IMat::identity(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        IMat { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                    return 0;
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        i64::try_from(sign * m[n - 1][n - 1]).expect("determinant fits in i64")
    }

    /// Exact inverse over the rationals; `None` if singular.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<Rational>>> {
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> =
                    (0..n).map(|j| Rational::from_integer(self.get(i, j))).collect();
                row.extend((0..n).map(|j| Rational::from_integer(i64::from(i == j))));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            let piv = a[col][col];
            for x in a[col].iter_mut() {
                *x /= piv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
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

    /// Inverse of a unimodular matrix; panics if the inverse is not integral.
    pub fn inverse_unimodular(&self) -> IMat {
        let inv = self.inverse_rational().expect("matrix is invertible");
        let rows: Vec<Vec<i64>> = inv
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        assert!(x.is_integer(), "inverse is not integral");
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        IMat::from_rows(&rows)
    }
}

/// Coefficients `λ` with `Σ λ_i gens[i] = target`, solved exactly; `None`
/// if `target` is outside the span.
///
/// `gens` must be linearly independent.
pub fn solve_in_span(gens: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational>> {
    SpanSolver::new(gens).solve(target)
}

/// Precomputed elimination for repeated solves against the same generators.
pub struct SpanSolver {
    gens: Vec<Vec<i64>>,
    /// Rows of a left inverse: `λ_i = Σ_j left_inv[i][j] * target[j]`.
    left_inv: Vec<Vec<Rational>>,
}

impl SpanSolver {
    pub fn new(gens: &[Vec<i64>]) -> Self {
        let d = gens.len();
        let n = gens.first().map_or(0, Vec::len);
        // Row-reduce the n x d matrix [gens as columns | I_n] to read off a
        // left inverse from the pivot rows.
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> =
                    (0..d).map(|j| Rational::from_integer(gens[j][i])).collect();
                row.extend((0..n).map(|j| Rational::from_integer(i64::from(i == j))));
                row
            })
            .collect();
        let mut pivot_row = 0;
        for col in 0..d {
            let p = (pivot_row..n)
                .find(|&r| !a[r][col].is_zero())
                .expect("generators are linearly independent");
            a.swap(pivot_row, p);
            let piv = a[pivot_row][col];
            for x in a[pivot_row].iter_mut() {
                *x /= piv;
            }
            for r in 0..n {
                if r != pivot_row && !a[r][col].is_zero() {
                    let f = a[r][col];
                    for c in 0..d + n {
                        let v = a[pivot_row][c];
                        a[r][c] -= f * v;
                    }
                }
            }
            pivot_row += 1;
        }
        let left_inv = (0..d).map(|i| a[i][d..].to_vec()).collect();
        SpanSolver {
            gens: gens.to_vec(),
            left_inv,
        }
    }

    pub fn solve(&self, target: &[i64]) -> Option<Vec<Rational>> {
        let lambda: Vec<Rational> = self
            .left_inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(target)
                    .fold(Rational::zero(), |acc, (c, &t)| acc + c * t)
            })
            .collect();
        // zero residual check
        for (k, &t) in target.iter().enumerate() {
            let s = self
                .gens
                .iter()
                .zip(&lambda)
                .fold(Rational::zero(), |acc, (g, l)| acc + l * g[k]);
            if s != Rational::from_integer(t) {
                return None;
            }
        }
        Some(lambda)
    }
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x.abs()))
}

pub fn is_nonnegative(v: &[i64]) -> bool {
    !v.iter().any(|x| x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        let c = IMat::from_rows(&[vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
        assert_eq!(c.det(), 2);
        assert_eq!(IMat::from_rows(&[vec![0, 1], vec![1, 0]]).det(), -1);
        assert_eq!(IMat::from_rows(&[vec![1, 2], vec![2, 4]]).det(), 0);
    }

    #[test]
    fn unimodular_inverse() {
        let m = IMat::from_rows(&[vec![1, 1], vec![0, -1]]);
        assert_eq!(m.mul(&m.inverse_unimodular()), IMat::identity(2));
    }

    #[test]
    fn span_solve() {
        let gens = vec![vec![2, 1, 0], vec![1, 2, 0]];
        let l = solve_in_span(&gens, &[1, 1, 0]).unwrap();
        assert_eq!(l, vec![Rational::new(1, 3), Rational::new(1, 3)]);
        assert!(solve_in_span(&gens, &[1, 1, 1]).is_none());
    }
}
