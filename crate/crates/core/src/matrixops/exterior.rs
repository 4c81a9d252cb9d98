use itertools::Itertools;

use super::Matrix;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// All `k`-subsets of `0..n` in lexicographic order: `(0,1), (0,2), ...`.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

/// The `k`-th compound matrix: entry `(I, J)` is the `I x J` minor, with
/// `k`-subsets ordered lexicographically.
pub fn exterior_power<T: Scalar>(m: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::Shape("exterior power of a non-square matrix".into()));
    }
    let n = m.rows();
    if k == 0 || k > n {
        return Err(Error::Shape(format!("exterior power {k} of a {n}x{n} matrix")));
    }
    let subsets = k_subsets(n, k);
    let size = subsets.len();
    let mut data = Vec::with_capacity(size * size);
    for rows in &subsets {
        for cols in &subsets {
            data.push(m.submatrix(rows, cols).det()?);
        }
    }
    Matrix::new(size, size, data)
}
