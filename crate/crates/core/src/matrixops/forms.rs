#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::exactnum::{pow, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCheck<T> {
    /// `M^T B M = q^i B`.
    pub holds: bool,
    pub determinant: T,
    /// For odd `i` (when the pairing holds): whether `det M = q^(i n/2)`.
    pub determinant_is_q_power: Option<bool>,
}

/// Tests whether `M` scales the bilinear form with Gram matrix `B` by `q^i`.
pub fn pairing_check<T: Scalar>(
    m: &Matrix<T>,
    b: &Matrix<T>,
    q: &BigInt,
    i: u32,
) -> Result<PairingCheck<T>> {
    if !m.is_square() || !b.is_square() || m.rows() != b.rows() {
        return Err(Error::Shape("pairing needs square matrices of equal size".into()));
    }
    if !(b.is_symmetric() || b.is_antisymmetric()) {
        return Err(Error::Precondition("form is neither symmetric nor alternating".into()));
    }
    if b.det()?.is_zero() {
        return Err(Error::Precondition("degenerate form".into()));
    }
    let scale = T::from_bigint(&pow(q, u64::from(i)));
    let lhs = m.transpose().mul(b)?.mul(m)?;
    let holds = lhs == b.scale(&scale);
    let determinant = m.det()?;
    let n = m.rows() as u64;
    let determinant_is_q_power = (holds && i % 2 == 1 && n.is_multiple_of(2))
        .then(|| determinant == T::from_bigint(&pow(q, u64::from(i) * n / 2)));
    Ok(PairingCheck {
        holds,
        determinant,
        determinant_is_q_power,
    })
}

/// Basis of the null space of `a` over `Q` (reduced row echelon form).
pub fn rational_kernel(a: &Matrix<BigRational>) -> Vec<Vec<BigRational>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

fn symmetric_from(n: usize, v: &[BigRational]) -> Matrix<BigRational> {
    let mut d = Matrix::from_fn(n, n, |_, _| BigRational::zero());
    let mut idx = 0;
    for r in 0..n {
        for c in r..n {
            d.set(r, c, v[idx].clone());
            d.set(c, r, v[idx].clone());
            idx += 1;
        }
    }
    d
}

fn is_positive_definite(d: &Matrix<BigRational>) -> bool {
    let idx: Vec<usize> = (0..d.rows()).collect();
    (1..=d.rows()).all(|k| {
        d.submatrix(&idx[..k], &idx[..k])
            .det()
            .is_ok_and(|m| m.is_positive())
    })
}

/// Scales to coprime integer entries with the same sign.
fn primitive(d: &Matrix<BigRational>) -> Matrix<BigRational> {
    let lcm = (0..d.rows())
        .flat_map(|i| d.row(i).iter().map(|x| x.denom().clone()).collect::<Vec<_>>())
        .fold(BigInt::one(), |acc, den| acc.lcm(&den));
    let ints = d.map(|x| x * BigRational::from_integer(lcm.clone()));
    let g = (0..ints.rows())
        .flat_map(|i| ints.row(i).iter().map(|x| x.to_integer()).collect::<Vec<_>>())
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    if g.is_zero() {
        return ints;
    }
    let g = BigRational::from_integer(g);
    ints.map(|x| x / &g)
}

/// Searches for a symmetric positive-definite `D` with `A^T D A = q D`.
///
/// The solution space is computed exactly; candidates are tried in a fixed
/// order: each kernel basis element with either sign, signed pairwise sums,
/// then a small integer grid (coefficients in `-3..=3` up to dimension 4,
/// `-1..=1` up to dimension 10). Returning `None` means no witness was
/// found within that search, not that none exists.
pub fn polarization_witness(a: &Matrix<BigInt>, q: &BigInt) -> Result<Option<Matrix<BigRational>>> {
    if !a.is_square() {
        return Err(Error::Shape("isogeny matrix must be square".into()));
    }
    if q <= &BigInt::one() {
        return Err(Error::Domain("q must exceed 1".into()));
    }
    let n = a.rows();
    let vars: Vec<(usize, usize)> = (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
    let qq = BigRational::from_integer(q.clone());
    let ar = a.to_rational();
    // one equation per upper-triangular position (i, j) of A^T D A - q D
    let system = Matrix::from_fn(vars.len(), vars.len(), |eq, var| {
        let (i, j) = vars[eq];
        let (r, c) = vars[var];
        let mut coef = ar.get(r, i) * ar.get(c, j);
        if r != c {
            coef += ar.get(c, i) * ar.get(r, j);
        }
        if (r, c) == (i, j) {
            coef -= &qq;
        }
        coef
    });
    let basis = rational_kernel(&system);
    if basis.is_empty() {
        return Ok(None);
    }
    let combine = |coeffs: &[i64]| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); vars.len()];
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(*c));
            for (slot, x) in v.iter_mut().zip(b) {
                *slot += &c * x;
            }
        }
        v
    };
    let try_coeffs = |coeffs: &[i64]| -> Option<Matrix<BigRational>> {
        let d = symmetric_from(n, &combine(coeffs));
        is_positive_definite(&d).then(|| primitive(&d))
    };

    let r = basis.len();
    let mut unit = vec![0i64; r];
    for i in 0..r {
        for s in [1, -1] {
            unit[i] = s;
            if let Some(d) = try_coeffs(&unit) {
                return Ok(Some(d));
            }
        }
        unit[i] = 0;
    }
    for i in 0..r {
        for j in i + 1..r {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut c = vec![0i64; r];
                c[i] = si;
                c[j] = sj;
                if let Some(d) = try_coeffs(&c) {
                    return Ok(Some(d));
                }
            }
        }
    }
    let bound = match r {
        0..=4 => 3,
        5..=10 => 1,
        _ => return Ok(None),
    };
    let width = (2 * bound + 1) as usize;
    let total = width.pow(r as u32);
    for code in 0..total {
        let mut rest = code;
        let c: Vec<i64> = (0..r)
            .map(|_| {
                let digit = (rest % width) as i64 - bound;
                rest /= width;
                digit
            })
            .collect();
        if let Some(d) = try_coeffs(&c) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
