//! Invariant factors of a square matrix `M`, read off the Smith normal form of
//! the characteristic matrix `t*I - M` over `Q[t]`.
//!
//! Elimination always pivots on an entry of least degree and rescales the
//! pivot row to make that entry monic (a unit operation over `Q[t]`), which
//! keeps rational coefficient growth in check. When every off-pivot entry of
//! the pivot row and column vanishes but the pivot fails to divide some entry
//! of the remaining block, that row is added to the pivot row and elimination
//! resumes; this enforces the divisibility chain directly.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::poly::{charpoly, Poly, RatPolynomial};

/// Nontrivial invariant factors `d_1 | d_2 | ... | d_m`, all monic and of
/// positive degree. Their product is the characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactorList {
    factors: Vec<RatPolynomial>,
}

impl InvariantFactorList {
    pub fn factors(&self) -> &[RatPolynomial] {
        &self.factors
    }

    pub fn product(&self) -> RatPolynomial {
        self.factors.iter().fold(Poly::one(), |acc, f| acc.mul(f))
    }

    /// Sizes of the Jordan blocks for a rational eigenvalue, largest first.
    pub fn jordan_block_sizes(&self, eigenvalue: &BigRational) -> Vec<u32> {
        let lin = Poly::linear(eigenvalue.clone());
        let mut sizes: Vec<u32> = self
            .factors
            .iter()
            .map(|f| f.exact_divide_out(&lin).map(|(_, m)| m).unwrap_or(0))
            .filter(|&m| m > 0)
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.factors.windows(2).all(|w| {
            w[1].div_rem(&w[0]).is_some_and(|(_, r)| r.is_zero())
        })
    }
}

pub fn invariant_factors<T: Scalar>(m: &Matrix<T>) -> Result<InvariantFactorList> {
    if !m.is_square() {
        return Err(Error::Shape("invariant factors of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<RatPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -m.get(i, j).to_rational();
                    if i == j {
                        Poly::new(vec![c, BigRational::one()])
                    } else {
                        Poly::constant(c)
                    }
                })
                .collect()
        })
        .collect();

    let mut diagonal = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let Some((pi, pj)) = min_degree_entry(&a, k) else {
                // t*I - M is nonsingular, so this block cannot vanish
                return Err(Error::Inconsistent("singular characteristic matrix".into()));
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let inv = a[k][k].lead().recip();
            for j in k..n {
                a[k][j] = a[k][j].scale(&inv);
            }
            let pivot = a[k][k].clone();

            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let (quot, _) = a[i][k].div_rem(&pivot).expect("monic pivot");
                for j in k..n {
                    let t = quot.mul(&a[k][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let (quot, _) = a[k][j].div_rem(&pivot).expect("monic pivot");
                for row in a.iter_mut().skip(k) {
                    let t = quot.mul(&row[k]);
                    row[j] = row[j].sub(&t);
                }
            }

            let cleared = (k + 1..n).all(|i| a[i][k].is_zero() && a[k][i].is_zero());
            if !cleared {
                continue;
            }
            let offender = (k + 1..n).find(|&i| {
                (k + 1..n).any(|j| {
                    !a[i][j].is_zero()
                        && !a[i][j].div_rem(&pivot).expect("monic pivot").1.is_zero()
                })
            });
            match offender {
                Some(i) => {
                    for j in k..n {
                        let t = a[i][j].clone();
                        a[k][j] = a[k][j].add(&t);
                    }
                }
                None => {
                    diagonal.push(pivot);
                    break;
                }
            }
        }
    }

    let factors = diagonal.into_iter().filter(|d| d.degree() > 0).collect();
    Ok(InvariantFactorList { factors })
}

fn min_degree_entry(a: &[Vec<RatPolynomial>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, entry) in row.iter().enumerate().skip(k) {
            if entry.is_zero() {
                continue;
            }
            let d = entry.degree();
            if best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, i, j));
                if d == 0 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Monic normalization of `t^n f(c/t)`: the polynomial whose roots are
/// `c / lambda` for the roots `lambda` of `f`. Requires `f(0) != 0`.
pub fn q_reciprocal(f: &RatPolynomial, c: &BigRational) -> Result<RatPolynomial> {
    let c0 = f.constant_term();
    if c0.is_zero() {
        return Err(Error::SingularAction(format!("{f} has a zero root")));
    }
    let n = f.degree();
    let mut power = BigRational::one();
    let mut out = vec![BigRational::zero(); n + 1];
    // coefficient of t^(n-k) is f_k c^k
    for k in 0..=n {
        out[n - k] = f.coeff(k) * &power;
        power *= c;
    }
    Ok(Poly::new(out).make_monic())
}

/// True iff every invariant factor of `M` is its own `q^i`-reciprocal, i.e.
/// `lambda` and `q^i / lambda` carry identical Jordan block structure.
pub fn jordan_symmetry_check<T: Scalar>(m: &Matrix<T>, q: &BigInt, i: u32) -> Result<bool> {
    let p = charpoly(m)?;
    if p.constant_term().is_zero() {
        return Err(Error::SingularAction("zero eigenvalue".into()));
    }
    let c = BigRational::from_integer(crate::exactnum::pow(q, u64::from(i)));
    let list = invariant_factors(m)?;
    for f in list.factors() {
        if q_reciprocal(f, &c)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}
