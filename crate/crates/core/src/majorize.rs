//! Majorization of slope vectors and compound (k-fold subset sum) vectors.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A finite, nonempty vector of rationals in arbitrary order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeVector(Vec<BigRational>);

impl SlopeVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Shape("empty slope vector".into()));
        }
        Ok(SlopeVector(entries))
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, x| acc + x)
    }

    fn descending(&self) -> Vec<BigRational> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

impl From<Vec<BigRational>> for SlopeVector {
    /// Panics on an empty vector; use [`SlopeVector::new`] for fallible input.
    fn from(entries: Vec<BigRational>) -> Self {
        SlopeVector::new(entries).expect("nonempty")
    }
}

/// `x < y` in the majorization order: the partial sums of the largest
/// entries of `x` never exceed those of `y`, and the totals agree.
pub fn majorizes(x: &SlopeVector, y: &SlopeVector) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::Shape(format!("lengths {} and {}", x.len(), y.len())));
    }
    let (xs, ys) = (x.descending(), y.descending());
    let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
    for (p, q) in xs.iter().zip(&ys) {
        a += p;
        b += q;
        if a > b {
            return Ok(false);
        }
    }
    Ok(a == b)
}

/// All `k`-fold subset sums `x_{i_1} + ... + x_{i_k}` with
/// `i_1 < ... < i_k` in lexicographic order.
pub fn compound(x: &SlopeVector, k: usize) -> Result<SlopeVector> {
    let n = x.len();
    if k == 0 || k > n {
        return Err(Error::Shape(format!("compound {k} of a length-{n} vector")));
    }
    let entries = x
        .0
        .iter()
        .combinations(k)
        .map(|c| c.into_iter().fold(BigRational::zero(), |acc, v| acc + v))
        .collect();
    SlopeVector::new(entries)
}

/// Sum of the `l` largest entries.
pub fn top_k_sum(z: &SlopeVector, l: usize) -> Result<BigRational> {
    if l == 0 || l > z.len() {
        return Err(Error::Shape(format!("top {l} of {} entries", z.len())));
    }
    Ok(z.descending()
        .into_iter()
        .take(l)
        .fold(BigRational::zero(), |acc, v| acc + v))
}
