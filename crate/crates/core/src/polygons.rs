//! Newton polygons of characteristic polynomials, Hodge polygons, and the
//! polygon predicates (slope symmetry, slope zero, Newton-above-Hodge).
//!
//! A polygon is stored as its vertex list together with its slope sequence
//! in nondecreasing order; slope `s` repeated `l` times is a segment of slope
//! `s` and horizontal length `l`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, NormalizedValuation};
use crate::poly::IntPolynomial;

/// A lattice-abscissa vertex `(x, y)` with rational ordinate.
pub type Vertex = (usize, BigRational);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<Vertex>,
    slopes: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgePolygon {
    weight: u32,
    hodge_numbers: Vec<u64>,
    vertices: Vec<Vertex>,
    slopes: Vec<BigRational>,
}

/// Shared view of a convex polygon starting at the origin.
pub trait Polygon {
    fn vertices(&self) -> &[Vertex];

    /// Slopes in nondecreasing order, one per unit of horizontal length.
    fn slopes(&self) -> &[BigRational];

    fn length(&self) -> usize {
        self.slopes().len()
    }

    fn endpoint(&self) -> Vertex {
        self.vertices().last().cloned().expect("polygons contain the origin")
    }

    /// Vertices as `[x, "num/den"]` pairs.
    fn to_json(&self) -> PolygonJson {
        PolygonJson {
            vertices: self
                .vertices()
                .iter()
                .map(|(x, y)| (*x, format_rational(y)))
                .collect(),
        }
    }
}

impl Polygon for NewtonPolygon {
    fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    fn slopes(&self) -> &[BigRational] {
        &self.slopes
    }
}

impl Polygon for HodgePolygon {
    fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    fn slopes(&self) -> &[BigRational] {
        &self.slopes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<(usize, String)>,
}

impl PolygonJson {
    pub fn parse_vertices(&self) -> Result<Vec<Vertex>> {
        self.vertices
            .iter()
            .map(|(x, y)| Ok((*x, parse_rational(y)?)))
            .collect()
    }
}

fn cross(o: &Vertex, a: &Vertex, b: &Vertex) -> BigRational {
    let ax = BigRational::from_integer(BigInt::from(a.0 as i64 - o.0 as i64));
    let bx = BigRational::from_integer(BigInt::from(b.0 as i64 - o.0 as i64));
    ax * (&b.1 - &o.1) - (&a.1 - &o.1) * bx
}

/// Lower convex hull of points sorted by strictly increasing abscissa
/// (monotone chain). Collinear interior points are dropped.
fn lower_hull(points: &[Vertex]) -> Vec<Vertex> {
    let mut hull: Vec<Vertex> = Vec::with_capacity(points.len());
    for p in points {
        while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive() {
            hull.pop();
        }
        hull.push(p.clone());
    }
    hull
}

fn slopes_of(vertices: &[Vertex]) -> Vec<BigRational> {
    let mut slopes = Vec::new();
    for w in vertices.windows(2) {
        let run = w[1].0 - w[0].0;
        let s = (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(run));
        slopes.extend(std::iter::repeat_n(s, run));
    }
    slopes
}

/// Newton polygon of a monic polynomial: the lower hull of
/// `(k, nu(a_k))`, where `a_k` is the coefficient of `t^(n-k)`.
pub fn newton_polygon(p: &IntPolynomial, v: &NormalizedValuation) -> Result<NewtonPolygon> {
    if !p.is_monic() {
        return Err(Error::Precondition(format!("{p} is not monic")));
    }
    if p.constant_term().is_zero() {
        return Err(Error::SingularAction(format!("{p} has a zero root")));
    }
    let coeffs = p.leading_first();
    let points = coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(k, a)| Ok((k, v.valuate_int(a)?)))
        .collect::<Result<Vec<_>>>()?;
    let vertices = lower_hull(&points);
    let slopes = slopes_of(&vertices);
    Ok(NewtonPolygon { vertices, slopes })
}

impl NewtonPolygon {
    /// The polygon with the given slopes (any order).
    pub fn from_slopes(mut slopes: Vec<BigRational>) -> Self {
        slopes.sort();
        let mut vertices = vec![(0usize, BigRational::zero())];
        let mut y = BigRational::zero();
        for (k, s) in slopes.iter().enumerate() {
            y += s;
            let last_slope_changes = slopes.get(k + 1).is_none_or(|next| next != s);
            if last_slope_changes {
                vertices.push((k + 1, y.clone()));
            }
        }
        NewtonPolygon { vertices, slopes }
    }
}

/// Hodge polygon of weight `i` from `h^{0,i}, h^{1,i-1}, ..., h^{i,0}`.
pub fn hodge_polygon(weight: u32, hodge_numbers: &[u64]) -> Result<HodgePolygon> {
    if hodge_numbers.len() != weight as usize + 1 {
        return Err(Error::Shape(format!(
            "weight {weight} needs {} Hodge numbers, got {}",
            weight + 1,
            hodge_numbers.len()
        )));
    }
    if hodge_numbers.iter().all(|&h| h == 0) {
        return Err(Error::Validity(format!("empty Hodge polygon in weight {weight}")));
    }
    let mut vertices = vec![(0usize, BigRational::zero())];
    let mut slopes = Vec::new();
    let (mut x, mut y) = (0usize, 0u64);
    for (j, &h) in hodge_numbers.iter().enumerate() {
        if h == 0 {
            continue;
        }
        x += h as usize;
        y += j as u64 * h;
        vertices.push((x, BigRational::from_integer(BigInt::from(y))));
        slopes.extend(std::iter::repeat_n(
            BigRational::from_integer(BigInt::from(j)),
            h as usize,
        ));
    }
    Ok(HodgePolygon {
        weight,
        hodge_numbers: hodge_numbers.to_vec(),
        vertices,
        slopes,
    })
}

impl HodgePolygon {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn hodge_numbers(&self) -> &[u64] {
        &self.hodge_numbers
    }
}

/// Slopes lie in `[0, i]` and slope `a` occurs exactly as often as `i - a`.
pub fn symmetry_check(np: &impl Polygon, i: u32) -> bool {
    let top = BigRational::from_integer(BigInt::from(i));
    let slopes = np.slopes();
    if slopes.iter().any(|s| s.is_negative() || *s > top) {
        return false;
    }
    // sorted ascending, so the reflected sequence read backwards must match
    slopes
        .iter()
        .zip(slopes.iter().rev())
        .all(|(a, b)| a + b == top)
}

/// Every slope is zero.
pub fn slope_zero_check(np: &impl Polygon) -> bool {
    np.slopes().iter().all(Zero::is_zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NpHpComparison {
    /// Every partial slope sum of NP is at least that of HP.
    Holds {
        endpoints_equal: bool,
        equal_everywhere: bool,
    },
    /// First abscissa `x` where NP lies strictly below HP.
    FailsAt { x: usize, endpoints_equal: bool },
    /// Polygons of different length.
    Incomparable,
}

/// Compares `NP >= HP` by partial sums of slopes in nondecreasing order.
pub fn np_ge_hp(np: &impl Polygon, hp: &impl Polygon) -> NpHpComparison {
    if np.length() != hp.length() {
        return NpHpComparison::Incomparable;
    }
    let endpoints_equal = np.endpoint() == hp.endpoint();
    let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
    let mut equal_everywhere = true;
    for (k, (s, h)) in np.slopes().iter().zip(hp.slopes()).enumerate() {
        a += s;
        b += h;
        match a.cmp(&b) {
            Ordering::Less => {
                return NpHpComparison::FailsAt {
                    x: k + 1,
                    endpoints_equal,
                }
            }
            Ordering::Greater => equal_everywhere = false,
            Ordering::Equal => {}
        }
    }
    NpHpComparison::Holds {
        endpoints_equal,
        equal_everywhere,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::poly::Poly;

    fn ip(lf: &[i64]) -> IntPolynomial {
        Poly::from_leading_first(lf.iter().map(|&c| int(c)).collect())
    }

    fn verts(v: &[(usize, i64, i64)]) -> Vec<Vertex> {
        v.iter().map(|&(x, n, d)| (x, rat(n, d))).collect()
    }

    fn nu(prime: i64, q: i64) -> NormalizedValuation {
        NormalizedValuation::new(int(prime), int(q)).unwrap()
    }

    fn example() -> IntPolynomial {
        ip(&[1, -4, 16, -24, 36])
    }

    #[test]
    fn example_newton_polygons() {
        let np2 = newton_polygon(&example(), &nu(2, 6)).unwrap();
        assert_eq!(np2.vertices(), verts(&[(0, 0, 1), (4, 2, 1)]));
        assert_eq!(np2.slopes(), vec![rat(1, 2); 4]);
        let np3 = newton_polygon(&example(), &nu(3, 6)).unwrap();
        assert_eq!(np3.vertices(), verts(&[(0, 0, 1), (2, 0, 1), (4, 2, 1)]));
        assert_eq!(np3.slopes(), vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 1)]);
        let trivial = newton_polygon(&ip(&[1, -1]), &nu(5, 6)).unwrap();
        assert_eq!(trivial.slopes(), vec![rat(0, 1)]);
    }

    #[test]
    fn newton_polygon_errors() {
        assert!(matches!(newton_polygon(&ip(&[1, 2, 0]), &nu(2, 6)), Err(Error::SingularAction(_))));
        assert!(matches!(newton_polygon(&ip(&[2, 1]), &nu(2, 6)), Err(Error::Precondition(_))));
    }

    #[test]
    fn zero_coefficients_are_skipped() {
        // t^2 + 8 at nu_2 (q = 2): points (0,0), (2,3)
        let np = newton_polygon(&ip(&[1, 0, 8]), &nu(2, 2)).unwrap();
        assert_eq!(np.vertices(), verts(&[(0, 0, 1), (2, 3, 1)]));
        assert_eq!(np.slopes(), vec![rat(3, 2); 2]);
    }

    #[test]
    fn hodge_examples() {
        let hp = hodge_polygon(1, &[2, 2]).unwrap();
        assert_eq!(hp.vertices(), verts(&[(0, 0, 1), (2, 0, 1), (4, 2, 1)]));
        let g = hodge_polygon(4, &[0, 0, 2, 0, 0]).unwrap();
        assert_eq!(g.vertices(), verts(&[(0, 0, 1), (2, 4, 1)]));
        assert_eq!(g.slopes(), vec![rat(2, 1); 2]);
        let ord = hodge_polygon(1, &[3, 3]).unwrap();
        assert_eq!(ord.vertices(), verts(&[(0, 0, 1), (3, 0, 1), (6, 3, 1)]));
        assert!(matches!(hodge_polygon(2, &[0, 0, 0]), Err(Error::Validity(_))));
        assert!(matches!(hodge_polygon(2, &[1, 1]), Err(Error::Shape(_))));
    }

    #[test]
    fn symmetry_examples() {
        let s = |v: &[(i64, i64)]| NewtonPolygon::from_slopes(v.iter().map(|&(n, d)| rat(n, d)).collect());
        assert!(symmetry_check(&s(&[(0, 1), (0, 1), (1, 1), (1, 1)]), 1));
        assert!(symmetry_check(&s(&[(1, 2); 4]), 1));
        assert!(!symmetry_check(&s(&[(0, 1), (0, 1), (0, 1), (1, 1)]), 1));
        assert!(!symmetry_check(&s(&[(-1, 1), (2, 1)]), 1));
    }

    #[test]
    fn slope_zero_examples() {
        let unnormalized = nu(5, 6);
        assert!(slope_zero_check(&newton_polygon(&ip(&[1, -5, 6]), &unnormalized).unwrap()));
        assert!(slope_zero_check(&newton_polygon(&ip(&[1, -1]), &nu(2, 6)).unwrap()));
        assert!(!slope_zero_check(&newton_polygon(&example(), &nu(2, 6)).unwrap()));
    }

    #[test]
    fn comparison_examples() {
        let hp = hodge_polygon(1, &[2, 2]).unwrap();
        let np2 = newton_polygon(&example(), &nu(2, 6)).unwrap();
        let np3 = newton_polygon(&example(), &nu(3, 6)).unwrap();
        assert_eq!(
            np_ge_hp(&np2, &hp),
            NpHpComparison::Holds { endpoints_equal: true, equal_everywhere: false }
        );
        assert_eq!(
            np_ge_hp(&np3, &hp),
            NpHpComparison::Holds { endpoints_equal: true, equal_everywhere: true }
        );
        let low = NewtonPolygon::from_slopes(vec![rat(0, 1), rat(1, 1)]);
        let high = NewtonPolygon::from_slopes(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(np_ge_hp(&low, &high), NpHpComparison::FailsAt { x: 1, endpoints_equal: true });
        assert_eq!(np_ge_hp(&low, &hp), NpHpComparison::Incomparable);
    }

    #[test]
    fn from_slopes_matches_vertices() {
        let np = NewtonPolygon::from_slopes(vec![rat(1, 1), rat(0, 1), rat(1, 2), rat(0, 1)]);
        assert_eq!(np.vertices(), verts(&[(0, 0, 1), (2, 0, 1), (3, 1, 2), (4, 3, 2)]));
    }
}
