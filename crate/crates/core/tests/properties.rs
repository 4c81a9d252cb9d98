use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use polspec::exactnum::{binomial, int, pow, rat, NormalizedValuation, QuadExt};
use polspec::majorize::{compound, majorizes, top_k_sum, SlopeVector};
use polspec::matrixops::{exterior_power, invariant_factors, pairing_check, polarization_witness, Matrix};
use polspec::poly::{charpoly, duality_partner, power_sums, IntPolynomial, Poly};
use polspec::polygons::{newton_polygon, np_ge_hp, NewtonPolygon, NpHpComparison, Polygon};
use polspec::varieties::{abelian_en, abelian_from_h1, grassmannian, GrassmannianVariant};
use polspec::zeta::lefschetz_number;

fn matrix(n: usize, entries: &[i64]) -> Matrix<BigInt> {
    Matrix::new(n, n, entries.iter().take(n * n).map(|&x| int(x)).collect()).unwrap()
}

fn square(max_n: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Matrix<BigInt>> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(range.clone(), n * n).prop_map(move |e| matrix(n, &e))
    })
}

/// Lagrange interpolation of `det(x I - M)` at `x = 0..=n`.
fn charpoly_by_interpolation(m: &Matrix<BigInt>) -> Vec<BigRational> {
    let n = m.rows();
    let mr = m.to_rational();
    let xs: Vec<BigRational> = (0..=n).map(|x| rat(x as i64, 1)).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| Matrix::<BigRational>::identity(n).scale(x).add(&mr.neg()).unwrap().det().unwrap())
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (j, (xj, yj)) in xs.iter().zip(&ys).enumerate() {
        // basis polynomial prod_{k != j} (x - x_k) / (x_j - x_k), low-first
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (k, xk) in xs.iter().enumerate() {
            if k == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (e, c) in basis.iter().enumerate() {
                next[e + 1] += c;
                next[e] -= c * xk;
            }
            basis = next;
            denom *= xj - xk;
        }
        for (slot, c) in coeffs.iter_mut().zip(basis) {
            *slot += c * yj / &denom;
        }
    }
    coeffs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn charpoly_matches_interpolated_determinant(m in square(6, -9..=9)) {
        let p = charpoly(&m).unwrap().to_rational();
        prop_assert_eq!(p.coeffs().to_vec(), charpoly_by_interpolation(&m));
    }

    #[test]
    fn power_sums_are_traces(m in square(6, -5..=5)) {
        let sums = power_sums(&charpoly(&m).unwrap(), 5).unwrap();
        for (k, s) in sums.iter().enumerate() {
            prop_assert_eq!(s, &m.pow(k as u32 + 1).unwrap().trace());
        }
    }

    #[test]
    fn charpoly_is_similarity_invariant(m in square(5, -4..=4), c in -3i64..=3, i in 0usize..5, j in 0usize..5) {
        let n = m.rows();
        prop_assume!(n > 1 && i % n != j % n);
        let (i, j) = (i % n, j % n);
        let e = Matrix::from_fn(n, n, |r, col| if r == col { int(1) } else if (r, col) == (i, j) { int(c) } else { int(0) });
        let e_inv = Matrix::from_fn(n, n, |r, col| if r == col { int(1) } else if (r, col) == (i, j) { int(-c) } else { int(0) });
        let conj = e.mul(&m).unwrap().mul(&e_inv).unwrap();
        prop_assert_eq!(charpoly(&conj).unwrap(), charpoly(&m).unwrap());
        prop_assert_eq!(invariant_factors(&conj).unwrap(), invariant_factors(&m).unwrap());
    }

    #[test]
    fn invariant_factors_multiply_to_charpoly(m in square(5, -3..=3)) {
        let list = invariant_factors(&m).unwrap();
        prop_assert!(list.is_divisibility_chain());
        prop_assert_eq!(list.product(), charpoly(&m).unwrap().to_rational());
    }

    #[test]
    fn exterior_power_of_triangular_has_product_eigenvalues(diag in prop::collection::vec(-4i64..=4, 1..=5), upper in prop::collection::vec(-3i64..=3, 25), k in 1usize..=5) {
        let n = diag.len();
        prop_assume!(k <= n);
        let m = Matrix::from_fn(n, n, |r, c| if r == c { int(diag[r]) } else if c > r { int(upper[r * 5 + c]) } else { int(0) });
        let expected = polspec::matrixops::k_subsets(n, k)
            .into_iter()
            .map(|s| Poly::linear(s.iter().map(|&i| int(diag[i])).product::<BigInt>()))
            .fold(IntPolynomial::one(), |acc, f| acc.mul(&f));
        prop_assert_eq!(charpoly(&exterior_power(&m, k).unwrap()).unwrap(), expected);
    }

    #[test]
    fn duality_partner_is_an_involution(roots in prop::collection::vec((0u32..=3, prop::bool::ANY), 1..=5), d in 1u32..=3) {
        // roots +-2^e with q = 2 keep every partner integral
        let q = int(2);
        let roots: Vec<BigInt> = roots.iter().map(|&(e, neg)| if neg { -pow(&q, u64::from(e.min(d))) } else { pow(&q, u64::from(e.min(d))) }).collect();
        let p = roots.iter().fold(IntPolynomial::one(), |acc, r| acc.mul(&Poly::linear(r.clone())));
        let dual = duality_partner(&p, &q, d).unwrap();
        prop_assert_eq!(duality_partner(&dual, &q, d).unwrap(), p);
    }

    #[test]
    fn exact_divide_out_reassembles(base in prop::collection::vec(-5i64..=5, 1..=4), root in -4i64..=4, mult in 0u32..=3) {
        let mut lf = vec![1i64];
        lf.extend(base);
        let core = Poly::from_leading_first(lf.iter().map(|&c| int(c)).collect::<Vec<_>>());
        let factor = Poly::linear(int(root));
        let (rest, m) = core.mul(&factor.pow(mult)).exact_divide_out(&factor).unwrap();
        prop_assert!(m >= mult);
        prop_assert_eq!(rest.mul(&factor.pow(m)), core.mul(&factor.pow(mult)));
        prop_assert!(!rest.eval(&int(root)).is_zero());
    }

    #[test]
    fn quad_conjugation_is_an_involutive_automorphism(a in -20i64..=20, b in -20i64..=20, c in -20i64..=20, e in -20i64..=20, r in 2i64..=30) {
        let x = QuadExt::new(rat(a, 3), rat(b, 2), int(r)).unwrap();
        let y = QuadExt::new(rat(c, 1), rat(e, 5), int(r)).unwrap();
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.checked_mul(&y).unwrap().conj(), x.conj().checked_mul(&y.conj()).unwrap());
        prop_assert_eq!(x.checked_mul(&x.conj()).unwrap().as_rational().cloned(), Some(x.norm()));
    }

    #[test]
    fn perfect_square_radicands_fold(s in 2i64..=12, a in -9i64..=9, b in -9i64..=9) {
        let x = QuadExt::new(rat(a, 1), rat(b, 1), int(s * s)).unwrap();
        prop_assert!(x.is_rational());
        prop_assert_eq!(x.as_rational().cloned(), Some(rat(a + b * s, 1)));
    }

    #[test]
    fn pairing_forces_determinant_square(a in -6i64..=6, b in -6i64..=6) {
        prop_assume!(a != 0 || b != 0);
        let m = matrix(2, &[a, -b, b, a]);
        let q = int(a * a + b * b);
        let j = matrix(2, &[0, 1, -1, 0]);
        let r = pairing_check(&m, &j, &q, 1).unwrap();
        prop_assert!(r.holds);
        prop_assert_eq!(r.determinant.clone() * r.determinant, q.clone() * q);
    }

    #[test]
    fn witnesses_are_sound(a in 1i64..=5, b in 1i64..=5, paired in prop::bool::ANY) {
        // a rotation, or a rotation paired with its transpose, at q = a^2 + b^2
        let q = int(a * a + b * b);
        let rot = matrix(2, &[a, -b, b, a]);
        let isogeny = if paired { Matrix::block_diag(&[rot.clone(), rot.transpose()]).unwrap() } else { rot };
        if let Some(d) = polarization_witness(&isogeny, &q).unwrap() {
            let ar = isogeny.to_rational();
            let lhs = ar.transpose().mul(&d).unwrap().mul(&ar).unwrap();
            prop_assert_eq!(lhs, d.scale(&BigRational::from_integer(q)));
            prop_assert!(d.is_symmetric());
            prop_assert!(d.det().unwrap() > BigRational::zero());
        }
    }

    #[test]
    fn newton_polygons_are_additive(f in prop::collection::vec(1i64..=40, 1..=4), g in prop::collection::vec(1i64..=40, 1..=4)) {
        let v = NormalizedValuation::new(int(2), int(4)).unwrap();
        let build = |roots: &[i64]| roots.iter().fold(IntPolynomial::one(), |acc, &r| acc.mul(&Poly::linear(int(r))));
        let (pf, pg) = (build(&f), build(&g));
        let nf = newton_polygon(&pf, &v).unwrap();
        let ng = newton_polygon(&pg, &v).unwrap();
        let nfg = newton_polygon(&pf.mul(&pg), &v).unwrap();
        let mut slopes = nf.slopes().to_vec();
        slopes.extend_from_slice(ng.slopes());
        prop_assert_eq!(nfg, NewtonPolygon::from_slopes(slopes));
    }

    #[test]
    fn np_ge_hp_is_reflexive_and_antisymmetric(a in prop::collection::vec(0i64..=6, 1..=6), b in prop::collection::vec(0i64..=6, 1..=6)) {
        let pa = NewtonPolygon::from_slopes(a.iter().map(|&x| rat(x, 2)).collect());
        let pb = NewtonPolygon::from_slopes(b.iter().map(|&x| rat(x, 2)).collect());
        let refl = matches!(np_ge_hp(&pa, &pa), NpHpComparison::Holds { equal_everywhere: true, .. });
        prop_assert!(refl);
        let ab = matches!(np_ge_hp(&pa, &pb), NpHpComparison::Holds { endpoints_equal: true, .. });
        let ba = matches!(np_ge_hp(&pb, &pa), NpHpComparison::Holds { endpoints_equal: true, .. });
        if ab && ba {
            prop_assert_eq!(pa.vertices(), pb.vertices());
        }
    }

    #[test]
    fn compound_total_sum(x in prop::collection::vec(-10i64..=10, 1..=7), k in 1usize..=7) {
        let n = x.len();
        prop_assume!(k <= n);
        let xs = SlopeVector::new(x.iter().map(|&v| rat(v, 1)).collect()).unwrap();
        let c = compound(&xs, k).unwrap();
        let total = top_k_sum(&c, c.len()).unwrap();
        let factor = BigRational::from_integer(BigInt::from(binomial(n - 1, k - 1)));
        prop_assert_eq!(total, factor * xs.sum());
    }

    #[test]
    fn top_sums_of_compounds_are_monotone(y in prop::collection::vec(-12i64..=12, 2..=6), moves in prop::collection::vec((0usize..6, 0usize..6, 0i64..=4), 0..5)) {
        // x from y by Robin Hood transfers, so x is majorized by y
        let mut x: Vec<BigRational> = y.iter().map(|&v| rat(v, 1)).collect();
        let n = x.len();
        for (i, j, f) in moves {
            let (i, j) = (i % n, j % n);
            let (hi, lo) = if x[i] >= x[j] { (i, j) } else { (j, i) };
            let delta = (&x[hi] - &x[lo]) * rat(f, 8);
            x[hi] = &x[hi] - &delta;
            x[lo] = &x[lo] + &delta;
        }
        let xs = SlopeVector::new(x).unwrap();
        let ys = SlopeVector::new(y.iter().map(|&v| rat(v, 1)).collect()).unwrap();
        prop_assert!(majorizes(&xs, &ys).unwrap());
        for k in 1..=n {
            let (cx, cy) = (compound(&xs, k).unwrap(), compound(&ys, k).unwrap());
            for l in 1..=cx.len() {
                prop_assert!(top_k_sum(&cx, l).unwrap() <= top_k_sum(&cy, l).unwrap());
            }
        }
    }
}

#[test]
fn abelian_degrees_and_top_determinant() {
    for (a, b) in [(1, 1), (1, 2), (2, 3), (4, 1)] {
        let q = int(a * a + b * b);
        let rot = matrix(2, &[a, -b, b, a]);
        for model in [
            abelian_from_h1(1, &rot, &q).unwrap(),
            abelian_en(&rot, &q).unwrap(),
            abelian_from_h1(3, &Matrix::block_diag(&[rot.clone(), rot.clone(), rot.clone()]).unwrap(), &q).unwrap(),
        ] {
            let d = model.dimension() as usize;
            for act in model.actions() {
                assert_eq!(act.charpoly.degree() as u64, binomial(2 * d, act.degree as usize));
            }
            let top = model.action(2 * d as u32).unwrap();
            assert_eq!(top.matrix.as_ref().unwrap().det().unwrap(), pow(&q, d as u64));
        }
    }
}

#[test]
fn lefschetz_paths_agree() {
    // lefschetz_number itself cross-checks traces against power sums
    let rot = matrix(2, &[2, -1, 1, 2]);
    let models = [
        abelian_en(&matrix(2, &[1, -5, 1, 1]), &int(6)).unwrap(),
        abelian_from_h1(3, &Matrix::block_diag(&[rot.clone(), rot.clone(), rot]).unwrap(), &int(5)).unwrap(),
        grassmannian(3, 6, &int(4), GrassmannianVariant::Involution).unwrap(),
    ];
    for model in &models {
        for n in 1..=5 {
            lefschetz_number(model, n).unwrap();
        }
    }
}
