//! Variety models: per-degree cohomology actions together with Betti and
//! Hodge numbers for abelian varieties, Grassmannians and user-supplied data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, parse_bigint, pow};
use crate::matrixops::{exterior_power, polarization_witness, Matrix};
use crate::poly::{charpoly, IntPolynomial, Poly};

/// The action of the endomorphism on `H^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyAction {
    pub degree: u32,
    pub betti: usize,
    /// `P_i`, monic of degree `betti` (the constant `1` when `betti = 0`).
    pub charpoly: IntPolynomial,
    pub matrix: Option<Matrix<BigInt>>,
}

impl CohomologyAction {
    fn from_matrix(degree: u32, m: Matrix<BigInt>) -> Result<Self> {
        let p = charpoly(&m)?;
        Ok(CohomologyAction {
            degree,
            betti: m.rows(),
            charpoly: p,
            matrix: Some(m),
        })
    }

    fn empty(degree: u32) -> Self {
        CohomologyAction {
            degree,
            betti: 0,
            charpoly: Poly::one(),
            matrix: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Abelian,
    Grassmannian,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrassmannianVariant {
    /// `f^*` acts on `H^{2j}` as multiplication by `q^j`.
    Scalar,
    /// `q^j` composed with the partition-transpose involution (`n = 2k` only).
    Involution,
}

/// Construction data retained with a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelMetadata {
    AbelianH1 {
        h1: Matrix<BigInt>,
    },
    AbelianEn {
        isogeny: Matrix<BigInt>,
        /// Positive-definite `D` with `A^T D A = q D`, when one was found.
        witness: Option<Matrix<BigRational>>,
    },
    Grassmannian {
        k: usize,
        n: usize,
        variant: GrassmannianVariant,
    },
    Generic {
        strict: bool,
        supplied_charpolys: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyModel {
    kind: ModelKind,
    dimension: u32,
    q: BigInt,
    actions: Vec<CohomologyAction>,
    /// `hodge[i] = [h^{0,i}, h^{1,i-1}, ..., h^{i,0}]`, if known.
    hodge: Vec<Option<Vec<u64>>>,
    metadata: ModelMetadata,
    warnings: Vec<String>,
}

impl VarietyModel {
    fn assemble(
        kind: ModelKind,
        dimension: u32,
        q: BigInt,
        actions: Vec<CohomologyAction>,
        hodge: Vec<Option<Vec<u64>>>,
        metadata: ModelMetadata,
        warnings: Vec<String>,
    ) -> Result<Self> {
        let top = 2 * dimension as usize;
        debug_assert_eq!(actions.len(), top + 1);
        for i in 0..=dimension as usize {
            let (a, b) = (actions[i].betti, actions[top - i].betti);
            if a != b {
                return Err(Error::Validity(format!(
                    "b_{i} = {a} differs from b_{} = {b}",
                    top - i
                )));
            }
        }
        Ok(VarietyModel {
            kind,
            dimension,
            q,
            actions,
            hodge,
            metadata,
            warnings,
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn actions(&self) -> &[CohomologyAction] {
        &self.actions
    }

    pub fn action(&self, i: u32) -> Option<&CohomologyAction> {
        self.actions.get(i as usize)
    }

    pub fn hodge(&self, i: u32) -> Option<&[u64]> {
        self.hodge.get(i as usize).and_then(|h| h.as_deref())
    }

    pub fn metadata(&self) -> &ModelMetadata {
        &self.metadata
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.actions.iter().map(|a| a.betti).collect()
    }

    /// `chi = sum (-1)^i b_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.actions
            .iter()
            .map(|a| if a.degree % 2 == 0 { a.betti as i64 } else { -(a.betti as i64) })
            .sum()
    }

    /// The polarization witness recorded by [`abelian_en`], if any.
    pub fn polarization_witness(&self) -> Option<&Matrix<BigRational>> {
        match &self.metadata {
            ModelMetadata::AbelianEn { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}

fn require_q(q: &BigInt) -> Result<()> {
    if *q <= BigInt::one() {
        return Err(Error::Domain(format!("q = {q} must exceed 1")));
    }
    Ok(())
}

fn abelian_hodge(d: u32) -> Vec<Option<Vec<u64>>> {
    let d = d as usize;
    (0..=2 * d)
        .map(|i| {
            let row = (0..=i)
                .map(|j| {
                    if j > d || i - j > d {
                        0
                    } else {
                        binomial(d, j) * binomial(d, i - j)
                    }
                })
                .collect();
            Some(row)
        })
        .collect()
}

fn abelian_actions(d: u32, m: &Matrix<BigInt>, q: &BigInt) -> Result<(Vec<CohomologyAction>, Vec<String>)> {
    require_q(q)?;
    if d == 0 {
        return Err(Error::Domain("abelian variety of dimension 0".into()));
    }
    let n = 2 * d as usize;
    if m.rows() != n || m.cols() != n {
        return Err(Error::Shape(format!(
            "H^1 matrix of a {d}-dimensional abelian variety must be {n}x{n}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let det = m.det()?;
    if det.is_zero() {
        return Err(Error::SingularAction("H^1 matrix is singular".into()));
    }
    let mut warnings = Vec::new();
    let expected = pow(q, u64::from(d));
    if det != expected {
        warnings.push(format!(
            "det of the H^1 action is {det}, not q^{d} = {expected}"
        ));
    }
    let mut actions = vec![CohomologyAction::from_matrix(0, Matrix::identity(1))?];
    let higher = (1..=n)
        .into_par_iter()
        .map(|i| CohomologyAction::from_matrix(i as u32, exterior_power(m, i)?))
        .collect::<Result<Vec<_>>>()?;
    actions.extend(higher);
    Ok((actions, warnings))
}

/// Abelian variety of dimension `d` with `f^*|H^1` given by `m`; degree `i`
/// carries `Lambda^i m`.
pub fn abelian_from_h1(d: u32, m: &Matrix<BigInt>, q: &BigInt) -> Result<VarietyModel> {
    let (actions, warnings) = abelian_actions(d, m, q)?;
    VarietyModel::assemble(
        ModelKind::Abelian,
        d,
        q.clone(),
        actions,
        abelian_hodge(d),
        ModelMetadata::AbelianH1 { h1: m.clone() },
        warnings,
    )
}

/// The self-product `E^n` with isogeny matrix `a`, acting on `H^1` as `a (x) I_2`.
pub fn abelian_en(a: &Matrix<BigInt>, q: &BigInt) -> Result<VarietyModel> {
    if !a.is_square() {
        return Err(Error::Shape("isogeny matrix must be square".into()));
    }
    if a.det()?.is_zero() {
        return Err(Error::SingularAction("isogeny matrix is singular".into()));
    }
    let d = a.rows() as u32;
    let h1 = a.kron(&Matrix::identity(2));
    let (actions, mut warnings) = abelian_actions(d, &h1, q)?;
    let witness = polarization_witness(a, q)?;
    if witness.is_none() {
        warnings.push("no polarization witness found; model is not verified polarized".into());
    }
    VarietyModel::assemble(
        ModelKind::Abelian,
        d,
        q.clone(),
        actions,
        abelian_hodge(d),
        ModelMetadata::AbelianEn {
            isogeny: a.clone(),
            witness,
        },
        warnings,
    )
}

/// Partitions with at most `rows` parts, each at most `cols`, written as
/// nonincreasing vectors of length `rows` (zero-padded). Grouped by size,
/// lexicographically decreasing within a size.
pub fn box_partitions(rows: usize, cols: usize) -> Vec<Vec<Vec<usize>>> {
    fn extend(prefix: &mut Vec<usize>, rows: usize, cap: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == rows {
            out.push(prefix.clone());
            return;
        }
        for part in (0..=cap).rev() {
            prefix.push(part);
            extend(prefix, rows, part, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    extend(&mut Vec::with_capacity(rows), rows, cols, &mut all);
    let mut by_size = vec![Vec::new(); rows * cols + 1];
    for p in all {
        let size: usize = p.iter().sum();
        by_size[size].push(p);
    }
    by_size
}

/// Conjugate partition of `lambda` inside a box with `cols` columns.
pub fn conjugate_partition(lambda: &[usize], cols: usize) -> Vec<usize> {
    (1..=cols)
        .map(|c| lambda.iter().filter(|&&part| part >= c).count())
        .collect()
}

/// Complement of `lambda` inside the `rows x cols` box.
pub fn complement_partition(lambda: &[usize], cols: usize) -> Vec<usize> {
    lambda.iter().rev().map(|&part| cols - part).collect()
}

/// Permutation matrix of the transpose involution on size-`j` partitions of
/// a square `k x k` box: entry `(a, b)` is 1 when `basis[a]` is the conjugate
/// of `basis[b]`.
fn transpose_permutation(basis: &[Vec<usize>], k: usize) -> Matrix<BigInt> {
    Matrix::from_fn(basis.len(), basis.len(), |a, b| {
        if conjugate_partition(&basis[b], k) == basis[a] {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// The Grassmannian `G(k, n)` of dimension `k(n - k)`, with Schubert-basis
/// action `q^j Pi_j` on `H^{2j}`.
pub fn grassmannian(
    k: usize,
    n: usize,
    q: &BigInt,
    variant: GrassmannianVariant,
) -> Result<VarietyModel> {
    require_q(q)?;
    if k == 0 || k >= n {
        return Err(Error::Domain(format!("G({k}, {n}) needs 1 <= k < n")));
    }
    if variant == GrassmannianVariant::Involution && n != 2 * k {
        return Err(Error::Validity(format!(
            "the involution variant needs n = 2k, got G({k}, {n})"
        )));
    }
    let cols = n - k;
    let d = k * cols;
    let cells = box_partitions(k, cols);
    let mut actions = Vec::with_capacity(2 * d + 1);
    let mut hodge = Vec::with_capacity(2 * d + 1);
    for i in 0..=2 * d {
        let mut row = vec![0u64; i + 1];
        if i % 2 == 1 {
            actions.push(CohomologyAction::empty(i as u32));
            hodge.push(Some(row));
            continue;
        }
        let j = i / 2;
        let basis = &cells[j];
        let scale = pow(q, j as u64);
        let pi = match variant {
            GrassmannianVariant::Scalar => Matrix::identity(basis.len()),
            GrassmannianVariant::Involution => transpose_permutation(basis, k),
        };
        actions.push(CohomologyAction::from_matrix(i as u32, pi.scale(&scale))?);
        row[j] = basis.len() as u64;
        hodge.push(Some(row));
    }
    VarietyModel::assemble(
        ModelKind::Grassmannian,
        d as u32,
        q.clone(),
        actions,
        hodge,
        ModelMetadata::Grassmannian { k, n, variant },
        Vec::new(),
    )
}

/// One degree of user-supplied data: a characteristic polynomial, a matrix,
/// or both (which must then agree).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeData {
    pub charpoly: Option<IntPolynomial>,
    pub matrix: Option<Matrix<BigInt>>,
}

/// Validates user-supplied per-degree data.
///
/// When `strict` is false, an `H^0` action other than `t - 1` or an `H^{2d}`
/// action other than `t - q^d` is recorded as a warning; when true it is a
/// validity error.
pub fn generic_model(
    d: u32,
    q: &BigInt,
    degrees: Vec<DegreeData>,
    hodge: Option<Vec<Vec<u64>>>,
    strict: bool,
) -> Result<VarietyModel> {
    require_q(q)?;
    let top = 2 * d as usize;
    if degrees.len() != top + 1 {
        return Err(Error::Shape(format!(
            "dimension {d} needs data for degrees 0..={top}, got {} entries",
            degrees.len()
        )));
    }
    let supplied_charpolys = degrees.iter().any(|g| g.charpoly.is_some());
    let mut actions = Vec::with_capacity(top + 1);
    for (i, data) in degrees.into_iter().enumerate() {
        let from_matrix = data.matrix.as_ref().map(charpoly).transpose()?;
        let p = match (data.charpoly, from_matrix) {
            (Some(p), Some(m)) if p != m => {
                return Err(Error::Inconsistent(format!(
                    "degree {i}: supplied P_{i} = {p} but the matrix has characteristic polynomial {m}"
                )))
            }
            (Some(p), _) | (None, Some(p)) => p,
            (None, None) => {
                return Err(Error::Shape(format!("degree {i}: no polynomial or matrix")))
            }
        };
        if !p.is_monic() {
            return Err(Error::Precondition(format!("P_{i} = {p} is not monic")));
        }
        if p.constant_term().is_zero() {
            return Err(Error::SingularAction(format!("P_{i} = {p} has a zero root")));
        }
        actions.push(CohomologyAction {
            degree: i as u32,
            betti: p.degree(),
            charpoly: p,
            matrix: data.matrix,
        });
    }

    let mut warnings = Vec::new();
    let expected = [
        (0usize, Poly::linear(BigInt::one())),
        (top, Poly::linear(pow(q, u64::from(d)))),
    ];
    for (i, want) in expected {
        if actions[i].charpoly != want {
            let msg = format!("P_{i} = {} differs from {want}", actions[i].charpoly);
            if strict {
                return Err(Error::Validity(msg));
            }
            warnings.push(msg);
        }
    }

    let hodge = match hodge {
        None => vec![None; top + 1],
        Some(rows) => {
            if rows.len() != top + 1 {
                return Err(Error::Shape(format!(
                    "expected {} Hodge rows, got {}",
                    top + 1,
                    rows.len()
                )));
            }
            for (i, row) in rows.iter().enumerate() {
                if row.len() != i + 1 {
                    return Err(Error::Shape(format!(
                        "Hodge row {i} needs {} entries, got {}",
                        i + 1,
                        row.len()
                    )));
                }
                let total: u64 = row.iter().sum();
                if total != actions[i].betti as u64 {
                    return Err(Error::Validity(format!(
                        "Hodge numbers in weight {i} sum to {total}, but b_{i} = {}",
                        actions[i].betti
                    )));
                }
            }
            rows.into_iter().map(Some).collect()
        }
    };

    VarietyModel::assemble(
        ModelKind::Generic,
        d,
        q.clone(),
        actions,
        hodge,
        ModelMetadata::Generic {
            strict,
            supplied_charpolys,
        },
        warnings,
    )
}

/// JSON model descriptor. All big integers are decimal strings; polynomials
/// are leading-first coefficient lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDescriptor {
    pub kind: DescriptorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isogeny_matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charpolys: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Option<Vec<Vec<String>>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<GrassmannianVariant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DescriptorKind {
    Abelian,
    AbelianEn,
    Grassmannian,
    Generic,
}

fn missing(field: &str, kind: &str) -> Error {
    Error::Parse(format!("descriptor of kind {kind} needs field `{field}`"))
}

fn parse_poly(coeffs: &[String]) -> Result<IntPolynomial> {
    if coeffs.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    let c = coeffs.iter().map(|s| parse_bigint(s)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_leading_first(c))
}

impl ModelDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn build(&self) -> Result<VarietyModel> {
        let q = parse_bigint(&self.q)?;
        match self.kind {
            DescriptorKind::Abelian => {
                let m = Matrix::<BigInt>::parse(self.matrix.as_ref().ok_or_else(|| missing("matrix", "abelian"))?)?;
                let d = match self.d {
                    Some(d) => d,
                    None => (m.rows() / 2) as u32,
                };
                abelian_from_h1(d, &m, &q)
            }
            DescriptorKind::AbelianEn => {
                let a = Matrix::<BigInt>::parse(
                    self.isogeny_matrix
                        .as_ref()
                        .ok_or_else(|| missing("isogeny_matrix", "abelian_en"))?,
                )?;
                abelian_en(&a, &q)
            }
            DescriptorKind::Grassmannian => {
                let k = self.k.ok_or_else(|| missing("k", "grassmannian"))?;
                let n = self.n.ok_or_else(|| missing("n", "grassmannian"))?;
                grassmannian(k, n, &q, self.variant.unwrap_or(GrassmannianVariant::Scalar))
            }
            DescriptorKind::Generic => {
                let d = self.d.ok_or_else(|| missing("d", "generic"))?;
                let count = 2 * d as usize + 1;
                let mut degrees = vec![DegreeData::default(); count];
                if let Some(polys) = &self.charpolys {
                    if polys.len() != count {
                        return Err(Error::Shape(format!(
                            "expected {count} characteristic polynomials, got {}",
                            polys.len()
                        )));
                    }
                    for (slot, p) in degrees.iter_mut().zip(polys) {
                        slot.charpoly = Some(parse_poly(p)?);
                    }
                }
                if let Some(ms) = &self.matrices {
                    if ms.len() != count {
                        return Err(Error::Shape(format!("expected {count} matrix entries, got {}", ms.len())));
                    }
                    for (slot, m) in degrees.iter_mut().zip(ms) {
                        slot.matrix = m.as_ref().map(|rows| Matrix::<BigInt>::parse(rows)).transpose()?;
                    }
                }
                generic_model(d, &q, degrees, self.hodge.clone(), self.strict.unwrap_or(false))
            }
        }
    }

    fn blank(kind: DescriptorKind, q: &BigInt) -> Self {
        ModelDescriptor {
            kind,
            d: None,
            q: q.to_string(),
            matrix: None,
            isogeny_matrix: None,
            charpolys: None,
            matrices: None,
            k: None,
            n: None,
            variant: None,
            hodge: None,
            strict: None,
        }
    }

    /// Canonical descriptor that rebuilds `model`.
    pub fn from_model(model: &VarietyModel) -> Self {
        match model.metadata() {
            ModelMetadata::AbelianH1 { h1 } => ModelDescriptor {
                d: Some(model.dimension()),
                matrix: Some(h1.to_strings()),
                ..Self::blank(DescriptorKind::Abelian, model.q())
            },
            ModelMetadata::AbelianEn { isogeny, .. } => ModelDescriptor {
                isogeny_matrix: Some(isogeny.to_strings()),
                ..Self::blank(DescriptorKind::AbelianEn, model.q())
            },
            ModelMetadata::Grassmannian { k, n, variant } => ModelDescriptor {
                k: Some(*k),
                n: Some(*n),
                variant: Some(*variant),
                ..Self::blank(DescriptorKind::Grassmannian, model.q())
            },
            ModelMetadata::Generic {
                strict,
                supplied_charpolys,
            } => {
                let acts = model.actions();
                let any_matrix = acts.iter().any(|a| a.matrix.is_some());
                let all_matrices = acts.iter().all(|a| a.matrix.is_some());
                let charpolys = (*supplied_charpolys || !all_matrices)
                    .then(|| acts.iter().map(|a| a.charpoly.to_strings()).collect());
                let matrices = any_matrix.then(|| {
                    acts.iter()
                        .map(|a| a.matrix.as_ref().map(Matrix::to_strings))
                        .collect()
                });
                let hodge = (0..=2 * model.dimension())
                    .map(|i| model.hodge(i).map(<[u64]>::to_vec))
                    .collect::<Option<Vec<_>>>();
                ModelDescriptor {
                    d: Some(model.dimension()),
                    charpolys,
                    matrices,
                    hodge,
                    strict: Some(*strict),
                    ..Self::blank(DescriptorKind::Generic, model.q())
                }
            }
        }
    }
}
