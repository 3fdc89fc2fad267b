//! Lower and upper bounds for the higher topological complexity `TC_n(X)`
//! read off the cohomology algebra, with explicit certificates.
//!
//! The lower bound is the zero-divisor cup-length: the largest `m` such that
//! `m` elements of the kernel of the diagonal pullback have nonzero product,
//! giving `TC_n(X) >= m + 1`. It is computed exactly by iterating graded
//! ideal powers with span reduction. Upper bounds come from the category
//! inequality `TC_n(X) <= n cat X + 1` and, when `TC_2` is known, from the
//! growth inequality `TC_n(X) <= n TC_2(X) - n + 1`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{self, AlgebraError, GradedAlgebra, SpaceDescriptor};
use crate::matrix::Echelon;
use crate::scalar::FieldSpec;
use crate::tensor::{TensorAlgebra, TensorElement, TensorError};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("{0}")]
    InvalidN(String),
    #[error("space {0:?} carries no cat upper bound; supply cat_upper in its metadata")]
    MissingCatUpper(String),
    #[error(
        "inconsistent metadata for {space} at n={n}: certified lower bound {lower} exceeds upper bound {upper}; check the supplied cat_upper/tc2 values"
    )]
    MetadataInconsistency { space: String, n: usize, lower: usize, upper: usize },
    #[error("internal consistency check failed: {0}")]
    TheoremCheckFailed(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A zero-divisor cup-length witness: factors in the kernel of the diagonal
/// pullback whose product is nonzero.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub factors: Vec<TensorElement>,
    pub product: TensorElement,
}

/// Result of the cup-length computation at level `n`.
#[derive(Debug, Clone)]
pub struct ZclResult {
    pub n: usize,
    /// The zero-divisor cup-length: the maximal number of kernel elements
    /// with nonzero product (0 when the kernel is empty).
    pub m: usize,
    pub certificate: Option<Certificate>,
}

/// Which inequality produced the lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerSource {
    /// Cup-length bound `TC_n >= m + 1` with a product certificate.
    Zcl,
    /// `TC_n >= n` for a connected non-contractible space.
    NontrivialCohomology,
}

impl fmt::Display for LowerSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerSource::Zcl => write!(f, "zcl"),
            LowerSource::NontrivialCohomology => write!(f, "nontrivial-cohomology"),
        }
    }
}

/// Combined bound report for one `(space, n)` pair.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub space: String,
    pub n: usize,
    pub field: FieldSpec,
    pub lower: usize,
    pub lower_source: LowerSource,
    pub zcl: ZclResult,
    pub upper: usize,
    pub upper_cat: usize,
    pub upper_growth: Option<usize>,
    /// Set exactly when the bounds meet.
    pub exact: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
enum FactorId {
    Kernel(usize),
    Generator(usize),
}

struct LevelEntry {
    product: TensorElement,
    factors: Vec<FactorId>,
}

/// The zero-divisor cup-length of `base` at level `n`.
///
/// Level spans are iterated ideal powers of the kernel `Z` of the diagonal
/// pullback: `P_1 = span Z`, `P_{k+1} = Z · P_k`, truncated above the top
/// degree. The largest `m` with `P_m != 0` is returned; since `P_m` is
/// spanned by honest m-fold products of kernel elements, `m` is exactly the
/// cup-length. `n = 1` yields 0: the diagonal pullback is the identity.
///
/// `P_{k+1}` is spanned by multiplying a basis of `P_k` with the canonical
/// slot differences `b_i - b_n` (b over the positive-degree basis): these
/// generate the kernel as an ideal — any basic tensor telescopes to its
/// image in the last slot modulo the differences — and `P_k` is itself an
/// ideal, so the smaller generating set spans the same subspaces as a full
/// kernel basis would.
pub fn zero_divisor_cup_length(
    base: &GradedAlgebra,
    n: usize,
    want_certificate: bool,
) -> Result<ZclResult, BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidN("level n must be at least 1".into()));
    }
    let tensor = TensorAlgebra::new(base, n)?;
    let kernel = tensor.kernel_of_diagonal(None);
    if kernel.is_empty() {
        return Ok(ZclResult { n, m: 0, certificate: None });
    }
    let kernel_elements: Vec<&TensorElement> = kernel.elements().collect();

    // canonical ideal generators: slot differences of positive-degree basis
    let mut generators: Vec<TensorElement> = Vec::new();
    for slot in 0..n.saturating_sub(1) {
        for b in 0..base.dim() {
            if base.degree(b) == 0 {
                continue;
            }
            let elem = base.basis_element(b);
            let diff = tensor.slot_class(&elem, slot)?.sub(&tensor.slot_class(&elem, n - 1)?)?;
            generators.push(diff);
        }
    }

    let top = tensor.top_degree();

    // level 1: the kernel basis itself (independent per degree)
    let mut current: Vec<LevelEntry> = kernel_elements
        .iter()
        .enumerate()
        .map(|(i, z)| LevelEntry { product: (*z).clone(), factors: vec![FactorId::Kernel(i)] })
        .collect();
    let mut m = 1usize;

    loop {
        let mut spans: BTreeMap<u32, Echelon> = BTreeMap::new();
        let mut next: Vec<LevelEntry> = Vec::new();
        for entry in &current {
            let entry_degree = entry.product.degree().expect("level products are homogeneous");
            for (gi, g) in generators.iter().enumerate() {
                let g_degree = g.degree().expect("generators are homogeneous");
                let degree = entry_degree + g_degree;
                if degree > top {
                    continue;
                }
                let full = tensor.basis_of_degree(degree).len();
                let span = spans.entry(degree).or_insert_with(Echelon::new);
                if span.rank() == full {
                    continue;
                }
                let product = entry.product.mul(g)?;
                if product.is_zero() {
                    continue;
                }
                if span.insert(product.terms().to_vec()) {
                    let mut factors = entry.factors.clone();
                    factors.push(FactorId::Generator(gi));
                    next.push(LevelEntry { product, factors });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        m += 1;
        current = next;
    }

    let certificate = want_certificate.then(|| {
        let witness = &current[0];
        let factors = witness
            .factors
            .iter()
            .map(|id| match id {
                FactorId::Kernel(i) => kernel_elements[*i].clone(),
                FactorId::Generator(g) => generators[*g].clone(),
            })
            .collect();
        Certificate { factors, product: witness.product.clone() }
    });

    Ok(ZclResult { n, m, certificate })
}

/// The certified lower bound for `TC_n`, with its source.
///
/// `max(zcl + 1, n)` for a space with nonzero reduced cohomology, `1` for
/// the trivial algebra; ties are attributed to the cup-length (it carries a
/// certificate).
pub fn tc_lower(desc: &SpaceDescriptor, n: usize) -> Result<(usize, LowerSource), BoundsError> {
    let zcl = zero_divisor_cup_length(&desc.algebra, n, false)?;
    Ok(lower_from_zcl(desc, n, &zcl))
}

fn lower_from_zcl(desc: &SpaceDescriptor, n: usize, zcl: &ZclResult) -> (usize, LowerSource) {
    let from_zcl = zcl.m + 1;
    let from_cohomology = if desc.algebra.is_trivial() { 1 } else { n };
    if from_zcl >= from_cohomology {
        (from_zcl, LowerSource::Zcl)
    } else {
        (from_cohomology, LowerSource::NontrivialCohomology)
    }
}

/// Upper bounds: `n * cat_upper + 1` always, `n * tc2 - n + 1` when a `TC_2`
/// value is known. Returns `(min, from_cat, from_growth)`.
pub fn tc_upper(
    desc: &SpaceDescriptor,
    n: usize,
) -> Result<(usize, usize, Option<usize>), BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidN("level n must be at least 1".into()));
    }
    let cat =
        desc.cat_upper.ok_or_else(|| BoundsError::MissingCatUpper(desc.name.clone()))? as usize;
    let upper_cat = n * cat + 1;
    let upper_growth = desc.tc2_known.map(|tc2| n * tc2 as usize - n + 1);
    let upper = upper_growth.map_or(upper_cat, |g| upper_cat.min(g));
    Ok((upper, upper_cat, upper_growth))
}

/// The assembled report for one `(space, n)` pair. A certified lower bound
/// above the metadata upper bound is an error, never clamped.
pub fn bounds_report(
    desc: &SpaceDescriptor,
    n: usize,
    want_certificate: bool,
) -> Result<BoundReport, BoundsError> {
    let zcl = zero_divisor_cup_length(&desc.algebra, n, want_certificate)?;
    let (lower, lower_source) = lower_from_zcl(desc, n, &zcl);
    let (upper, upper_cat, upper_growth) = tc_upper(desc, n)?;
    if lower > upper {
        return Err(BoundsError::MetadataInconsistency {
            space: desc.name.clone(),
            n,
            lower,
            upper,
        });
    }
    Ok(BoundReport {
        space: desc.name.clone(),
        n,
        field: desc.algebra.field(),
        lower,
        lower_source,
        zcl,
        upper,
        upper_cat,
        upper_growth,
        exact: (lower == upper).then_some(lower),
    })
}

/// The witness that the sequence `TC_n` separates spaces with equal `TC_2`:
/// both `S^2` and `T^2` have `TC_2 = 3`, yet for `n >= 3` the sphere's exact
/// value `n + 1` falls strictly below the torus lower bound `2n - 1`.
#[derive(Debug, Clone)]
pub struct GapRecord {
    pub n: usize,
    pub sphere: BoundReport,
    pub torus: BoundReport,
}

impl GapRecord {
    pub fn sphere_exact(&self) -> usize {
        self.sphere.exact.expect("even sphere bounds meet")
    }

    pub fn torus_lower(&self) -> usize {
        self.torus.lower
    }
}

/// Computes both reports over `Q` at level `n >= 3` and checks the strict
/// gap. A check failure signals a computation bug, not bad input: these
/// inequalities are theorems.
pub fn gap_demo(n: usize) -> Result<GapRecord, BoundsError> {
    if n < 3 {
        return Err(BoundsError::InvalidN(
            "the gap between S^2 and T^2 opens at n = 3 (both have TC_2 = 3)".into(),
        ));
    }
    let field = FieldSpec::rationals();
    let s2 = algebra::sphere(2, field)?;
    let t2 = algebra::torus(2, field)?;
    let sphere_report = bounds_report(&s2, n, false)?;
    let torus_report = bounds_report(&t2, n, false)?;

    let sphere_exact = sphere_report
        .exact
        .ok_or_else(|| BoundsError::TheoremCheckFailed("S^2 bounds did not meet".into()))?;
    if sphere_exact != n + 1 {
        return Err(BoundsError::TheoremCheckFailed(format!(
            "TC_{n}(S^2) computed as {sphere_exact}, expected {}",
            n + 1
        )));
    }
    if torus_report.lower < 2 * n - 1 {
        return Err(BoundsError::TheoremCheckFailed(format!(
            "TC_{n}(T^2) lower bound computed as {}, expected at least {}",
            torus_report.lower,
            2 * n - 1
        )));
    }
    if torus_report.lower <= sphere_exact {
        return Err(BoundsError::TheoremCheckFailed(
            "torus lower bound does not exceed the sphere value".into(),
        ));
    }
    Ok(GapRecord { n, sphere: sphere_report, torus: torus_report })
}
