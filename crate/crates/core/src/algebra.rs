//! Finite-dimensional graded-commutative algebras presented by a basis and
//! structure constants, together with builders for the standard spaces
//! (spheres, tori, projective spaces) and their products.
//!
//! An algebra plays the role of the cohomology ring `H^*(X; F)` of a space.
//! Geometric metadata that cannot be read off the ring (formal dimension,
//! connectivity, a category upper bound, a known `TC_2`) travels alongside it
//! in a [`SpaceDescriptor`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::matrix::SparseVec;
use crate::scalar::{FieldSpec, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("spaces live over different fields ({0} vs {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("unknown basis element {0:?}")]
    UnknownBasis(String),
    #[error("algebra violates {} invariant(s): {}", .0.len(), format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("inconsistent space metadata: {0}")]
    Metadata(String),
    #[error("cannot read algebra file: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse algebra file: {0}")]
    Json(#[from] serde_json::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// A violated algebra invariant, with the offending basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Not exactly one degree-0 basis element, or the unit is not it.
    UnitStructure { detail: String },
    /// `1 * b` or `b * 1` differs from `b`.
    UnitLaw { basis: String },
    /// A term of `left * right` has the wrong degree.
    DegreeAdditivity { left: String, right: String, expected: u32, found: u32 },
    /// `right * left != (-1)^{|left||right|} left * right`.
    GradedCommutativity { left: String, right: String },
    /// `(a b) c != a (b c)`.
    Associativity { a: String, b: String, c: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitStructure { detail } => write!(f, "unit structure: {detail}"),
            Violation::UnitLaw { basis } => write!(f, "unit law fails at {basis}"),
            Violation::DegreeAdditivity { left, right, expected, found } => write!(
                f,
                "degree additivity fails at ({left}, {right}): expected degree {expected}, found {found}"
            ),
            Violation::GradedCommutativity { left, right } => {
                write!(f, "graded commutativity fails at ({left}, {right})")
            }
            Violation::Associativity { a, b, c } => {
                write!(f, "associativity fails at ({a}, {b}, {c})")
            }
        }
    }
}

/// Options for construction-time validation.
#[derive(Debug, Clone, Copy)]
pub struct ValidationOptions {
    /// The associativity sweep is O(basis^3); it can be disabled for large
    /// custom algebras (intended for basis sizes above 64).
    pub check_associativity: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { check_associativity: true }
    }
}

#[derive(Debug)]
struct AlgebraData {
    field: FieldSpec,
    names: Vec<String>,
    degrees: Vec<u32>,
    unit: usize,
    products: BTreeMap<(usize, usize), SparseVec>,
    by_degree: BTreeMap<u32, Vec<usize>>,
    top_degree: u32,
}

/// A finite-dimensional graded-commutative algebra over an exact field.
///
/// Cheap to clone: the handle shares the underlying table. Two elements may
/// be combined only when they come from the same handle family.
#[derive(Clone)]
pub struct GradedAlgebra {
    inner: Arc<AlgebraData>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("field", &self.inner.field)
            .field("basis", &self.inner.names)
            .finish()
    }
}

static EMPTY_PRODUCT: &[(usize, Scalar)] = &[];

impl GradedAlgebra {
    /// Builds and validates an algebra. Products may be given for only one
    /// of `(i, j)` / `(j, i)`; the missing mirror is filled in with the
    /// graded-commutativity sign. Products against the unit are implied.
    pub fn new(
        field: FieldSpec,
        basis: Vec<(String, u32)>,
        unit: usize,
        products: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self, AlgebraError> {
        Self::new_with_options(field, basis, unit, products, ValidationOptions::default())
    }

    pub fn new_with_options(
        field: FieldSpec,
        basis: Vec<(String, u32)>,
        unit: usize,
        products: BTreeMap<(usize, usize), SparseVec>,
        options: ValidationOptions,
    ) -> Result<Self, AlgebraError> {
        let algebra = Self::new_unvalidated(field, basis, unit, products)?;
        let violations = algebra.validate_with_options(options);
        if !violations.is_empty() {
            return Err(AlgebraError::Invalid(violations));
        }
        Ok(algebra)
    }

    /// Builds the table without checking the algebra axioms (the structural
    /// requirements on names, indices and coefficient fields still hold).
    /// Useful for assembling an algebra that `validate` is expected to
    /// reject.
    pub fn new_unvalidated(
        field: FieldSpec,
        basis: Vec<(String, u32)>,
        unit: usize,
        products: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self, AlgebraError> {
        if basis.is_empty() {
            return Err(AlgebraError::InvalidArgument("basis must be nonempty".into()));
        }
        if unit >= basis.len() {
            return Err(AlgebraError::InvalidArgument("unit index out of range".into()));
        }
        let names: Vec<String> = basis.iter().map(|(n, _)| n.clone()).collect();
        {
            let mut seen = std::collections::BTreeSet::new();
            for name in &names {
                if !seen.insert(name) {
                    return Err(AlgebraError::InvalidArgument(format!(
                        "duplicate basis name {name:?}"
                    )));
                }
            }
        }
        let degrees: Vec<u32> = basis.iter().map(|(_, d)| *d).collect();
        let dim = names.len();

        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for ((i, j), terms) in products {
            if i >= dim || j >= dim {
                return Err(AlgebraError::InvalidArgument(format!(
                    "product entry ({i}, {j}) out of range"
                )));
            }
            let canonical = canonicalize(field, terms)?;
            for (k, _) in &canonical {
                if *k >= dim {
                    return Err(AlgebraError::InvalidArgument(format!(
                        "product term index {k} out of range"
                    )));
                }
            }
            table.insert((i, j), canonical);
        }

        // implied unit products (inserted only when absent, so a
        // contradictory explicit entry stays visible to validate)
        for b in 0..dim {
            table.entry((unit, b)).or_insert_with(|| vec![(b, field.one())]);
            table.entry((b, unit)).or_insert_with(|| vec![(b, field.one())]);
        }

        // mirror absent (j, i) entries with the Koszul sign
        let keys: Vec<(usize, usize)> = table.keys().copied().collect();
        for (i, j) in keys {
            if table.contains_key(&(j, i)) {
                continue;
            }
            let sign = koszul_sign(field, degrees[i], degrees[j]);
            let mirrored = table[&(i, j)]
                .iter()
                .map(|(k, c)| (*k, c.mul(&sign).expect("same field")))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            table.insert((j, i), mirrored);
        }

        table.retain(|_, v| !v.is_empty());

        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, d) in degrees.iter().enumerate() {
            by_degree.entry(*d).or_default().push(i);
        }
        let top_degree = degrees.iter().copied().max().unwrap_or(0);

        Ok(GradedAlgebra {
            inner: Arc::new(AlgebraData {
                field,
                names,
                degrees,
                unit,
                products: table,
                by_degree,
                top_degree,
            }),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.field
    }

    pub fn dim(&self) -> usize {
        self.inner.names.len()
    }

    pub fn top_degree(&self) -> u32 {
        self.inner.top_degree
    }

    pub fn unit_index(&self) -> usize {
        self.inner.unit
    }

    pub fn name(&self, index: usize) -> &str {
        &self.inner.names[index]
    }

    pub fn degree(&self, index: usize) -> u32 {
        self.inner.degrees[index]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }

    pub fn basis_of_degree(&self, degree: u32) -> &[usize] {
        self.inner.by_degree.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// The structure constants of `b_i * b_j` (empty means zero).
    pub fn product_of(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.inner.products.get(&(i, j)).map(|v| v.as_slice()).unwrap_or(EMPTY_PRODUCT)
    }

    /// True when the reduced part (everything above degree 0) is zero.
    pub fn is_trivial(&self) -> bool {
        self.dim() == 1
    }

    pub fn same_algebra(&self, other: &GradedAlgebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn zero(&self) -> Element {
        Element { algebra: self.clone(), terms: Vec::new() }
    }

    pub fn unit(&self) -> Element {
        self.basis_element(self.inner.unit)
    }

    pub fn basis_element(&self, index: usize) -> Element {
        Element { algebra: self.clone(), terms: vec![(index, self.inner.field.one())] }
    }

    /// Builds an element from `(basis index, coefficient)` pairs.
    pub fn element(&self, terms: &[(usize, Scalar)]) -> Result<Element, AlgebraError> {
        for (i, c) in terms {
            if *i >= self.dim() {
                return Err(AlgebraError::InvalidArgument(format!("basis index {i} out of range")));
            }
            if c.field() != self.field() {
                return Err(ScalarError::FieldMismatch(self.field(), c.field()).into());
            }
        }
        Ok(Element { algebra: self.clone(), terms: canonicalize(self.field(), terms.to_vec())? })
    }

    /// Builds an element from `(basis name, integer coefficient)` pairs.
    pub fn element_from_names(&self, terms: &[(&str, i64)]) -> Result<Element, AlgebraError> {
        let resolved = terms
            .iter()
            .map(|(name, c)| {
                self.basis_index(name)
                    .map(|i| (i, self.field().integer(*c)))
                    .ok_or_else(|| AlgebraError::UnknownBasis(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.element(&resolved)
    }

    /// Checks every algebra axiom and reports all violations found.
    pub fn validate(&self) -> Vec<Violation> {
        self.validate_with_options(ValidationOptions::default())
    }

    pub fn validate_with_options(&self, options: ValidationOptions) -> Vec<Violation> {
        let data = &self.inner;
        let dim = self.dim();
        let mut violations = Vec::new();

        let degree_zero: Vec<usize> = (0..dim).filter(|i| data.degrees[*i] == 0).collect();
        if degree_zero.len() != 1 {
            violations.push(Violation::UnitStructure {
                detail: format!("{} basis elements of degree 0", degree_zero.len()),
            });
        } else if degree_zero[0] != data.unit {
            violations.push(Violation::UnitStructure {
                detail: format!(
                    "unit is {:?} but the degree-0 element is {:?}",
                    data.names[data.unit], data.names[degree_zero[0]]
                ),
            });
        }

        for b in 0..dim {
            let expected = vec![(b, data.field.one())];
            if self.product_of(data.unit, b) != expected.as_slice()
                || self.product_of(b, data.unit) != expected.as_slice()
            {
                violations.push(Violation::UnitLaw { basis: data.names[b].clone() });
            }
        }

        for i in 0..dim {
            for j in 0..dim {
                let expected = data.degrees[i] + data.degrees[j];
                for (k, _) in self.product_of(i, j) {
                    if data.degrees[*k] != expected {
                        violations.push(Violation::DegreeAdditivity {
                            left: data.names[i].clone(),
                            right: data.names[j].clone(),
                            expected,
                            found: data.degrees[*k],
                        });
                    }
                }
            }
        }

        for i in 0..dim {
            for j in i..dim {
                let sign = koszul_sign(data.field, data.degrees[i], data.degrees[j]);
                let forward = self.product_of(i, j);
                let expected: SparseVec = forward
                    .iter()
                    .map(|(k, c)| (*k, c.mul(&sign).expect("same field")))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if self.product_of(j, i) != expected.as_slice() {
                    violations.push(Violation::GradedCommutativity {
                        left: data.names[i].clone(),
                        right: data.names[j].clone(),
                    });
                }
            }
        }

        if options.check_associativity {
            for a in 0..dim {
                for b in 0..dim {
                    for c in 0..dim {
                        let left =
                            self.mul_raw(self.product_of(a, b).to_vec(), &[(c, data.field.one())]);
                        let right =
                            self.mul_raw(vec![(a, data.field.one())], self.product_of(b, c));
                        if left != right {
                            violations.push(Violation::Associativity {
                                a: data.names[a].clone(),
                                b: data.names[b].clone(),
                                c: data.names[c].clone(),
                            });
                        }
                    }
                }
            }
        }

        violations
    }

    fn mul_raw(&self, left: Vec<(usize, Scalar)>, right: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, a) in &left {
            for (j, b) in right {
                let ab = a.mul(b).expect("same field");
                if ab.is_zero() {
                    continue;
                }
                for (k, c) in self.product_of(*i, *j) {
                    let term = ab.mul(c).expect("same field");
                    merge_term(&mut acc, *k, term);
                }
            }
        }
        acc.into_iter().collect()
    }
}

fn merge_term(acc: &mut BTreeMap<usize, Scalar>, key: usize, term: Scalar) {
    if term.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(term);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().add(&term).expect("same field");
            if sum.is_zero() {
                e.remove();
            } else {
                e.insert(sum);
            }
        }
    }
}

fn canonicalize(field: FieldSpec, terms: Vec<(usize, Scalar)>) -> Result<SparseVec, AlgebraError> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in terms {
        if c.field() != field {
            return Err(ScalarError::FieldMismatch(field, c.field()).into());
        }
        merge_term(&mut acc, i, c);
    }
    Ok(acc.into_iter().collect())
}

pub(crate) fn koszul_sign(field: FieldSpec, d1: u32, d2: u32) -> Scalar {
    if d1 % 2 == 1 && d2 % 2 == 1 {
        field.integer(-1)
    } else {
        field.one()
    }
}

/// A sparse element of a [`GradedAlgebra`].
#[derive(Clone)]
pub struct Element {
    algebra: GradedAlgebra,
    terms: SparseVec,
}

impl Element {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, when the element is homogeneous.
    /// The zero element reports `None`.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.iter().map(|(i, _)| self.algebra.degree(*i));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn check_same(&self, other: &Element) -> Result<(), AlgebraError> {
        if !self.algebra.same_algebra(&other.algebra) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        let mut acc: BTreeMap<usize, Scalar> = self.terms.iter().cloned().collect();
        for (i, c) in &other.terms {
            merge_term(&mut acc, *i, c.clone());
        }
        Ok(Element { algebra: self.algebra.clone(), terms: acc.into_iter().collect() })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(i, c)| (*i, c.neg())).collect(),
        }
    }

    pub fn scale(&self, scalar: &Scalar) -> Result<Element, AlgebraError> {
        if scalar.field() != self.algebra.field() {
            return Err(ScalarError::FieldMismatch(self.algebra.field(), scalar.field()).into());
        }
        if scalar.is_zero() {
            return Ok(self.algebra.zero());
        }
        Ok(Element {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (*i, c.mul(scalar).expect("same field")))
                .collect(),
        })
    }

    /// Cup product: the bilinear extension of the structure-constant table.
    pub fn mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_same(other)?;
        Ok(Element {
            algebra: self.algebra.clone(),
            terms: self.algebra.mul_raw(self.terms.clone(), &other.terms),
        })
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_algebra(&other.algebra) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (i, c)) in self.terms.iter().enumerate() {
            let name = self.algebra.name(*i);
            let coeff = c.to_string();
            let (sign, magnitude) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if pos == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if magnitude == "1" {
                write!(f, "{name}")?;
            } else {
                write!(f, "{magnitude}*{name}")?;
            }
        }
        Ok(())
    }
}

/// An algebra together with the geometric metadata the bound machinery
/// needs: formal dimension, connectivity, a category upper bound, and a
/// known value (or upper bound) of `TC_2` when available.
#[derive(Debug, Clone)]
pub struct SpaceDescriptor {
    pub name: String,
    pub algebra: GradedAlgebra,
    pub formal_dim: u32,
    pub connectivity: u32,
    pub cat_upper: Option<u32>,
    pub tc2_known: Option<u32>,
}

impl SpaceDescriptor {
    pub fn new(
        name: impl Into<String>,
        algebra: GradedAlgebra,
        formal_dim: u32,
        connectivity: u32,
        cat_upper: Option<u32>,
        tc2_known: Option<u32>,
    ) -> Result<Self, AlgebraError> {
        if formal_dim < algebra.top_degree() {
            return Err(AlgebraError::Metadata(format!(
                "formal dimension {} is below the top basis degree {}",
                formal_dim,
                algebra.top_degree()
            )));
        }
        if cat_upper == Some(0) && !algebra.is_trivial() {
            return Err(AlgebraError::Metadata(
                "cat upper bound 0 requires a trivial algebra".into(),
            ));
        }
        if tc2_known == Some(0) {
            return Err(AlgebraError::Metadata(
                "tc2 must be at least 1 (it is 1 exactly for contractible spaces)".into(),
            ));
        }
        Ok(SpaceDescriptor {
            name: name.into(),
            algebra,
            formal_dim,
            connectivity,
            cat_upper,
            tc2_known,
        })
    }
}

/// `H^*(S^k)`: an exterior generator in degree `k`.
///
/// `TC_2` metadata records the sphere dichotomy: 2 for odd `k`, 3 for even.
pub fn sphere(k: u32, field: FieldSpec) -> Result<SpaceDescriptor, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::InvalidArgument("sphere dimension must be at least 1".into()));
    }
    let basis = vec![("1".to_string(), 0), ("u".to_string(), k)];
    let mut products = BTreeMap::new();
    products.insert((1, 1), Vec::new());
    let algebra = GradedAlgebra::new(field, basis, 0, products)?;
    SpaceDescriptor::new(
        format!("S({k})"),
        algebra,
        k,
        k - 1,
        Some(1),
        Some(if k % 2 == 1 { 2 } else { 3 }),
    )
}

/// `H^*(T^m)`: an exterior algebra on `m` degree-1 generators, with the
/// full monomial basis and Koszul signs. `T(2)` keeps the classical
/// generator names `x`, `y`.
pub fn torus(m: u32, field: FieldSpec) -> Result<SpaceDescriptor, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::InvalidArgument("torus rank must be at least 1".into()));
    }
    // the structure-constant table has 4^m entries
    if m > 12 {
        return Err(AlgebraError::InvalidArgument(format!(
            "torus rank {m} is too large: the algebra has 2^{m} basis monomials"
        )));
    }
    let m = m as usize;
    let gen_names: Vec<String> = if m <= 2 {
        ["x", "y"].iter().take(m).map(|s| s.to_string()).collect()
    } else {
        (1..=m).map(|i| format!("x{i}")).collect()
    };

    // basis monomials = subsets of the generators, ordered by (degree, mask)
    let mut masks: Vec<u32> = (0u32..(1 << m)).collect();
    masks.sort_by_key(|mask| (mask.count_ones(), *mask));
    let index_of_mask: BTreeMap<u32, usize> =
        masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let monomial_name = |mask: u32| -> String {
        if mask == 0 {
            return "1".to_string();
        }
        (0..m)
            .filter(|g| mask & (1 << g) != 0)
            .map(|g| gen_names[g].as_str())
            .collect::<Vec<_>>()
            .join("")
    };

    let basis: Vec<(String, u32)> =
        masks.iter().map(|mask| (monomial_name(*mask), mask.count_ones())).collect();

    let mut products = BTreeMap::new();
    for (i, &mi) in masks.iter().enumerate() {
        for (j, &mj) in masks.iter().enumerate() {
            if mi & mj != 0 {
                products.insert((i, j), Vec::new());
                continue;
            }
            // sign of the shuffle merging the two generator lists: one
            // transposition per inversion between mi and mj
            let mut inversions = 0u32;
            for g in 0..m {
                if mj & (1 << g) == 0 {
                    continue;
                }
                inversions += (mi >> (g + 1)).count_ones();
            }
            let sign = if inversions.is_multiple_of(2) { field.one() } else { field.integer(-1) };
            products.insert((i, j), vec![(index_of_mask[&(mi | mj)], sign)]);
        }
    }

    let algebra = GradedAlgebra::new_with_options(
        field,
        basis,
        0,
        products,
        ValidationOptions { check_associativity: m <= 6 },
    )?;
    SpaceDescriptor::new(
        format!("T({m})"),
        algebra,
        m as u32,
        0,
        Some(m as u32),
        match m {
            1 => Some(2), // same space as the circle
            2 => Some(3),
            _ => None,
        },
    )
}

/// `H^*(RP^m; F_2)`: the truncated polynomial algebra on a degree-1 class.
pub fn real_projective(m: u32) -> Result<SpaceDescriptor, AlgebraError> {
    let field = FieldSpec::prime(2).expect("2 is prime");
    truncated_polynomial("RP", m, 1, field, if m == 1 { Some(2) } else { None })
}

/// `H^*(CP^m)`: the truncated polynomial algebra on a degree-2 class.
pub fn complex_projective(m: u32, field: FieldSpec) -> Result<SpaceDescriptor, AlgebraError> {
    truncated_polynomial("CP", m, 2, field, if m == 1 { Some(3) } else { None })
}

fn truncated_polynomial(
    label: &str,
    m: u32,
    gen_degree: u32,
    field: FieldSpec,
    tc2: Option<u32>,
) -> Result<SpaceDescriptor, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::InvalidArgument(format!("{label} index must be at least 1")));
    }
    let basis: Vec<(String, u32)> = (0..=m)
        .map(|i| {
            let name = match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                i => format!("x^{i}"),
            };
            (name, i * gen_degree)
        })
        .collect();
    let mut products = BTreeMap::new();
    for i in 0..=m {
        for j in 0..=m {
            let result =
                if i + j <= m { vec![((i + j) as usize, field.one())] } else { Vec::new() };
            products.insert((i as usize, j as usize), result);
        }
    }
    let algebra = GradedAlgebra::new(field, basis, 0, products)?;
    SpaceDescriptor::new(
        format!("{label}({m})"),
        algebra,
        m * gen_degree,
        gen_degree - 1,
        Some(m),
        tc2,
    )
}

/// The one-point space: the trivial algebra.
pub fn point(field: FieldSpec) -> Result<SpaceDescriptor, AlgebraError> {
    let algebra = GradedAlgebra::new(field, vec![("1".to_string(), 0)], 0, BTreeMap::new())?;
    SpaceDescriptor::new("point", algebra, 0, 0, Some(0), Some(1))
}

/// The product space: the graded tensor product of the two algebras
/// (Künneth over a field), with Koszul-signed multiplication.
///
/// Metadata: formal dimensions add, connectivity is the minimum, category
/// upper bounds add, and any known `TC_2` is dropped.
pub fn product(a: &SpaceDescriptor, b: &SpaceDescriptor) -> Result<SpaceDescriptor, AlgebraError> {
    let field = a.algebra.field();
    if field != b.algebra.field() {
        return Err(AlgebraError::FieldMismatch(field, b.algebra.field()));
    }
    let (da, db) = (a.algebra.dim(), b.algebra.dim());
    // the structure-constant table has (da*db)^2 entries
    if da.saturating_mul(db) > 4096 {
        return Err(AlgebraError::InvalidArgument(format!(
            "product algebra dimension {da}*{db} is too large"
        )));
    }
    let pair_index = |i: usize, j: usize| i * db + j;

    let mut basis = Vec::with_capacity(da * db);
    for i in 0..da {
        for j in 0..db {
            let name = if i == a.algebra.unit_index() && j == b.algebra.unit_index() {
                "1".to_string()
            } else {
                format!("({},{})", a.algebra.name(i), b.algebra.name(j))
            };
            basis.push((name, a.algebra.degree(i) + b.algebra.degree(j)));
        }
    }

    // (a1, b1)(a2, b2) = (-1)^{|b1||a2|} (a1 a2, b1 b2)
    let mut products = BTreeMap::new();
    for i1 in 0..da {
        for j1 in 0..db {
            for i2 in 0..da {
                for j2 in 0..db {
                    let sign = koszul_sign(field, b.algebra.degree(j1), a.algebra.degree(i2));
                    let mut terms: SparseVec = Vec::new();
                    for (ka, ca) in a.algebra.product_of(i1, i2) {
                        for (kb, cb) in b.algebra.product_of(j1, j2) {
                            let coeff = ca.mul(cb).and_then(|c| c.mul(&sign)).expect("same field");
                            if !coeff.is_zero() {
                                terms.push((pair_index(*ka, *kb), coeff));
                            }
                        }
                    }
                    terms.sort_by_key(|(k, _)| *k);
                    products.insert((pair_index(i1, j1), pair_index(i2, j2)), terms);
                }
            }
        }
    }

    let unit = pair_index(a.algebra.unit_index(), b.algebra.unit_index());
    let algebra = GradedAlgebra::new_with_options(
        field,
        basis,
        unit,
        products,
        ValidationOptions { check_associativity: da * db <= 64 },
    )?;
    SpaceDescriptor::new(
        format!("{}*{}", a.name, b.name),
        algebra,
        a.formal_dim + b.formal_dim,
        a.connectivity.min(b.connectivity),
        match (a.cat_upper, b.cat_upper) {
            (Some(ca), Some(cb)) => Some(ca + cb),
            _ => None,
        },
        None,
    )
}

// ---------------------------------------------------------------------------
// Custom-algebra file format (JSON)

#[derive(Deserialize)]
struct AlgebraFile {
    name: String,
    field: String,
    basis: Vec<BasisEntry>,
    unit: String,
    #[serde(default)]
    products: Vec<ProductEntry>,
    meta: MetaEntry,
}

#[derive(Deserialize)]
struct BasisEntry {
    name: String,
    degree: u32,
}

#[derive(Deserialize)]
struct ProductEntry {
    left: String,
    right: String,
    result: Vec<TermEntry>,
}

#[derive(Deserialize)]
struct TermEntry {
    basis: String,
    coeff: String,
}

#[derive(Deserialize)]
struct MetaEntry {
    dim: u32,
    conn: u32,
    #[serde(default)]
    cat_upper: Option<u32>,
    #[serde(default)]
    tc2: Option<u32>,
}

impl SpaceDescriptor {
    /// Loads a custom algebra from the JSON interchange format.
    ///
    /// Omitted product pairs are zero; a pair given in one order only is
    /// mirrored with the graded-commutativity sign. A missing `cat_upper`
    /// defaults to the formal dimension (`cat X <= dim X` for connected
    /// complexes).
    pub fn from_json_str(text: &str) -> Result<SpaceDescriptor, AlgebraError> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        let field = FieldSpec::parse(&file.field)?;

        let basis: Vec<(String, u32)> =
            file.basis.iter().map(|b| (b.name.clone(), b.degree)).collect();
        let index_of = |name: &str| -> Result<usize, AlgebraError> {
            basis
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| AlgebraError::UnknownBasis(name.to_string()))
        };
        let unit = index_of(&file.unit)?;

        let mut products: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for entry in &file.products {
            let key = (index_of(&entry.left)?, index_of(&entry.right)?);
            let mut terms: SparseVec = Vec::new();
            for term in &entry.result {
                let coeff = field.parse_coeff(&term.coeff)?;
                if !coeff.is_zero() {
                    terms.push((index_of(&term.basis)?, coeff));
                }
            }
            terms.sort_by_key(|(k, _)| *k);
            if products.insert(key, terms).is_some() {
                return Err(AlgebraError::InvalidArgument(format!(
                    "duplicate product entry ({}, {})",
                    entry.left, entry.right
                )));
            }
        }

        let check_associativity = basis.len() <= 64;
        let algebra = GradedAlgebra::new_with_options(
            field,
            basis,
            unit,
            products,
            ValidationOptions { check_associativity },
        )?;
        let cat_upper = Some(file.meta.cat_upper.unwrap_or(file.meta.dim));
        SpaceDescriptor::new(
            file.name,
            algebra,
            file.meta.dim,
            file.meta.conn,
            cat_upper,
            file.meta.tc2,
        )
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<SpaceDescriptor, AlgebraError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }
}
