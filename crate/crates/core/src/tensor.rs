//! The n-fold tensor power of a graded algebra, modeling `H^*(X^n)`, with
//! the multiplication map back to the base algebra (the pullback along the
//! diagonal `X -> X^n`) and its kernel.
//!
//! Basis elements are n-tuples of base basis indices in lexicographic order.
//! The multiplication table is never materialized; products of basic tensors
//! are computed on demand with the Koszul sign
//! `(a_1 ⊗ … ⊗ a_n)(b_1 ⊗ … ⊗ b_n) = (-1)^{Σ_{i>j} |a_i||b_j|} (a_1 b_1 ⊗ … ⊗ a_n b_n)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, GradedAlgebra};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("{0}")]
    InvalidPower(String),
    #[error("slot {slot} out of range for a {n}-fold tensor power")]
    SlotOutOfRange { slot: usize, n: usize },
    #[error("element does not belong to this tensor algebra")]
    AlgebraMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

// resource guard; the CLI applies a much lower configurable cap
const MAX_TENSOR_DIM: usize = 1 << 26;

#[derive(Debug)]
struct TensorData {
    base: GradedAlgebra,
    n: usize,
    dim: usize,
    degrees: Vec<u32>,
    by_degree: BTreeMap<u32, Vec<usize>>,
    top_degree: u32,
}

/// The n-fold tensor power `base^{⊗ n}` as a graded algebra handle.
#[derive(Clone)]
pub struct TensorAlgebra {
    inner: Arc<TensorData>,
}

impl fmt::Debug for TensorAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TensorAlgebra")
            .field("base", &self.inner.base)
            .field("n", &self.inner.n)
            .field("dim", &self.inner.dim)
            .finish()
    }
}

impl TensorAlgebra {
    pub fn new(base: &GradedAlgebra, n: usize) -> Result<TensorAlgebra, TensorError> {
        if n == 0 {
            return Err(TensorError::InvalidPower(
                "tensor power exponent must be at least 1".into(),
            ));
        }
        let dim =
            base.dim().checked_pow(n as u32).filter(|d| *d <= MAX_TENSOR_DIM).ok_or_else(|| {
                TensorError::InvalidPower(format!(
                    "tensor power dimension {}^{} is too large",
                    base.dim(),
                    n
                ))
            })?;

        let mut degrees = vec![0u32; dim];
        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        let mut tuple = vec![0usize; n];
        for (index, degree) in degrees.iter_mut().enumerate() {
            decode_into(index, base.dim(), &mut tuple);
            let d: u32 = tuple.iter().map(|i| base.degree(*i)).sum();
            *degree = d;
            by_degree.entry(d).or_default().push(index);
        }
        let top_degree = base.top_degree() * n as u32;

        Ok(TensorAlgebra {
            inner: Arc::new(TensorData {
                base: base.clone(),
                n,
                dim,
                degrees,
                by_degree,
                top_degree,
            }),
        })
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.inner.base
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn top_degree(&self) -> u32 {
        self.inner.top_degree
    }

    pub fn degree(&self, index: usize) -> u32 {
        self.inner.degrees[index]
    }

    pub fn basis_of_degree(&self, degree: u32) -> &[usize] {
        self.inner.by_degree.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn same_algebra(&self, other: &TensorAlgebra) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Decodes a basis index into its tuple of base indices.
    pub fn tuple_of(&self, index: usize) -> Vec<usize> {
        let mut tuple = vec![0usize; self.inner.n];
        decode_into(index, self.inner.base.dim(), &mut tuple);
        tuple
    }

    /// Encodes a tuple of base indices (lexicographic basis order).
    pub fn index_of(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.inner.n);
        tuple.iter().fold(0, |acc, i| acc * self.inner.base.dim() + i)
    }

    /// The display name of a basis tuple, components joined by `⊗`.
    pub fn name(&self, index: usize) -> String {
        self.tuple_of(index).iter().map(|i| self.inner.base.name(*i)).collect::<Vec<_>>().join("⊗")
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement { algebra: self.clone(), terms: Vec::new() }
    }

    pub fn unit(&self) -> TensorElement {
        let unit_tuple = vec![self.inner.base.unit_index(); self.inner.n];
        self.basis_element(self.index_of(&unit_tuple))
    }

    pub fn basis_element(&self, index: usize) -> TensorElement {
        TensorElement { algebra: self.clone(), terms: vec![(index, self.inner.base.field().one())] }
    }

    pub fn element(&self, terms: &[(usize, Scalar)]) -> Result<TensorElement, TensorError> {
        let field = self.inner.base.field();
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in terms {
            if *i >= self.inner.dim {
                return Err(TensorError::InvalidPower(format!("basis index {i} out of range")));
            }
            if c.field() != field {
                return Err(TensorError::Algebra(
                    crate::scalar::ScalarError::FieldMismatch(field, c.field()).into(),
                ));
            }
            if !c.is_zero() {
                let entry = acc.entry(*i).or_insert_with(|| field.zero());
                *entry = entry.add(c).expect("same field");
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TensorElement { algebra: self.clone(), terms: acc.into_iter().collect() })
    }

    /// `1 ⊗ … ⊗ e ⊗ … ⊗ 1` with `e` placed in `slot` (0-based), extended
    /// linearly in `e`.
    pub fn slot_class(&self, e: &Element, slot: usize) -> Result<TensorElement, TensorError> {
        if slot >= self.inner.n {
            return Err(TensorError::SlotOutOfRange { slot, n: self.inner.n });
        }
        if !e.algebra().same_algebra(&self.inner.base) {
            return Err(TensorError::AlgebraMismatch);
        }
        let unit = self.inner.base.unit_index();
        let mut tuple = vec![unit; self.inner.n];
        let terms = e
            .terms()
            .iter()
            .map(|(i, c)| {
                tuple[slot] = *i;
                (self.index_of(&tuple), c.clone())
            })
            .collect::<Vec<_>>();
        self.element(&terms)
    }

    /// The pullback along the diagonal: the linear extension of the n-fold
    /// multiplication `a_1 ⊗ … ⊗ a_n -> a_1 ⋯ a_n` in the base algebra.
    /// This is a ring homomorphism onto the base.
    pub fn diagonal_pullback(&self, e: &TensorElement) -> Result<Element, TensorError> {
        if !self.same_algebra(&e.algebra) {
            return Err(TensorError::AlgebraMismatch);
        }
        let base = &self.inner.base;
        let mut acc = base.zero();
        for (index, coeff) in &e.terms {
            let tuple = self.tuple_of(*index);
            let mut prod = base.basis_element(tuple[0]);
            for i in &tuple[1..] {
                if prod.is_zero() {
                    break;
                }
                prod = prod.mul(&base.basis_element(*i))?;
            }
            acc = acc.add(&prod.scale(coeff)?)?;
        }
        Ok(acc)
    }

    /// An exact kernel basis of the diagonal pullback, per positive degree
    /// up to `max_degree` (default: the top degree). Degree 0 is omitted:
    /// the unit maps to the unit.
    pub fn kernel_of_diagonal(&self, max_degree: Option<u32>) -> KernelBasis {
        let top = max_degree.unwrap_or(self.inner.top_degree).min(self.inner.top_degree);
        let base = &self.inner.base;
        let field = base.field();
        let mut degrees = BTreeMap::new();
        if top == 0 {
            return KernelBasis { degrees };
        }

        for (&degree, cols) in self.inner.by_degree.range(1..=top) {
            let base_rows = base.basis_of_degree(degree);
            let row_of: BTreeMap<usize, usize> =
                base_rows.iter().enumerate().map(|(r, b)| (*b, r)).collect();

            // matrix of the map: rows = base degree-d basis, cols = tuples
            let mut rows: Vec<SparseVec> = vec![Vec::new(); base_rows.len()];
            for (col, tuple_index) in cols.iter().enumerate() {
                let image = self
                    .diagonal_pullback(&self.basis_element(*tuple_index))
                    .expect("basis element belongs to this algebra");
                for (b, c) in image.terms() {
                    rows[row_of[b]].push((col, c.clone()));
                }
            }

            let matrix = SparseMatrix::new(field, cols.len(), rows)
                .expect("all coefficients share the base field");
            let reduction_rank = matrix.row_reduce().rank;
            let basis = matrix
                .kernel_basis()
                .into_iter()
                .map(|vec| TensorElement {
                    algebra: self.clone(),
                    terms: vec.into_iter().map(|(c, a)| (cols[c], a)).collect(),
                })
                .collect::<Vec<_>>();

            degrees.insert(
                degree,
                DegreeKernel { degree, dim: cols.len(), rank: reduction_rank, basis },
            );
        }

        KernelBasis { degrees }
    }
}

fn decode_into(mut index: usize, base_dim: usize, tuple: &mut [usize]) {
    for slot in tuple.iter_mut().rev() {
        *slot = index % base_dim;
        index /= base_dim;
    }
}

/// The kernel of the diagonal pullback in one degree.
#[derive(Debug, Clone)]
pub struct DegreeKernel {
    pub degree: u32,
    /// Dimension of the degree-`degree` part of the tensor power.
    pub dim: usize,
    /// Rank of the diagonal pullback restricted to this degree.
    pub rank: usize,
    pub basis: Vec<TensorElement>,
}

/// Kernel bases of the diagonal pullback, graded by degree.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    degrees: BTreeMap<u32, DegreeKernel>,
}

impl KernelBasis {
    pub fn get(&self, degree: u32) -> Option<&DegreeKernel> {
        self.degrees.get(&degree)
    }

    pub fn iter(&self) -> impl Iterator<Item = &DegreeKernel> {
        self.degrees.values()
    }

    /// All kernel elements in (degree, column) order.
    pub fn elements(&self) -> impl Iterator<Item = &TensorElement> {
        self.degrees.values().flat_map(|k| k.basis.iter())
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(|k| k.basis.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_dim() == 0
    }
}

/// A sparse element of a [`TensorAlgebra`].
#[derive(Clone)]
pub struct TensorElement {
    algebra: TensorAlgebra,
    terms: SparseVec,
}

impl TensorElement {
    pub fn algebra(&self) -> &TensorAlgebra {
        &self.algebra
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.iter().map(|(i, _)| self.algebra.degree(*i));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn check_same(&self, other: &TensorElement) -> Result<(), TensorError> {
        if !self.algebra.same_algebra(&other.algebra) {
            return Err(TensorError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.check_same(other)?;
        let mut acc: BTreeMap<usize, Scalar> = self.terms.iter().cloned().collect();
        for (i, c) in &other.terms {
            merge(&mut acc, *i, c.clone());
        }
        Ok(TensorElement { algebra: self.algebra.clone(), terms: acc.into_iter().collect() })
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(i, c)| (*i, c.neg())).collect(),
        }
    }

    pub fn scale(&self, scalar: &Scalar) -> Result<TensorElement, TensorError> {
        if scalar.is_zero() {
            return Ok(self.algebra.zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| c.mul(scalar).map(|v| (*i, v)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(AlgebraError::from)?;
        Ok(TensorElement { algebra: self.algebra.clone(), terms })
    }

    /// Koszul-signed multiplication, computed per pair of basic tensors.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement, TensorError> {
        self.check_same(other)?;
        let data = &self.algebra.inner;
        let base = &data.base;
        let top = data.top_degree;
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();

        let mut a_tuple = vec![0usize; data.n];
        let mut b_tuple = vec![0usize; data.n];
        for (ai, ac) in &self.terms {
            decode_into(*ai, base.dim(), &mut a_tuple);
            let a_deg = data.degrees[*ai];
            for (bi, bc) in &other.terms {
                if a_deg + data.degrees[*bi] > top {
                    continue;
                }
                decode_into(*bi, base.dim(), &mut b_tuple);

                // Koszul parity: sum over i > j of |a_i| |b_j|
                let mut parity = 0u32;
                let mut odd_a_after = 0u32; // odd-degree a_i with i > current j
                for j in (0..data.n).rev() {
                    if j + 1 < data.n && base.degree(a_tuple[j + 1]) % 2 == 1 {
                        odd_a_after += 1;
                    }
                    if base.degree(b_tuple[j]) % 2 == 1 {
                        parity += odd_a_after;
                    }
                }

                let mut coeff = ac.mul(bc).map_err(AlgebraError::from)?;
                if parity % 2 == 1 {
                    coeff = coeff.neg();
                }

                // expand the componentwise products
                let components: Vec<&[(usize, Scalar)]> =
                    (0..data.n).map(|s| base.product_of(a_tuple[s], b_tuple[s])).collect();
                if components.iter().any(|c| c.is_empty()) {
                    continue;
                }
                expand_components(&components, base.dim(), &coeff, &mut acc);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TensorElement { algebra: self.algebra.clone(), terms: acc.into_iter().collect() })
    }
}

fn merge(acc: &mut BTreeMap<usize, Scalar>, key: usize, value: Scalar) {
    if value.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().add(&value).expect("same field");
            if sum.is_zero() {
                e.remove();
            } else {
                e.insert(sum);
            }
        }
    }
}

fn expand_components(
    components: &[&[(usize, Scalar)]],
    base_dim: usize,
    coeff: &Scalar,
    acc: &mut BTreeMap<usize, Scalar>,
) {
    // odometer over the choice of one term per slot
    let n = components.len();
    let mut choice = vec![0usize; n];
    loop {
        let mut index = 0usize;
        let mut c = coeff.clone();
        for (s, comp) in components.iter().enumerate() {
            let (k, a) = &comp[choice[s]];
            index = index * base_dim + k;
            c = c.mul(a).expect("same field");
        }
        merge(acc, index, c);

        let mut s = n;
        loop {
            if s == 0 {
                return;
            }
            s -= 1;
            choice[s] += 1;
            if choice[s] < components[s].len() {
                break;
            }
            choice[s] = 0;
        }
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_algebra(&other.algebra) && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

impl fmt::Display for TensorElement {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{point, sphere, torus};
    use crate::scalar::FieldSpec;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn power_one_is_the_base() {
        let t2 = torus(2, q()).unwrap();
        let t = TensorAlgebra::new(&t2.algebra, 1).unwrap();
        assert_eq!(t.dim(), t2.algebra.dim());
        for i in 0..t.dim() {
            assert_eq!(t.degree(i), t2.algebra.degree(i));
        }
        let x = t2.algebra.element_from_names(&[("x", 1)]).unwrap();
        let y = t2.algebra.element_from_names(&[("y", 1)]).unwrap();
        let tx = t.slot_class(&x, 0).unwrap();
        let ty = t.slot_class(&y, 0).unwrap();
        let product = t.diagonal_pullback(&tx.mul(&ty).unwrap()).unwrap();
        assert_eq!(product, x.mul(&y).unwrap());
    }

    #[test]
    fn koszul_sign_on_the_circle() {
        let s1 = sphere(1, q()).unwrap();
        let t = TensorAlgebra::new(&s1.algebra, 2).unwrap();
        let u = s1.algebra.element_from_names(&[("u", 1)]).unwrap();
        let u1 = t.slot_class(&u, 0).unwrap();
        let u2 = t.slot_class(&u, 1).unwrap();
        let forward = u1.mul(&u2).unwrap();
        let backward = u2.mul(&u1).unwrap();
        assert_eq!(forward.neg(), backward);
        assert!(!forward.is_zero());
        assert_eq!(forward.degree(), Some(2));
    }

    #[test]
    fn cube_of_the_even_difference_class() {
        // v = u_1 + u_2 - 2 u_3 on the 3-fold power of S^2; its cube is
        // -12 (u ⊗ u ⊗ u)
        let s2 = sphere(2, q()).unwrap();
        let t = TensorAlgebra::new(&s2.algebra, 3).unwrap();
        let u = s2.algebra.element_from_names(&[("u", 1)]).unwrap();
        let v = t
            .slot_class(&u, 0)
            .unwrap()
            .add(&t.slot_class(&u, 1).unwrap())
            .unwrap()
            .sub(&t.slot_class(&u, 2).unwrap().scale(&q().integer(2)).unwrap())
            .unwrap();
        let v3 = v.mul(&v).unwrap().mul(&v).unwrap();
        let uuu = t.index_of(&[1, 1, 1]);
        let expected = t.basis_element(uuu).scale(&q().integer(-12)).unwrap();
        assert_eq!(v3, expected);
        assert!(t.diagonal_pullback(&v).unwrap().is_zero());
    }

    #[test]
    fn slot_class_basics() {
        let s2 = sphere(2, q()).unwrap();
        let t = TensorAlgebra::new(&s2.algebra, 3).unwrap();
        let u = s2.algebra.element_from_names(&[("u", 1)]).unwrap();
        let u3 = t.slot_class(&u, 2).unwrap();
        assert_eq!(u3.degree(), Some(2));
        assert_eq!(u3.terms().len(), 1);
        assert_eq!(u3.terms()[0].0, t.index_of(&[0, 0, 1]));
        let one = t.slot_class(&s2.algebra.unit(), 1).unwrap();
        assert_eq!(one, t.unit());
        assert!(matches!(t.slot_class(&u, 3), Err(TensorError::SlotOutOfRange { slot: 3, n: 3 })));
    }

    #[test]
    fn diagonal_pullback_examples() {
        let s1 = sphere(1, q()).unwrap();
        let t = TensorAlgebra::new(&s1.algebra, 2).unwrap();
        let u = s1.algebra.element_from_names(&[("u", 1)]).unwrap();
        let diff = t.slot_class(&u, 0).unwrap().sub(&t.slot_class(&u, 1).unwrap()).unwrap();
        assert!(t.diagonal_pullback(&diff).unwrap().is_zero());

        let t2 = torus(2, q()).unwrap();
        let p = TensorAlgebra::new(&t2.algebra, 2).unwrap();
        let x = t2.algebra.element_from_names(&[("x", 1)]).unwrap();
        let y = t2.algebra.element_from_names(&[("y", 1)]).unwrap();
        let xy_tensor = p.slot_class(&x, 0).unwrap().mul(&p.slot_class(&y, 1).unwrap()).unwrap();
        assert_eq!(
            p.diagonal_pullback(&xy_tensor).unwrap(),
            t2.algebra.element_from_names(&[("xy", 1)]).unwrap()
        );
    }

    #[test]
    fn kernel_of_even_sphere_square() {
        let s2 = sphere(2, q()).unwrap();
        let t = TensorAlgebra::new(&s2.algebra, 2).unwrap();
        let kernel = t.kernel_of_diagonal(None);

        let deg2 = kernel.get(2).unwrap();
        assert_eq!(deg2.dim, 2);
        assert_eq!(deg2.rank, 1);
        assert_eq!(deg2.basis.len(), 1);
        // spans the line through u⊗1 - 1⊗u
        let u = s2.algebra.element_from_names(&[("u", 1)]).unwrap();
        let diff = t.slot_class(&u, 0).unwrap().sub(&t.slot_class(&u, 1).unwrap()).unwrap();
        let k = &deg2.basis[0];
        assert!(k == &diff || k == &diff.neg(), "kernel spans the difference class");

        // degree 4 is entirely kernel (u*u = 0 in the base)
        let deg4 = kernel.get(4).unwrap();
        assert_eq!(deg4.dim, 1);
        assert_eq!(deg4.rank, 0);
        assert_eq!(deg4.basis.len(), 1);
    }

    #[test]
    fn kernel_of_point_is_empty() {
        let pt = point(q()).unwrap();
        for n in [1usize, 3, 5] {
            let t = TensorAlgebra::new(&pt.algebra, n).unwrap();
            assert!(t.kernel_of_diagonal(None).is_empty());
        }
    }

    #[test]
    fn kernel_dimension_identity() {
        // over all degrees: dim kernel + rank = dim of the degree part,
        // and degree parts sum to dim(base)^n
        for (desc, n) in [
            (sphere(2, q()).unwrap(), 3usize),
            (torus(2, q()).unwrap(), 2),
            (sphere(3, q()).unwrap(), 2),
        ] {
            let t = TensorAlgebra::new(&desc.algebra, n).unwrap();
            let kernel = t.kernel_of_diagonal(None);
            let mut covered = 1usize; // degree 0
            for k in kernel.iter() {
                assert_eq!(k.basis.len() + k.rank, k.dim, "degree {}", k.degree);
                covered += k.dim;
            }
            assert_eq!(covered, t.dim());
            for e in kernel.elements() {
                assert!(t.diagonal_pullback(e).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn power_zero_rejected() {
        let s1 = sphere(1, q()).unwrap();
        assert!(TensorAlgebra::new(&s1.algebra, 0).is_err());
    }

    fn arb_pair() -> impl Strategy<Value = (TensorElement, TensorElement)> {
        let spaces = prop_oneof![
            Just((torus(2, q()).unwrap(), 2usize)),
            Just((sphere(2, q()).unwrap(), 3)),
            Just((sphere(3, q()).unwrap(), 2)),
        ];
        spaces.prop_flat_map(|(desc, n)| {
            let t = TensorAlgebra::new(&desc.algebra, n).unwrap();
            let dim = t.dim();
            let picks = proptest::collection::vec((0..dim, -3i64..=3), 1..4);
            (Just(t), picks.clone(), picks).prop_map(|(t, a, b)| {
                let field = t.base().field();
                let to_elem = |picks: Vec<(usize, i64)>| {
                    let terms: Vec<(usize, Scalar)> =
                        picks.into_iter().map(|(i, c)| (i, field.integer(c))).collect();
                    t.element(&terms).unwrap()
                };
                (to_elem(a), to_elem(b))
            })
        })
    }

    proptest! {
        #[test]
        fn pullback_is_a_ring_homomorphism((a, b) in arb_pair()) {
            let t = a.algebra().clone();
            let lhs = t.diagonal_pullback(&a.mul(&b).unwrap()).unwrap();
            let rhs = t
                .diagonal_pullback(&a)
                .unwrap()
                .mul(&t.diagonal_pullback(&b).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn graded_commutativity((a, b) in arb_pair()) {
            // restrict to homogeneous parts: pick the lowest degree present
            let t = a.algebra().clone();
            let restrict = |e: &TensorElement| -> Option<TensorElement> {
                let d = e.terms().iter().map(|(i, _)| t.degree(*i)).min()?;
                let terms: Vec<(usize, Scalar)> = e
                    .terms()
                    .iter()
                    .filter(|(i, _)| t.degree(*i) == d)
                    .cloned()
                    .collect();
                Some(t.element(&terms).unwrap())
            };
            if let (Some(ha), Some(hb)) = (restrict(&a), restrict(&b)) {
                let (da, db) = (ha.degree().unwrap(), hb.degree().unwrap());
                let forward = ha.mul(&hb).unwrap();
                let backward = hb.mul(&ha).unwrap();
                if da % 2 == 1 && db % 2 == 1 {
                    prop_assert_eq!(forward, backward.neg());
                } else {
                    prop_assert_eq!(forward, backward);
                }
            }
        }

        #[test]
        fn pullback_inverts_slot_classes(slot in 0usize..3, coeffs in proptest::collection::vec(-4i64..=4, 2)) {
            let t2 = torus(2, q()).unwrap();
            let t = TensorAlgebra::new(&t2.algebra, 3).unwrap();
            let terms: Vec<(usize, Scalar)> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i + 1, q().integer(*c)))
                .collect();
            let e = t2.algebra.element(&terms).unwrap();
            let lifted = t.slot_class(&e, slot).unwrap();
            prop_assert_eq!(t.diagonal_pullback(&lifted).unwrap(), e);
        }

        // the canonical zero-divisor product survives: for homogeneous
        // nonzero v of positive degree, Π (slot_i(v) - slot_last(v)) != 0
        #[test]
        fn canonical_zero_divisor_product_nonzero(
            pick in prop_oneof![Just(0usize), Just(1), Just(2)],
            n in 2usize..=4,
            coeff in 1i64..=3,
        ) {
            let t2 = torus(2, q()).unwrap();
            let gens = [("x", 1u32), ("y", 1), ("xy", 2)];
            let (name, _) = gens[pick];
            let v = t2.algebra.element_from_names(&[(name, coeff)]).unwrap();
            let t = TensorAlgebra::new(&t2.algebra, n).unwrap();
            let last = t.slot_class(&v, n - 1).unwrap();
            let mut product: Option<TensorElement> = None;
            for slot in 0..n - 1 {
                let factor = t.slot_class(&v, slot).unwrap().sub(&last).unwrap();
                product = Some(match product {
                    None => factor,
                    Some(p) => p.mul(&factor).unwrap(),
                });
            }
            prop_assert!(!product.unwrap().is_zero());
        }
    }
}
