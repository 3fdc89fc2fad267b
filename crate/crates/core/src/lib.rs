//! Certified bounds for the higher topological complexities `TC_n(X)` of
//! spaces presented by their cohomology algebras, and an explicit motion
//! planner on odd-dimensional spheres.
//!
//! The pipeline is exact from end to end: a space is a finite-dimensional
//! graded-commutative algebra over `Q` or a prime field, the n-fold tensor
//! power models the cohomology of `X^n`, and the kernel of the multiplication
//! map (the pullback along the diagonal) feeds a zero-divisor cup-length
//! computation. Nonvanishing products of kernel elements certify lower
//! bounds `TC_n(X) >= m + 1`; category and growth inequalities give upper
//! bounds. On odd spheres the bound `TC_n(S^k) <= n` is realized
//! constructively by geodesic motion plans stratified by antipode count.

pub mod algebra;
pub mod bounds;
pub mod matrix;
pub mod scalar;
pub mod sphere_planner;
pub mod tensor;

pub use algebra::{AlgebraError, Element, GradedAlgebra, SpaceDescriptor, Violation};
pub use bounds::{BoundReport, BoundsError, Certificate, GapRecord, LowerSource, ZclResult};
pub use matrix::{RowReduction, SparseMatrix, SparseVec};
pub use scalar::{FieldSpec, Scalar, ScalarError};
pub use sphere_planner::{ContinuityReport, Path, Plan, PlannerError, ProbeConfig, SpherePoint};
pub use tensor::{DegreeKernel, KernelBasis, TensorAlgebra, TensorElement, TensorError};
