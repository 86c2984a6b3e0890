//! Exact linear algebra over Z_(3): Smith normal form, presentations,
//! kernels and cokernels, three-term complexes and the filtration sequence.

pub mod complex;
pub mod finite;
pub mod les;
pub mod matrix;
pub mod ops;
pub mod presentation;
pub mod snf;

pub use complex::{complex_cohomology, Cohomology, ThreeTermComplex};
pub use les::{les_assemble, LesInput};
pub use matrix::{LabeledMatrix, Matrix};
pub use ops::{kernel_cokernel, verify_claim, Presented, Subquotient};
pub use presentation::{Generator, Invariants, ModulePresentation, Order, Relation};
pub use snf::{smith_normal_form, SmithForm, SnfOptions};
