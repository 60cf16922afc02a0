//! Exact computer algebra for nonabelian embedding tensors between Lie
//! algebras, the Leibniz-Lie algebras they induce, their cohomology and
//! deformations.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod fixtures;
pub mod graded;
pub mod leibniz_lie;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod tensor;
pub mod workspace;

pub use algebra::{Algebra, Flavor};
pub use error::{Error, Result};
pub use leibniz_lie::LeibnizLie;
pub use linalg::{Matrix, Subspace, Vector};
pub use rational::Rational;
pub use report::{Report, Violation};
pub use tensor::{ActionMap, TensorMap};
