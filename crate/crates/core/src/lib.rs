//! Crystals of level zero fundamental representations of non-exceptional
//! quantum affine algebras, realized on binary vectors and two-column binary
//! matrices, with an exact q-Clifford module for cross-validation.

pub mod bicrystal;
pub mod cartan;
pub mod crystal;
pub mod error;
pub mod fock;
pub mod laurent;
pub mod theorems;

pub use cartan::{cartan_data, AffineType, CartanData, DiamondShape, KacLabel};
pub use crystal::{BinaryMatrix, BinaryVector, CrystalElement, CrystalGraph, CrystalOps, Weight};
pub use error::{Error, Result};
pub use laurent::{LaurentScalar, RationalScalar, Scalar};
pub use bicrystal::{QuotientGraph, SigmaPair};
pub use fock::{representation, FockReport, Representation, SparseOperator};
pub use theorems::{decompose, run_suite, DecompositionReport, SuiteReport};
