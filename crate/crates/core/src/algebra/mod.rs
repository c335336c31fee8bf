//! Lie algebras, matrix representations and orbit models.

pub mod catalog;
pub mod file;
pub mod model;
mod rep;
mod spec;

pub use catalog::{catalog_entries, catalog_model, CatalogInfo, CatalogParams};
pub use file::{load_model, ModelFile, ModelSource};
pub use model::{derived_matrix, validate_representation, DegreeBound, ModelParts, OrbitModel};
pub use rep::{derived_matrix_of, validate_rep_matrices, MatrixRep};
pub use spec::{validate_structure, AlgebraElement, CMatrix, LieAlgebraSpec, StructureEntry, ValidationReport};
