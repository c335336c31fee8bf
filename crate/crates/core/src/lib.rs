//! Coherent-state vectors, reproducing kernels and first-order
//! differential-operator realizations of Lie algebras with a matrix
//! highest-weight representation.
//!
//! The numeric layers are generic over a [`Real`] scalar (`f32` or `f64`);
//! polynomials are generic over any [`Coeff`] ring, including exact
//! rationals. The aliases below fix everything to `f64`, which is what the
//! command-line tool uses.
//!
//! ```
//! use coherent_realize::{catalog, realize_all, SolverConfig};
//!
//! let model = catalog::su2::<f64>(1.0).unwrap();
//! let table = realize_all(&model, &SolverConfig::default());
//! assert_eq!(table.op(2).unwrap().p().render(), "2 z1");
//! assert_eq!(table.op(2).unwrap().q()[0].render(), "-z1^2");
//! ```

pub mod algebra;
pub mod analysis;
pub mod cli;
pub mod error;
pub mod orbit;
pub mod polyops;
pub mod realize;
pub mod scalar;

pub use algebra::{
    catalog, catalog_model, derived_matrix, load_model, validate_representation, validate_structure, AlgebraElement,
    CatalogParams, LieAlgebraSpec, MatrixRep, ModelFile, ModelSource, OrbitModel, ValidationReport,
};
pub use analysis::{
    adjoint_residual, parseval_residual, quadrature_rule, reproducing_residual, MeasureKind, MeasureSpec,
};
pub use error::{Error, Result};
pub use orbit::{
    coherent_covector, coherent_vector, extract_coordinates, group_action, kernel, normalization, polar_check,
};
pub use polyops::{diffop_apply, diffop_commutator, poly_eval, DiffOp1, MultiPoly};
pub use realize::{
    cocycle_residual, degree_report, flow_crosscheck, homomorphism_residual, realize_all, realize_generator, symbol,
    RealizationTable, SolverConfig,
};
pub use scalar::{Coeff, Real};

pub type Complex64 = num_complex::Complex64;
pub type Poly = MultiPoly<Complex64>;
pub type Op = DiffOp1<Complex64>;
pub type Model = OrbitModel<f64>;
pub type Element = AlgebraElement<f64>;
pub type Table = RealizationTable<f64>;
pub type Matrix = algebra::CMatrix<f64>;
pub type Rule = analysis::QuadratureRule<f64>;
