//! Quadrature-based checks on one-coordinate charts: overcompleteness and
//! isometry, the reproducing property, and formal-adjoint symmetry.

mod checks;
mod measure;
mod quadrature;

pub use checks::{
    adjoint_residual, converges, inner_product, parseval_residual, parseval_sequence, reproducing_residual,
};
pub use measure::{ChartDomain, MeasureKind, MeasureSpec};
pub use quadrature::{gauss_jacobi_unit, gauss_laguerre, gauss_legendre_unit, quadrature_rule, QuadratureRule};

/// Default radial × angular node counts.
pub const DEFAULT_NODES: (usize, usize) = (64, 64);
