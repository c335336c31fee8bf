//! First-order differential-operator realizations of the algebra and their
//! validation.
//!
//! Every basis element `x` is realized as `D_x = P + Σ Qⁱ∂ᵢ` acting on
//! symbols, characterized by `D_x F_ψ = F_{dT(x)ψ}`. Polynomiality is
//! treated as a hypothesis: the solve escalates the degree bound and reports
//! [`Error::NonPolynomialRealization`](crate::Error::NonPolynomialRealization)
//! when no solution exists under the cap.

mod checks;
mod solve;

pub use checks::{
    cocycle_residual, degree_report, flow_crosscheck, flow_crosscheck_op, flow_derivatives, homomorphism_residual,
    intertwining_residual, DegreeReport, GeneratorDegree,
};
pub use solve::{realize_all, realize_generator, symbol, COp, Realization, RealizationTable, SolverConfig};
