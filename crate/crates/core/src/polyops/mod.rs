//! Sparse multivariate polynomials and first-order differential operators.

mod diffop;
mod poly;

pub use diffop::DiffOp1;
pub use poly::{Exponent, MultiPoly};

use crate::error::Result;
use crate::scalar::Coeff;

/// Evaluates `p` at `point`.
pub fn poly_eval<C: Coeff>(p: &MultiPoly<C>, point: &[C]) -> Result<C> {
    p.eval(point)
}

/// `P·f + Σ Qⁱ ∂ᵢ f`.
pub fn diffop_apply<C: Coeff>(d: &DiffOp1<C>, f: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    d.apply(f)
}

pub fn diffop_commutator<C: Coeff>(d1: &DiffOp1<C>, d2: &DiffOp1<C>) -> Result<DiffOp1<C>> {
    d1.commutator(d2)
}
