use num_complex::Complex;
use num_traits::Zero;

use super::spec::{AlgebraElement, CMatrix, LieAlgebraSpec, ValidationReport};
use crate::error::{Error, Result};
use crate::scalar::{cabs, Real};

/// Matrices of a (possibly truncated) representation, one per basis element.
///
/// A truncated representation is a finite corner of an infinite-dimensional
/// one. Indices below [`MatrixRep::block_dim`] are free of truncation
/// artifacts, and symbolic work never uses monomial degrees above
/// [`MatrixRep::max_degree`].
#[derive(Clone, Debug)]
pub struct MatrixRep<R: Real> {
    matrices: Vec<CMatrix<R>>,
    truncated: bool,
    trunc_margin: usize,
}

impl<R: Real> MatrixRep<R> {
    pub fn new(matrices: Vec<CMatrix<R>>, truncated: bool, trunc_margin: usize) -> Result<Self> {
        let d = matrices.first().map(|m| m.nrows()).unwrap_or(0);
        if d == 0 {
            return Err(Error::Structural("representation needs at least one nonempty matrix".into()));
        }
        for m in &matrices {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: m.nrows().max(m.ncols()) });
            }
        }
        if truncated && trunc_margin >= d {
            return Err(Error::InvalidParameter(format!(
                "truncation margin {trunc_margin} leaves no interior block in dimension {d}"
            )));
        }
        Ok(Self { matrices, truncated, trunc_margin: if truncated { trunc_margin } else { 0 } })
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrices(&self) -> &[CMatrix<R>] {
        &self.matrices
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn trunc_margin(&self) -> usize {
        self.trunc_margin
    }

    /// Number of leading basis indices free of truncation artifacts.
    pub fn block_dim(&self) -> usize {
        self.dim() - self.trunc_margin
    }

    /// Largest monomial degree symbolic computations may rely on.
    pub fn max_degree(&self) -> Option<u32> {
        self.truncated.then(|| (self.dim() - self.trunc_margin) as u32)
    }
}

/// `Σ coeffsᵢ · matricesᵢ`.
pub fn derived_matrix_of<R: Real>(rep: &MatrixRep<R>, x: &AlgebraElement<R>) -> Result<CMatrix<R>> {
    if x.len() != rep.matrices.len() {
        return Err(Error::DimensionMismatch { expected: rep.matrices.len(), found: x.len() });
    }
    let d = rep.dim();
    let mut out = CMatrix::<R>::zeros(d, d);
    for (c, m) in x.coeffs().iter().zip(&rep.matrices) {
        if !c.is_zero() {
            out += m * *c;
        }
    }
    Ok(out)
}

/// Commutator consistency `‖[Xᵢ,Xⱼ] − Σₖ c(i,j,k)Xₖ‖_max`, globally and on
/// the interior block.
pub fn validate_rep_matrices<R: Real>(
    spec: &LieAlgebraSpec<R>,
    rep: &MatrixRep<R>,
    tol: f64,
) -> Result<ValidationReport> {
    if rep.matrices.len() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), found: rep.matrices.len() });
    }
    let d = rep.dim();
    let block = rep.block_dim();
    let mut global = 0.0f64;
    let mut inner = 0.0f64;
    for i in 0..spec.dim() {
        for j in i + 1..spec.dim() {
            let xi = &rep.matrices[i];
            let xj = &rep.matrices[j];
            let mut defect = xi * xj - xj * xi;
            for (k, c) in spec.bracket(i, j).into_iter().enumerate() {
                if !c.is_zero() {
                    defect -= &rep.matrices[k] * c;
                }
            }
            for r in 0..d {
                for s in 0..d {
                    let v = cabs(defect[(r, s)]).to_f64();
                    global = global.max(v);
                    if r < block && s < block {
                        inner = inner.max(v);
                    }
                }
            }
        }
    }
    Ok(ValidationReport {
        metrics: vec![("global".into(), global), ("block".into(), inner)],
        tolerance: tol,
        passed: inner <= tol,
    })
}

pub(crate) fn column<R: Real>(m: &CMatrix<R>, j: usize) -> Vec<Complex<R>> {
    m.column(j).iter().copied().collect()
}
