use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DVector;
use num_complex::Complex;

use super::rep::{column, derived_matrix_of, validate_rep_matrices, MatrixRep};
use super::spec::{validate_structure, AlgebraElement, CMatrix, LieAlgebraSpec, ValidationReport};
use crate::analysis::MeasureSpec;
use crate::error::{Error, Result};
use crate::orbit::OrbitData;
use crate::scalar::{cabs, Real};

/// Expected global degree of the realization, attached to catalog models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeBound {
    AtMost(u32),
    Exactly(u32),
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeBound::AtMost(d) => write!(f, "at most {d}"),
            DegreeBound::Exactly(d) => write!(f, "exactly {d}"),
        }
    }
}

impl DegreeBound {
    pub fn holds(&self, degree: u32) -> bool {
        match *self {
            DegreeBound::AtMost(d) => degree <= d,
            DegreeBound::Exactly(d) => degree == d,
        }
    }

    pub fn value(&self) -> u32 {
        match *self {
            DegreeBound::AtMost(d) | DegreeBound::Exactly(d) => d,
        }
    }
}

/// Unvalidated ingredients of an [`OrbitModel`].
#[derive(Clone, Debug)]
pub struct ModelParts<R: Real> {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub spec: LieAlgebraSpec<R>,
    pub rep: MatrixRep<R>,
    pub e0_index: usize,
    pub mprime: Vec<AlgebraElement<R>>,
    pub grading: Vec<u32>,
    pub measure: Option<MeasureSpec>,
    /// `adjoint[i]` is the basis index whose matrix is the conjugate
    /// transpose of basis element `i`.
    pub adjoint: Option<Vec<usize>>,
    pub degree_bound: Option<DegreeBound>,
}

/// A validated Lie algebra, representation, extremal vector and chart.
///
/// Immutable after construction. The symbolic coherent vector, covector and
/// kernel are built once here and shared by every downstream computation.
#[derive(Clone, Debug)]
pub struct OrbitModel<R: Real> {
    parts: ModelParts<R>,
    lowering: Vec<CMatrix<R>>,
    raising: Vec<CMatrix<R>>,
    orbit: OrbitData<R>,
}

impl<R: Real> OrbitModel<R> {
    pub fn new(parts: ModelParts<R>) -> Result<Self> {
        let spec = &parts.spec;
        let rep = &parts.rep;
        let d = rep.dim();
        let n = parts.mprime.len();
        let tol = R::structural_tol();
        let etol = R::extremal_tol();

        if parts.e0_index >= d {
            return Err(Error::Structural(format!("e0_index {} out of range for dimension {d}", parts.e0_index)));
        }
        if parts.grading.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: parts.grading.len() });
        }
        if parts.grading.contains(&0) {
            return Err(Error::Validation("grading entries must be positive".into()));
        }
        for x in &parts.mprime {
            spec.check(x)?;
        }
        if let Some(adj) = &parts.adjoint {
            if adj.len() != spec.dim() || adj.iter().any(|&j| j >= spec.dim()) {
                return Err(Error::Structural("adjoint table must map every basis index into the basis".into()));
            }
        }

        let structure = validate_structure(spec, tol);
        if !structure.passed {
            return Err(Error::Validation(format!(
                "structure constants: antisymmetry {:e}, jacobi {:e}",
                structure.metric("antisymmetry").unwrap_or(f64::NAN),
                structure.metric("jacobi").unwrap_or(f64::NAN)
            )));
        }
        let repcheck = validate_rep_matrices(spec, rep, tol)?;
        if !repcheck.passed {
            return Err(Error::Validation(format!(
                "representation commutator residual {:e} on the interior block",
                repcheck.metric("block").unwrap_or(f64::NAN)
            )));
        }

        let lowering: Vec<CMatrix<R>> =
            parts.mprime.iter().map(|x| derived_matrix_of(rep, x)).collect::<Result<_>>()?;
        let raising: Vec<CMatrix<R>> = lowering.iter().map(|a| a.adjoint()).collect();
        let e0 = parts.e0_index;

        // tangent images A_α e0: nonzero, orthogonal to e0, independent
        let tangents: Vec<Vec<Complex<R>>> = lowering.iter().map(|a| column(a, e0)).collect();
        for (alpha, t) in tangents.iter().enumerate() {
            let norm = norm2(t);
            if norm <= tol {
                return Err(Error::Validation(format!("lowering image of m' direction {alpha} vanishes on e0")));
            }
            if cabs(t[e0]).to_f64() > tol * norm {
                return Err(Error::Validation(format!(
                    "lowering image of m' direction {alpha} is not orthogonal to e0"
                )));
            }
        }
        if n > 0 {
            let gram = CMatrix::<R>::from_fn(n, n, |a, b| {
                tangents[a].iter().zip(&tangents[b]).map(|(x, y)| x.conj() * *y).sum()
            });
            let rank = gram.clone().svd(false, false).rank(crate::scalar::real(tol));
            if rank < n {
                return Err(Error::Validation(format!("lowering images are dependent: Gram rank {rank} < {n}")));
            }
        }

        // extremality: raising counterparts annihilate e0
        for (alpha, b) in raising.iter().enumerate() {
            let v = norm2(&column(b, e0));
            if v > etol {
                return Err(Error::Validation(format!(
                    "e0 is not extremal: raising counterpart of direction {alpha} gives norm {v:e}"
                )));
            }
        }

        // tangent condition: every generator maps e0 into span(e0, A_α e0)
        let mut span: Vec<Vec<Complex<R>>> = vec![unit(d, e0)];
        span.extend(tangents.iter().cloned());
        let basis = orthonormalize(&span);
        for (i, m) in rep.matrices().iter().enumerate() {
            let v = column(m, e0);
            let resid = projection_residual(&basis, &v);
            if resid > tol * (1.0 + norm2(&v)) {
                return Err(Error::Validation(format!(
                    "generator {} moves e0 off the orbit tangent space (residual {resid:e})",
                    spec.label(i)
                )));
            }
        }

        check_grading(&raising, &tangents, &parts.grading, e0, d, rep.block_dim())?;

        let orbit = OrbitData::build(d, e0, &lowering, &raising, &parts.grading)?;
        Ok(Self { parts, lowering, raising, orbit })
    }

    pub fn name(&self) -> &str {
        &self.parts.name
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.parts.params
    }

    pub fn spec(&self) -> &LieAlgebraSpec<R> {
        &self.parts.spec
    }

    pub fn rep(&self) -> &MatrixRep<R> {
        &self.parts.rep
    }

    pub fn e0_index(&self) -> usize {
        self.parts.e0_index
    }

    pub fn mprime(&self) -> &[AlgebraElement<R>] {
        &self.parts.mprime
    }

    pub fn grading(&self) -> &[u32] {
        &self.parts.grading
    }

    pub fn measure(&self) -> Option<&MeasureSpec> {
        self.parts.measure.as_ref()
    }

    pub fn adjoint(&self) -> Option<&[usize]> {
        self.parts.adjoint.as_deref()
    }

    pub fn degree_bound(&self) -> Option<DegreeBound> {
        self.parts.degree_bound
    }

    pub fn parts(&self) -> &ModelParts<R> {
        &self.parts
    }

    /// Number of chart coordinates.
    pub fn n(&self) -> usize {
        self.parts.mprime.len()
    }

    /// Dimension of the representation space.
    pub fn d(&self) -> usize {
        self.parts.rep.dim()
    }

    /// `A_α = dT(m′_α)`.
    pub fn lowering(&self) -> &[CMatrix<R>] {
        &self.lowering
    }

    /// `B_α = A_α†`.
    pub fn raising(&self) -> &[CMatrix<R>] {
        &self.raising
    }

    pub(crate) fn orbit(&self) -> &OrbitData<R> {
        &self.orbit
    }

    pub fn derived_matrix(&self, x: &AlgebraElement<R>) -> Result<CMatrix<R>> {
        derived_matrix_of(&self.parts.rep, x)
    }

    /// `exp(t·dT(x))`, a group element in the representation.
    pub fn group_element(&self, x: &AlgebraElement<R>, t: Complex<R>) -> Result<CMatrix<R>> {
        Ok((self.derived_matrix(x)? * t).exp())
    }

    /// Element of the complexification whose matrix is the conjugate
    /// transpose of `dT(x)`, via the declared adjoint table.
    pub fn adjoint_element(&self, x: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
        self.spec().check(x)?;
        let adj = self.adjoint().ok_or_else(|| {
            Error::MissingAdjoint(x.coeffs().iter().position(|c| c.re != R::zero() || c.im != R::zero()).unwrap_or(0))
        })?;
        let mut out = vec![Complex::new(R::zero(), R::zero()); self.spec().dim()];
        for (i, c) in x.coeffs().iter().enumerate() {
            out[adj[i]] += c.conj();
        }
        Ok(AlgebraElement::new(out))
    }
}

/// `validate_representation` on a model.
pub fn validate_representation<R: Real>(model: &OrbitModel<R>, tol: f64) -> Result<ValidationReport> {
    validate_rep_matrices(model.spec(), model.rep(), tol)
}

pub fn derived_matrix<R: Real>(model: &OrbitModel<R>, x: &AlgebraElement<R>) -> Result<CMatrix<R>> {
    model.derived_matrix(x)
}

pub(crate) fn norm2<R: Real>(v: &[Complex<R>]) -> f64 {
    v.iter().map(|c| (c.re * c.re + c.im * c.im).to_f64()).sum::<f64>().sqrt()
}

fn unit<R: Real>(d: usize, i: usize) -> Vec<Complex<R>> {
    let mut v = vec![Complex::new(R::zero(), R::zero()); d];
    v[i] = Complex::new(R::one(), R::zero());
    v
}

fn orthonormalize<R: Real>(vs: &[Vec<Complex<R>>]) -> Vec<DVector<Complex<R>>> {
    let mut out: Vec<DVector<Complex<R>>> = Vec::new();
    for v in vs {
        let mut w = DVector::from_column_slice(v);
        for q in &out {
            let p = q.dotc(&w);
            w -= q * p;
        }
        let nrm = w.norm();
        if nrm.to_f64() > 1e-300 {
            out.push(w / Complex::new(nrm, R::zero()));
        }
    }
    out
}

fn projection_residual<R: Real>(basis: &[DVector<Complex<R>>], v: &[Complex<R>]) -> f64 {
    let mut w = DVector::from_column_slice(v);
    for q in basis {
        let p = q.dotc(&w);
        w -= q * p;
    }
    w.norm().to_f64()
}

/// Levels are propagated from e0 through the nonzero entries of the raising
/// matrices (row action `u ↦ u·B_α` raises the level by `grading[α]`); every
/// basis vector must receive a single level and the support of `A_α e0`
/// must sit at level `grading[α]`.
fn check_grading<R: Real>(
    raising: &[CMatrix<R>],
    tangents: &[Vec<Complex<R>>],
    grading: &[u32],
    e0: usize,
    d: usize,
    block: usize,
) -> Result<()> {
    let scale = raising.iter().flat_map(|b| b.iter().map(|c| cabs(*c).to_f64())).fold(0.0, f64::max).max(1.0);
    let thresh = 1e-9 * scale;
    let mut level: Vec<Option<u32>> = vec![None; d];
    level[e0] = Some(0);
    let mut queue = std::collections::VecDeque::from([e0]);
    while let Some(k) = queue.pop_front() {
        let lk = level[k].expect("queued vectors have a level");
        for (alpha, b) in raising.iter().enumerate() {
            for l in 0..d {
                if cabs(b[(k, l)]).to_f64() <= thresh {
                    continue;
                }
                let want = lk + grading[alpha];
                match level[l] {
                    None => {
                        level[l] = Some(want);
                        queue.push_back(l);
                    }
                    Some(have) if have != want && k < block && l < block => {
                        return Err(Error::Validation(format!(
                            "grading is incompatible: basis vector {l} reached at levels {have} and {want}"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    for (alpha, t) in tangents.iter().enumerate() {
        let tscale = t.iter().map(|c| cabs(*c).to_f64()).fold(0.0, f64::max);
        for (k, c) in t.iter().enumerate() {
            if cabs(*c).to_f64() > 1e-9 * tscale && level[k] != Some(grading[alpha]) {
                return Err(Error::Validation(format!(
                    "grading of m' direction {alpha} is {} but its image sits at level {:?}",
                    grading[alpha], level[k]
                )));
            }
        }
    }
    Ok(())
}
