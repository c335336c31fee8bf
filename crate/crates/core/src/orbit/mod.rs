//! Coherent-state vectors, covectors, the reproducing kernel, coordinate
//! extraction and the induced group action on the chart.
//!
//! Conventions: `E(z) = exp(Σ z_α A_α)e₀` with a single exponential of the
//! sum, and `ω(z) = e₀†exp(Σ z_α A_α†)`. The symbol of ψ is `ω(z)·ψ`, which
//! is holomorphic in `z`. A group element `g` moves the chart point by
//! `ω(z)·g = J(g,z)·ω(g·z)`; this is a right action, so the multiplier obeys
//! `J(g₁g₂, z) = J(g₁, z)·J(g₂, g₁·z)`.

mod data;

pub(crate) use data::OrbitData;
pub use data::{CPoly, KernelPoly, PolyCovector, PolyVector};

use nalgebra::DVector;
use num_complex::Complex;

use crate::algebra::{model::norm2, CMatrix, OrbitModel};
use crate::error::{Error, Result};
use crate::scalar::{cabs, Real};

pub fn coherent_vector<R: Real>(model: &OrbitModel<R>) -> PolyVector<R> {
    model.orbit().vector.clone()
}

pub fn coherent_covector<R: Real>(model: &OrbitModel<R>) -> PolyCovector<R> {
    model.orbit().covector.clone()
}

pub fn kernel<R: Real>(model: &OrbitModel<R>) -> KernelPoly<R> {
    model.orbit().kernel.clone()
}

fn check_point<R: Real>(model: &OrbitModel<R>, z: &[Complex<R>]) -> Result<()> {
    if z.len() == model.n() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: model.n(), found: z.len() })
    }
}

/// `K(z, z̄)^{−1/2}`.
pub fn normalization<R: Real>(model: &OrbitModel<R>, z: &[Complex<R>]) -> Result<R> {
    check_point(model, z)?;
    let zbar: Vec<_> = z.iter().map(|c| c.conj()).collect();
    let k = model.orbit().kernel.eval(z, &zbar)?;
    if k.re <= R::zero() {
        return Err(Error::DegeneratePoint(k.re.to_f64()));
    }
    Ok(R::one() / k.re.sqrt())
}

/// Numeric `ω(z)`.
pub fn covector_at<R: Real>(model: &OrbitModel<R>, z: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
    check_point(model, z)?;
    model.orbit().covector.eval(z)
}

/// Finds `(μ, z)` with `v = μ·ω(z)` by a graded triangular solve.
///
/// Directions are processed block by block in increasing grade. Within a
/// block the pairing `ω(z)·A_α e₀` is linear in the block's coordinates plus
/// a polynomial in coordinates already determined, so each block is one
/// small linear solve.
///
/// The result is accepted when `‖u − ω(z)‖/‖u‖` on the interior block stays
/// below the structural tolerance plus [`TAIL_FACTOR`] times the truncation
/// tail of the input or of `ω(z)`, whichever is larger.
pub fn extract_coordinates<R: Real>(model: &OrbitModel<R>, v: &[Complex<R>]) -> Result<(Complex<R>, Vec<Complex<R>>)> {
    let d = model.d();
    if v.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: v.len() });
    }
    let block = model.rep().block_dim();
    let vnorm = norm2(&v[..block]);
    let mu = v[model.e0_index()];
    if vnorm == 0.0 || cabs(mu).to_f64() <= 1e-14 * vnorm {
        return Err(Error::PolarDivisor(cabs(mu).to_f64()));
    }
    let u: Vec<Complex<R>> = v.iter().map(|c| *c / mu).collect();
    let orbit = model.orbit();
    let n = model.n();
    let mut z = vec![Complex::new(R::zero(), R::zero()); n];
    for blk in &orbit.blocks {
        let rhs = DVector::from_iterator(
            blk.directions.len(),
            blk.directions.iter().map(|&alpha| {
                let target: Complex<R> = orbit.tangents[alpha].iter().zip(&u).map(|(t, x)| *t * *x).sum();
                target - orbit.tangent_symbols[alpha].eval_unchecked(&z)
            }),
        );
        let sol = blk
            .system
            .clone()
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Singular("grade block of the coordinate solve".into()))?;
        for (k, &alpha) in blk.directions.iter().enumerate() {
            z[alpha] = sol[k];
        }
    }
    let w = orbit.covector.eval(&z)?;
    let diff: Vec<Complex<R>> = u[..block].iter().zip(&w[..block]).map(|(a, b)| *a - *b).collect();
    let rel = norm2(&diff) / norm2(&u[..block]);
    let allowed = R::structural_tol() + TAIL_FACTOR * tail_of(model, &u).max(tail_of(model, &w));
    if rel.is_nan() || rel > allowed {
        return Err(Error::OffOrbit(rel));
    }
    Ok((mu, z))
}

/// Slack on the extraction residual of truncated models, in units of
/// [`truncation_tail`].
pub const TAIL_FACTOR: f64 = 10.0;

fn tail_of<R: Real>(model: &OrbitModel<R>, w: &[Complex<R>]) -> f64 {
    let block = model.rep().block_dim();
    if block >= w.len() {
        return 0.0;
    }
    norm2(&w[block..]) / norm2(&w[..block])
}

/// `‖ω(z)|outside‖ / ‖ω(z)|interior‖`: how much of the coherent covector at
/// `z` sits outside the interior block. Zero for untruncated models.
pub fn truncation_tail<R: Real>(model: &OrbitModel<R>, z: &[Complex<R>]) -> Result<f64> {
    Ok(tail_of(model, &covector_at(model, z)?))
}

/// `(J, z′)` with `ω(z)·g = J·ω(z′)`.
pub fn group_action<R: Real>(
    model: &OrbitModel<R>,
    g: &CMatrix<R>,
    z: &[Complex<R>],
) -> Result<(Complex<R>, Vec<Complex<R>>)> {
    let d = model.d();
    if g.nrows() != d || g.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: g.nrows() });
    }
    let w = covector_at(model, z)?;
    let row: Vec<Complex<R>> = (0..d).map(|l| (0..d).map(|k| w[k] * g[(k, l)]).sum()).collect();
    extract_coordinates(model, &row)
}

/// Result of testing whether `w` lies on the polar divisor of `z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarCheck {
    pub on_divisor: bool,
    /// `|K(z, w̄)|`.
    pub value: f64,
    /// Largest kernel term magnitude at the point; the tolerance is relative to it.
    pub scale: f64,
    /// Set when the model is truncated and reports a zero: truncated kernels
    /// can vanish where the full kernel does not.
    pub truncation_warning: bool,
}

pub fn polar_check<R: Real>(model: &OrbitModel<R>, z: &[Complex<R>], w: &[Complex<R>]) -> Result<PolarCheck> {
    check_point(model, z)?;
    check_point(model, w)?;
    let kern = &model.orbit().kernel;
    let pt: Vec<Complex<R>> = z.iter().copied().chain(w.iter().map(|c| c.conj())).collect();
    let value = cabs(kern.poly.eval(&pt)?).to_f64();
    let scale = kern.poly.term_scale(&pt);
    let on_divisor = value < 1e-12 * scale;
    Ok(PolarCheck { on_divisor, value, scale, truncation_warning: on_divisor && model.rep().truncated() })
}
