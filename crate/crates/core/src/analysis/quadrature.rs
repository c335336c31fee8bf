use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use num_traits::Zero;

use super::measure::{ChartDomain, MeasureKind};
use crate::algebra::OrbitModel;
use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Tensor-product rule on a one-coordinate chart: Gauss-type nodes in
/// `t = |z|²` (or a compactified variable) times a uniform angular grid.
///
/// Weights already include the measure density, so `Σ wᵢ f(zᵢ) ≈ ∫ f dν`.
#[derive(Clone, Debug)]
pub struct QuadratureRule<R: Real> {
    pub nodes: Vec<Complex<R>>,
    pub weights: Vec<R>,
    pub radial: usize,
    pub angular: usize,
    /// `Σ wᵢ`, the rule's approximation of `∫ dν = 1`.
    pub normalization: f64,
}

impl<R: Real> QuadratureRule<R> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `|Σ wᵢ − 1|`.
    pub fn mass_defect(&self) -> f64 {
        (self.normalization - 1.0).abs()
    }
}

/// Gauss rule for a symmetric Jacobi matrix with the given diagonal and
/// off-diagonal, weights normalized to total mass 1.
///
/// Eigenvalues seed the nodes; each is then polished by Newton steps on the
/// orthonormal three-term recurrence and weighted by the Christoffel sum
/// `1/Σ pₖ(x)²`. Everything runs in `f64` and is cast at the end.
fn golub_welsch<R: Real>(diag: &[f64], off: &[f64]) -> Vec<(R, R)> {
    let n = diag.len();
    let t = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    });
    // (p_n(x), p_n'(x), Σ_{k<n} p_k(x)²) with p_n scaled by the last off-diagonal
    let eval = |x: f64| {
        let (mut p0, mut p1) = (0.0, 1.0);
        let (mut d0, mut d1) = (0.0, 0.0);
        let mut sum = 0.0;
        for k in 0..n {
            sum += p1 * p1;
            let prev = if k == 0 { 0.0 } else { off[k - 1] };
            let next = if k + 1 < n { off[k] } else { 1.0 };
            let p2 = ((x - diag[k]) * p1 - prev * p0) / next;
            let d2 = ((x - diag[k]) * d1 + p1 - prev * d0) / next;
            (p0, p1, d0, d1) = (p1, p2, d1, d2);
        }
        (p1, d1, sum)
    };
    let eig = SymmetricEigen::new(t);
    let mut out: Vec<(R, R)> = eig
        .eigenvalues
        .iter()
        .map(|&seed| {
            let mut x = seed;
            for _ in 0..8 {
                let (p, d, _) = eval(x);
                if d == 0.0 {
                    break;
                }
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, _, sum) = eval(x);
            (real(x), real(1.0 / sum))
        })
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    out
}

/// Gauss–Laguerre nodes and weights for `e^{−t}` on `[0, ∞)`.
pub fn gauss_laguerre<R: Real>(n: usize) -> Vec<(R, R)> {
    let diag: Vec<f64> = (0..n).map(|k| (2 * k + 1) as f64).collect();
    let off: Vec<f64> = (1..n).map(|k| k as f64).collect();
    golub_welsch(&diag, &off)
}

/// Gauss–Jacobi nodes on `[0, 1]` for the weight `(1−t)^a`, weights
/// normalized to total mass 1.
pub fn gauss_jacobi_unit<R: Real>(n: usize, a: f64) -> Vec<(R, R)> {
    let b = 0.0;
    let diag: Vec<f64> = (0..n)
        .map(|k| {
            let k = k as f64;
            let s = 2.0 * k + a + b;
            if k == 0.0 {
                (b - a) / (a + b + 2.0)
            } else {
                (b * b - a * a) / (s * (s + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            let s = 2.0 * k + a + b;
            let beta = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
            beta.sqrt()
        })
        .collect();
    golub_welsch::<R>(&diag, &off).into_iter().map(|(x, w)| ((x + R::one()) / real(2.0), w)).collect()
}

/// Gauss–Legendre on `[0, 1]`, weights summing to 1.
pub fn gauss_legendre_unit<R: Real>(n: usize) -> Vec<(R, R)> {
    gauss_jacobi_unit(n, 0.0)
}

/// Builds the tensor rule for the model's measure.
///
/// * Gaussian: Laguerre in `t = |z|²`.
/// * Fubini–Study: Legendre in `s = t/(1+t)` with the density
///   `(2j+1)(1−s)^{2j}` folded into the weights, so `Σ wᵢ` tests the rule.
/// * Bergman disk: Jacobi in `t` with weight `(1−t)^{2k−2}`.
pub fn quadrature_rule<R: Real>(model: &OrbitModel<R>, radial: usize, angular: usize) -> Result<QuadratureRule<R>> {
    let measure = model
        .measure()
        .filter(|m| m.kind != MeasureKind::None)
        .ok_or_else(|| Error::UnsupportedCheck(format!("model `{}` carries no measure", model.name())))?;
    if model.n() != 1 {
        return Err(Error::UnsupportedCheck(format!(
            "quadrature needs a one-coordinate chart, model has {}",
            model.n()
        )));
    }
    if radial == 0 || angular == 0 {
        return Err(Error::InvalidParameter(format!("empty quadrature rule {radial} x {angular}")));
    }
    // (t = |z|², radial weight)
    let radial_nodes: Vec<(R, R)> = match measure.kind {
        MeasureKind::Gaussian => gauss_laguerre(radial),
        MeasureKind::FubiniStudy { j } => gauss_legendre_unit::<R>(radial)
            .into_iter()
            .map(|(s, w)| {
                let one_minus = R::one() - s;
                (s / one_minus, w * real::<R>(2.0 * j + 1.0) * one_minus.powf(real(2.0 * j)))
            })
            .collect(),
        MeasureKind::BergmanDisk { k } => {
            if measure.domain != (ChartDomain::Disk { radius: 1.0 }) {
                return Err(Error::UnsupportedCheck("bergman measure is defined on the unit disk".into()));
            }
            gauss_jacobi_unit(radial, 2.0 * k - 2.0)
        }
        MeasureKind::None => unreachable!("filtered above"),
    };
    let two_pi: R = real(std::f64::consts::TAU);
    let inv_a: R = real(1.0 / angular as f64);
    let mut nodes = Vec::with_capacity(radial * angular);
    let mut weights = Vec::with_capacity(radial * angular);
    for &(t, w) in &radial_nodes {
        let r = t.sqrt();
        for m in 0..angular {
            let theta = two_pi * real::<R>(m as f64) * inv_a;
            nodes.push(Complex::new(r * theta.cos(), r * theta.sin()));
            weights.push(w * inv_a);
        }
    }
    let normalization = pairwise_sum_real(&weights).to_f64();
    Ok(QuadratureRule { nodes, weights, radial, angular, normalization })
}

pub(crate) fn pairwise_sum<R: Real>(xs: &[Complex<R>]) -> Complex<R> {
    if xs.len() <= 8 {
        xs.iter().fold(Complex::zero(), |a, b| a + *b)
    } else {
        let (l, r) = xs.split_at(xs.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}

fn pairwise_sum_real<R: Real>(xs: &[R]) -> R {
    if xs.len() <= 8 {
        xs.iter().fold(R::zero(), |a, b| a + *b)
    } else {
        let (l, r) = xs.split_at(xs.len() / 2);
        pairwise_sum_real(l) + pairwise_sum_real(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_integrates_moments() {
        // ∫ t^m e^{−t} dt = m!
        let rule = gauss_laguerre::<f64>(10);
        let mut fact = 1.0;
        for m in 0..15u32 {
            if m > 0 {
                fact *= m as f64;
            }
            let q: f64 = rule.iter().map(|(t, w)| w * t.powi(m as i32)).sum();
            assert!((q - fact).abs() < 1e-10 * fact, "m = {m}: {q} vs {fact}");
        }
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let rule = gauss_legendre_unit::<f64>(5);
        for m in 0..10 {
            let q: f64 = rule.iter().map(|(t, w)| w * t.powi(m)).sum();
            assert!((q - 1.0 / (m as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn jacobi_matches_beta_integrals() {
        // (a+1) ∫ t^m (1−t)^a dt = (a+1) B(m+1, a+1)
        let a = 1.0;
        let rule = gauss_jacobi_unit::<f64>(6, a);
        for m in 0..10 {
            let q: f64 = rule.iter().map(|(t, w)| w * t.powi(m)).sum();
            let mf = m as f64;
            let exact = 2.0 / ((mf + 1.0) * (mf + 2.0));
            assert!((q - exact).abs() < 1e-14, "m = {m}");
        }
    }
}
