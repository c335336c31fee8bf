use num_complex::Complex;
use rayon::prelude::*;

use super::quadrature::{pairwise_sum, quadrature_rule, QuadratureRule};
use crate::algebra::{AlgebraElement, OrbitModel};
use crate::error::{Error, Result};
use crate::orbit::CPoly;
use crate::realize::{realize_generator, symbol, SolverConfig};
use crate::scalar::{cabs, Real};

/// `∫ conj(f) g dν` by quadrature.
pub fn inner_product<R: Real>(rule: &QuadratureRule<R>, f: &CPoly<R>, g: &CPoly<R>) -> Complex<R> {
    let terms: Vec<Complex<R>> = rule
        .nodes
        .par_iter()
        .zip(&rule.weights)
        .map(|(z, w)| {
            let pt = [*z];
            f.eval_unchecked(&pt).conj() * g.eval_unchecked(&pt) * *w
        })
        .collect();
    pairwise_sum(&terms)
}

fn check_rule<R: Real>(model: &OrbitModel<R>, rule: &QuadratureRule<R>) -> Result<()> {
    if model.measure().is_none() {
        return Err(Error::UnsupportedCheck(format!("model `{}` carries no measure", model.name())));
    }
    if model.n() != 1 || rule.is_empty() {
        return Err(Error::UnsupportedCheck("quadrature rule does not match the model chart".into()));
    }
    Ok(())
}

/// `‖G − I‖_max` for the Gram matrix of basis symbols on the interior block.
///
/// By sesquilinearity this checks both the overcompleteness identity and
/// that the symbol map is an isometry.
pub fn parseval_residual<R: Real>(model: &OrbitModel<R>, rule: &QuadratureRule<R>) -> Result<f64> {
    check_rule(model, rule)?;
    let block = model.rep().block_dim();
    let covector = &model.orbit().covector;
    // values[i][k] = F_k(z_i)
    let values: Vec<Vec<Complex<R>>> = rule
        .nodes
        .par_iter()
        .map(|z| covector.entries[..block].iter().map(|p| p.eval_unchecked(&[*z])).collect())
        .collect();
    let mut worst = 0.0f64;
    let mut column = vec![Complex::new(R::zero(), R::zero()); rule.len()];
    for k in 0..block {
        for l in k..block {
            for (i, (v, w)) in values.iter().zip(&rule.weights).enumerate() {
                column[i] = v[k].conj() * v[l] * *w;
            }
            let g = pairwise_sum(&column);
            let target = if k == l { R::one() } else { R::zero() };
            worst = worst.max(cabs(g - Complex::new(target, R::zero())).to_f64());
        }
    }
    Ok(worst)
}

/// Parseval residuals on a sequence of rules, doubling both node counts
/// from `(start, start)` up to `(max, max)`.
pub fn parseval_sequence<R: Real>(model: &OrbitModel<R>, start: usize, max: usize) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    let mut nodes = start.max(1);
    while nodes <= max {
        let rule = quadrature_rule(model, nodes, nodes)?;
        out.push((nodes, parseval_residual(model, &rule)?));
        nodes *= 2;
    }
    Ok(out)
}

/// Every doubling step cuts the residual by 10×, or lands at or below `floor`.
pub fn converges(sequence: &[(usize, f64)], floor: f64) -> bool {
    sequence.windows(2).all(|w| {
        let (prev, next) = (w[0].1, w[1].1);
        next <= floor || next <= prev / 10.0
    })
}

/// `|F_ψ(w) − ∫ conj(K(z, w̄)) F_ψ(z) dν(z)|`.
pub fn reproducing_residual<R: Real>(
    model: &OrbitModel<R>,
    rule: &QuadratureRule<R>,
    psi: &[Complex<R>],
    w: &[Complex<R>],
) -> Result<f64> {
    check_rule(model, rule)?;
    if w.len() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: w.len() });
    }
    let f = symbol(model, psi)?;
    let value = f.eval(w)?;
    let kern = &model.orbit().kernel;
    let wbar = w[0].conj();
    let terms: Vec<Complex<R>> = rule
        .nodes
        .par_iter()
        .zip(&rule.weights)
        .map(|(z, wt)| {
            let k = kern.poly.eval_unchecked(&[*z, wbar]);
            k.conj() * f.eval_unchecked(&[*z]) * *wt
        })
        .collect();
    Ok(cabs(value - pairwise_sum(&terms)).to_f64())
}

/// `|(D_x F_f, F_g) − (F_f, D_{x†} F_g)|` with the solved operators and the
/// adjoint partner from the model's declared table.
pub fn adjoint_residual<R: Real>(
    model: &OrbitModel<R>,
    rule: &QuadratureRule<R>,
    x: &AlgebraElement<R>,
    f: &[Complex<R>],
    g: &[Complex<R>],
) -> Result<f64> {
    check_rule(model, rule)?;
    let xd = model.adjoint_element(x)?;
    let cfg = SolverConfig::for_precision::<R>();
    let dx = realize_generator(model, x, &cfg)?.op;
    let dxd = realize_generator(model, &xd, &cfg)?.op;
    let ff = symbol(model, f)?;
    let fg = symbol(model, g)?;
    let lhs = inner_product(rule, &dx.apply(&ff)?, &fg);
    let rhs = inner_product(rule, &ff, &dxd.apply(&fg)?);
    Ok(cabs(lhs - rhs).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spin_half_gram_is_identity() {
        let m = catalog::su2::<f64>(0.5).unwrap();
        let rule = quadrature_rule(&m, 32, 32).unwrap();
        assert!(rule.mass_defect() < 1e-10);
        assert!(parseval_residual(&m, &rule).unwrap() < 1e-12);
        let z = symbol(&m, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((inner_product(&rule, &z, &z) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gaussian_rule_mass() {
        let h = catalog::heisenberg::<f64>(10, 3).unwrap();
        let rule = quadrature_rule(&h, 64, 64).unwrap();
        assert!(rule.mass_defect() < 1e-12);
        assert!(parseval_residual(&h, &rule).unwrap() < 1e-10);
    }

    #[test]
    fn reproducing_at_points() {
        let m = catalog::su2::<f64>(1.0).unwrap();
        let rule = quadrature_rule(&m, 32, 32).unwrap();
        let psi = [c(0.3, 0.1), c(-0.2, 0.5), c(0.7, 0.0)];
        for w in [c(0.0, 0.0), c(0.7, 0.0), c(-0.4, 1.1)] {
            assert!(reproducing_residual(&m, &rule, &psi, &[w]).unwrap() < 1e-10);
        }
        assert_eq!(reproducing_residual(&m, &rule, &[c(0.0, 0.0); 3], &[c(0.7, 0.0)]).unwrap(), 0.0);
    }

    #[test]
    fn adjoint_with_zero_symbol_vanishes() {
        let m = catalog::su11::<f64>(1.5, 16, 3).unwrap();
        let rule = quadrature_rule(&m, 48, 48).unwrap();
        let zero = vec![c(0.0, 0.0); m.d()];
        let mut g = zero.clone();
        g[1] = c(1.0, 0.0);
        g[2] = c(0.0, -0.5);
        let x = AlgebraElement::basis(3, 1);
        assert_eq!(adjoint_residual(&m, &rule, &x, &zero, &g).unwrap(), 0.0);
        let mut f = zero.clone();
        f[0] = c(1.0, 0.0);
        f[1] = c(0.2, 0.3);
        assert!(adjoint_residual(&m, &rule, &x, &f, &g).unwrap() < 1e-9);
    }

    #[test]
    fn measure_free_and_multi_coordinate_models_are_unsupported() {
        let m = catalog::su3::<f64>(1, 1).unwrap();
        assert!(matches!(quadrature_rule(&m, 8, 8), Err(Error::UnsupportedCheck(_))));
        let s = catalog::su2::<f64>(1.0).unwrap();
        assert!(matches!(quadrature_rule(&s, 0, 8), Err(Error::InvalidParameter(_))));
        let rule = quadrature_rule(&s, 8, 8).unwrap();
        assert!(matches!(parseval_residual(&m, &rule), Err(Error::UnsupportedCheck(_))));
    }

    #[test]
    fn convergence_rule() {
        assert!(converges(&[(32, 1e-3), (64, 1e-5), (128, 1e-11)], 1e-10));
        assert!(converges(&[(32, 1e-12), (64, 1e-13)], 1e-10));
        assert!(!converges(&[(32, 1e-3), (64, 5e-4)], 1e-10));
        let m = catalog::su2::<f64>(1.0).unwrap();
        let seq = parseval_sequence(&m, 32, 128).unwrap();
        assert_eq!(seq.iter().map(|s| s.0).collect::<Vec<_>>(), vec![32, 64, 128]);
        assert!(converges(&seq, 1e-10));
    }
}
