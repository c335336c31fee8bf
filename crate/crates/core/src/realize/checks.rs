use num_complex::Complex;
use num_traits::Zero;

use super::solve::{realize_generator, transformed_symbols, COp, RealizationTable, SolverConfig};
use crate::algebra::{AlgebraElement, CMatrix, OrbitModel};
use crate::error::{Error, Result};
use crate::orbit::group_action;
use crate::scalar::{cabs, real, Real};

/// Max over basis pairs of `‖[Dᵢ, Dⱼ] − Σₖ c(i,j,k) Dₖ‖` (coefficientwise).
pub fn homomorphism_residual<R: Real>(model: &OrbitModel<R>, table: &RealizationTable<R>) -> Result<f64> {
    table.require_complete()?;
    check_table(model, table)?;
    let dim = model.spec().dim();
    let ops: Vec<&COp<R>> = (0..dim).map(|i| table.op(i).expect("complete table")).collect();
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in i + 1..dim {
            let mut defect = ops[i].commutator(ops[j])?;
            for (k, c) in model.spec().bracket(i, j).into_iter().enumerate() {
                if !c.is_zero() {
                    defect = defect.try_sub(&ops[k].scale(&c))?;
                }
            }
            worst = worst.max(defect.max_coeff());
        }
    }
    Ok(worst)
}

/// Coefficientwise defect of `D ω_k = (ω·dT(x))_k` over all basis vectors,
/// restricted to trusted monomial degrees on truncated models.
pub fn intertwining_residual<R: Real>(model: &OrbitModel<R>, x: &AlgebraElement<R>, op: &COp<R>) -> Result<f64> {
    let m = model.derived_matrix(x)?;
    let targets = transformed_symbols(model, &m);
    let limit = model.rep().max_degree();
    let mut worst = 0.0f64;
    for (w, t) in model.orbit().covector.entries.iter().zip(&targets) {
        let mut diff = op.apply(w)?.try_sub(t)?;
        if let Some(l) = limit {
            diff = diff.truncate_degree(l);
        }
        worst = worst.max(diff.max_coeff());
    }
    Ok(worst)
}

/// Finite-difference reconstruction of `(P, Qⁱ)` at `z0` from the group
/// action of `exp(±h·x)`.
///
/// With `ω(z)·exp(tX) = J(t)·ω(z(t))`, differentiating at `t = 0` gives
/// `P(z) = J′(0)` and `Qⁱ(z) = zᵢ′(0)`; both signs are `+` in this chart
/// convention (spin j: `J₋` has `P = 2jz`, `Q = −z²`).
pub fn flow_derivatives<R: Real>(
    model: &OrbitModel<R>,
    x: &AlgebraElement<R>,
    z0: &[Complex<R>],
    h: f64,
) -> Result<(Complex<R>, Vec<Complex<R>>)> {
    let hp = Complex::new(real::<R>(h), R::zero());
    let gp = model.group_element(x, hp)?;
    let gm = model.group_element(x, -hp)?;
    let (jp, zp) = group_action(model, &gp, z0)?;
    let (jm, zm) = group_action(model, &gm, z0)?;
    let two_h = Complex::new(real::<R>(2.0 * h), R::zero());
    let dp = (jp - jm) / two_h;
    let dq = zp.iter().zip(&zm).map(|(a, b)| (*a - *b) / two_h).collect();
    Ok((dp, dq))
}

/// `flow_crosscheck` against an already solved operator.
pub fn flow_crosscheck_op<R: Real>(
    model: &OrbitModel<R>,
    x: &AlgebraElement<R>,
    op: &COp<R>,
    z0: &[Complex<R>],
    h: f64,
) -> Result<f64> {
    let (dp, dq) = flow_derivatives(model, x, z0, h)?;
    let mut worst = cabs(dp - op.p().eval(z0)?).to_f64();
    for (qi, d) in op.q().iter().zip(&dq) {
        worst = worst.max(cabs(*d - qi.eval(z0)?).to_f64());
    }
    Ok(worst)
}

/// Max deviation between the solved `(P, Qⁱ)` at `z0` and central finite
/// differences of the multiplier and coordinate flow.
pub fn flow_crosscheck<R: Real>(
    model: &OrbitModel<R>,
    x: &AlgebraElement<R>,
    z0: &[Complex<R>],
    h: f64,
) -> Result<f64> {
    let solved = realize_generator(model, x, &SolverConfig::for_precision::<R>())?;
    flow_crosscheck_op(model, x, &solved.op, z0, h)
}

/// `|J(g₁g₂, z) − J(g₁, z)·J(g₂, g₁·z)|` for the right action
/// `ω(z)·g = J(g,z)·ω(g·z)`.
pub fn cocycle_residual<R: Real>(
    model: &OrbitModel<R>,
    g1: &CMatrix<R>,
    g2: &CMatrix<R>,
    z: &[Complex<R>],
) -> Result<f64> {
    let g12 = g1 * g2;
    let (j12, _) = group_action(model, &g12, z)?;
    let (j1, z1) = group_action(model, g1, z)?;
    let (j2, _) = group_action(model, g2, &z1)?;
    Ok(cabs(j12 - j1 * j2).to_f64())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDegree {
    pub label: String,
    pub deg_p: Option<u32>,
    pub deg_q: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub generators: Vec<GeneratorDegree>,
    pub max_p: u32,
    pub max_q: u32,
}

impl DegreeReport {
    /// Largest degree among all `P` and `Qⁱ`.
    pub fn global(&self) -> u32 {
        self.max_p.max(self.max_q)
    }
}

pub fn degree_report<R: Real>(table: &RealizationTable<R>) -> Result<DegreeReport> {
    table.require_complete()?;
    let generators: Vec<GeneratorDegree> = table
        .entries
        .values()
        .map(|r| GeneratorDegree { label: r.label.clone(), deg_p: r.op.degree_p(), deg_q: r.op.degree_q() })
        .collect();
    let max_p = generators.iter().filter_map(|g| g.deg_p).max().unwrap_or(0);
    let max_q = generators.iter().filter_map(|g| g.deg_q).max().unwrap_or(0);
    Ok(DegreeReport { generators, max_p, max_q })
}

/// Rejects tables that do not belong to the model.
pub(crate) fn check_table<R: Real>(model: &OrbitModel<R>, table: &RealizationTable<R>) -> Result<()> {
    if table.n != model.n() {
        return Err(Error::DimensionMismatch { expected: model.n(), found: table.n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::algebra::{catalog, LieAlgebraSpec, MatrixRep, ModelParts};
    use crate::realize::{realize_all, symbol};
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn abelian() -> OrbitModel<f64> {
        OrbitModel::new(ModelParts {
            name: "abelian".into(),
            params: BTreeMap::new(),
            spec: LieAlgebraSpec::new(vec!["X".into()], vec![]).unwrap(),
            rep: MatrixRep::new(vec![CMatrix::zeros(1, 1)], false, 0).unwrap(),
            e0_index: 0,
            mprime: vec![],
            grading: vec![],
            measure: None,
            adjoint: None,
            degree_bound: None,
        })
        .unwrap()
    }

    #[test]
    fn symbols_of_basis_vectors() {
        let m = catalog::su2::<f64>(1.0).unwrap();
        assert_eq!(symbol(&m, &[c(1.0), c(0.0), c(0.0)]).unwrap().render(), "1");
        let half = catalog::su2::<f64>(0.5).unwrap();
        assert_eq!(symbol(&half, &[c(0.0), c(1.0)]).unwrap().render(), "z1");
        let h = catalog::heisenberg::<f64>(10, 3).unwrap();
        let mut psi = vec![c(0.0); h.d()];
        psi[4] = c(1.0);
        assert!((symbol(&h, &psi).unwrap().coeff(&[4]) - c(1.0 / 24f64.sqrt())).norm() < 1e-15);
        assert!(symbol(&m, &[c(1.0)]).is_err());
    }

    #[test]
    fn zero_element_realizes_to_zero() {
        let m = catalog::su2::<f64>(1.5).unwrap();
        let r = realize_generator(&m, &AlgebraElement::zero(3), &SolverConfig::default()).unwrap();
        assert!(r.op.is_zero());
        assert_eq!(r.label, "0");
    }

    #[test]
    fn abelian_trivial_model() {
        let m = abelian();
        assert_eq!(m.n(), 0);
        let table = realize_all(&m, &SolverConfig::default());
        assert!(table.is_complete());
        assert!(table.op(0).unwrap().is_zero());
        assert_eq!(homomorphism_residual(&m, &table).unwrap(), 0.0);
    }

    #[test]
    fn spin_one_homomorphism() {
        let m = catalog::su2::<f64>(1.0).unwrap();
        let table = realize_all(&m, &SolverConfig::default());
        assert!(table.max_residual() < 1e-10);
        assert!(homomorphism_residual(&m, &table).unwrap() < 1e-12);
        let report = degree_report(&table).unwrap();
        assert_eq!((report.max_p, report.max_q, report.global()), (1, 2, 2));
        assert_eq!(report.generators[2].label, "J-");
    }

    #[test]
    fn degree_cap_failure_is_reported_and_isolated() {
        let m = catalog::su2::<f64>(1.0).unwrap();
        let cfg = SolverConfig { degree_cap: 1, ..SolverConfig::default() };
        let err = realize_generator(&m, &AlgebraElement::basis(3, 2), &cfg).unwrap_err();
        assert!(matches!(err, Error::NonPolynomialRealization { cap: 1, .. }));
        let table = realize_all(&m, &cfg);
        assert!(!table.is_complete());
        assert_eq!(table.entries.len(), 2);
        assert!(table.failures.contains_key(&2));
        assert!(matches!(homomorphism_residual(&m, &table), Err(Error::PartialTable(_))));
        assert!(matches!(degree_report(&table), Err(Error::PartialTable(_))));
    }

    #[test]
    fn flow_matches_golden_values() {
        let m = catalog::su2::<f64>(1.0).unwrap();
        let z = [c(0.3)];
        let (dp, dq) = flow_derivatives(&m, &AlgebraElement::basis(3, 2), &z, 1e-4).unwrap();
        assert!((dp - c(0.6)).norm() < 1e-6);
        assert!((dq[0] - c(-0.09)).norm() < 1e-6);
        assert!(flow_crosscheck(&m, &AlgebraElement::basis(3, 2), &z, 1e-4).unwrap() < 1e-6);
        assert_eq!(flow_crosscheck(&m, &AlgebraElement::zero(3), &z, 1e-4).unwrap(), 0.0);

        let h = catalog::heisenberg::<f64>(10, 3).unwrap();
        let z = [Complex64::new(0.2, -0.1)];
        let (dp, dq) = flow_derivatives(&h, &AlgebraElement::basis(3, 1), &z, 1e-4).unwrap();
        assert!((dp - z[0]).norm() < 1e-6);
        assert!(dq[0].norm() < 1e-6);
    }

    #[test]
    fn cocycle_with_identity_is_exact() {
        let m = catalog::su2::<f64>(1.0).unwrap();
        let x = AlgebraElement::new(vec![c(0.1), Complex64::new(0.0, 0.2), c(-0.3)]);
        let g = m.group_element(&x, c(1.0)).unwrap();
        let z = [Complex64::new(0.2, 0.1)];
        assert_eq!(cocycle_residual(&m, &g, &CMatrix::identity(3, 3), &z).unwrap(), 0.0);
        let g2 = m.group_element(&AlgebraElement::basis(3, 0), c(0.4)).unwrap();
        assert!(cocycle_residual(&m, &g, &g2, &z).unwrap() < 1e-12);
    }

    #[test]
    fn intertwining_holds_on_the_interior_block() {
        let m = catalog::su11::<f64>(1.0, 16, 3).unwrap();
        let table = realize_all(&m, &SolverConfig::default());
        for (&i, r) in &table.entries {
            assert!(intertwining_residual(&m, &AlgebraElement::basis(3, i), &r.op).unwrap() < 1e-9);
        }
    }
}
