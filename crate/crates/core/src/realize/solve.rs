use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, CMatrix, OrbitModel};
use crate::error::{Error, Result};
use crate::orbit::CPoly;
use crate::polyops::{DiffOp1, Exponent, MultiPoly};
use crate::scalar::{cabs, real, Real};

pub type COp<R> = DiffOp1<Complex<R>>;

/// Tolerance and degree cap of the realization solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub tol: f64,
    pub degree_cap: u32,
}

impl SolverConfig {
    pub const DEFAULT_DEGREE_CAP: u32 = 6;

    pub fn for_precision<R: Real>() -> Self {
        Self { tol: R::solver_tol(), degree_cap: Self::DEFAULT_DEGREE_CAP }
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::for_precision::<f64>()
    }
}

/// Solved operator for one algebra element, with solve diagnostics.
#[derive(Clone, Debug)]
pub struct Realization<R: Real> {
    pub label: String,
    pub op: COp<R>,
    /// Max coefficientwise defect of the defining linear system.
    pub residual: f64,
    /// Degree bound at which the solve succeeded.
    pub degree_bound: u32,
    /// Dimension of the solution space left undetermined by the symbols;
    /// the minimal-norm solution is reported.
    pub nullspace: usize,
}

/// Symbol `F_ψ(z) = ω(z)·ψ`.
pub fn symbol<R: Real>(model: &OrbitModel<R>, psi: &[Complex<R>]) -> Result<CPoly<R>> {
    model.orbit().covector.pair(psi)
}

/// Symbols of `dT(x)·b_k` for every basis vector `b_k`: the row `ω(z)·dT(x)`.
pub(crate) fn transformed_symbols<R: Real>(model: &OrbitModel<R>, m: &CMatrix<R>) -> Vec<CPoly<R>> {
    let omega = &model.orbit().covector.entries;
    (0..model.d())
        .map(|k| {
            omega.iter().enumerate().fold(CPoly::<R>::zero(model.n()), |acc, (r, w)| {
                let c = m[(r, k)];
                if c.is_zero() {
                    acc
                } else {
                    &acc + &w.scale(&c)
                }
            })
        })
        .collect()
}

/// All exponents in `n` variables of total degree ≤ `max`, lexicographic.
pub(crate) fn monomials_up_to(n: usize, max: u32) -> Vec<Exponent> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

fn within(e: &[u32], limit: Option<u32>) -> bool {
    limit.is_none_or(|l| e.iter().sum::<u32>() <= l)
}

struct Attempt<R: Real> {
    op: COp<R>,
    residual: f64,
    nullspace: usize,
}

fn solve_at_degree<R: Real>(model: &OrbitModel<R>, targets: &[CPoly<R>], degree: u32) -> Result<Attempt<R>> {
    let n = model.n();
    let limit = model.rep().max_degree();
    let omega = &model.orbit().covector.entries;
    let unknown_deg = limit.map_or(degree, |l| degree.min(l));
    let monos = monomials_up_to(n, unknown_deg);
    let nm = monos.len();

    // columns: P monomials first, then each Qⁱ block
    let derivs: Vec<Vec<CPoly<R>>> = omega.iter().map(|w| (0..n).map(|i| w.derivative(i)).collect()).collect();
    let mut columns: Vec<Vec<(usize, Complex<R>)>> = Vec::new();
    let mut rows: BTreeMap<(usize, Exponent), usize> = BTreeMap::new();
    let mut shifted: Vec<Vec<(usize, CPoly<R>)>> = Vec::with_capacity(nm * (n + 1));
    for block in 0..=n {
        for mono in &monos {
            let col: Vec<(usize, CPoly<R>)> = (0..omega.len())
                .map(|k| {
                    let base = if block == 0 { &omega[k] } else { &derivs[k][block - 1] };
                    (k, base.shift(mono))
                })
                .filter(|(_, p)| !p.is_zero())
                .collect();
            shifted.push(col);
        }
    }
    let key_of = |k: usize, e: &Exponent, rows: &mut BTreeMap<(usize, Exponent), usize>| {
        let next = rows.len();
        *rows.entry((k, e.clone())).or_insert(next)
    };
    for col in &shifted {
        let mut entries = Vec::new();
        for (k, p) in col {
            for (e, c) in p.terms() {
                if within(e, limit) {
                    let r = key_of(*k, e, &mut rows);
                    entries.push((r, *c));
                }
            }
        }
        columns.push(entries);
    }
    let mut rhs_entries = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        for (e, c) in t.terms() {
            if within(e, limit) {
                let r = key_of(k, e, &mut rows);
                rhs_entries.push((r, *c));
            }
        }
    }
    let nrows = rows.len();
    let ncols = columns.len();
    if nrows == 0 {
        return Ok(Attempt { op: DiffOp1::zero(n), residual: 0.0, nullspace: ncols });
    }
    let mut a = CMatrix::<R>::zeros(nrows, ncols);
    for (c, entries) in columns.iter().enumerate() {
        for &(r, v) in entries {
            a[(r, c)] += v;
        }
    }
    let mut b = DVector::<Complex<R>>::zeros(nrows);
    for (r, v) in rhs_entries {
        b[r] += v;
    }

    // unit column norms
    let scales: Vec<R> = (0..ncols)
        .map(|c| {
            let nrm = a.column(c).norm();
            if nrm > R::zero() {
                R::one() / nrm
            } else {
                R::one()
            }
        })
        .collect();
    let mut scaled = a.clone();
    for (c, s) in scales.iter().enumerate() {
        scaled.column_mut(c).scale_mut(*s);
    }
    let svd = scaled.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(R::zero(), |m, s| if s > m { s } else { m });
    let eps = smax * real::<R>(1e-11) + real::<R>(1e-300);
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    let mut x = svd.solve(&b, eps).map_err(|e| Error::Singular(e.to_string()))?;
    // iterative refinement against the scaled system
    for _ in 0..2 {
        let r = &b - &scaled * &x;
        x += svd.solve(&r, eps).map_err(|e| Error::Singular(e.to_string()))?;
    }
    for (c, s) in scales.iter().enumerate() {
        x[c] *= Complex::new(*s, R::zero());
    }
    let defect = &a * &x - &b;
    let residual = defect.iter().map(|c| cabs(*c).to_f64()).fold(0.0, f64::max);

    let poly_from = |block: usize| {
        MultiPoly::from_terms(n, monos.iter().enumerate().map(|(i, e)| (e.clone(), x[block * nm + i])))
            .expect("exponents built with n variables")
    };
    let p = poly_from(0);
    let q = (1..=n).map(poly_from).collect();
    Ok(Attempt { op: DiffOp1::new(p, q)?, residual, nullspace: ncols - rank })
}

/// Solves `D_x ω(z) = ω(z)·dT(x)` for `D_x = P + Σ Qⁱ∂ᵢ` over monomial
/// coefficients, escalating the degree bound from 1 to the cap.
pub fn realize_generator<R: Real>(
    model: &OrbitModel<R>,
    x: &AlgebraElement<R>,
    config: &SolverConfig,
) -> Result<Realization<R>> {
    let label = element_label(model, x);
    let m = model.derived_matrix(x)?;
    let targets = transformed_symbols(model, &m);
    let mut best = f64::INFINITY;
    for degree in 1..=config.degree_cap.max(1) {
        let attempt = solve_at_degree(model, &targets, degree)?;
        if attempt.residual <= config.tol {
            return Ok(Realization {
                label,
                op: attempt.op,
                residual: attempt.residual,
                degree_bound: degree,
                nullspace: attempt.nullspace,
            });
        }
        best = best.min(attempt.residual);
    }
    Err(Error::NonPolynomialRealization { label, cap: config.degree_cap, residual: best })
}

fn element_label<R: Real>(model: &OrbitModel<R>, x: &AlgebraElement<R>) -> String {
    let nz: Vec<usize> = x.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
    match nz.as_slice() {
        [] => "0".to_string(),
        [i] if x.coeffs()[*i] == Complex::new(R::one(), R::zero()) => model.spec().label(*i).to_string(),
        _ => {
            let mut p = MultiPoly::zero(x.len());
            for &i in &nz {
                p = &p + &MultiPoly::var(x.len(), i).scale(&x.coeffs()[i]);
            }
            p.render_with(model.spec().labels())
        }
    }
}

/// Realizations of every basis element of the complexified algebra.
#[derive(Clone, Debug)]
pub struct RealizationTable<R: Real> {
    pub n: usize,
    pub entries: BTreeMap<usize, Realization<R>>,
    /// Generators whose solve failed, with the reason.
    pub failures: BTreeMap<usize, String>,
}

impl<R: Real> RealizationTable<R> {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Realization<R>> {
        self.entries.get(&i)
    }

    pub fn op(&self, i: usize) -> Option<&COp<R>> {
        self.entries.get(&i).map(|r| &r.op)
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.values().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            let which: Vec<String> = self.failures.keys().map(|k| k.to_string()).collect();
            Err(Error::PartialTable(format!("missing generators {}", which.join(", "))))
        }
    }
}

/// Solves every basis generator in parallel; failures are recorded and the
/// remaining generators still solved.
pub fn realize_all<R: Real>(model: &OrbitModel<R>, config: &SolverConfig) -> RealizationTable<R> {
    let dim = model.spec().dim();
    let results: Vec<(usize, Result<Realization<R>>)> = (0..dim)
        .into_par_iter()
        .map(|i| (i, realize_generator(model, &AlgebraElement::basis(dim, i), config)))
        .collect();
    let mut entries = BTreeMap::new();
    let mut failures = BTreeMap::new();
    for (i, r) in results {
        match r {
            Ok(r) => {
                entries.insert(i, r);
            }
            Err(e) => {
                failures.insert(i, e.to_string());
            }
        }
    }
    RealizationTable { n: model.n(), entries, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration() {
        let m = monomials_up_to(2, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![0, 0]);
        assert_eq!(*m.last().unwrap(), vec![2, 0]);
        assert_eq!(monomials_up_to(0, 3), vec![Vec::<u32>::new()]);
        assert_eq!(monomials_up_to(3, 3).len(), 20);
    }
}
