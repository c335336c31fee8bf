//! Built-in models.
//!
//! | name         | parameters                | chart                          |
//! |--------------|---------------------------|--------------------------------|
//! | `heisenberg` | `trunc`, `margin`         | Fock space, `m′ = {a†}`        |
//! | `su2`        | `j` (positive half-int)   | spin-j, `m′ = {J₋}`            |
//! | `su11`       | `k > 1/2`, `trunc`, `margin` | discrete series, `m′ = {K₊}` |
//! | `su3`        | `p, q ≥ 1`                | full flag, `m′ = {E21,E32,E31}`|

use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex;

use super::model::{DegreeBound, ModelParts, OrbitModel};
use super::rep::MatrixRep;
use super::spec::{AlgebraElement, CMatrix, LieAlgebraSpec, StructureEntry};
use crate::analysis::MeasureSpec;
use crate::error::{Error, Result};
use crate::orbit::CPoly;
use crate::scalar::{cplx, real, Real};

pub const DEFAULT_TRUNC: usize = 10;
pub const DEFAULT_SU11_TRUNC: usize = 16;
pub const DEFAULT_MARGIN: usize = 3;

/// Parameters accepted by [`catalog_model`]; unset values take defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CatalogParams {
    pub j: Option<f64>,
    pub k: Option<f64>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub trunc: Option<usize>,
    pub margin: Option<usize>,
}

/// Listing entry for the `catalog` command.
#[derive(Clone, Debug)]
pub struct CatalogInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

pub fn catalog_entries() -> Vec<CatalogInfo> {
    vec![
        CatalogInfo {
            name: "heisenberg",
            params: "--trunc N (default 10), --margin M (default 3)",
            description: "Heisenberg algebra {a, a+, c} on truncated Fock space; Gaussian measure",
        },
        CatalogInfo {
            name: "su2",
            params: "--j J (positive half-integer, default 1/2)",
            description: "spin-j representation of su(2) {J+, J0, J-}; Fubini-Study measure",
        },
        CatalogInfo {
            name: "su11",
            params: "--k K (> 1/2, default 1), --trunc N (default 16), --margin M (default 3)",
            description: "discrete series of su(1,1) {K+, K0, K-} on the unit disk; Bergman measure",
        },
        CatalogInfo {
            name: "su3",
            params: "--p P, --q Q (both >= 1, default 1)",
            description: "irreducible (p,q) representation of sl(3) on the full flag chart; no measure",
        },
    ]
}

pub fn catalog_model<R: Real>(name: &str, params: &CatalogParams) -> Result<OrbitModel<R>> {
    match name {
        "heisenberg" => heisenberg(params.trunc.unwrap_or(DEFAULT_TRUNC), params.margin.unwrap_or(DEFAULT_MARGIN)),
        "su2" => su2(params.j.unwrap_or(0.5)),
        "su11" => su11(
            params.k.unwrap_or(1.0),
            params.trunc.unwrap_or(DEFAULT_SU11_TRUNC),
            params.margin.unwrap_or(DEFAULT_MARGIN),
        ),
        "su3" => su3(params.p.unwrap_or(1), params.q.unwrap_or(1)),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn entry<R: Real>(i: usize, j: usize, k: usize, c: f64) -> StructureEntry<R> {
    StructureEntry::new(i, j, k, cplx(c, 0.0))
}

/// Annihilation and creation matrices on `span{|0⟩..|d−1⟩}`.
pub fn ladder_matrices<R: Real>(d: usize) -> (CMatrix<R>, CMatrix<R>) {
    let mut a = CMatrix::<R>::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = cplx((n as f64).sqrt(), 0.0);
    }
    let ad = a.transpose();
    (a, ad)
}

/// Heisenberg algebra `[a, a†] = c` on Fock space truncated at `trunc` quanta.
pub fn heisenberg<R: Real>(trunc: usize, margin: usize) -> Result<OrbitModel<R>> {
    if margin == 0 || trunc < margin + 1 {
        return Err(Error::InvalidParameter(format!(
            "heisenberg needs margin >= 1 and trunc >= margin + 1 (got trunc {trunc}, margin {margin})"
        )));
    }
    let d = trunc + 1;
    let (a, ad) = ladder_matrices::<R>(d);
    let spec = LieAlgebraSpec::new(labels(&["a", "a+", "c"]), vec![entry(0, 1, 2, 1.0)])?;
    let rep = MatrixRep::new(vec![a, ad, CMatrix::identity(d, d)], true, margin)?;
    OrbitModel::new(ModelParts {
        name: "heisenberg".into(),
        params: BTreeMap::from([("trunc".into(), trunc as f64), ("margin".into(), margin as f64)]),
        spec,
        rep,
        e0_index: 0,
        mprime: vec![AlgebraElement::basis(3, 1)],
        grading: vec![1],
        measure: Some(MeasureSpec::gaussian()),
        adjoint: Some(vec![1, 0, 2]),
        degree_bound: Some(DegreeBound::AtMost(1)),
    })
}

/// `2j` as an integer when `j` is a nonnegative half-integer.
pub fn twice_half_integer(j: f64) -> Option<u32> {
    let tj = 2.0 * j;
    (j >= 0.0 && (tj - tj.round()).abs() < 1e-12).then_some(tj.round() as u32)
}

/// Spin matrices `(J₊, J₀, J₋)` in the basis `|j,m⟩`, `m = j, j−1, …, −j`.
pub fn spin_matrices<R: Real>(j: f64) -> Result<(CMatrix<R>, CMatrix<R>, CMatrix<R>)> {
    let tj = twice_half_integer(j)
        .ok_or_else(|| Error::InvalidParameter(format!("j = {j} is not a nonnegative half-integer")))?;
    let d = tj as usize + 1;
    let mut jp = CMatrix::<R>::zeros(d, d);
    let mut j0 = CMatrix::<R>::zeros(d, d);
    for r in 0..d {
        let m = j - r as f64;
        j0[(r, r)] = cplx(m, 0.0);
        if r + 1 < d {
            // J+|j, m-1> = sqrt((j + m)(j - m + 1)) |j, m>
            let mm = m - 1.0;
            jp[(r, r + 1)] = cplx(((j - mm) * (j + mm + 1.0)).sqrt(), 0.0);
        }
    }
    let jm = jp.transpose();
    Ok((jp, j0, jm))
}

pub fn su2<R: Real>(j: f64) -> Result<OrbitModel<R>> {
    if twice_half_integer(j).is_none_or(|t| t == 0) {
        return Err(Error::InvalidParameter(format!("su2 needs a positive half-integer j, got {j}")));
    }
    let (jp, j0, jm) = spin_matrices::<R>(j)?;
    let spec = LieAlgebraSpec::new(
        labels(&["J+", "J0", "J-"]),
        vec![entry(0, 1, 0, -1.0), entry(0, 2, 1, 2.0), entry(1, 2, 2, -1.0)],
    )?;
    let rep = MatrixRep::new(vec![jp, j0, jm], false, 0)?;
    OrbitModel::new(ModelParts {
        name: "su2".into(),
        params: BTreeMap::from([("j".into(), j)]),
        spec,
        rep,
        e0_index: 0,
        mprime: vec![AlgebraElement::basis(3, 2)],
        grading: vec![1],
        measure: Some(MeasureSpec::fubini_study(j)),
        adjoint: Some(vec![2, 1, 0]),
        degree_bound: Some(DegreeBound::AtMost(2)),
    })
}

/// Discrete series `|k, n⟩`: `K₀ = k + n`, `K₊|n⟩ = √((n+1)(n+2k))|n+1⟩`.
pub fn su11_matrices<R: Real>(k: f64, d: usize) -> (CMatrix<R>, CMatrix<R>, CMatrix<R>) {
    let mut kp = CMatrix::<R>::zeros(d, d);
    let mut k0 = CMatrix::<R>::zeros(d, d);
    for n in 0..d {
        let nf = n as f64;
        k0[(n, n)] = cplx(k + nf, 0.0);
        if n + 1 < d {
            kp[(n + 1, n)] = cplx(((nf + 1.0) * (nf + 2.0 * k)).sqrt(), 0.0);
        }
    }
    let km = kp.transpose();
    (kp, k0, km)
}

pub fn su11<R: Real>(k: f64, trunc: usize, margin: usize) -> Result<OrbitModel<R>> {
    if k.is_nan() || k <= 0.5 {
        return Err(Error::InvalidParameter(format!("su11 needs k > 1/2 for a square-integrable chart, got {k}")));
    }
    if margin == 0 || trunc < margin + 1 {
        return Err(Error::InvalidParameter(format!(
            "su11 needs margin >= 1 and trunc >= margin + 1 (got trunc {trunc}, margin {margin})"
        )));
    }
    let d = trunc + 1;
    let (kp, k0, km) = su11_matrices::<R>(k, d);
    let spec = LieAlgebraSpec::new(
        labels(&["K+", "K0", "K-"]),
        vec![entry(0, 1, 0, -1.0), entry(0, 2, 1, -2.0), entry(1, 2, 2, -1.0)],
    )?;
    let rep = MatrixRep::new(vec![kp, k0, km], true, margin)?;
    OrbitModel::new(ModelParts {
        name: "su11".into(),
        params: BTreeMap::from([("k".into(), k), ("trunc".into(), trunc as f64), ("margin".into(), margin as f64)]),
        spec,
        rep,
        e0_index: 0,
        mprime: vec![AlgebraElement::basis(3, 0)],
        grading: vec![1],
        measure: Some(MeasureSpec::bergman_disk(k)),
        adjoint: Some(vec![2, 1, 0]),
        degree_bound: Some(DegreeBound::AtMost(2)),
    })
}

/// Cartan–Weyl basis of sl(3): raising, Cartan, lowering.
pub const SU3_LABELS: [&str; 8] = ["E12", "E23", "E13", "H1", "H2", "E21", "E32", "E31"];

/// Defining 3×3 matrix of each `SU3_LABELS` entry.
fn su3_defining(idx: usize) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    match idx {
        0 => m[0][1] = 1.0,
        1 => m[1][2] = 1.0,
        2 => m[0][2] = 1.0,
        3 => {
            m[0][0] = 1.0;
            m[1][1] = -1.0;
        }
        4 => {
            m[1][1] = 1.0;
            m[2][2] = -1.0;
        }
        5 => m[1][0] = 1.0,
        6 => m[2][1] = 1.0,
        7 => m[2][0] = 1.0,
        _ => unreachable!(),
    }
    m
}

/// Expands a traceless 3×3 matrix in the Cartan–Weyl basis.
fn su3_expand(m: &[[f64; 3]; 3]) -> [f64; 8] {
    [m[0][1], m[1][2], m[0][2], m[0][0], -m[2][2], m[1][0], m[2][1], m[2][0]]
}

fn su3_structure<R: Real>() -> Vec<StructureEntry<R>> {
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            let (a, b) = (su3_defining(i), su3_defining(j));
            let mut c = [[0.0; 3]; 3];
            for (r, row) in c.iter_mut().enumerate() {
                for (s, x) in row.iter_mut().enumerate() {
                    *x = (0..3).map(|t| a[r][t] * b[t][s] - b[r][t] * a[t][s]).sum();
                }
            }
            for (k, v) in su3_expand(&c).into_iter().enumerate() {
                if v != 0.0 {
                    out.push(entry(i, j, k, v));
                }
            }
        }
    }
    out
}

/// Occupation-number basis of `Sym^p(C³)`.
fn boson_states(p: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for n1 in (0..=p).rev() {
        for n2 in (0..=p - n1).rev() {
            out.push([n1, n2, p - n1 - n2]);
        }
    }
    out
}

/// `a_i† a_j` on `Sym^p(C³)` in the orthonormal occupation basis.
fn hop<R: Real>(states: &[[u32; 3]], i: usize, j: usize) -> CMatrix<R> {
    let d = states.len();
    let mut m = CMatrix::<R>::zeros(d, d);
    for (col, s) in states.iter().enumerate() {
        if s[j] == 0 {
            continue;
        }
        let mut t = *s;
        let amp = if i == j {
            s[i] as f64
        } else {
            let a = (s[j] as f64).sqrt();
            t[j] -= 1;
            let b = ((t[i] + 1) as f64).sqrt();
            t[i] += 1;
            a * b
        };
        let row = states.iter().position(|x| *x == t).expect("hop stays in the symmetric power");
        m[(row, col)] += cplx(amp, 0.0);
    }
    m
}

fn kron<R: Real>(a: &CMatrix<R>, b: &CMatrix<R>) -> CMatrix<R> {
    a.kronecker(b)
}

/// `dT(E_ij)` on `Sym^p(C³) ⊗ Sym^q(C³)*`.
fn su3_tensor_generator<R: Real>(s1: &[[u32; 3]], s2: &[[u32; 3]], i: usize, j: usize) -> CMatrix<R> {
    let id1 = CMatrix::<R>::identity(s1.len(), s1.len());
    let id2 = CMatrix::<R>::identity(s2.len(), s2.len());
    // the dual representation sends E_ij to −E_ji
    kron(&hop::<R>(s1, i, j), &id2) - kron(&id1, &hop::<R>(s2, j, i))
}

/// Irreducible sl(3) representation of highest weight `(p, q)` with its
/// orthonormal weight basis, highest weight vector first.
///
/// Built as the cyclic submodule of `Sym^p(C³) ⊗ Sym^q(C³)*` generated from
/// `e₁^p ⊗ (e₃*)^q`; lowering images are orthonormalized in breadth-first
/// order, which keeps every basis vector a weight vector.
pub fn su3_matrices<R: Real>(p: u32, q: u32) -> Vec<CMatrix<R>> {
    let s1 = boson_states(p);
    let s2 = boson_states(q);
    let gl = |i, j| su3_tensor_generator::<R>(&s1, &s2, i, j);
    let e = |i: usize, j: usize| gl(i, j);
    let diag = |a: usize, b: usize| gl(a, a) - gl(b, b);
    let full: Vec<CMatrix<R>> = vec![e(0, 1), e(1, 2), e(0, 2), diag(0, 1), diag(1, 2), e(1, 0), e(2, 1), e(2, 0)];
    let big = s1.len() * s2.len();
    let hw_row = s1.iter().position(|s| *s == [p, 0, 0]).unwrap();
    let hw_col = s2.iter().position(|s| *s == [0, 0, q]).unwrap();
    let mut v0 = DVector::<Complex<R>>::zeros(big);
    v0[hw_row * s2.len() + hw_col] = cplx(1.0, 0.0);

    let lowering = [&full[5], &full[6], &full[7]];
    let mut basis: Vec<DVector<Complex<R>>> = vec![v0];
    let mut head = 0;
    let tol: R = real(1e-9);
    while head < basis.len() {
        let v = basis[head].clone();
        head += 1;
        for m in lowering {
            let mut w = m * &v;
            for b in &basis {
                let c = b.dotc(&w);
                w -= b * c;
            }
            // second pass for numerical orthogonality
            for b in &basis {
                let c = b.dotc(&w);
                w -= b * c;
            }
            let nrm = w.norm();
            if nrm > tol {
                basis.push(w / Complex::new(nrm, R::zero()));
            }
        }
    }
    let dim = basis.len();
    let u = CMatrix::<R>::from_columns(&basis);
    let ud = u.adjoint();
    full.iter()
        .map(|x| {
            let mut m = &ud * x * &u;
            for c in m.iter_mut() {
                if c.re.abs() < real(1e-13) {
                    c.re = R::zero();
                }
                if c.im.abs() < real(1e-13) {
                    c.im = R::zero();
                }
            }
            debug_assert_eq!(m.nrows(), dim);
            m
        })
        .collect()
}

/// Change of chart from the exponential coordinates of the `su3` model to the
/// entries `(L₂₁, L₃₂, L₃₁)` of the lower unitriangular Gauss factor:
/// `w = (z₁, z₂, z₃ + z₁z₂/2)`. Returns `(forward, inverse)`.
pub fn su3_triangular_chart<R: Real>() -> (Vec<CPoly<R>>, Vec<CPoly<R>>) {
    let z = |i| CPoly::<R>::var(3, i);
    let half = CPoly::<R>::constant(3, cplx(0.5, 0.0));
    let cross = &(&z(0) * &z(1)) * &half;
    (vec![z(0), z(1), &z(2) + &cross], vec![z(0), z(1), &z(2) - &cross])
}

pub fn su3<R: Real>(p: u32, q: u32) -> Result<OrbitModel<R>> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter(format!("su3 full flag chart needs p >= 1 and q >= 1, got ({p}, {q})")));
    }
    let spec = LieAlgebraSpec::new(labels(&SU3_LABELS), su3_structure())?;
    let rep = MatrixRep::new(su3_matrices::<R>(p, q), false, 0)?;
    OrbitModel::new(ModelParts {
        name: "su3".into(),
        params: BTreeMap::from([("p".into(), p as f64), ("q".into(), q as f64)]),
        spec,
        rep,
        e0_index: 0,
        mprime: vec![AlgebraElement::basis(8, 5), AlgebraElement::basis(8, 6), AlgebraElement::basis(8, 7)],
        grading: vec![1, 1, 2],
        measure: None,
        adjoint: Some(vec![5, 6, 7, 3, 4, 0, 1, 2]),
        degree_bound: Some(DegreeBound::Exactly(3)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::model::validate_representation;
    use crate::algebra::spec::validate_structure;

    #[test]
    fn su2_spin_one_dimensions() {
        let m = su2::<f64>(1.0).unwrap();
        assert_eq!(m.d(), 3);
        assert_eq!(m.n(), 1);
        assert_eq!(m.mprime()[0], AlgebraElement::basis(3, 2));
    }

    #[test]
    fn heisenberg_dimensions() {
        let m = heisenberg::<f64>(8, 3).unwrap();
        assert_eq!(m.d(), 9);
        assert_eq!(m.e0_index(), 0);
        assert!(m.rep().truncated());
    }

    #[test]
    fn su3_dimensions() {
        assert_eq!(su3::<f64>(1, 1).unwrap().d(), 8);
        assert_eq!(su3::<f64>(2, 1).unwrap().d(), 15);
        let m = su3::<f64>(1, 1).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.grading(), &[1, 1, 2]);
    }

    #[test]
    fn every_catalog_model_validates() {
        let models: Vec<OrbitModel<f64>> = vec![
            heisenberg(8, 3).unwrap(),
            su2(0.5).unwrap(),
            su2(2.0).unwrap(),
            su11(1.5, 12, 3).unwrap(),
            su3(1, 1).unwrap(),
            su3(2, 1).unwrap(),
        ];
        for m in &models {
            assert!(validate_structure(m.spec(), 1e-10).passed, "{}", m.name());
            let r = validate_representation(m, 1e-10).unwrap();
            assert!(r.passed, "{} {:?}", m.name(), r);
        }
        let half = validate_representation(&models[1], 1e-14).unwrap();
        assert!(half.metric("global").unwrap() < 1e-14);
    }

    #[test]
    fn rep_matrices_are_unitary_pairs() {
        for m in [su3::<f64>(2, 1).unwrap(), su2(1.5).unwrap()] {
            let adj = m.adjoint().unwrap();
            for (i, &j) in adj.iter().enumerate() {
                let diff = m.rep().matrices()[i].adjoint() - &m.rep().matrices()[j];
                assert!(diff.iter().all(|c| c.norm() < 1e-12), "{} {i}", m.name());
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(su2::<f64>(0.3), Err(Error::InvalidParameter(_))));
        assert!(matches!(su2::<f64>(0.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(su11::<f64>(0.5, 10, 3), Err(Error::InvalidParameter(_))));
        assert!(matches!(su3::<f64>(1, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(catalog_model::<f64>("so5", &CatalogParams::default()), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn tangent_images_have_full_gram_rank() {
        for m in [su3::<f64>(1, 1).unwrap(), su3(2, 1).unwrap(), su2(1.0).unwrap()] {
            let e0 = m.e0_index();
            let cols: Vec<_> = m.lowering().iter().map(|a| a.column(e0).into_owned()).collect();
            let n = cols.len();
            let g = CMatrix::<f64>::from_fn(n, n, |a, b| cols[a].dotc(&cols[b]));
            assert_eq!(g.svd(false, false).rank(1e-10), n);
            for c in &cols {
                assert!(c[e0].norm() < 1e-14);
            }
        }
    }
}
