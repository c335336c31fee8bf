use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{cabs, Real};

pub type CMatrix<R> = DMatrix<Complex<R>>;

/// One structure constant: `[X_i, X_j] = … + c·X_k + …`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureEntry<R: Real> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Complex<R>,
}

impl<R: Real> StructureEntry<R> {
    pub fn new(i: usize, j: usize, k: usize, c: Complex<R>) -> Self {
        Self { i, j, k, c }
    }
}

/// Lie algebra given by a basis and complex structure constants.
///
/// The entries are kept as supplied so that [`validate_structure`] can audit
/// them; brackets are served from a canonical table holding only `i < j`.
/// When a pair is supplied in the `i > j` orientation only, it is negated
/// into the canonical slot.
/// Sparse bracket `[X_i, X_j] = Σ c_k X_k` as `(k, c_k)` pairs.
type Bracket<R> = Vec<(usize, Complex<R>)>;

#[derive(Clone, Debug)]
pub struct LieAlgebraSpec<R: Real> {
    labels: Vec<String>,
    entries: Vec<StructureEntry<R>>,
    canonical: BTreeMap<(usize, usize), Bracket<R>>,
}

impl<R: Real> LieAlgebraSpec<R> {
    pub fn new(labels: Vec<String>, entries: Vec<StructureEntry<R>>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Structural("Lie algebra must have dimension at least 1".into()));
        }
        if let Some(e) = entries.iter().find(|e| e.i >= dim || e.j >= dim || e.k >= dim) {
            return Err(Error::Structural(format!(
                "structure constant ({}, {}, {}) out of range for dimension {dim}",
                e.i, e.j, e.k
            )));
        }
        let forward: std::collections::BTreeSet<(usize, usize)> =
            entries.iter().filter(|e| e.i < e.j).map(|e| (e.i, e.j)).collect();
        let mut dense: BTreeMap<(usize, usize), Vec<Complex<R>>> = BTreeMap::new();
        for e in &entries {
            let (key, c) = match e.i.cmp(&e.j) {
                std::cmp::Ordering::Less => ((e.i, e.j), e.c),
                std::cmp::Ordering::Greater if !forward.contains(&(e.j, e.i)) => ((e.j, e.i), -e.c),
                _ => continue,
            };
            dense.entry(key).or_insert_with(|| vec![Complex::zero(); dim])[e.k] += c;
        }
        let canonical = dense
            .into_iter()
            .map(|(key, v)| {
                let sparse: Vec<_> = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                (key, sparse)
            })
            .filter(|(_, v)| !v.is_empty())
            .collect();
        Ok(Self { labels, entries, canonical })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// The entries exactly as supplied.
    pub fn entries(&self) -> &[StructureEntry<R>] {
        &self.entries
    }

    /// Canonical `(i, j, k, c)` with `i < j`, in lexicographic order.
    pub fn canonical_entries(&self) -> impl Iterator<Item = StructureEntry<R>> + '_ {
        self.canonical.iter().flat_map(|(&(i, j), v)| v.iter().map(move |&(k, c)| StructureEntry::new(i, j, k, c)))
    }

    /// Dense coefficient vector of `[X_i, X_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Complex<R>> {
        let mut out = vec![Complex::zero(); self.dim()];
        let (key, sign) = if i < j { ((i, j), R::one()) } else { ((j, i), -R::one()) };
        if i != j {
            if let Some(v) = self.canonical.get(&key) {
                for &(k, c) in v {
                    out[k] = c * sign;
                }
            }
        }
        out
    }

    /// Bracket of two general elements, extended bilinearly.
    pub fn bracket_elements(&self, x: &AlgebraElement<R>, y: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
        self.check(x)?;
        self.check(y)?;
        let mut out = vec![Complex::zero(); self.dim()];
        for (i, a) in x.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, c) in self.bracket(i, j).into_iter().enumerate() {
                    out[k] += *a * *b * c;
                }
            }
        }
        Ok(AlgebraElement::new(out))
    }

    pub fn check(&self, x: &AlgebraElement<R>) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() })
        }
    }
}

/// Element of the complexified algebra, as coefficients in the model basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<R: Real> {
    coeffs: Vec<Complex<R>>,
}

impl<R: Real> AlgebraElement<R> {
    pub fn new(coeffs: Vec<Complex<R>>) -> Self {
        Self { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Self { coeffs: vec![Complex::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); dim];
        coeffs[i] = Complex::new(R::one(), R::zero());
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, a: Complex<R>) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| *c * a).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "algebra elements of different dimension");
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| *a + *b).collect() }
    }
}

/// Outcome of a structural or tolerance check.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub metrics: Vec<(String, f64)>,
    pub tolerance: f64,
    pub passed: bool,
}

impl ValidationReport {
    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Antisymmetry and Jacobi audit of the structure constants.
///
/// Antisymmetry is measured on the raw entries: pairs supplied in both
/// orientations must cancel and diagonal brackets must vanish. The Jacobi
/// residual uses the canonical table.
pub fn validate_structure<R: Real>(spec: &LieAlgebraSpec<R>, tol: f64) -> ValidationReport {
    let n = spec.dim();
    let mut raw = vec![vec![vec![Complex::<R>::zero(); n]; n]; n];
    let mut present = vec![vec![false; n]; n];
    for e in spec.entries() {
        raw[e.i][e.j][e.k] += e.c;
        present[e.i][e.j] = true;
    }
    let mut antisym = 0.0f64;
    for i in 0..n {
        for j in i..n {
            if i == j && present[i][i] {
                for v in &raw[i][i] {
                    antisym = antisym.max(cabs(*v).to_f64());
                }
            } else if present[i][j] && present[j][i] {
                for (x, y) in raw[i][j].iter().zip(&raw[j][i]) {
                    antisym = antisym.max(cabs(*x + *y).to_f64());
                }
            }
        }
    }

    let full: Vec<Vec<Vec<Complex<R>>>> = (0..n).map(|i| (0..n).map(|j| spec.bracket(i, j)).collect()).collect();
    let mut jacobi = 0.0f64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for l in 0..n {
                    let mut s = Complex::<R>::zero();
                    for (m, fm) in full.iter().enumerate() {
                        s += full[a][b][m] * fm[c][l] + full[b][c][m] * fm[a][l] + full[c][a][m] * fm[b][l];
                    }
                    jacobi = jacobi.max(cabs(s).to_f64());
                }
            }
        }
    }
    ValidationReport {
        metrics: vec![("antisymmetry".into(), antisym), ("jacobi".into(), jacobi)],
        tolerance: tol,
        passed: antisym <= tol && jacobi <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn su2_entries() -> Vec<StructureEntry<f64>> {
        // basis J+, J0, J-
        vec![
            StructureEntry::new(0, 1, 0, cplx(-1.0, 0.0)),
            StructureEntry::new(0, 2, 1, cplx(2.0, 0.0)),
            StructureEntry::new(1, 2, 2, cplx(-1.0, 0.0)),
        ]
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("X{i}")).collect()
    }

    #[test]
    fn su2_constants_pass() {
        let spec = LieAlgebraSpec::new(labels(3), su2_entries()).unwrap();
        let r = validate_structure(&spec, 1e-10);
        assert!(r.passed);
        assert_eq!(r.metric("antisymmetry"), Some(0.0));
        assert_eq!(r.metric("jacobi"), Some(0.0));
    }

    #[test]
    fn abelian_algebra_passes() {
        let spec = LieAlgebraSpec::<f64>::new(labels(4), vec![]).unwrap();
        assert!(validate_structure(&spec, 1e-10).passed);
    }

    #[test]
    fn one_sided_negation_is_an_antisymmetry_violation() {
        let mut e = su2_entries();
        // [J0, J-] given in both orientations but with the same sign
        e.push(StructureEntry::new(2, 1, 2, cplx(-1.0, 0.0)));
        let spec = LieAlgebraSpec::new(labels(3), e).unwrap();
        let r = validate_structure(&spec, 1e-10);
        assert!(!r.passed);
        assert_eq!(r.metric("antisymmetry"), Some(2.0));
    }

    #[test]
    fn reversed_orientation_is_canonicalized() {
        let e = vec![StructureEntry::new(1, 0, 0, cplx::<f64>(1.0, 0.0))];
        let spec = LieAlgebraSpec::new(labels(2), e).unwrap();
        assert_eq!(spec.bracket(0, 1)[0], cplx(-1.0, 0.0));
        assert_eq!(spec.bracket(1, 0)[0], cplx(1.0, 0.0));
        assert!(validate_structure(&spec, 1e-12).passed);
    }

    #[test]
    fn out_of_range_index_is_structural() {
        let e = vec![StructureEntry::new(0, 3, 1, cplx::<f64>(1.0, 0.0))];
        assert!(matches!(LieAlgebraSpec::new(labels(3), e), Err(Error::Structural(_))));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [X0,X1]=X2, [X1,X2]=X0, [X0,X2]=X0 is not a Lie algebra
        let e = vec![
            StructureEntry::new(0, 1, 2, cplx::<f64>(1.0, 0.0)),
            StructureEntry::new(1, 2, 0, cplx(1.0, 0.0)),
            StructureEntry::new(0, 2, 0, cplx(1.0, 0.0)),
        ];
        let spec = LieAlgebraSpec::new(labels(3), e).unwrap();
        let r = validate_structure(&spec, 1e-10);
        assert!(r.metric("jacobi").unwrap() > 0.5);
        assert!(!r.passed);
    }

    #[test]
    fn element_brackets_are_bilinear() {
        let spec = LieAlgebraSpec::new(labels(3), su2_entries()).unwrap();
        let jp = AlgebraElement::basis(3, 0);
        let jm = AlgebraElement::basis(3, 2);
        let b = spec.bracket_elements(&jp, &jm).unwrap();
        assert_eq!(b.coeffs()[1], cplx(2.0, 0.0));
        let b2 = spec.bracket_elements(&jp.scale(cplx(0.0, 1.0)), &jm).unwrap();
        assert_eq!(b2.coeffs()[1], cplx(0.0, 2.0));
    }
}
