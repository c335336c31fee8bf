use num_complex::Complex;
use num_traits::{One, Zero};

use crate::algebra::CMatrix;
use crate::error::{Error, Result};
use crate::polyops::MultiPoly;
use crate::scalar::Real;

pub type CPoly<R> = MultiPoly<Complex<R>>;

/// Symbolic coherent vector `E(z) = exp(Σ z_α A_α)·e₀`, one polynomial per
/// representation basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector<R: Real> {
    pub entries: Vec<CPoly<R>>,
}

/// Symbolic covector `ω(z) = e₀†·exp(Σ z_α B_α)`; `ω(z)·ψ` is the symbol of ψ.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCovector<R: Real> {
    pub entries: Vec<CPoly<R>>,
}

/// Reproducing kernel `K(z, w̄) = ω(z)·E(w̄)` in `2n` variables, the
/// first `n` holding `z` and the last `n` holding `w̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelPoly<R: Real> {
    pub n: usize,
    pub poly: CPoly<R>,
}

impl<R: Real> PolyVector<R> {
    pub fn eval(&self, z: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        self.entries.iter().map(|p| p.eval(z)).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.iter().filter_map(MultiPoly::degree).max().unwrap_or(0)
    }
}

impl<R: Real> PolyCovector<R> {
    pub fn eval(&self, z: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        self.entries.iter().map(|p| p.eval(z)).collect()
    }

    /// `ω(z)·ψ`.
    pub fn pair(&self, psi: &[Complex<R>]) -> Result<CPoly<R>> {
        if psi.len() != self.entries.len() {
            return Err(Error::DimensionMismatch { expected: self.entries.len(), found: psi.len() });
        }
        let n = self.entries[0].nvars();
        Ok(self
            .entries
            .iter()
            .zip(psi)
            .filter(|(_, c)| !c.is_zero())
            .fold(CPoly::<R>::zero(n), |acc, (p, c)| &acc + &p.scale(c)))
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.iter().filter_map(MultiPoly::degree).max().unwrap_or(0)
    }
}

impl<R: Real> KernelPoly<R> {
    /// `K(z, w̄)` with the second slot given directly as `w̄`.
    pub fn eval(&self, z: &[Complex<R>], wbar: &[Complex<R>]) -> Result<Complex<R>> {
        if z.len() != self.n || wbar.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: z.len().max(wbar.len()) });
        }
        let pt: Vec<_> = z.iter().chain(wbar).copied().collect();
        self.poly.eval(&pt)
    }

    /// Coefficient of `z^a w̄^b`.
    pub fn coeff(&self, a: &[u32], b: &[u32]) -> Complex<R> {
        let e: Vec<u32> = a.iter().chain(b).copied().collect();
        self.poly.coeff(&e)
    }

    /// Renders with variables `z1..zn, w1..wn` (the `w` slot holds `w̄`).
    pub fn render(&self) -> String {
        let names: Vec<String> =
            (1..=self.n).map(|i| format!("z{i}")).chain((1..=self.n).map(|i| format!("w{i}"))).collect();
        self.poly.render_with(&names)
    }
}

/// One block of the graded triangular solve: m′ directions sharing a grade.
#[derive(Clone, Debug)]
pub(crate) struct GradeBlock<R: Real> {
    pub directions: Vec<usize>,
    /// `M[a][b] = (A_{β_b} e₀)† (A_{α_a} e₀)`.
    pub system: CMatrix<R>,
}

/// Precomputed orbit objects owned by an `OrbitModel`.
#[derive(Clone, Debug)]
pub(crate) struct OrbitData<R: Real> {
    pub vector: PolyVector<R>,
    pub covector: PolyCovector<R>,
    pub kernel: KernelPoly<R>,
    /// `A_α e₀` as columns.
    pub tangents: Vec<Vec<Complex<R>>>,
    /// `Ω_α(z) = ω(z)·A_α e₀`.
    pub tangent_symbols: Vec<CPoly<R>>,
    pub blocks: Vec<GradeBlock<R>>,
}

impl<R: Real> OrbitData<R> {
    pub fn build(
        d: usize,
        e0: usize,
        lowering: &[CMatrix<R>],
        raising: &[CMatrix<R>],
        grading: &[u32],
    ) -> Result<Self> {
        let n = lowering.len();
        let vector = PolyVector { entries: exp_series(d, e0, lowering, Side::Column)? };
        let covector = PolyCovector { entries: exp_series(d, e0, raising, Side::Row)? };
        let kernel = KernelPoly {
            n,
            poly: covector
                .entries
                .iter()
                .zip(&vector.entries)
                .fold(CPoly::<R>::zero(2 * n), |acc, (w, e)| &acc + &(&w.embed(2 * n, 0) * &e.embed(2 * n, n))),
        };
        let tangents: Vec<Vec<Complex<R>>> = lowering.iter().map(|a| a.column(e0).iter().copied().collect()).collect();
        let tangent_symbols = tangents.iter().map(|t| covector.pair(t)).collect::<Result<Vec<_>>>()?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (grading[a], a));
        let mut blocks: Vec<GradeBlock<R>> = Vec::new();
        for a in order {
            match blocks.last_mut() {
                Some(b) if grading[b.directions[0]] == grading[a] => b.directions.push(a),
                _ => blocks.push(GradeBlock { directions: vec![a], system: CMatrix::zeros(0, 0) }),
            }
        }
        for b in &mut blocks {
            let m = b.directions.len();
            b.system = CMatrix::from_fn(m, m, |r, c| {
                let (alpha, beta) = (b.directions[r], b.directions[c]);
                tangents[beta].iter().zip(&tangents[alpha]).map(|(x, y)| x.conj() * *y).sum()
            });
        }
        Ok(Self { vector, covector, kernel, tangents, tangent_symbols, blocks })
    }
}

#[derive(Clone, Copy)]
enum Side {
    /// `exp(Σ z M)·e₀`
    Column,
    /// `e₀†·exp(Σ z M)`
    Row,
}

/// Exact exponential series on the orbit of `e₀`; the generators must act
/// nilpotently there, so the series terminates within `d` steps.
fn exp_series<R: Real>(d: usize, e0: usize, mats: &[CMatrix<R>], side: Side) -> Result<Vec<CPoly<R>>> {
    let n = mats.len();
    let mut term: Vec<CPoly<R>> =
        (0..d).map(|k| if k == e0 { CPoly::<R>::one(n) } else { CPoly::<R>::zero(n) }).collect();
    let mut sum = term.clone();
    for step in 1..=d + 1 {
        if term.iter().all(MultiPoly::is_zero) {
            return Ok(sum);
        }
        if step == d + 1 {
            break;
        }
        let inv = Complex::<R>::one() / Complex::new(crate::scalar::real::<R>(step as f64), R::zero());
        let mut next = vec![CPoly::<R>::zero(n); d];
        for (alpha, m) in mats.iter().enumerate() {
            let zvar = CPoly::<R>::var(n, alpha);
            for (out, slot) in next.iter_mut().enumerate() {
                let mut acc = CPoly::<R>::zero(n);
                for (src, t) in term.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let c = match side {
                        Side::Column => m[(out, src)],
                        Side::Row => m[(src, out)],
                    };
                    if !c.is_zero() {
                        acc = &acc + &t.scale(&c);
                    }
                }
                if !acc.is_zero() {
                    *slot = &*slot + &(&acc * &zvar);
                }
            }
        }
        term = next.into_iter().map(|p| p.scale(&inv)).collect();
        sum = sum.iter().zip(&term).map(|(s, t)| s + t).collect();
    }
    Err(Error::NonNilpotent(d))
}
