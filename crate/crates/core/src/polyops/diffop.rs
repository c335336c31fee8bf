use std::fmt;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// First-order holomorphic differential operator `P(z) + Σ Qⁱ(z) ∂ᵢ`.
///
/// The order is at most one by construction; there is no way to build a
/// higher-order operator from this type.
#[derive(Clone, PartialEq)]
pub struct DiffOp1<C> {
    p: MultiPoly<C>,
    q: Vec<MultiPoly<C>>,
}

impl<C: Coeff> DiffOp1<C> {
    pub fn new(p: MultiPoly<C>, q: Vec<MultiPoly<C>>) -> Result<Self> {
        let n = q.len();
        if p.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
        }
        if let Some(bad) = q.iter().find(|qi| qi.nvars() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.nvars() });
        }
        Ok(Self { p, q })
    }

    pub fn zero(n: usize) -> Self {
        Self { p: MultiPoly::zero(n), q: vec![MultiPoly::zero(n); n] }
    }

    /// Multiplication operator by `p`.
    pub fn multiplication(p: MultiPoly<C>) -> Self {
        let n = p.nvars();
        Self { p, q: vec![MultiPoly::zero(n); n] }
    }

    /// The derivative `∂ᵢ` in `n` variables.
    pub fn partial(n: usize, i: usize) -> Self {
        let mut q = vec![MultiPoly::zero(n); n];
        q[i] = MultiPoly::one(n);
        Self { p: MultiPoly::zero(n), q }
    }

    pub fn nvars(&self) -> usize {
        self.q.len()
    }

    pub fn p(&self) -> &MultiPoly<C> {
        &self.p
    }

    pub fn q(&self) -> &[MultiPoly<C>] {
        &self.q
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.nvars() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.nvars(), found: n })
        }
    }

    /// `P·f + Σᵢ Qⁱ·∂ᵢf`.
    pub fn apply(&self, f: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        self.check(f.nvars())?;
        let mut out = &self.p * f;
        for (i, qi) in self.q.iter().enumerate() {
            if !qi.is_zero() {
                out = &out + &(qi * &f.derivative(i));
            }
        }
        Ok(out)
    }

    /// `Σᵢ Qⁱ ∂ᵢ g`, the vector-field part acting on `g`.
    fn directional(&self, g: &MultiPoly<C>) -> MultiPoly<C> {
        self.q
            .iter()
            .enumerate()
            .filter(|(_, qi)| !qi.is_zero())
            .fold(MultiPoly::zero(self.nvars()), |acc, (i, qi)| &acc + &(qi * &g.derivative(i)))
    }

    /// `[self, other]`, again a first-order operator.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other.nvars())?;
        let p = &self.directional(&other.p) - &other.directional(&self.p);
        let q = self.q.iter().zip(&other.q).map(|(q1, q2)| &self.directional(q2) - &other.directional(q1)).collect();
        Ok(Self { p, q })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other.nvars())?;
        Ok(Self { p: &self.p + &other.p, q: self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other.nvars())?;
        Ok(Self { p: &self.p - &other.p, q: self.q.iter().zip(&other.q).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { p: self.p.scale(c), q: self.q.iter().map(|qi| qi.scale(c)).collect() }
    }

    /// Largest coefficient magnitude over all component polynomials.
    pub fn max_coeff(&self) -> f64 {
        self.q.iter().map(MultiPoly::max_coeff).fold(self.p.max_coeff(), f64::max)
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.max_coeff())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.iter().all(MultiPoly::is_zero)
    }

    /// The same operator in new coordinates `w = φ(z)`, where `inverse`
    /// gives `z = φ⁻¹(w)`. Both maps must be polynomial and mutually inverse;
    /// this is not checked.
    pub fn pushforward(&self, forward: &[MultiPoly<C>], inverse: &[MultiPoly<C>]) -> Result<Self> {
        let n = self.nvars();
        if forward.len() != n || inverse.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: forward.len().min(inverse.len()) });
        }
        let p = self.p.compose(inverse)?;
        let q = forward
            .iter()
            .map(|phi| {
                // D(φ_j) without the multiplier
                let mut acc = MultiPoly::zero(n);
                for (i, qi) in self.q.iter().enumerate() {
                    acc = acc.try_add(&qi.try_mul(&phi.derivative(i))?)?;
                }
                acc.compose(inverse)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, q)
    }

    /// Total degree of `P`, or `None` when `P = 0`.
    pub fn degree_p(&self) -> Option<u32> {
        self.p.degree()
    }

    /// Maximal total degree over the `Qⁱ`, or `None` when all vanish.
    pub fn degree_q(&self) -> Option<u32> {
        self.q.iter().filter_map(MultiPoly::degree).max()
    }
}

impl<C: Coeff> fmt::Debug for DiffOp1<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P = {}", self.p)?;
        for (i, qi) in self.q.iter().enumerate() {
            write!(f, ", Q{} = {}", i + 1, qi)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for DiffOp1<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;
    use num_complex::Complex64;

    type P = MultiPoly<Complex64>;

    fn c(x: f64) -> Complex64 {
        cplx(x, 0.0)
    }

    /// 2j z − z² ∂ for spin j.
    fn lowering(j: f64) -> DiffOp1<Complex64> {
        let z = P::var(1, 0);
        DiffOp1::new(z.scale(&c(2.0 * j)), vec![(&z * &z).scale(&c(-1.0))]).unwrap()
    }

    #[test]
    fn derivative_operator() {
        let z = P::var(1, 0);
        let out = DiffOp1::partial(1, 0).apply(&(&z * &z)).unwrap();
        assert_eq!(out, z.scale(&c(2.0)));
    }

    #[test]
    fn multiplication_operator() {
        let z = P::var(1, 0);
        let out = DiffOp1::multiplication(z.clone()).apply(&P::one(1)).unwrap();
        assert_eq!(out, z);
    }

    #[test]
    fn lowering_operator_on_z() {
        let z = P::var(1, 0);
        let out = lowering(1.0).apply(&z).unwrap();
        assert_eq!(out, &z * &z);
    }

    #[test]
    fn canonical_commutator() {
        let d = DiffOp1::partial(1, 0);
        let z = DiffOp1::multiplication(P::var(1, 0));
        let k = d.commutator(&z).unwrap();
        assert_eq!(k, DiffOp1::multiplication(P::one(1)));
    }

    #[test]
    fn commutator_with_lowering() {
        let k = DiffOp1::partial(1, 0).commutator(&lowering(1.0)).unwrap();
        let expect = DiffOp1::new(P::constant(1, c(2.0)), vec![P::var(1, 0).scale(&c(-2.0))]).unwrap();
        assert_eq!(k, expect);
    }

    #[test]
    fn self_commutator_vanishes() {
        let d = lowering(1.5);
        assert!(d.commutator(&d).unwrap().is_zero());
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        assert!(DiffOp1::new(P::zero(2), vec![P::zero(1)]).is_err());
        let d = DiffOp1::<Complex64>::partial(2, 0);
        assert!(d.apply(&P::one(1)).is_err());
        assert!(d.commutator(&DiffOp1::partial(1, 0)).is_err());
    }

    #[test]
    fn pushforward_under_shear() {
        // w = (z1, z2 + z1²)
        let z1 = P::var(2, 0);
        let z2 = P::var(2, 1);
        let forward = vec![z1.clone(), &z2 + &(&z1 * &z1)];
        let inverse = vec![z1.clone(), &z2 - &(&z1 * &z1)];
        let d1 = DiffOp1::partial(2, 0);
        let w = d1.pushforward(&forward, &inverse).unwrap();
        assert_eq!(w.q()[0].render(), "1");
        assert_eq!(w.q()[1].render(), "2 z1");

        // commutators survive the change of chart
        let d2 = DiffOp1::new(z1.clone(), vec![P::zero(2), &z1 * &z2]).unwrap();
        let lhs = d1.commutator(&d2).unwrap().pushforward(&forward, &inverse).unwrap();
        let rhs = w.commutator(&d2.pushforward(&forward, &inverse).unwrap()).unwrap();
        assert!(lhs.distance(&rhs).unwrap() < 1e-14);
    }
}
