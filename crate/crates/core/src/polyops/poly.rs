use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Exponent multi-index. Ordered lexicographically.
pub type Exponent = Vec<u32>;

/// Sparse multivariate polynomial in `nvars` variables.
///
/// Canonical form: no stored coefficient is negligible (see
/// [`Coeff::is_negligible`]), and every key has length `nvars`. All
/// iteration is in ascending lexicographic order of exponents.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The coordinate `z_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exp: Exponent, c: C) -> Self {
        let mut p = Self { nvars: exp.len(), terms: BTreeMap::new() };
        if !c.is_negligible() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Builds from arbitrary (exponent, coefficient) pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, C)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(Coeff::magnitude).fold(0.0, f64::max)
    }

    fn add_term(&mut self, exp: Exponent, c: C) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                if !c.is_negligible() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_negligible() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Multiplies by the monomial `z^exp`.
    pub fn shift(&self, exp: &[u32]) -> Self {
        debug_assert_eq!(exp.len(), self.nvars);
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative with respect to variable `i` (0-based).
    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "derivative index {i} out of range for {} variables", self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, c.clone() * C::from_u64(e[i] as u64));
            }
        }
        out
    }

    /// Coefficientwise complex conjugation.
    pub fn conj(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    /// Re-embeds into `nvars` variables, placing variable `i` at `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars);
        Self {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut x = vec![0; nvars];
                    x[offset..offset + self.nvars].copy_from_slice(e);
                    (x, c.clone())
                })
                .collect(),
        }
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate_degree(&self, max_degree: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `subs[i]` for variable `i`. All substitutes must share
    /// one variable count, which becomes the result's.
    pub fn compose(&self, subs: &[Self]) -> Result<Self> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: subs.len() });
        }
        let m = match subs.first() {
            Some(s) => s.nvars,
            None => return Ok(Self { nvars: 0, terms: self.terms.clone() }),
        };
        if let Some(bad) = subs.iter().find(|s| s.nvars != m) {
            return Err(Error::DimensionMismatch { expected: m, found: bad.nvars });
        }
        // powers[i][k] = subs[i]^k, grown on demand
        let mut powers: Vec<Vec<Self>> = vec![vec![Self::one(m)]; self.nvars];
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut term = Self::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("seeded with one").try_mul(&subs[i])?;
                    powers[i].push(next);
                }
                term = term.try_mul(&powers[i][k as usize])?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Evaluates at `point`, summing terms in lexicographic order.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[C]) -> C {
        let maxdeg: Vec<u32> = (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
        // powers[i][k] = point[i]^k
        let powers: Vec<Vec<C>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                v.push(C::one());
                for k in 0..m as usize {
                    v.push(v[k].clone() * x.clone());
                }
                v
            })
            .collect();
        self.terms.iter().fold(C::zero(), |acc, (e, c)| {
            let mono = e.iter().enumerate().fold(c.clone(), |m, (i, &k)| m * powers[i][k as usize].clone());
            acc + mono
        })
    }

    /// Largest term magnitude `|c z^e|` at `point`; the natural scale of
    /// cancellation at that point.
    pub fn term_scale(&self, point: &[C]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .fold(c.clone(), |m, (i, &k)| (0..k).fold(m, |acc, _| acc * point[i].clone()))
                    .magnitude()
            })
            .fold(0.0, f64::max)
    }

    /// Maximum coefficientwise distance to `other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.max_coeff())
    }

    /// Renders with variables `z1..zn`.
    pub fn render(&self) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        self.render_with(&names)
    }

    /// Renders with caller-supplied variable names, terms in lexicographic
    /// exponent order.
    pub fn render_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let coeff = c.render();
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            let term = match (body.as_str(), mono.is_empty()) {
                (b, true) => b.to_string(),
                ("1", false) => mono.join(" "),
                (b, false) => format!("{} {}", b, mono.join(" ")),
            };
            match (idx, neg) {
                (0, false) => out.push_str(&term),
                (0, true) => {
                    out.push('-');
                    out.push_str(&term);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&term);
                }
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self.render())
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator impls panic on mismatched variable counts; the `try_*` methods
// report it as an error instead.
impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.try_add(rhs).expect("nvars mismatch in polynomial addition")
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.try_sub(rhs).expect("nvars mismatch in polynomial subtraction")
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.try_mul(rhs).expect("nvars mismatch in polynomial product")
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.scale(&-C::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        cplx(re, 0.0)
    }

    #[test]
    fn eval_one_plus_product() {
        let p = &MultiPoly::one(2) + &(&MultiPoly::var(2, 0) * &MultiPoly::var(2, 1));
        assert_eq!(p.eval(&[c(2.0), c(3.0)]).unwrap(), c(7.0));
        assert_eq!(MultiPoly::<Complex64>::zero(3).eval(&[c(1.0), c(2.0), c(3.0)]).unwrap(), c(0.0));
    }

    #[test]
    fn eval_rejects_wrong_length() {
        let p = MultiPoly::<Complex64>::var(2, 0);
        assert!(matches!(p.eval(&[c(1.0)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn pruning_drops_ghost_coefficients() {
        let p = MultiPoly::from_terms(1, [(vec![1], c(1.0)), (vec![2], c(3e-16))]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.degree(), Some(1));
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q.degree(), None);
    }

    #[test]
    fn derivative_of_square() {
        let z = MultiPoly::<Complex64>::var(1, 0);
        let z2 = &z * &z;
        assert_eq!(z2.derivative(0), z.scale(&c(2.0)));
    }

    #[test]
    fn rendering_is_lexicographic() {
        let z1 = MultiPoly::<Complex64>::var(2, 0);
        let z2 = MultiPoly::<Complex64>::var(2, 1);
        let p = &(&MultiPoly::one(2) + &(&z1 * &z2).scale(&c(-2.5))) + &z2;
        assert_eq!(p.render(), "1 + z2 - 2.5 z1 z2");
        let q = (&z1 * &z1).scale(&c(-1.0));
        assert_eq!(q.render(), "-z1^2");
        assert_eq!(MultiPoly::<Complex64>::zero(1).render(), "0");
    }

    #[test]
    fn embedding_moves_variables() {
        let p = MultiPoly::<Complex64>::var(1, 0);
        let e = p.embed(2, 1);
        assert_eq!(e, MultiPoly::var(2, 1));
    }

    #[test]
    fn compose_substitutes_and_round_trips() {
        let x = MultiPoly::<Complex64>::var(2, 0);
        let y = MultiPoly::<Complex64>::var(2, 1);
        let p = &(&x * &y) + &MultiPoly::constant(2, c(3.0));
        // (x + y, x − y)
        let q = p.compose(&[&x + &y, &x - &y]).unwrap();
        assert_eq!(q.render(), "3 - z2^2 + z1^2");
        let shear = [x.clone(), &y + &(&x * &x)];
        let back = [x.clone(), &y - &(&x * &x)];
        let f = &(&y * &y) + &x;
        let g = f.compose(&shear).unwrap().compose(&back).unwrap();
        assert!(g.distance(&f).unwrap() < 1e-14);
        assert!(p.compose(&[x]).is_err());
    }
}
