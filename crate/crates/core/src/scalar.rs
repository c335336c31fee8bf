//! Scalar abstractions shared by every numeric layer.
//!
//! [`Real`] is the floating type the matrices, quadrature and solvers run on;
//! [`Coeff`] is the ring polynomial coefficients live in. Complex numbers over
//! any `Real` are coefficients, and so are exact rationals, which the
//! polynomial tests use to check ring identities without rounding.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::RealField;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Real floating scalar: `f32` or `f64`.
///
/// Each precision carries its own default thresholds so that the same
/// pipeline runs in single precision with proportionally looser gates.
pub trait Real: RealField + Copy + Send + Sync + fmt::LowerExp + 'static {
    fn to_f64(self) -> f64;
    /// Coefficients below this magnitude are dropped from polynomials.
    fn prune_threshold() -> f64;
    fn structural_tol() -> f64;
    fn extremal_tol() -> f64;
    fn solver_tol() -> f64;
    fn quadrature_tol() -> f64;
}

impl Real for f64 {
    fn to_f64(self) -> f64 {
        self
    }
    fn prune_threshold() -> f64 {
        1e-14
    }
    fn structural_tol() -> f64 {
        1e-10
    }
    fn extremal_tol() -> f64 {
        1e-12
    }
    fn solver_tol() -> f64 {
        1e-9
    }
    fn quadrature_tol() -> f64 {
        1e-6
    }
}

impl Real for f32 {
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn prune_threshold() -> f64 {
        1e-6
    }
    fn structural_tol() -> f64 {
        1e-4
    }
    fn extremal_tol() -> f64 {
        1e-5
    }
    fn solver_tol() -> f64 {
        1e-3
    }
    fn quadrature_tol() -> f64 {
        1e-3
    }
}

/// Converts an `f64` literal into the working precision.
#[inline]
pub fn real<R: Real>(x: f64) -> R {
    nalgebra::convert(x)
}

#[inline]
pub fn cplx<R: Real>(re: f64, im: f64) -> Complex<R> {
    Complex::new(real(re), real(im))
}

#[inline]
pub fn cabs<R: Real>(c: Complex<R>) -> R {
    c.re.hypot(c.im)
}

/// Coefficient ring for [`MultiPoly`](crate::polyops::MultiPoly).
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when the coefficient should be pruned from a canonical polynomial.
    fn is_negligible(&self) -> bool;
    fn from_u64(n: u64) -> Self;
    fn magnitude(&self) -> f64;
    fn conj(&self) -> Self;
    /// Renders with 12 significant digits, integers without a fractional part.
    fn render(&self) -> String;
}

impl<R: Real> Coeff for Complex<R> {
    fn is_negligible(&self) -> bool {
        cabs(*self).to_f64() < R::prune_threshold()
    }
    fn from_u64(n: u64) -> Self {
        Complex::new(real(n as f64), R::zero())
    }
    fn magnitude(&self) -> f64 {
        cabs(*self).to_f64()
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn render(&self) -> String {
        render_complex(self.re.to_f64(), self.im.to_f64())
    }
}

impl Coeff for Ratio<i64> {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn from_u64(n: u64) -> Self {
        Ratio::from_integer(n as i64)
    }
    fn magnitude(&self) -> f64 {
        (*self.numer() as f64 / *self.denom() as f64).abs()
    }
    fn conj(&self) -> Self {
        *self
    }
    fn render(&self) -> String {
        if *self.denom() == 1 {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// `%.12g`-style rendering of a real number.
pub fn render_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".to_string()
        } else {
            t.to_string()
        }
    } else {
        s
    }
}

fn render_complex(re: f64, im: f64) -> String {
    let scale = re.abs().max(im.abs());
    // components far below the other one are rounding residue at 12 digits
    let re_zero = re.abs() <= scale * 1e-13;
    let im_zero = im.abs() <= scale * 1e-13;
    match (re_zero, im_zero) {
        (_, true) => render_real(re),
        (true, false) => match render_real(im).as_str() {
            "1" => "i".to_string(),
            "-1" => "-i".to_string(),
            s => format!("{s}i"),
        },
        (false, false) => {
            let im_s = render_real(im);
            if let Some(rest) = im_s.strip_prefix('-') {
                format!("({}-{}i)", render_real(re), rest)
            } else {
                format!("({}+{}i)", render_real(re), im_s)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_rendering_uses_twelve_significant_digits() {
        assert_eq!(render_real(2.0000000000000004), "2");
        assert_eq!(render_real(-1.0), "-1");
        assert_eq!(render_real(std::f64::consts::SQRT_2), "1.41421356237");
        assert_eq!(render_real(0.15), "0.15");
        assert_eq!(render_real(1.5e-20), "1.5e-20");
        assert_eq!(render_real(123456789012345.0), "1.23456789012e14");
    }

    #[test]
    fn complex_rendering() {
        assert_eq!(cplx::<f64>(2.0, 0.0).render(), "2");
        assert_eq!(cplx::<f64>(0.0, 1.0).render(), "i");
        assert_eq!(cplx::<f64>(0.0, -2.5).render(), "-2.5i");
        assert_eq!(cplx::<f64>(1.0, -2.0).render(), "(1-2i)");
        assert_eq!(cplx::<f64>(1.0, 1e-17).render(), "1");
    }

    #[test]
    fn pruning_threshold_depends_on_precision() {
        assert!(cplx::<f64>(1e-15, 0.0).is_negligible());
        assert!(!cplx::<f64>(1e-13, 0.0).is_negligible());
        assert!(cplx::<f32>(1e-7, 0.0).is_negligible());
        assert!(Ratio::<i64>::zero().is_negligible());
        assert!(!Ratio::new(1i64, 1_000_000_000).is_negligible());
    }
}
