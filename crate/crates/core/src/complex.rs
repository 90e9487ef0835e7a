//! Minimal complex scalar over MPFR floats.
//!
//! Operators in this crate have real coefficients, so the only operations
//! needed are addition, real scaling, conjugate products and moduli.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use rug::Float;

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn zero(bits: u32) -> Self {
        Self {
            re: Float::new(bits),
            im: Float::new(bits),
        }
    }

    pub fn real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(bits: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(bits, re),
            im: Float::with_val(bits, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, k: &Float) -> Self {
        Self {
            re: self.re.clone() * k,
            im: self.im.clone() * k,
        }
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, k: &Float, other: &Complex) {
        self.re += Float::with_val(self.re.prec(), k * &other.re);
        self.im += Float::with_val(self.im.prec(), k * &other.im);
    }

    pub fn norm_sqr(&self) -> Float {
        let bits = self.prec();
        Float::with_val(bits, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// `self * conj(other)`
    pub fn mul_conj(&self, other: &Complex) -> Complex {
        let bits = self.prec();
        let re = Float::with_val(bits, &self.re * &other.re)
            + Float::with_val(bits, &self.im * &other.im);
        let im = Float::with_val(bits, &self.im * &other.re)
            - Float::with_val(bits, &self.re * &other.im);
        Complex { re, im }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6e} + {:.6e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&Complex> for Complex {
    type Output = Complex;
    fn add(mut self, rhs: &Complex) -> Complex {
        self += rhs;
        self
    }
}

impl Sub<&Complex> for Complex {
    type Output = Complex;
    fn sub(mut self, rhs: &Complex) -> Complex {
        self -= rhs;
        self
    }
}

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, rhs: &Complex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, rhs: &Complex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}
