//! Precision control and small helpers around [`rug::Float`].
//!
//! Every real number in the crate is an MPFR float carrying its own mantissa
//! width. Values are created at the context precision and owned arithmetic
//! (`a * &b`) keeps the precision of the left operand, so a computation started
//! at `ctx.bits()` stays there.

use rug::float::Round;
use rug::ops::AddAssignRound;
use rug::Float;

use crate::error::{Error, Result};

pub const DEFAULT_BITS: u32 = 256;
pub const MIN_BITS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PrecisionContext {
    mantissa_bits: u32,
    tolerance_rel: f64,
    tolerance_abs: f64,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::with_bits(DEFAULT_BITS).expect("default precision is valid")
    }
}

impl PrecisionContext {
    /// Context with tolerances scaled to the mantissa width: 1e-30 relative at
    /// 256 bits, and the square of that as the absolute floor.
    pub fn with_bits(mantissa_bits: u32) -> Result<Self> {
        if mantissa_bits < MIN_BITS {
            return Err(Error::InvalidPrecision(format!(
                "mantissa_bits must be >= {MIN_BITS}, got {mantissa_bits}"
            )));
        }
        let digits = (30.0 * f64::from(mantissa_bits) / f64::from(DEFAULT_BITS)).round();
        let rel = 10f64.powf(-digits);
        Self::new(mantissa_bits, rel, rel * rel)
    }

    pub fn new(mantissa_bits: u32, tolerance_rel: f64, tolerance_abs: f64) -> Result<Self> {
        if mantissa_bits < MIN_BITS {
            return Err(Error::InvalidPrecision(format!(
                "mantissa_bits must be >= {MIN_BITS}, got {mantissa_bits}"
            )));
        }
        if !(tolerance_rel > 0.0 && tolerance_rel.is_finite()) {
            return Err(Error::InvalidPrecision(format!(
                "tolerance_rel must be positive, got {tolerance_rel}"
            )));
        }
        if !(tolerance_abs > 0.0 && tolerance_abs.is_finite()) {
            return Err(Error::InvalidPrecision(format!(
                "tolerance_abs must be positive, got {tolerance_abs}"
            )));
        }
        Ok(Self {
            mantissa_bits,
            tolerance_rel,
            tolerance_abs,
        })
    }

    pub fn bits(&self) -> u32 {
        self.mantissa_bits
    }

    pub fn tolerance_rel(&self) -> f64 {
        self.tolerance_rel
    }

    pub fn tolerance_abs(&self) -> f64 {
        self.tolerance_abs
    }

    pub fn with_tolerance_rel(mut self, tolerance_rel: f64) -> Result<Self> {
        self = Self::new(self.mantissa_bits, tolerance_rel, self.tolerance_abs)?;
        Ok(self)
    }

    /// Same tolerances, doubled mantissa.
    pub fn doubled(&self) -> Self {
        Self {
            mantissa_bits: self.mantissa_bits * 2,
            ..*self
        }
    }

    pub fn zero(&self) -> Float {
        Float::new(self.mantissa_bits)
    }

    pub fn int(&self, n: i64) -> Float {
        Float::with_val(self.mantissa_bits, n)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Float {
        Float::with_val(self.mantissa_bits, num) / den
    }

    pub fn float(&self, x: &Float) -> Float {
        Float::with_val(self.mantissa_bits, x)
    }

    /// Decimal literal parsed at the context precision.
    pub fn parse(&self, text: &str) -> Result<Float> {
        let parsed =
            Float::parse(text).map_err(|e| Error::InvalidParameter(format!("`{text}`: {e}")))?;
        Ok(Float::with_val(self.mantissa_bits, parsed))
    }
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone)]
pub struct CompensatedSum {
    sum: Float,
    carry: Float,
}

impl CompensatedSum {
    pub fn new(bits: u32) -> Self {
        Self {
            sum: Float::new(bits),
            carry: Float::new(bits),
        }
    }

    pub fn add(&mut self, term: &Float) {
        let bits = self.sum.prec();
        let t = Float::with_val(bits, &self.sum + term);
        let err = if self.sum.clone().abs() >= term.clone().abs() {
            Float::with_val(bits, &self.sum - &t) + term
        } else {
            Float::with_val(bits, term - &t) + &self.sum
        };
        self.carry.add_assign_round(err, Round::Nearest);
        self.sum = t;
    }

    pub fn total(&self) -> Float {
        Float::with_val(self.sum.prec(), &self.sum + &self.carry)
    }
}

/// Relative residual |a - b| / |a|, falling back to the absolute difference
/// when |a| is below `abs_floor`.
pub fn relative_residual(a: &Float, b: &Float, abs_floor: f64) -> f64 {
    let diff = Float::with_val(a.prec().max(b.prec()), a - b).abs();
    let scale = a.clone().abs();
    if scale.to_f64() <= abs_floor {
        diff.to_f64()
    } else {
        (diff / scale).to_f64()
    }
}

/// Number of significant decimal digits carried by a mantissa of `bits` bits.
#[allow(clippy::approx_constant)] // the documented digit rule uses 0.30103
pub fn decimal_digits(bits: u32) -> usize {
    (f64::from(bits) * 0.30103).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_narrow_mantissa() {
        assert!(PrecisionContext::with_bits(32).is_err());
        assert!(PrecisionContext::new(128, 0.0, 1e-40).is_err());
        assert!(PrecisionContext::new(128, 1e-20, -1.0).is_err());
    }

    #[test]
    fn default_tolerance_matches_bits() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.bits(), 256);
        assert_eq!(ctx.tolerance_rel(), 1e-30);
        assert_eq!(ctx.doubled().bits(), 512);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        // 1 + 2^-300 - 1 is lost by naive 256-bit summation but kept by the carry.
        let bits = 256;
        let tiny = Float::with_val(bits, Float::i_exp(1, -300));
        let mut acc = CompensatedSum::new(bits);
        acc.add(&Float::with_val(bits, 1));
        acc.add(&tiny);
        acc.add(&Float::with_val(bits, -1));
        assert_eq!(acc.total(), tiny);
    }

    #[test]
    fn digits_for_default_bits() {
        assert_eq!(decimal_digits(256), 78);
        assert_eq!(decimal_digits(53), 16);
    }
}
