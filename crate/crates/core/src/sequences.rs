//! Sequence types and the transforms between the `(a_n)` and `(A_n)` forms of
//! the inequalities.
//!
//! Storage is 0-based; index 0 is the boundary slot (`A_0`, `Λ_0 = λ_0`).

use std::fmt;
use std::sync::Arc;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::CompensatedSum;

/// Finitely supported complex sequence on `0, 1, 2, ...`.
///
/// Trailing zeros are trimmed, so `values.len() == support_end + 1` unless the
/// sequence is identically zero. Reads outside the stored range (including
/// negative indices) return exact zeros.
#[derive(Clone, PartialEq)]
pub struct FiniteSequence {
    bits: u32,
    values: Vec<Complex>,
}

impl fmt::Debug for FiniteSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

impl FiniteSequence {
    pub fn zero(bits: u32) -> Self {
        Self {
            bits,
            values: Vec::new(),
        }
    }

    /// General constructor, no boundary data imposed.
    pub fn from_values(bits: u32, values: Vec<Complex>) -> Self {
        let values = values
            .into_iter()
            .map(|z| Complex::new(Float::with_val(bits, &z.re), Float::with_val(bits, &z.im)))
            .collect();
        let mut seq = Self { bits, values };
        seq.trim();
        seq
    }

    pub fn from_reals(bits: u32, values: &[f64]) -> Self {
        Self::from_values(
            bits,
            values
                .iter()
                .map(|&x| Complex::from_f64(bits, x, 0.0))
                .collect(),
        )
    }

    pub fn from_floats(bits: u32, values: Vec<Float>) -> Self {
        Self::from_values(bits, values.into_iter().map(Complex::real).collect())
    }

    /// Element of `C_c(N_0)` with Dirichlet data `A_0 = 0`.
    pub fn dirichlet(bits: u32, values: Vec<Complex>) -> Result<Self> {
        let seq = Self::from_values(bits, values);
        seq.require_zero_prefix(1)?;
        Ok(seq)
    }

    /// Rellich-admissible sequence: `A_0 = A_1 = 0`.
    pub fn rellich(bits: u32, values: Vec<Complex>) -> Result<Self> {
        let seq = Self::from_values(bits, values);
        seq.require_zero_prefix(2)?;
        Ok(seq)
    }

    /// Unit vector `e_k`.
    pub fn unit(bits: u32, k: usize) -> Self {
        let mut values = vec![Complex::zero(bits); k + 1];
        values[k] = Complex::real(Float::with_val(bits, 1));
        Self { bits, values }
    }

    /// Checks `A_n = 0` for `0 <= n < count`.
    pub fn require_zero_prefix(&self, count: usize) -> Result<()> {
        match self.values.iter().take(count).position(|z| !z.is_zero()) {
            Some(index) => Err(Error::BoundaryCondition { index }),
            None => Ok(()),
        }
    }

    fn trim(&mut self) {
        while self.values.last().is_some_and(Complex::is_zero) {
            self.values.pop();
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest index carrying a nonzero value (0 for the zero sequence).
    pub fn support_end(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn get(&self, n: i64) -> Complex {
        if n < 0 {
            return Complex::zero(self.bits);
        }
        self.values
            .get(n as usize)
            .cloned()
            .unwrap_or_else(|| Complex::zero(self.bits))
    }

    pub fn at(&self, n: usize) -> Complex {
        self.get(n as i64)
    }

    /// Copy with entries beyond `last` dropped.
    pub fn truncated(&self, last: usize) -> Self {
        let mut values: Vec<Complex> = self.values.iter().take(last + 1).cloned().collect();
        values.truncate(last + 1);
        let mut seq = Self {
            bits: self.bits,
            values,
        };
        seq.trim();
        seq
    }

    /// Copy with `A_n` set to zero for `n < count`.
    pub fn with_zero_prefix(&self, count: usize) -> Self {
        let mut values = self.values.clone();
        for z in values.iter_mut().take(count) {
            *z = Complex::zero(self.bits);
        }
        let mut seq = Self {
            bits: self.bits,
            values,
        };
        seq.trim();
        seq
    }

    pub fn modulus(&self) -> Self {
        Self::from_floats(self.bits, self.values.iter().map(Complex::abs).collect())
    }

    pub fn scaled(&self, k: &Float) -> Self {
        Self::from_values(self.bits, self.values.iter().map(|z| z.scale(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.values.len().max(other.values.len());
        Self::from_values(
            self.bits,
            (0..len).map(|n| self.at(n) - &other.at(n)).collect(),
        )
    }

    /// Hermitian pairing `sum_{n >= n_start} x_n conj(y_n)`.
    pub fn inner(&self, other: &Self, n_start: usize) -> Complex {
        let len = self.values.len().min(other.values.len());
        let mut re = CompensatedSum::new(self.bits);
        let mut im = CompensatedSum::new(self.bits);
        for n in n_start..len {
            let p = self.values[n].mul_conj(&other.values[n]);
            re.add(&p.re);
            im.add(&p.im);
        }
        Complex::new(re.total(), im.total())
    }
}

type Generator = dyn Fn(u64, u32) -> Float + Send + Sync;

#[derive(Clone)]
enum Rule {
    Ones,
    Linear,
    Power(Rational),
    Shifted,
    CopsonTildeLambda,
    CopsonHatLambda,
    Explicit(Arc<Vec<Float>>),
    Custom(Arc<Generator>),
}

/// Strictly positive real sequence: a rule for `n >= 1` plus the boundary
/// value at `n = 0`.
///
/// The boundary value plays the role of `Λ_0 = λ_0` (or `δ_0`) in operator
/// rows. Sequences used as generating functions `μ` ignore it: the weight
/// formulas always take `μ_0 = 0`.
#[derive(Clone)]
pub struct PositiveSequence {
    label: String,
    rule: Rule,
    zero_value: Float,
}

impl fmt::Debug for PositiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PositiveSequence")
            .field("label", &self.label)
            .field("zero_value", &self.zero_value.to_f64())
            .finish()
    }
}

impl PositiveSequence {
    fn named(label: impl Into<String>, rule: Rule) -> Self {
        Self {
            label: label.into(),
            rule,
            zero_value: Float::with_val(64, 1),
        }
    }

    /// `1, 1, 1, ...`
    pub fn ones() -> Self {
        Self::named("ones", Rule::Ones)
    }

    /// `λ_n = n`
    pub fn linear() -> Self {
        Self::named("linear", Rule::Linear)
    }

    /// `n^r` with `r` a rational exponent.
    pub fn power(exponent: Rational) -> Self {
        let label = format!("pow:{}", exponent);
        Self::named(label, Rule::Power(exponent))
    }

    pub fn power_ratio(num: i32, den: u32) -> Self {
        Self::power(Rational::from((num, den)))
    }

    /// `δ_n = (n + 2) / (n + 1)`
    pub fn shifted() -> Self {
        Self::named("shifted", Rule::Shifted)
    }

    /// `λ_n = n^2 / sqrt(n(n+1)(2n+1)/6)`
    pub fn copson_tilde_lambda() -> Self {
        Self::named("copson-tilde-lambda", Rule::CopsonTildeLambda)
    }

    /// `λ_n = n^3 / sqrt((n(n+1)/2)^2) = 2n^2 / (n + 1)`
    pub fn copson_hat_lambda() -> Self {
        Self::named("copson-hat-lambda", Rule::CopsonHatLambda)
    }

    /// Explicit values for `n = 1..=values.len()`.
    pub fn explicit(label: impl Into<String>, values: Vec<Float>) -> Result<Self> {
        let label = label.into();
        if let Some(i) = values.iter().position(|v| !(v.is_finite() && *v > 0)) {
            return Err(Error::NonPositive {
                label,
                index: i as u64 + 1,
            });
        }
        Ok(Self::named(label, Rule::Explicit(Arc::new(values))))
    }

    /// Arbitrary rule; the caller guarantees positivity.
    pub fn custom<F>(label: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64, u32) -> Float + Send + Sync + 'static,
    {
        Self::named(label, Rule::Custom(Arc::new(rule)))
    }

    pub fn with_zero_value(mut self, zero_value: Float) -> Result<Self> {
        if !(zero_value.is_finite() && zero_value > 0) {
            return Err(Error::NonPositive {
                label: self.label,
                index: 0,
            });
        }
        self.zero_value = zero_value;
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn zero_value(&self) -> &Float {
        &self.zero_value
    }

    /// Last index with a value, `None` for unbounded rules.
    pub fn defined_up_to(&self) -> Option<u64> {
        match &self.rule {
            Rule::Explicit(v) => Some(v.len() as u64),
            _ => None,
        }
    }

    pub fn ensure_defined(&self, n: u64) -> Result<()> {
        match self.defined_up_to() {
            Some(len) if n > len => Err(Error::UndefinedIndex {
                label: self.label.clone(),
                index: n,
                len,
            }),
            _ => Ok(()),
        }
    }

    /// Value at `n` with a `bits`-bit mantissa.
    ///
    /// # Panics
    /// For explicit sequences queried past their last value; callers check
    /// [`ensure_defined`](Self::ensure_defined) first.
    pub fn value(&self, n: u64, bits: u32) -> Float {
        if n == 0 {
            return Float::with_val(bits, &self.zero_value);
        }
        match &self.rule {
            Rule::Ones => Float::with_val(bits, 1),
            Rule::Linear => Float::with_val(bits, n),
            Rule::Power(r) => rational_power(n, r, bits),
            Rule::Shifted => Float::with_val(bits, n + 2) / Float::with_val(bits, n + 1),
            Rule::CopsonTildeLambda => {
                Float::with_val(bits, n).square() / sum_of_squares(n, bits).sqrt()
            }
            Rule::CopsonHatLambda => {
                Float::with_val(bits, n).square() * 2u32 / Float::with_val(bits, n + 1)
            }
            Rule::Explicit(values) => match values.get(n as usize - 1) {
                Some(v) => Float::with_val(bits, v),
                None => panic!(
                    "sequence `{}` has no value at n = {n} (defined for n <= {})",
                    self.label,
                    values.len()
                ),
            },
            Rule::Custom(f) => f(n, bits),
        }
    }

    /// Values at `0..=n_max`.
    pub fn values_upto(&self, n_max: u64, bits: u32) -> Vec<Float> {
        (0..=n_max).map(|n| self.value(n, bits)).collect()
    }
}

/// Parses `p/q`, an integer, or a terminating decimal such as `1.5` or
/// `-0.75` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidParameter(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = text.split_once('/') {
        let p: Integer = p.trim().parse().map_err(|_| bad())?;
        let q: Integer = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((p, q)));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: Integer = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let scale = Integer::from(Integer::u_pow_u(10, frac.len() as u32 + 1));
    let r = Rational::from((digits, scale));
    Ok(if negative { -r } else { r })
}

/// `n^r`, using square roots for exponents with denominator 1, 2 or 4.
pub fn rational_power(n: u64, r: &Rational, bits: u32) -> Float {
    pow_rational(Float::with_val(bits, n), r)
}

/// `x^r` for `x > 0`, exact roots for denominators 1, 2 and 4.
pub fn pow_rational(x: Float, r: &Rational) -> Float {
    let bits = x.prec();
    let den = r.denom().to_u32();
    let num = r.numer().to_i32();
    match (num, den) {
        (Some(0), _) => Float::with_val(bits, 1),
        (Some(p), Some(1)) => x.pow(p),
        (Some(p), Some(2)) => x.sqrt().pow(p),
        (Some(p), Some(4)) => x.sqrt().sqrt().pow(p),
        _ => {
            let e = Float::with_val(bits, r);
            x.pow(e)
        }
    }
}

/// `n(n+1)(2n+1)/6`, the sum of the first `n` squares.
pub fn sum_of_squares(n: u64, bits: u32) -> Float {
    let n = Integer::from(n);
    let s: Integer = (&n * (Integer::from(&n + 1))) * (Integer::from(&n * 2) + 1) / 6;
    Float::with_val(bits, &s)
}

/// `(n(n+1)/2)^2`, the sum of the first `n` cubes.
pub fn sum_of_cubes(n: u64, bits: u32) -> Float {
    let t = Integer::from(n) * (n + 1) / 2u32;
    Float::with_val(bits, t.square())
}

/// Partial sums `Q_n = q_1 + ... + q_n` for `n <= n_max`, with `Q_0 = q_0`.
pub fn partial_sums(q: &PositiveSequence, n_max: u64, bits: u32) -> Result<PositiveSequence> {
    if n_max == 0 {
        return Err(Error::OutOfRange {
            what: "partial_sums n_max",
            n: 0,
            min: 1,
        });
    }
    q.ensure_defined(n_max)?;
    let mut acc = Float::new(bits);
    let mut sums = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        acc += q.value(n, bits);
        sums.push(acc.clone());
    }
    PositiveSequence::explicit(format!("partial-sums({})", q.label()), sums)?
        .with_zero_value(q.zero_value().clone())
}

/// `A_n = q_1 a_1 + ... + q_n a_n` for `1 <= n <= horizon`, `A_0 = 0`.
///
/// Past `support_end(a)` the transform is constant; the constant tail is
/// written out explicitly up to `horizon`.
pub fn weighted_partial_sum_transform(
    a: &FiniteSequence,
    q: &PositiveSequence,
    horizon: usize,
) -> Result<FiniteSequence> {
    if horizon < a.support_end() {
        return Err(Error::InvalidHorizon {
            horizon,
            support_end: a.support_end(),
        });
    }
    let bits = a.bits();
    q.ensure_defined(a.support_end() as u64)?;
    let mut values = Vec::with_capacity(horizon + 1);
    let mut acc = Complex::zero(bits);
    values.push(Complex::zero(bits));
    for n in 1..=horizon {
        if n <= a.support_end() {
            acc.add_scaled(&q.value(n as u64, bits), &a.at(n));
        }
        values.push(acc.clone());
    }
    Ok(FiniteSequence::from_values(bits, values))
}

/// Order-`alpha` Cesàro numerator `A_n = sum_k C(n-k+alpha-1, n-k) |a_k|`,
/// evaluated for `1 <= n <= horizon`.
pub fn knopp_transform(a: &FiniteSequence, alpha: u32, horizon: usize) -> Result<FiniteSequence> {
    if alpha == 0 {
        return Err(Error::InvalidOrder { alpha });
    }
    if horizon < a.support_end() {
        return Err(Error::InvalidHorizon {
            horizon,
            support_end: a.support_end(),
        });
    }
    let bits = a.bits();
    let moduli: Vec<Float> = (0..=a.support_end()).map(|k| a.at(k).abs()).collect();
    let mut values = vec![Float::new(bits)];
    for n in 1..=horizon {
        let mut acc = Float::new(bits);
        for (k, m) in moduli.iter().enumerate().take(n + 1).skip(1) {
            if m.is_zero() {
                continue;
            }
            let c = binomial((n - k) as u64 + u64::from(alpha) - 1, (n - k) as u64);
            acc += Float::with_val(bits, &c) * m;
        }
        values.push(acc);
    }
    Ok(FiniteSequence::from_floats(bits, values))
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// `sum_{n >= n_start} w_n |A_n|^2` with compensated summation.
pub fn weighted_norm_sq<W>(a: &FiniteSequence, weight: W, n_start: usize) -> Float
where
    W: Fn(usize) -> Float,
{
    let mut acc = CompensatedSum::new(a.bits());
    for n in n_start..=a.support_end() {
        let z = a.at(n);
        if z.is_zero() {
            continue;
        }
        acc.add(&(weight(n) * z.norm_sqr()));
    }
    acc.total()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 256;

    fn reals(seq: &FiniteSequence) -> Vec<f64> {
        seq.values().iter().map(|z| z.re.to_f64()).collect()
    }

    #[test]
    fn parses_rationals_exactly() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), Rational::from((-3, 2)));
        assert_eq!(parse_rational("1.5").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_rational("-0.75").unwrap(), Rational::from((-3, 4)));
        assert_eq!(parse_rational(".1").unwrap(), Rational::from((1, 10)));
        assert_eq!(parse_rational("7").unwrap(), 7);
        assert_eq!(parse_rational("+2.").unwrap(), 2);
        for bad in ["", ".", "1/0", "1e3", "a", "1.2.3", "--1", "1/x"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn reads_outside_support_are_zero() {
        let a = FiniteSequence::from_reals(BITS, &[0.0, 1.0, 2.0, 0.0, 0.0]);
        assert_eq!(a.support_end(), 2);
        assert!(a.get(-3).is_zero());
        assert!(a.get(7).is_zero());
        assert_eq!(FiniteSequence::zero(BITS).support_end(), 0);
    }

    #[test]
    fn boundary_constructors() {
        let one = Complex::from_f64(BITS, 1.0, 0.0);
        let zero = Complex::zero(BITS);
        assert!(FiniteSequence::dirichlet(BITS, vec![one.clone()]).is_err());
        assert!(FiniteSequence::dirichlet(BITS, vec![zero.clone(), one.clone()]).is_ok());
        assert_eq!(
            FiniteSequence::rellich(BITS, vec![zero.clone(), one.clone()]),
            Err(Error::BoundaryCondition { index: 1 })
        );
        assert!(FiniteSequence::rellich(BITS, vec![zero.clone(), zero, one]).is_ok());
    }

    #[test]
    fn partial_sums_examples() {
        let q = partial_sums(&PositiveSequence::linear(), 4, BITS).unwrap();
        let got: Vec<f64> = (1..=4).map(|n| q.value(n, BITS).to_f64()).collect();
        assert_eq!(got, vec![1.0, 3.0, 6.0, 10.0]);

        let q = partial_sums(&PositiveSequence::power_ratio(2, 1), 3, BITS).unwrap();
        for n in 1..=3 {
            assert_eq!(q.value(n, BITS), sum_of_squares(n, BITS));
        }

        let q = partial_sums(&PositiveSequence::ones(), 5, BITS).unwrap();
        for n in 1..=5 {
            assert_eq!(q.value(n, BITS), n);
        }
        assert!(partial_sums(&PositiveSequence::ones(), 0, BITS).is_err());
    }

    #[test]
    fn weighted_partial_sums_examples() {
        let cube = PositiveSequence::power_ratio(3, 1);
        let a = FiniteSequence::unit(BITS, 1);
        let t = weighted_partial_sum_transform(&a, &cube, 6).unwrap();
        assert_eq!(reals(&t), vec![0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);

        let square = PositiveSequence::power_ratio(2, 1);
        let a = FiniteSequence::from_reals(BITS, &[0.0, 1.0, 1.0]);
        let t = weighted_partial_sum_transform(&a, &square, 4).unwrap();
        assert_eq!(reals(&t), vec![0.0, 1.0, 5.0, 5.0, 5.0]);

        let t = weighted_partial_sum_transform(&FiniteSequence::zero(BITS), &square, 4).unwrap();
        assert!(t.is_zero());

        assert_eq!(
            weighted_partial_sum_transform(&a, &square, 1),
            Err(Error::InvalidHorizon {
                horizon: 1,
                support_end: 2
            })
        );
    }

    #[test]
    fn knopp_transform_examples() {
        let t = knopp_transform(&FiniteSequence::unit(BITS, 1), 2, 6).unwrap();
        assert_eq!(reals(&t), vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);

        let t = knopp_transform(&FiniteSequence::unit(BITS, 2), 2, 5).unwrap();
        assert_eq!(reals(&t), vec![0.0, 0.0, 1.0, 2.0, 3.0, 4.0]);

        let a = FiniteSequence::from_reals(BITS, &[0.0, -1.0, 2.0, 0.5]);
        let t = knopp_transform(&a, 1, 4).unwrap();
        assert_eq!(reals(&t), vec![0.0, 1.0, 3.0, 3.5, 3.5]);

        assert_eq!(
            knopp_transform(&a, 0, 4),
            Err(Error::InvalidOrder { alpha: 0 })
        );
    }

    #[test]
    fn weighted_norm_examples() {
        let w = |n: usize| Float::with_val(BITS, 1) / Float::with_val(BITS, 4 * n * n);
        let e2 = FiniteSequence::unit(BITS, 2);
        assert_eq!(weighted_norm_sq(&e2, w, 1), Float::with_val(BITS, 1) / 16);
        assert!(weighted_norm_sq(&FiniteSequence::zero(BITS), w, 1).is_zero());

        let a = FiniteSequence::from_reals(BITS, &[0.0, 1.0, 1.0]);
        let w = |n: usize| Float::with_val(BITS, 1) / Float::with_val(BITS, n * (n + 1) * (n + 1));
        let expected = Float::with_val(BITS, 1) / 4 + Float::with_val(BITS, 1) / 18;
        let got = weighted_norm_sq(&a, w, 1);
        assert!(Float::with_val(BITS, &got - &expected).abs() < 1e-70);
    }

    #[test]
    fn named_sequences() {
        let p = PositiveSequence::power_ratio(3, 2);
        assert_eq!(p.value(4, BITS), 8);
        assert_eq!(
            PositiveSequence::shifted().value(1, BITS),
            Float::with_val(BITS, 3) / 2
        );
        assert_eq!(PositiveSequence::copson_tilde_lambda().value(1, BITS), 1);
        // 2n^2/(n+1) at n = 3
        assert_eq!(
            PositiveSequence::copson_hat_lambda().value(3, BITS),
            Float::with_val(BITS, 18) / 4
        );
        assert_eq!(PositiveSequence::ones().value(0, BITS), 1);
    }

    #[test]
    fn explicit_sequences_validate() {
        let bad = PositiveSequence::explicit(
            "f",
            vec![Float::with_val(BITS, 1), Float::with_val(BITS, 0)],
        );
        assert!(matches!(bad, Err(Error::NonPositive { index: 2, .. })));
        let ok = PositiveSequence::explicit("f", vec![Float::with_val(BITS, 2)]).unwrap();
        assert!(ok.ensure_defined(1).is_ok());
        assert!(ok.ensure_defined(2).is_err());
        assert!(PositiveSequence::ones()
            .with_zero_value(Float::with_val(BITS, -1))
            .is_err());
    }
}
