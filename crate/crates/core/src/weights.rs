//! Hardy, Copson, Rellich and Knopp weight sequences and their classical
//! comparison bounds.
//!
//! Weights defined as `((op) μ)_n / μ_n` lose `O(n^k)` relative accuracy to
//! cancellation. Evaluators either use an algebraically stabilized form or
//! carry guard bits proportional to `log2 n` and round back to the requested
//! precision. The `*_naive` variants evaluate the textbook formula directly and
//! exist for cross-validation at doubled precision.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::operators::copson_edge_weights;
use crate::sequences::{binomial, sum_of_cubes, sum_of_squares, PositiveSequence};

fn guard_bits(bits: u32, n: u64, order: u32) -> u32 {
    bits + order * (64 - n.leading_zeros()) + 16
}

fn round_to(bits: u32, x: Float) -> Float {
    Float::with_val(bits, x)
}

fn recip(bits: u32, x: u64) -> Float {
    Float::with_val(bits, 1) / Float::with_val(bits, x)
}

/// Exact `1 / prod(factors)` rounded once; immune to `u64` overflow.
fn recip_product(bits: u32, factors: &[u64]) -> Float {
    let p = factors.iter().fold(Integer::from(1), |acc, &f| acc * f);
    Float::with_val(bits, 1) / Float::with_val(bits, &p)
}

fn check_min(what: &'static str, n: u64, min: u64) -> Result<()> {
    if n < min {
        Err(Error::OutOfRange { what, n, min })
    } else {
        Ok(())
    }
}

/// `μ_n` with the generating-function convention `μ_0 = 0`.
fn mu_at(mu: &PositiveSequence, n: u64, bits: u32) -> Float {
    if n == 0 {
        Float::new(bits)
    } else {
        mu.value(n, bits)
    }
}

// ---------------------------------------------------------------------------
// Hardy weights
// ---------------------------------------------------------------------------

/// `w_n = 2 - sqrt(1 - 1/n) - sqrt(1 + 1/n)` in the cancellation-free form
/// `2x^2 / ((1 + sqrt(1 - x^2)) (2 + sqrt(1 - x) + sqrt(1 + x)))`, `x = 1/n`.
pub fn hardy_weight_classical(n: u64, bits: u32) -> Float {
    let x = recip(bits, n);
    let one = Float::with_val(bits, 1);
    let x2 = Float::with_val(bits, x.clone().square());
    let a = Float::with_val(bits, &one - &x2).sqrt() + 1u32;
    let b =
        Float::with_val(bits, &one - &x).sqrt() + Float::with_val(bits, &one + &x).sqrt() + 2u32;
    x2 * 2u32 / (a * b)
}

/// Textbook form of [`hardy_weight_classical`].
pub fn hardy_weight_classical_naive(n: u64, bits: u32) -> Float {
    let x = recip(bits, n);
    let one = Float::with_val(bits, 1);
    let minus = Float::with_val(bits, &one - &x).sqrt();
    let plus = Float::with_val(bits, &one + &x).sqrt();
    Float::with_val(bits, 2) - minus - plus
}

/// Double-precision version of the stabilized form.
pub fn hardy_weight_classical_f64(n: u64) -> f64 {
    let x = 1.0 / n as f64;
    2.0 * x * x / ((1.0 + (1.0 - x * x).sqrt()) * (2.0 + (1.0 - x).sqrt() + (1.0 + x).sqrt()))
}

/// `1 / (4 n^2)`
pub fn hardy_bound(n: u64, bits: u32) -> Float {
    recip_product(bits, &[4, n, n])
}

/// `w_n(μ) = 2 - μ_{n-1}/μ_n - μ_{n+1}/μ_n` with `μ_0 = 0`.
pub fn hardy_weight_mu(mu: &PositiveSequence, n: u64, bits: u32) -> Result<Float> {
    check_min("hardy_weight_mu", n, 1)?;
    mu.ensure_defined(n + 1)?;
    let wb = guard_bits(bits, n, 2);
    let m = mu.value(n, wb);
    let s = Float::with_val(wb, mu_at(mu, n - 1, wb) + mu.value(n + 1, wb));
    Ok(round_to(bits, Float::with_val(wb, 2) - s / m))
}

/// `η_n = ((-Δ_Λ) μ)_n / μ_n`, with `Λ_0 = λ_0` and `μ_0 = 0`.
pub fn eta_weight(
    lambda: &PositiveSequence,
    c: &Rational,
    mu: &PositiveSequence,
    n: u64,
    bits: u32,
) -> Result<Float> {
    check_min("eta_weight", n, 1)?;
    crate::operators::check_copson_exponent(c)?;
    lambda.ensure_defined(n + 1)?;
    mu.ensure_defined(n + 1)?;
    let wb = guard_bits(bits, n, 2);
    let (e_n, e_next) = if *c == 2 {
        (
            Float::with_val(wb, 1) / lambda.value(n, wb),
            Float::with_val(wb, 1) / lambda.value(n + 1, wb),
        )
    } else {
        let edge = copson_edge_weights(lambda, c, n as usize + 1, wb);
        (edge[n as usize].clone(), edge[n as usize + 1].clone())
    };
    Ok(round_to(bits, ratio_weight(&e_n, &e_next, mu, n, wb)))
}

/// `e_n + e_{n+1} - (μ_{n-1}/μ_n) e_n - (μ_{n+1}/μ_n) e_{n+1}`.
fn ratio_weight(e_n: &Float, e_next: &Float, mu: &PositiveSequence, n: u64, bits: u32) -> Float {
    let m = mu.value(n, bits);
    let prev = mu_at(mu, n - 1, bits) / &m;
    let next = mu.value(n + 1, bits) / &m;
    let one = Float::with_val(bits, 1);
    Float::with_val(bits, &one - &prev) * e_n + Float::with_val(bits, &one - &next) * e_next
}

/// `σ_n = 1/λ_n + 1/λ_{n+1} - μ_{n-1}/(λ_n μ_n) - μ_{n+1}/(λ_{n+1} μ_n)`.
pub fn sigma_weight(
    lambda: &PositiveSequence,
    mu: &PositiveSequence,
    n: u64,
    bits: u32,
) -> Result<Float> {
    check_min("sigma_weight", n, 1)?;
    lambda.ensure_defined(n + 1)?;
    mu.ensure_defined(n + 1)?;
    let wb = guard_bits(bits, n, 2);
    let e_n = Float::with_val(wb, 1) / lambda.value(n, wb);
    let e_next = Float::with_val(wb, 1) / lambda.value(n + 1, wb);
    Ok(round_to(bits, ratio_weight(&e_n, &e_next, mu, n, wb)))
}

/// `1 / (n (n+1)^2)`, the weight of the generalized Hardy inequality with
/// `q_n = n`.
pub fn generalized_hardy_bound(n: u64, bits: u32) -> Float {
    recip_product(bits, &[n, n + 1, n + 1])
}

/// `1 / (n^2 (n+1))`, the closed form of `η_n` for `λ_n = μ_n = n`, `c = 2`.
pub fn eta_linear_closed_form(n: u64, bits: u32) -> Float {
    recip_product(bits, &[n, n, n + 1])
}

// ---------------------------------------------------------------------------
// Power-weight Hardy weights
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct GuptaWeight {
    pub value: Float,
    /// False when `alpha` is outside `{0} ∪ [1/3, 1)`, where the improvement
    /// is not known to hold.
    pub in_validity_domain: bool,
}

pub fn gupta_validity(alpha: &Rational) -> bool {
    *alpha == 0 || (*alpha >= (1, 3) && *alpha < 1)
}

/// `w_n(α, β)` with `β = (1 - α)/2`.
pub fn gupta_weight(alpha: &Rational, n: u64, bits: u32) -> Result<GuptaWeight> {
    check_min("gupta_weight", n, 1)?;
    let wb = guard_bits(bits, n, 2);
    let a = Float::with_val(wb, alpha);
    let beta = Float::with_val(wb, 1 - Float::with_val(wb, alpha)) / 2u32;
    let ab = Float::with_val(wb, &a + &beta);
    let value = if n == 1 {
        let two = Float::with_val(wb, 2);
        let t1 = Float::with_val(wb, Pow::pow(&two, &a));
        let t2 = Float::with_val(wb, Pow::pow(&two, &ab));
        Float::with_val(wb, 1) + t1 - t2
    } else {
        let x = recip(wb, n);
        let up = Float::with_val(wb, 1) + &x;
        let down = Float::with_val(wb, 1) - &x;
        let t1 = Float::with_val(wb, Pow::pow(&up, &a));
        let t2 = Float::with_val(wb, Pow::pow(&down, &beta));
        let t3 = Float::with_val(wb, Pow::pow(&up, &ab));
        let nn = Float::with_val(wb, n);
        let scale = Float::with_val(wb, Pow::pow(&nn, &a));
        (Float::with_val(wb, 1) + t1 - t2 - t3) * scale
    };
    Ok(GuptaWeight {
        value: round_to(bits, value),
        in_validity_domain: gupta_validity(alpha),
    })
}

/// `(α - 1)^2 / 4 · n^{α - 2}`
pub fn gupta_bound(alpha: &Rational, n: u64, bits: u32) -> Float {
    let a = Float::with_val(bits, alpha);
    let c = Float::with_val(bits, Float::with_val(bits, &a - 1u32).square()) / 4u32;
    let nn = Float::with_val(bits, n);
    let e = Float::with_val(bits, &a - 2u32);
    c * Float::with_val(bits, Pow::pow(&nn, &e))
}

// ---------------------------------------------------------------------------
// Copson weights
// ---------------------------------------------------------------------------

/// `1 - y^{3/4}` for `y = 1 + s/n`, `s = ±1`, without cancellation:
/// with `t = y^{1/4}`, `1 - t^3 = (1 - y)(1 + t + t^2) / ((1 + t)(1 + t^2))`.
fn one_minus_three_quarter_power(n: u64, s: i32, bits: u32) -> Float {
    let one_minus_y = Float::with_val(bits, -s) / Float::with_val(bits, n);
    let y = Float::with_val(bits, 1) - &one_minus_y;
    let t = y.sqrt().sqrt();
    let t2 = Float::with_val(bits, t.clone().square());
    let num = Float::with_val(bits, &t + &t2) + 1u32;
    let den = (Float::with_val(bits, &t + 1u32)) * (Float::with_val(bits, &t2 + 1u32));
    one_minus_y * num / den
}

/// `Ṽ_n = ((-Δ_λ) n^{3/4}) / n^{3/4}` with `λ_n = n^2 / sqrt(S_n)`,
/// `S_n = n(n+1)(2n+1)/6`.
pub fn copson_tilde_weight(n: u64, bits: u32) -> Result<Float> {
    check_min("copson_tilde_weight", n, 1)?;
    let wb = guard_bits(bits, n, 2);
    let a = sum_of_squares(n, wb).sqrt() / Float::with_val(wb, n).square();
    let b = sum_of_squares(n + 1, wb).sqrt() / Float::with_val(wb, n + 1).square();
    let left = one_minus_three_quarter_power(n, -1, wb);
    let right = one_minus_three_quarter_power(n, 1, wb);
    Ok(round_to(bits, a * left + b * right))
}

/// Four-term textbook form of [`copson_tilde_weight`].
pub fn copson_tilde_weight_naive(n: u64, bits: u32) -> Result<Float> {
    check_min("copson_tilde_weight", n, 1)?;
    let a = sum_of_squares(n, bits).sqrt() / Float::with_val(bits, n).square();
    let b = sum_of_squares(n + 1, bits).sqrt() / Float::with_val(bits, n + 1).square();
    let x = recip(bits, n);
    let q = Float::with_val(bits, 3) / 4u32;
    let down = Float::with_val(bits, Pow::pow(Float::with_val(bits, 1 - x.clone()), &q));
    let up = Float::with_val(bits, Pow::pow(Float::with_val(bits, 1 + x), &q));
    Ok(Float::with_val(bits, &a + &b) - a * down - b * up)
}

/// `n^2 / (16 S_n^{3/2})`
pub fn copson_tilde_bound(n: u64, bits: u32) -> Float {
    let s = sum_of_squares(n, bits);
    let s32 = Float::with_val(bits, s.clone().sqrt() * &s);
    Float::with_val(bits, n).square() / (s32 * 16u32)
}

/// `V̂_n = ((-Δ_λ) n) / n` with `λ_n = n^3 / sqrt(Ŝ_n)`, `Ŝ_n = (n(n+1)/2)^2`,
/// exact in rationals since `sqrt(Ŝ_n) = n(n+1)/2`.
pub fn copson_hat_weight_exact(n: u64) -> Result<Rational> {
    check_min("copson_hat_weight", n, 1)?;
    let n_ = Integer::from(n);
    let root = |m: &Integer| Rational::from(((m * Integer::from(m + 1u32)), 2u32));
    let cube = |m: &Integer| m.clone().square() * m;
    let n1 = Integer::from(&n_ + 1u32);
    let a = root(&n_) / Rational::from(cube(&n_));
    let b = root(&n1) / Rational::from(cube(&n1));
    let x = Rational::from((1u32, n_.clone()));
    let down = Rational::from(1u32) - x.clone();
    let up = Rational::from(1u32) + x;
    Ok(a.clone() + b.clone() - a * down - b * up)
}

pub fn copson_hat_weight(n: u64, bits: u32) -> Result<Float> {
    Ok(Float::with_val(bits, &copson_hat_weight_exact(n)?))
}

/// Four-term form evaluated in floating point.
pub fn copson_hat_weight_naive(n: u64, bits: u32) -> Result<Float> {
    check_min("copson_hat_weight", n, 1)?;
    let a = sum_of_cubes(n, bits).sqrt() / Float::with_val(bits, n).pow(3u32);
    let b = sum_of_cubes(n + 1, bits).sqrt() / Float::with_val(bits, n + 1).pow(3u32);
    let x = recip(bits, n);
    let down = Float::with_val(bits, 1 - x.clone());
    let up = Float::with_val(bits, 1 + x);
    Ok(Float::with_val(bits, &a + &b) - a * down - b * up)
}

/// `n^3 / (16 Ŝ_n^{3/2}) = 1 / (2 (n+1)^3)`
pub fn copson_hat_bound_exact(n: u64) -> Rational {
    let n_ = Integer::from(n);
    let root = Rational::from(((&n_ * Integer::from(&n_ + 1u32)), 2u32));
    let cube = Rational::from(n_.clone().square() * &n_);
    cube / ((root.clone().square() * &root) * Rational::from(16u32))
}

pub fn copson_hat_bound(n: u64, bits: u32) -> Float {
    Float::with_val(bits, &copson_hat_bound_exact(n))
}

/// `(4n^2 + 4n + 1) / (2 (n+1)^3 n^3)`, the exact excess of `V̂_n` over its bound.
pub fn copson_hat_gap_closed_form(n: u64) -> Rational {
    let n_ = Integer::from(n);
    let num = (4u32 * n_.clone().square()) + Integer::from(4u32 * &n_) + 1u32;
    let n1 = Integer::from(&n_ + 1u32);
    let den = (2u32 * (n1.clone().square() * &n1))
        * (n_.clone().square() * &n_);
    Rational::from((num, den))
}

// ---------------------------------------------------------------------------
// Rellich weights
// ---------------------------------------------------------------------------

/// `ρ_n^(2) = 6 - 4(1 + 1/n)^{3/2} - 4(1 - 1/n)^{3/2} + (1 + 2/n)^{3/2} + (1 - 2/n)^{3/2}`.
pub fn rellich_rho2(n: u64, bits: u32) -> Result<Float> {
    check_min("rellich_rho2", n, 2)?;
    let wb = guard_bits(bits, n, 4);
    Ok(round_to(bits, rho2_terms(n, wb)))
}

fn rho2_terms(n: u64, bits: u32) -> Float {
    let p32 = |k: i64| {
        let y = Float::with_val(bits, 1) + Float::with_val(bits, k) / Float::with_val(bits, n);
        let r = y.clone().sqrt();
        y * r
    };
    Float::with_val(bits, 6) - p32(1) * 4u32 - p32(-1) * 4u32 + p32(2) + p32(-2)
}

/// [`rellich_rho2`] without guard bits.
pub fn rellich_rho2_naive(n: u64, bits: u32) -> Result<Float> {
    check_min("rellich_rho2", n, 2)?;
    Ok(rho2_terms(n, bits))
}

/// `9 / (16 n^4)`
pub fn rellich_bound(n: u64, bits: u32) -> Float {
    let n2 = Float::with_val(bits, n).square();
    Float::with_val(bits, 9) / (n2.square() * 16u32)
}

/// `((-Δ)^α μ^(α))_n / μ^(α)_n` with `μ^(α)_m = m^{α - 1/2}` and zero
/// extension to `m <= 0`, using the interior stencil
/// `sum_j (-1)^j C(2α, α + j) μ_{n+j}`.
pub fn rellich_rho_alpha(alpha: u32, n: u64, bits: u32) -> Result<Float> {
    if alpha == 0 {
        return Err(Error::InvalidOrder { alpha });
    }
    check_min("rellich_rho_alpha", n, u64::from(alpha))?;
    let wb = guard_bits(bits, n, 2 * alpha);
    let mu = |m: i64| -> Float {
        if m <= 0 {
            Float::new(wb)
        } else {
            let x = Float::with_val(wb, m);
            let r = x.clone().sqrt();
            Float::with_val(wb, (&x).pow(alpha - 1)) * r
        }
    };
    let a = i64::from(alpha);
    let mut acc = Float::new(wb);
    for j in -a..=a {
        let c = Float::with_val(wb, &binomial(2 * alpha as u64, (a + j) as u64));
        let term = c * mu(n as i64 + j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(round_to(bits, acc / mu(n as i64)))
}

/// `((2α)!)^2 / (16^α (α!)^2)`
pub fn rellich_classical_constant(alpha: u32) -> Rational {
    let f2 = Integer::from(Integer::factorial(2 * alpha));
    let f = Integer::from(Integer::factorial(alpha));
    let num = f2.square();
    let den = Integer::from(Integer::u_pow_u(16, alpha)) * f.square();
    Rational::from((num, den))
}

/// `((2α)!)^2 / (16^α (α!)^2) · n^{-2α}`
pub fn rellich_alpha_bound(alpha: u32, n: u64, bits: u32) -> Float {
    let c = Float::with_val(bits, &rellich_classical_constant(alpha));
    let p = Float::with_val(bits, Float::with_val(bits, n).pow(2 * alpha));
    c / p
}

/// `σ_n^(2) = ((-Δ_δ)^2 μ)_n / μ_n` for `n >= 2`, with `μ_0 = 0`.
pub fn sigma2_weight(
    delta: &PositiveSequence,
    mu: &PositiveSequence,
    n: u64,
    bits: u32,
) -> Result<Float> {
    check_min("sigma2_weight", n, 2)?;
    delta.ensure_defined(n + 2)?;
    mu.ensure_defined(n + 2)?;
    let wb = guard_bits(bits, n, 4);
    let d = |k: u64| delta.value(k, wb);
    let (dm, d0, d1, d2) = (d(n - 1), d(n), d(n + 1), d(n + 2));
    let m = mu.value(n, wb);
    let r = |k: u64| mu_at(mu, k, wb) / &m;
    let sq = |x: &Float| Float::with_val(wb, x.clone().square());
    let p = |x: &Float, y: &Float| Float::with_val(wb, x * y);

    let diag = Float::with_val(wb, &d0 + &d1).square() + sq(&d0) + sq(&d1);
    let lower = sq(&d0) * 2u32 + p(&d0, &dm) + p(&d0, &d1);
    let upper = sq(&d1) * 2u32 + p(&d0, &d1) + p(&d1, &d2);
    let value = diag - r(n - 1) * lower - r(n + 1) * upper
        + r(n - 2) * p(&d0, &dm)
        + r(n + 2) * p(&d1, &d2);
    Ok(round_to(bits, value))
}

// ---------------------------------------------------------------------------
// Knopp constants
// ---------------------------------------------------------------------------

/// `(Γ(α+1) Γ(1/2) / Γ(α+1/2))^2 = (4^α (α!)^2 / (2α)!)^2`, exactly.
pub fn knopp_constant(alpha: u32) -> Result<Rational> {
    if alpha == 0 {
        return Err(Error::InvalidOrder { alpha });
    }
    let f = Integer::from(Integer::factorial(alpha));
    let f2 = Integer::from(Integer::factorial(2 * alpha));
    let num = Integer::from(Integer::u_pow_u(4, alpha)) * f.square();
    Ok(Rational::from((num, f2)).square())
}

/// `1 / C(n - 1 + α, n - 1)^2`, the normalization of the order-`α` Cesàro mean.
pub fn knopp_row_weight(alpha: u32, n: u64) -> Result<Rational> {
    if alpha == 0 {
        return Err(Error::InvalidOrder { alpha });
    }
    check_min("knopp_row_weight", n, 1)?;
    let c = binomial(n - 1 + u64::from(alpha), n - 1);
    Ok(Rational::from((Integer::from(1), c.square())))
}

/// Order-2 Knopp constant for the mean normalized by `1/(n(n+1))`.
///
/// That mean is half the one normalized by `1/C(n+1, n-1)`, so its squared
/// constant is a quarter of `knopp_constant(2) = 64/9`.
pub fn knopp_order2_unnormalized_constant() -> Rational {
    Rational::from((16, 9))
}

/// `1 / (n^2 (n+1)^2)`, the row weight paired with
/// [`knopp_order2_unnormalized_constant`].
pub fn knopp_order2_unnormalized_row_weight(n: u64) -> Rational {
    let d = Integer::from(n) * (n + 1);
    Rational::from((Integer::from(1), d.square()))
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

type Evaluator = dyn Fn(u64, u32) -> Result<Float> + Send + Sync;

/// A named weight sequence `n ↦ w_n` for `n >= n_min`.
#[derive(Clone)]
pub struct WeightFamily {
    name: String,
    params: BTreeMap<String, String>,
    n_min: u64,
    evaluator: Arc<Evaluator>,
}

impl fmt::Debug for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightFamily")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("n_min", &self.n_min)
            .finish()
    }
}

impl WeightFamily {
    pub fn new<F>(name: impl Into<String>, n_min: u64, evaluator: F) -> Self
    where
        F: Fn(u64, u32) -> Result<Float> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            params: BTreeMap::new(),
            n_min,
            evaluator: Arc::new(evaluator),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, String> {
        &self.params
    }

    pub fn n_min(&self) -> u64 {
        self.n_min
    }

    pub fn eval(&self, n: u64, bits: u32) -> Result<Float> {
        check_min("weight family", n, self.n_min)?;
        (self.evaluator)(n, bits)
    }

    pub fn hardy_classical() -> Self {
        Self::new("hardy-classical", 1, |n, b| {
            Ok(hardy_weight_classical(n, b))
        })
    }

    pub fn hardy_bound() -> Self {
        Self::new("hardy-bound", 1, |n, b| Ok(hardy_bound(n, b)))
    }

    pub fn hardy_mu(mu: PositiveSequence) -> Self {
        let label = mu.label().to_string();
        Self::new("hardy-mu", 1, move |n, b| hardy_weight_mu(&mu, n, b)).with_param("mu", label)
    }

    pub fn eta(lambda: PositiveSequence, c: Rational, mu: PositiveSequence) -> Self {
        let (ll, ml, cl) = (
            lambda.label().to_string(),
            mu.label().to_string(),
            c.to_string(),
        );
        Self::new("eta", 1, move |n, b| eta_weight(&lambda, &c, &mu, n, b))
            .with_param("lambda", ll)
            .with_param("c", cl)
            .with_param("mu", ml)
    }

    /// `η_n` for `λ_n = μ_n = n`, `c = 2`.
    pub fn eta_linear() -> Self {
        let mut f = Self::eta(
            PositiveSequence::linear(),
            Rational::from(2),
            PositiveSequence::linear(),
        );
        f.name = "eta-linear".into();
        f
    }

    pub fn generalized_hardy_bound() -> Self {
        Self::new("generalized-hardy-bound", 1, |n, b| {
            Ok(generalized_hardy_bound(n, b))
        })
    }

    pub fn sigma(lambda: PositiveSequence, mu: PositiveSequence) -> Self {
        let (ll, ml) = (lambda.label().to_string(), mu.label().to_string());
        Self::new("sigma", 1, move |n, b| sigma_weight(&lambda, &mu, n, b))
            .with_param("lambda", ll)
            .with_param("mu", ml)
    }

    pub fn gupta(alpha: Rational) -> Self {
        let a = alpha.to_string();
        Self::new(
            "gupta",
            1,
            move |n, b| Ok(gupta_weight(&alpha, n, b)?.value),
        )
        .with_param("alpha", a)
    }

    pub fn gupta_bound(alpha: Rational) -> Self {
        let a = alpha.to_string();
        Self::new("gupta-bound", 1, move |n, b| Ok(gupta_bound(&alpha, n, b)))
            .with_param("alpha", a)
    }

    pub fn copson_tilde() -> Self {
        Self::new("copson-tilde", 1, copson_tilde_weight)
    }

    pub fn copson_tilde_bound() -> Self {
        Self::new("copson-tilde-bound", 1, |n, b| Ok(copson_tilde_bound(n, b)))
    }

    pub fn copson_hat() -> Self {
        Self::new("copson-hat", 1, copson_hat_weight)
    }

    pub fn copson_hat_bound() -> Self {
        Self::new("copson-hat-bound", 1, |n, b| Ok(copson_hat_bound(n, b)))
    }

    pub fn rellich_rho2() -> Self {
        Self::new("rellich-rho2", 2, rellich_rho2)
    }

    pub fn rellich_bound() -> Self {
        Self::new("rellich-bound", 2, |n, b| Ok(rellich_bound(n, b)))
    }

    pub fn rellich_rho_alpha(alpha: u32) -> Self {
        Self::new("rellich-rho-alpha", u64::from(alpha.max(1)), move |n, b| {
            rellich_rho_alpha(alpha, n, b)
        })
        .with_param("alpha", alpha)
    }

    pub fn rellich_alpha_bound(alpha: u32) -> Self {
        Self::new(
            "rellich-alpha-bound",
            u64::from(alpha.max(1)),
            move |n, b| Ok(rellich_alpha_bound(alpha, n, b)),
        )
        .with_param("alpha", alpha)
    }

    pub fn sigma2(delta: PositiveSequence, mu: PositiveSequence) -> Self {
        let (dl, ml) = (delta.label().to_string(), mu.label().to_string());
        Self::new("sigma2", 2, move |n, b| sigma2_weight(&delta, &mu, n, b))
            .with_param("delta", dl)
            .with_param("mu", ml)
    }
}
