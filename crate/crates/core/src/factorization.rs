//! Remainder operators that turn the weighted Hardy and Rellich inequalities
//! into identities.
//!
//! `R^(1)` is bidiagonal and `R^(2)` tridiagonal; both annihilate the
//! generating sequence `μ`. The `R^(2)` coefficients come from a scalar
//! recurrence for `γ_n^2` that can break down (`γ_n^2 <= 0`) for unsuitable
//! `(δ, μ)`; breakdown is reported as an error carrying the index.

use rug::{Float, Rational};
use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::operators::{check_copson_exponent, copson_edge_weights};
use crate::precision::relative_residual;
use crate::sequences::{FiniteSequence, PositiveSequence};
use crate::verification::VerificationReport;

/// Extra mantissa bits carried through the `γ^2` recurrence.
const RECURRENCE_GUARD: u32 = 32;

#[derive(Debug, Clone)]
pub struct Remainder1Spec {
    pub lambda: PositiveSequence,
    pub c: Rational,
    pub mu: PositiveSequence,
}

impl Remainder1Spec {
    pub fn new(lambda: PositiveSequence, c: Rational, mu: PositiveSequence) -> Result<Self> {
        check_copson_exponent(&c)?;
        Ok(Self { lambda, c, mu })
    }
}

/// `(R^(1) A)_n = sqrt(w_{n+1}) (sqrt(p_n) A_n - A_{n+1} / sqrt(p_n))` for
/// `n >= 1`, where `w_n = Λ_n^{2-c} / λ_n` and `p_n = μ_{n+1} / μ_n`.
///
/// Index 0 of the result is zero: that row is not part of the identity since
/// `A_0 = 0`.
pub fn remainder1_apply(spec: &Remainder1Spec, a: &FiniteSequence) -> Result<FiniteSequence> {
    a.require_zero_prefix(1)?;
    let bits = a.bits();
    if a.is_zero() {
        return Ok(FiniteSequence::zero(bits));
    }
    let last = a.support_end();
    spec.lambda.ensure_defined(last as u64 + 1)?;
    spec.mu.ensure_defined(last as u64 + 1)?;
    let edge = copson_edge_weights(&spec.lambda, &spec.c, last + 1, bits);
    let mut out = vec![Complex::zero(bits)];
    let mut mu_next = spec.mu.value(1, bits);
    for n in 1..=last {
        let mu_n = mu_next;
        mu_next = spec.mu.value(n as u64 + 1, bits);
        let root_p = Float::with_val(bits, &mu_next / &mu_n).sqrt();
        let s = edge[n + 1].clone().sqrt();
        let k0 = Float::with_val(bits, &s * &root_p);
        let k1 = Float::with_val(bits, &s / &root_p);
        let mut z = a.at(n).scale(&k0);
        z.add_scaled(&(-k1), &a.at(n + 1));
        out.push(z);
    }
    Ok(FiniteSequence::from_values(bits, out))
}

/// `γ_n^2` and `β_n` for `1 <= n <= n_max`; index 0 of each vector is unused.
#[derive(Debug, Clone, Serialize)]
pub struct RemainderCoefficients {
    #[serde(skip)]
    pub gamma_sq: Vec<Float>,
    #[serde(skip)]
    pub beta: Vec<Float>,
    pub n_max: u64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub delta: String,
    pub mu: String,
    pub precision_bits: u32,
}

impl RemainderCoefficients {
    pub fn gamma_sq(&self, n: u64) -> Option<&Float> {
        if n == 0 {
            return None;
        }
        self.gamma_sq.get(n as usize)
    }

    pub fn beta(&self, n: u64) -> Option<&Float> {
        if n == 0 {
            return None;
        }
        self.beta.get(n as usize)
    }

    pub fn has_beta(&self) -> bool {
        self.beta.len() == self.gamma_sq.len()
    }
}

fn mu0(mu: &PositiveSequence, n: u64, bits: u32) -> Float {
    if n == 0 {
        Float::new(bits)
    } else {
        mu.value(n, bits)
    }
}

/// Runs the `γ_n^2` recurrence from its initial value.
///
/// ```text
/// γ_1^2 = (μ_2/μ_1) [2 δ_2/δ_3 + δ_1/δ_3 + 1] - μ_3/μ_1
/// γ_n^2 = (μ_{n+1}/μ_n) / (δ_{n+1} δ_{n+2}) · [2δ_{n+1}^2 + δ_n δ_{n+1} + δ_{n+1} δ_{n+2}
///         - (μ_{n+2}/μ_{n+1}) δ_{n+1} δ_{n+2} - (μ_{n-1}/μ_n) δ_n δ_{n+1}
///         - μ_{n+1} δ_n δ_{n+1} / (μ_n γ_{n-1}^2)]
/// ```
pub fn gamma_coefficients(
    delta: &PositiveSequence,
    mu: &PositiveSequence,
    n_max: u64,
    bits: u32,
) -> Result<RemainderCoefficients> {
    if n_max == 0 {
        return Err(Error::OutOfRange {
            what: "gamma_coefficients n_max",
            n: 0,
            min: 1,
        });
    }
    delta.ensure_defined(n_max + 2)?;
    mu.ensure_defined(n_max + 2)?;
    let wb = bits + RECURRENCE_GUARD;
    let mut gamma_sq = vec![Float::new(bits)];
    let mut prev: Option<Float> = None;
    let mut d = [delta.value(1, wb), delta.value(2, wb), delta.value(3, wb)];
    let mut m = [
        mu0(mu, 0, wb),
        mu.value(1, wb),
        mu.value(2, wb),
        mu.value(3, wb),
    ];
    for n in 1..=n_max {
        if n > 1 {
            d.rotate_left(1);
            d[2] = delta.value(n + 2, wb);
            m.rotate_left(1);
            m[3] = mu.value(n + 2, wb);
        }
        let [d0, d1, d2] = &d;
        let [m_prev, m0, m1, m2] = &m;
        let d12 = Float::with_val(wb, d1 * d2);
        let d01 = Float::with_val(wb, d0 * d1);
        let mut bracket = Float::with_val(wb, d1 * d1) * 2u32 + &d01 + &d12;
        bracket -= Float::with_val(wb, m2 / m1) * &d12;
        bracket -= Float::with_val(wb, m_prev / m0) * &d01;
        if let Some(g) = &prev {
            bracket -= Float::with_val(wb, m1 / m0) * &d01 / g;
        }
        let g = bracket * Float::with_val(wb, m1 / m0) / &d12;
        if g <= 0 || g.is_nan() {
            return Err(Error::FactorizationBreakdown {
                index: n,
                gamma_sq: g.to_f64(),
            });
        }
        gamma_sq.push(Float::with_val(bits, &g));
        prev = Some(g);
    }
    Ok(RemainderCoefficients {
        gamma_sq,
        beta: Vec::new(),
        n_max,
        provenance: Provenance {
            delta: delta.label().to_string(),
            mu: mu.label().to_string(),
            precision_bits: bits,
        },
    })
}

/// Fills `β_n = sqrt(δ_{n+2}) (γ_n μ_n + μ_{n+2} / γ_n) / μ_{n+1}`, the
/// solution of `(R^(2) μ)_n = 0`.
pub fn beta_coefficients(
    delta: &PositiveSequence,
    mu: &PositiveSequence,
    mut coeffs: RemainderCoefficients,
) -> Result<RemainderCoefficients> {
    let bits = coeffs.provenance.precision_bits;
    let mut beta = vec![Float::new(bits)];
    for n in 1..=coeffs.n_max {
        let g2 = &coeffs.gamma_sq[n as usize];
        if *g2 <= 0 {
            return Err(Error::FactorizationBreakdown {
                index: n,
                gamma_sq: g2.to_f64(),
            });
        }
        let g = g2.clone().sqrt();
        let t = Float::with_val(bits, &g * mu.value(n, bits)) + mu.value(n + 2, bits) / &g;
        beta.push(delta.value(n + 2, bits).sqrt() * t / mu.value(n + 1, bits));
    }
    coeffs.beta = beta;
    Ok(coeffs)
}

/// `γ^2` and `β` together.
pub fn remainder2_coefficients(
    delta: &PositiveSequence,
    mu: &PositiveSequence,
    n_max: u64,
    bits: u32,
) -> Result<RemainderCoefficients> {
    beta_coefficients(delta, mu, gamma_coefficients(delta, mu, n_max, bits)?)
}

/// `(R^(2) A)_n = γ_n sqrt(δ_{n+1} δ_{n+2}) A_n - β_n sqrt(δ_{n+1}) A_{n+1}
/// + sqrt(δ_{n+1} δ_{n+2}) A_{n+2} / γ_n` for `n >= 1`; index 0 is zero.
pub fn remainder2_apply(
    delta: &PositiveSequence,
    coeffs: &RemainderCoefficients,
    a: &FiniteSequence,
) -> Result<FiniteSequence> {
    let bits = a.bits();
    if a.is_zero() {
        return Ok(FiniteSequence::zero(bits));
    }
    let last = a.support_end() as u64;
    if !coeffs.has_beta() || coeffs.n_max < last {
        let available = if coeffs.has_beta() { coeffs.n_max } else { 0 };
        return Err(Error::Coverage {
            needed: last,
            available,
        });
    }
    delta.ensure_defined(last + 2)?;
    let mut out = vec![Complex::zero(bits)];
    for n in 1..=last {
        let i = n as usize;
        let s1 = delta.value(n + 1, bits).sqrt();
        let s12 = Float::with_val(bits, &s1 * delta.value(n + 2, bits).sqrt());
        let g = Float::with_val(bits, &coeffs.gamma_sq[i]).sqrt();
        let k0 = Float::with_val(bits, &g * &s12);
        let k1 = -Float::with_val(bits, &coeffs.beta[i] * &s1);
        let k2 = s12 / &g;
        let mut z = a.at(i).scale(&k0);
        z.add_scaled(&k1, &a.at(i + 1));
        z.add_scaled(&k2, &a.at(i + 2));
        out.push(z);
    }
    Ok(FiniteSequence::from_values(bits, out))
}

#[derive(Debug, Clone)]
pub struct GammaBoundsRow {
    pub n: u64,
    /// `p_n p_{n+1}`
    pub lower: Float,
    pub gamma_sq: Float,
    /// `p_n p_{n+1} p_{n+2}`
    pub upper: Float,
}

#[derive(Debug, Clone)]
pub struct GammaBoundsCheck {
    pub rows: Vec<GammaBoundsRow>,
    pub report: VerificationReport,
}

/// Checks `p_n p_{n+1} < γ_n^2 < p_n p_{n+1} p_{n+2}` with `p_n = μ_{n+1}/μ_n`
/// for `1 <= n <= n_max`.
pub fn gamma_bounds_check(
    delta: &PositiveSequence,
    mu: &PositiveSequence,
    n_max: u64,
    bits: u32,
) -> Result<GammaBoundsCheck> {
    mu.ensure_defined(n_max + 3)?;
    let coeffs = gamma_coefficients(delta, mu, n_max, bits)?;
    let mut report = VerificationReport::new(
        "gamma-bounds",
        format!("1..={n_max} delta={} mu={}", delta.label(), mu.label()),
        0.0,
        bits,
    );
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut m = [
        mu.value(1, bits),
        mu.value(2, bits),
        mu.value(3, bits),
        mu.value(4, bits),
    ];
    for n in 1..=n_max {
        if n > 1 {
            m.rotate_left(1);
            m[3] = mu.value(n + 3, bits);
        }
        let lower = Float::with_val(bits, &m[2] / &m[0]);
        let upper = Float::with_val(bits, &m[3] / &m[0]);
        let g = coeffs.gamma_sq[n as usize].clone();
        let holds = g > lower && g < upper;
        let gap_lo = relative_gap(&g, &lower);
        let gap_hi = relative_gap(&upper, &g);
        if holds {
            report.record_inequality(n, true, gap_lo.min(gap_hi), &g, &lower);
        } else if g > lower {
            report.record_inequality(n, false, gap_hi, &upper, &g);
        } else {
            report.record_inequality(n, false, gap_lo, &g, &lower);
        }
        rows.push(GammaBoundsRow {
            n,
            lower,
            gamma_sq: g,
            upper,
        });
    }
    Ok(GammaBoundsCheck { rows, report })
}

/// `(a - b) / |b|` as a double.
pub(crate) fn relative_gap(a: &Float, b: &Float) -> f64 {
    let bits = a.prec().max(b.prec());
    let d = Float::with_val(bits, a - b);
    if b.is_zero() {
        d.to_f64()
    } else {
        (d / b.clone().abs()).to_f64()
    }
}

/// Largest `|(R^(2) μ)_n|` relative to `|γ_n μ_n sqrt(δ_{n+1} δ_{n+2})|` over
/// `1 <= n <= n_max - 2`.
pub fn remainder2_vanishing_residual(
    delta: &PositiveSequence,
    mu: &PositiveSequence,
    coeffs: &RemainderCoefficients,
) -> Result<f64> {
    let bits = coeffs.provenance.precision_bits;
    let n_max = coeffs.n_max;
    if n_max < 3 {
        return Ok(0.0);
    }
    let window: Vec<Complex> = (0..=n_max)
        .map(|n| Complex::real(mu0(mu, n, bits)))
        .collect();
    let seq = FiniteSequence::from_values(bits, window);
    let image = remainder2_apply(delta, coeffs, &seq)?;
    let mut worst = 0f64;
    for n in 1..=n_max - 2 {
        let g = coeffs.gamma_sq[n as usize].clone().sqrt();
        let scale = g * mu.value(n, bits) * delta.value(n + 1, bits);
        let r = relative_residual(
            &scale,
            &(scale.clone() + image.at(n as usize).re.clone()),
            0.0,
        );
        worst = worst.max(r);
    }
    Ok(worst)
}
