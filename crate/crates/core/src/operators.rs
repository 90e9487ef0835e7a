//! Difference operators on the half-line `N_0`.
//!
//! All operators here are banded with real coefficients. Every `apply_*`
//! function returns rows `0..=support_end + 2` of the image; rows past that
//! are identically zero for the stencils implemented here.

use rug::{Float, Rational};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::CompensatedSum;
use crate::sequences::{binomial, pow_rational, FiniteSequence, PositiveSequence};

/// Anything that maps a finitely supported sequence to another one.
pub trait SequenceOperator {
    fn apply(&self, a: &FiniteSequence) -> FiniteSequence;
}

impl<F> SequenceOperator for F
where
    F: Fn(&FiniteSequence) -> FiniteSequence,
{
    fn apply(&self, a: &FiniteSequence) -> FiniteSequence {
        self(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Dirichlet,
    GeneralizedLambdaC,
    WeightedDelta,
    BilaplacianDelta,
}

/// Parameters of one of the four operator families.
#[derive(Debug, Clone)]
pub struct OperatorSpec {
    kind: OperatorKind,
    weight: Option<PositiveSequence>,
    c: Option<Rational>,
}

impl OperatorSpec {
    pub fn dirichlet() -> Self {
        Self {
            kind: OperatorKind::Dirichlet,
            weight: None,
            c: None,
        }
    }

    /// `(-Δ_Λ)` with `1 < c <= 2`; `λ_0` is the sequence's boundary value.
    pub fn generalized(lambda: PositiveSequence, c: Rational) -> Result<Self> {
        check_copson_exponent(&c)?;
        Ok(Self {
            kind: OperatorKind::GeneralizedLambdaC,
            weight: Some(lambda),
            c: Some(c),
        })
    }

    pub fn weighted_delta(delta: PositiveSequence) -> Self {
        Self {
            kind: OperatorKind::WeightedDelta,
            weight: Some(delta),
            c: None,
        }
    }

    pub fn bilaplacian_delta(delta: PositiveSequence) -> Self {
        Self {
            kind: OperatorKind::BilaplacianDelta,
            weight: Some(delta),
            c: None,
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn weight(&self) -> Option<&PositiveSequence> {
        self.weight.as_ref()
    }

    pub fn c(&self) -> Option<&Rational> {
        self.c.as_ref()
    }
}

impl SequenceOperator for OperatorSpec {
    fn apply(&self, a: &FiniteSequence) -> FiniteSequence {
        let weight = || {
            self.weight
                .as_ref()
                .expect("weighted operator has a weight")
        };
        match self.kind {
            OperatorKind::Dirichlet => apply_dirichlet_laplacian(a),
            OperatorKind::GeneralizedLambdaC => {
                apply_generalized_laplacian(weight(), self.c.as_ref().expect("c is set"), a)
            }
            OperatorKind::WeightedDelta => apply_weighted_laplacian_delta(weight(), a),
            OperatorKind::BilaplacianDelta => apply_bilaplacian_delta(weight(), a),
        }
    }
}

/// `(-Δ)^alpha` as an operator value.
#[derive(Debug, Clone, Copy)]
pub struct LaplacianPower(pub u32);

impl SequenceOperator for LaplacianPower {
    fn apply(&self, a: &FiniteSequence) -> FiniteSequence {
        apply_laplacian_power(a, self.0).expect("order checked at construction")
    }
}

pub fn check_copson_exponent(c: &Rational) -> Result<()> {
    if *c > 1 && *c <= 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "c must lie in (1, 2], got {c}"
        )))
    }
}

/// Tridiagonal Laplacian with edge weights `e_n`:
/// row 0 is `(e_0 + e_1) A_0 - e_1 A_1`, row `n >= 1` is
/// `(e_n + e_{n+1}) A_n - e_n A_{n-1} - e_{n+1} A_{n+1}`.
fn edge_laplacian(edge: &[Float], a: &FiniteSequence) -> FiniteSequence {
    let bits = a.bits();
    let rows = a.support_end() + 2;
    debug_assert!(edge.len() > rows + 1);
    let out = (0..=rows)
        .map(|n| {
            let mut r = Complex::zero(bits);
            let diag = Float::with_val(bits, &edge[n] + &edge[n + 1]);
            r.add_scaled(&diag, &a.at(n));
            if n > 0 {
                r.add_scaled(&(-edge[n].clone()), &a.at(n - 1));
            }
            r.add_scaled(&(-edge[n + 1].clone()), &a.at(n + 1));
            r
        })
        .collect();
    FiniteSequence::from_values(bits, out)
}

/// `(-Δ A)_0 = 2A_0 - A_1`, `(-Δ A)_n = 2A_n - A_{n-1} - A_{n+1}`.
pub fn apply_dirichlet_laplacian(a: &FiniteSequence) -> FiniteSequence {
    let bits = a.bits();
    let rows = a.support_end() + 2;
    let out = (0..=rows)
        .map(|n| {
            let mut r = a.at(n).scale(&Float::with_val(bits, 2));
            r -= &a.get(n as i64 - 1);
            r -= &a.at(n + 1);
            r
        })
        .collect();
    FiniteSequence::from_values(bits, out)
}

/// `alpha`-fold composition of the Dirichlet Laplacian.
pub fn apply_laplacian_power(a: &FiniteSequence, alpha: u32) -> Result<FiniteSequence> {
    if alpha == 0 {
        return Err(Error::InvalidOrder { alpha });
    }
    let mut out = apply_dirichlet_laplacian(a);
    for _ in 1..alpha {
        out = apply_dirichlet_laplacian(&out);
    }
    Ok(out)
}

/// Edge weights `Λ_n^{2-c} / λ_n` for `n = 0..=upto`, where
/// `Λ_0 = λ_0` and `Λ_n = λ_1 + ... + λ_n`.
pub fn copson_edge_weights(
    lambda: &PositiveSequence,
    c: &Rational,
    upto: usize,
    bits: u32,
) -> Vec<Float> {
    let exponent = 2 - c.clone();
    let mut out = Vec::with_capacity(upto + 1);
    let lambda0 = lambda.value(0, bits);
    out.push(pow_rational(lambda0.clone(), &exponent) / &lambda0);
    let mut big_lambda = Float::new(bits);
    for n in 1..=upto as u64 {
        let l = lambda.value(n, bits);
        big_lambda += &l;
        out.push(pow_rational(big_lambda.clone(), &exponent) / &l);
    }
    out
}

/// `(-Δ_Λ)`: the `λ, c`-weighted Laplacian, with `Λ_0 = λ_0` taken from the
/// sequence's boundary value.
pub fn apply_generalized_laplacian(
    lambda: &PositiveSequence,
    c: &Rational,
    a: &FiniteSequence,
) -> FiniteSequence {
    let edge = copson_edge_weights(lambda, c, a.support_end() + 4, a.bits());
    edge_laplacian(&edge, a)
}

/// `(-Δ_δ)`: rows `(δ_n + δ_{n+1}) A_n - δ_n A_{n-1} - δ_{n+1} A_{n+1}`;
/// row 0 uses the boundary value `δ_0`.
pub fn apply_weighted_laplacian_delta(
    delta: &PositiveSequence,
    a: &FiniteSequence,
) -> FiniteSequence {
    let edge = delta.values_upto(a.support_end() as u64 + 4, a.bits());
    edge_laplacian(&edge, a)
}

/// `(-Δ_δ)^2` from its explicit five-diagonal rows.
///
/// Row 0 carries the coefficient `-(2δ_1^2 + δ_0δ_1 + δ_1δ_2)` on `A_1`,
/// which is what composing `(-Δ_δ)` with itself produces and what keeps the
/// matrix symmetric.
pub fn apply_bilaplacian_delta(delta: &PositiveSequence, a: &FiniteSequence) -> FiniteSequence {
    let bits = a.bits();
    let rows = a.support_end() + 2;
    let d = delta.values_upto(rows as u64 + 3, bits);
    let prod = |i: usize, j: usize| Float::with_val(bits, &d[i] * &d[j]);
    let sq = |i: usize| Float::with_val(bits, d[i].clone().square());
    let out = (0..=rows)
        .map(|n| {
            let mut r = Complex::zero(bits);
            if n == 0 {
                let diag = Float::with_val(bits, &d[0] + &d[1]).square() + sq(1);
                let c1 = -(sq(1) * 2u32 + prod(0, 1) + prod(1, 2));
                r.add_scaled(&diag, &a.at(0));
                r.add_scaled(&c1, &a.at(1));
                r.add_scaled(&prod(1, 2), &a.at(2));
                return r;
            }
            let diag = Float::with_val(bits, &d[n] + &d[n + 1]).square() + sq(n) + sq(n + 1);
            let lower = -(sq(n) * 2u32 + prod(n, n - 1) + prod(n, n + 1));
            let upper = -(sq(n + 1) * 2u32 + prod(n, n + 1) + prod(n + 1, n + 2));
            r.add_scaled(&diag, &a.at(n));
            r.add_scaled(&lower, &a.at(n - 1));
            r.add_scaled(&upper, &a.at(n + 1));
            if n >= 2 {
                r.add_scaled(&prod(n, n - 1), &a.at(n - 2));
            }
            r.add_scaled(&prod(n + 1, n + 2), &a.at(n + 2));
            r
        })
        .collect();
    FiniteSequence::from_values(bits, out)
}

/// `(∇^alpha A)_n = sum_{k=1}^{n} (-1)^{k+1} C(alpha, k-1) A_{n-k+1}`.
pub fn backward_difference(a: &FiniteSequence, alpha: u32) -> Result<FiniteSequence> {
    if alpha == 0 {
        return Err(Error::InvalidOrder { alpha });
    }
    let bits = a.bits();
    let rows = a.support_end() + alpha as usize;
    let coeffs: Vec<Float> = (0..=alpha as u64)
        .map(|j| {
            let c = Float::with_val(bits, &binomial(u64::from(alpha), j));
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let mut out = vec![Complex::zero(bits)];
    for n in 1..=rows {
        let mut r = Complex::zero(bits);
        for (j, c) in coeffs.iter().enumerate().take(n) {
            r.add_scaled(c, &a.at(n - j));
        }
        out.push(r);
    }
    Ok(FiniteSequence::from_values(bits, out))
}

/// `sum_{n >= n_start} (op A)_n conj(A_n)` as a complex number.
pub fn quadratic_form_complex<O: SequenceOperator + ?Sized>(
    op: &O,
    a: &FiniteSequence,
    n_start: usize,
) -> Complex {
    op.apply(a).inner(a, n_start)
}

/// Real quadratic form of a self-adjoint operator. An imaginary part above
/// `max(tolerance_abs, tolerance_rel * |re|)` is reported as an error.
pub fn quadratic_form<O: SequenceOperator + ?Sized>(
    op: &O,
    a: &FiniteSequence,
    n_start: usize,
    tolerance_rel: f64,
    tolerance_abs: f64,
) -> Result<Float> {
    let q = quadratic_form_complex(op, a, n_start);
    let imag = q.im.to_f64().abs();
    let tolerance = tolerance_abs.max(tolerance_rel * q.re.to_f64().abs());
    if imag > tolerance {
        return Err(Error::NonHermitianResidue { imag, tolerance });
    }
    Ok(q.re)
}

/// `sum_{n >= 1} |A_{n-1} - A_n|^2 Λ_n^{2-c} / λ_n`.
pub fn hardy_energy(a: &FiniteSequence, lambda: &PositiveSequence, c: &Rational) -> Float {
    let bits = a.bits();
    let last = a.support_end() + 1;
    let edge = copson_edge_weights(lambda, c, last, bits);
    let mut acc = CompensatedSum::new(bits);
    for (n, e) in edge.iter().enumerate().take(last + 1).skip(1) {
        let diff = a.at(n - 1) - &a.at(n);
        acc.add(&(diff.norm_sqr() * e));
    }
    acc.total()
}

/// `sum_{n >= 1} |((-Δ_δ) A)_n|^2`.
pub fn rellich_energy(delta: &PositiveSequence, a: &FiniteSequence) -> Float {
    let image = apply_weighted_laplacian_delta(delta, a);
    let mut acc = CompensatedSum::new(a.bits());
    for z in image.values().iter().skip(1) {
        acc.add(&z.norm_sqr());
    }
    acc.total()
}
