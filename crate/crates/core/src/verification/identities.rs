//! Factorization identities `energy = Σ weight |A_n|^2 + Σ |(R A)_n|^2`, each
//! side computed along an independent path.

use rayon::prelude::*;
use rug::{Float, Rational};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::factorization::{
    remainder1_apply, remainder2_apply, remainder2_coefficients, Remainder1Spec,
    RemainderCoefficients,
};
use crate::operators::{
    backward_difference, hardy_energy, quadratic_form, rellich_energy, LaplacianPower,
};
use crate::precision::{relative_residual, CompensatedSum, PrecisionContext};
use crate::sequences::{sum_of_squares, weighted_norm_sq, FiniteSequence, PositiveSequence};
use crate::verification::random::random_sequences;
use crate::verification::VerificationReport;
use crate::weights::{copson_hat_weight, copson_tilde_weight, eta_weight, sigma2_weight};

/// The three sums of one identity evaluation.
#[derive(Debug, Clone)]
pub struct IdentityTerms {
    pub energy: Float,
    pub weighted: Float,
    pub remainder: Float,
}

impl IdentityTerms {
    pub fn residual(&self, abs_floor: f64) -> f64 {
        let rhs = Float::with_val(self.energy.prec(), &self.weighted + &self.remainder);
        relative_residual(&self.energy, &rhs, abs_floor)
    }

    pub fn rhs(&self) -> Float {
        Float::with_val(self.energy.prec(), &self.weighted + &self.remainder)
    }
}

fn norm_sum(seq: &FiniteSequence, n_start: usize) -> Float {
    let mut acc = CompensatedSum::new(seq.bits());
    for z in seq.values().iter().skip(n_start) {
        acc.add(&z.norm_sqr());
    }
    acc.total()
}

fn abs_floor(ctx: &PrecisionContext) -> f64 {
    ctx.tolerance_abs()
}

/// Records `terms` into `report` at `index`; the remainder sum must also be
/// nonnegative, which is the inequality the identity certifies.
fn record(
    report: &mut VerificationReport,
    index: u64,
    terms: &IdentityTerms,
    ctx: &PrecisionContext,
) {
    let rhs = terms.rhs();
    report.record_residual(index, terms.residual(abs_floor(ctx)), &terms.energy, &rhs);
    if terms.remainder < 0 {
        report.record_failure(index, &terms.remainder, &Float::new(terms.remainder.prec()));
    }
}

/// Terms of `Σ w_n |A_{n-1} - A_n|^2 = Σ η_n |A_n|^2 + Σ |(R^(1) A)_n|^2`.
pub fn hardy_identity_terms(
    lambda: &PositiveSequence,
    c: &Rational,
    mu: &PositiveSequence,
    a: &FiniteSequence,
) -> Result<IdentityTerms> {
    a.require_zero_prefix(1)?;
    let bits = a.bits();
    let spec = Remainder1Spec::new(lambda.clone(), c.clone(), mu.clone())?;
    let energy = hardy_energy(a, lambda, c);
    let mut eta = vec![Float::new(bits)];
    for n in 1..=a.support_end() as u64 {
        eta.push(eta_weight(lambda, c, mu, n, bits)?);
    }
    let weighted = weighted_norm_sq(a, |n| eta[n].clone(), 1);
    let remainder = norm_sum(&remainder1_apply(&spec, a)?, 1);
    Ok(IdentityTerms {
        energy,
        weighted,
        remainder,
    })
}

pub fn verify_hardy_identity(
    lambda: &PositiveSequence,
    c: &Rational,
    mu: &PositiveSequence,
    a: &FiniteSequence,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let terms = hardy_identity_terms(lambda, c, mu, a)?;
    let mut report = VerificationReport::new(
        "hardy-identity",
        format!(
            "support 0..={} lambda={} c={} mu={}",
            a.support_end(),
            lambda.label(),
            c,
            mu.label()
        ),
        ctx.tolerance_rel(),
        ctx.bits(),
    );
    record(&mut report, 0, &terms, ctx);
    Ok(report)
}

/// `x^{3/8}`
fn three_eighths(x: Float) -> Float {
    let r = x.sqrt().sqrt().sqrt();
    let r2 = Float::with_val(r.prec(), r.clone().square());
    r2 * r
}

/// `|(n/(n+1))^{3/8} A_{n+1} - ((n+1)/n)^{3/8} A_n|^2 sqrt(S_{n+1}) / (n+1)^2`,
/// the displayed remainder term of the first Copson identity.
pub fn copson_tilde_remainder_term(n: u64, a_n: &Complex, a_next: &Complex, bits: u32) -> Float {
    let x = Float::with_val(bits, n) / Float::with_val(bits, n + 1);
    let down = three_eighths(x);
    let up = Float::with_val(bits, 1) / &down;
    let mut z = a_next.scale(&down);
    z.add_scaled(&(-up), a_n);
    let w = sum_of_squares(n + 1, bits).sqrt() / Float::with_val(bits, n + 1).square();
    z.norm_sqr() * w
}

/// `|sqrt(n/(n+1)) A_{n+1} - sqrt((n+1)/n) A_n|^2 (n+2) / (2 (n+1)^2)`, the
/// displayed remainder term of the second Copson identity.
pub fn copson_hat_remainder_term(n: u64, a_n: &Complex, a_next: &Complex, bits: u32) -> Float {
    let down = (Float::with_val(bits, n) / Float::with_val(bits, n + 1)).sqrt();
    let up = Float::with_val(bits, 1) / &down;
    let mut z = a_next.scale(&down);
    z.add_scaled(&(-up), a_n);
    let w = Float::with_val(bits, n + 2) / (Float::with_val(bits, n + 1).square() * 2u32);
    z.norm_sqr() * w
}

fn copson_terms<W, E, R>(a: &FiniteSequence, edge: E, weight: W, rem: R) -> Result<IdentityTerms>
where
    E: Fn(u64, u32) -> Float,
    W: Fn(u64, u32) -> Result<Float>,
    R: Fn(u64, &Complex, &Complex, u32) -> Float,
{
    a.require_zero_prefix(1)?;
    let bits = a.bits();
    let last = a.support_end() as u64;
    let mut energy = CompensatedSum::new(bits);
    let mut weighted = CompensatedSum::new(bits);
    let mut remainder = CompensatedSum::new(bits);
    if a.is_zero() {
        let z = Float::new(bits);
        return Ok(IdentityTerms {
            energy: z.clone(),
            weighted: z.clone(),
            remainder: z,
        });
    }
    for n in 1..=last + 1 {
        let (prev, cur) = (a.at(n as usize - 1), a.at(n as usize));
        energy.add(&((prev - &cur).norm_sqr() * edge(n, bits)));
        if n <= last {
            weighted.add(&(weight(n, bits)? * cur.norm_sqr()));
            remainder.add(&rem(n, &cur, &a.at(n as usize + 1), bits));
        }
    }
    Ok(IdentityTerms {
        energy: energy.total(),
        weighted: weighted.total(),
        remainder: remainder.total(),
    })
}

/// Terms of `Σ |A_n - A_{n-1}|^2 sqrt(S_n)/n^2 = Σ Ṽ_n |A_n|^2 + Σ (displayed remainder)`.
pub fn copson_tilde_identity_terms(a: &FiniteSequence) -> Result<IdentityTerms> {
    copson_terms(
        a,
        |n, b| sum_of_squares(n, b).sqrt() / Float::with_val(b, n).square(),
        copson_tilde_weight,
        copson_tilde_remainder_term,
    )
}

/// Terms of `Σ |A_n - A_{n-1}|^2 sqrt(Ŝ_n)/n^3 = Σ V̂_n |A_n|^2 + Σ (displayed remainder)`,
/// using `sqrt(Ŝ_n) = n(n+1)/2`.
pub fn copson_hat_identity_terms(a: &FiniteSequence) -> Result<IdentityTerms> {
    copson_terms(
        a,
        |n, b| Float::with_val(b, n + 1) / (Float::with_val(b, n).square() * 2u32),
        copson_hat_weight,
        copson_hat_remainder_term,
    )
}

pub fn verify_copson_tilde_identity(
    a: &FiniteSequence,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let terms = copson_tilde_identity_terms(a)?;
    let mut report = VerificationReport::new(
        "copson-tilde-identity",
        format!("support 0..={}", a.support_end()),
        ctx.tolerance_rel(),
        ctx.bits(),
    );
    record(&mut report, 0, &terms, ctx);
    Ok(report)
}

pub fn verify_copson_hat_identity(
    a: &FiniteSequence,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let terms = copson_hat_identity_terms(a)?;
    let mut report = VerificationReport::new(
        "copson-hat-identity",
        format!("support 0..={}", a.support_end()),
        ctx.tolerance_rel(),
        ctx.bits(),
    );
    record(&mut report, 0, &terms, ctx);
    Ok(report)
}

/// Terms of `Σ_{n>=1} |((-Δ_δ) A)_n|^2 = Σ_{n>=2} σ_n^(2) |A_n|^2 + Σ |(R^(2) A)_n|^2`
/// with precomputed coefficients.
pub fn rellich_identity_terms_with(
    delta: &PositiveSequence,
    mu: &PositiveSequence,
    coeffs: &RemainderCoefficients,
    a: &FiniteSequence,
) -> Result<IdentityTerms> {
    a.require_zero_prefix(2)?;
    let bits = a.bits();
    let energy = rellich_energy(delta, a);
    let mut sigma = vec![Float::new(bits), Float::new(bits)];
    for n in 2..=a.support_end() as u64 {
        sigma.push(sigma2_weight(delta, mu, n, bits)?);
    }
    let weighted = weighted_norm_sq(a, |n| sigma[n].clone(), 2);
    let remainder = norm_sum(&remainder2_apply(delta, coeffs, a)?, 1);
    Ok(IdentityTerms {
        energy,
        weighted,
        remainder,
    })
}

pub fn verify_rellich_identity(
    delta: &PositiveSequence,
    mu: &PositiveSequence,
    a: &FiniteSequence,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    a.require_zero_prefix(2)?;
    let coeffs = remainder2_coefficients(delta, mu, a.support_end().max(1) as u64, ctx.bits())?;
    let terms = rellich_identity_terms_with(delta, mu, &coeffs, a)?;
    let mut report = VerificationReport::new(
        "rellich-identity",
        format!(
            "support 0..={} delta={} mu={}",
            a.support_end(),
            delta.label(),
            mu.label()
        ),
        ctx.tolerance_rel(),
        ctx.bits(),
    );
    record(&mut report, 0, &terms, ctx);
    Ok(report)
}

/// `Σ_{n>=α} |(∇^α A)_n|^2` and `Σ_{n>=α} ((-Δ)^α A)_n conj(A_n)`.
pub fn knopp_rellich_terms(
    alpha: u32,
    a: &FiniteSequence,
    ctx: &PrecisionContext,
) -> Result<(Float, Float)> {
    a.require_zero_prefix(alpha as usize)?;
    let lhs = norm_sum(&backward_difference(a, alpha)?, alpha as usize);
    let rhs = quadratic_form(
        &LaplacianPower(alpha),
        a,
        alpha as usize,
        ctx.tolerance_rel(),
        ctx.tolerance_abs(),
    )?;
    Ok((lhs, rhs))
}

pub fn knopp_rellich_identity(
    alpha: u32,
    a: &FiniteSequence,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let (lhs, rhs) = knopp_rellich_terms(alpha, a, ctx)?;
    let mut report = VerificationReport::new(
        "knopp-rellich-identity",
        format!("alpha={alpha} support 0..={}", a.support_end()),
        ctx.tolerance_rel(),
        ctx.bits(),
    );
    report.record_residual(
        0,
        relative_residual(&lhs, &rhs, ctx.tolerance_abs()),
        &lhs,
        &rhs,
    );
    Ok(report)
}

/// An identity to be checked on seeded random sequences.
#[derive(Debug, Clone)]
pub enum Identity {
    Hardy {
        lambda: PositiveSequence,
        c: Rational,
        mu: PositiveSequence,
    },
    CopsonTilde,
    CopsonHat,
    Rellich {
        delta: PositiveSequence,
        mu: PositiveSequence,
    },
    KnoppRellich {
        alpha: u32,
    },
}

impl Identity {
    pub fn name(&self) -> String {
        match self {
            Identity::Hardy { lambda, c, mu } => format!(
                "hardy-identity lambda={} c={} mu={}",
                lambda.label(),
                c,
                mu.label()
            ),
            Identity::CopsonTilde => "copson-tilde-identity".into(),
            Identity::CopsonHat => "copson-hat-identity".into(),
            Identity::Rellich { delta, mu } => {
                format!("rellich-identity delta={} mu={}", delta.label(), mu.label())
            }
            Identity::KnoppRellich { alpha } => format!("knopp-rellich-identity alpha={alpha}"),
        }
    }

    /// Number of leading entries that must vanish.
    pub fn zero_prefix(&self) -> usize {
        match self {
            Identity::Rellich { .. } => 2,
            Identity::KnoppRellich { alpha } => *alpha as usize,
            _ => 1,
        }
    }
}

/// Both sides of `identity` on one sequence: the energy and the sum it is
/// claimed to equal.
pub fn identity_sides(
    identity: &Identity,
    a: &FiniteSequence,
    ctx: &PrecisionContext,
) -> Result<(Float, Float)> {
    let terms = match identity {
        Identity::Hardy { lambda, c, mu } => hardy_identity_terms(lambda, c, mu, a)?,
        Identity::CopsonTilde => copson_tilde_identity_terms(a)?,
        Identity::CopsonHat => copson_hat_identity_terms(a)?,
        Identity::Rellich { delta, mu } => {
            a.require_zero_prefix(2)?;
            let coeffs =
                remainder2_coefficients(delta, mu, a.support_end().max(1) as u64, ctx.bits())?;
            rellich_identity_terms_with(delta, mu, &coeffs, a)?
        }
        Identity::KnoppRellich { alpha } => return knopp_rellich_terms(*alpha, a, ctx),
    };
    let rhs = terms.rhs();
    Ok((terms.energy, rhs))
}

/// Checks `identity` on `count` random sequences drawn from `seed` with
/// support ending at most at `max_support`.
pub fn identity_batch(
    identity: &Identity,
    count: usize,
    max_support: usize,
    seed: u64,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let bits = ctx.bits();
    let prefix = identity.zero_prefix();
    if max_support < prefix {
        return Err(Error::InvalidParameter(format!(
            "support {max_support} leaves no free entries after {prefix} boundary zeros"
        )));
    }
    let sequences = random_sequences(seed, count, bits, prefix, max_support);
    check_sequences(identity, &sequences, ctx, Some(seed), max_support)
}

/// Checks `identity` on the given sequences.
pub fn check_sequences(
    identity: &Identity,
    sequences: &[FiniteSequence],
    ctx: &PrecisionContext,
    seed: Option<u64>,
    max_support: usize,
) -> Result<VerificationReport> {
    let coeffs = match identity {
        Identity::Rellich { delta, mu } => Some(remainder2_coefficients(
            delta,
            mu,
            max_support.max(1) as u64,
            ctx.bits(),
        )?),
        _ => None,
    };
    let mut base = VerificationReport::new(
        identity.name(),
        format!("{} sequences, support <= {max_support}", sequences.len()),
        ctx.tolerance_rel(),
        ctx.bits(),
    );
    base.seed = seed;
    let partial: Vec<Result<VerificationReport>> = sequences
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let mut r = VerificationReport::new(
                base.name.clone(),
                String::new(),
                ctx.tolerance_rel(),
                ctx.bits(),
            );
            let i = i as u64;
            match identity {
                Identity::Hardy { lambda, c, mu } => {
                    record(&mut r, i, &hardy_identity_terms(lambda, c, mu, a)?, ctx)
                }
                Identity::CopsonTilde => record(&mut r, i, &copson_tilde_identity_terms(a)?, ctx),
                Identity::CopsonHat => record(&mut r, i, &copson_hat_identity_terms(a)?, ctx),
                Identity::Rellich { delta, mu } => {
                    let coeffs = coeffs.as_ref().expect("coefficients computed above");
                    record(
                        &mut r,
                        i,
                        &rellich_identity_terms_with(delta, mu, coeffs, a)?,
                        ctx,
                    )
                }
                Identity::KnoppRellich { alpha } => {
                    let (lhs, rhs) = knopp_rellich_terms(*alpha, a, ctx)?;
                    r.record_residual(
                        i,
                        relative_residual(&lhs, &rhs, ctx.tolerance_abs()),
                        &lhs,
                        &rhs,
                    );
                }
            }
            Ok(r)
        })
        .collect();
    let mut report = base;
    for r in partial {
        report = report.merge(r?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn hardy_unit_vector_by_hand() {
        let a = FiniteSequence::unit(256, 1);
        let mu = PositiveSequence::power_ratio(1, 2);
        let terms =
            hardy_identity_terms(&PositiveSequence::ones(), &Rational::from(2), &mu, &a).unwrap();
        assert_eq!(terms.energy, 2);
        let w1 = crate::weights::hardy_weight_classical(1, 256);
        let r = Float::with_val(256, 2) - w1;
        assert!((terms.remainder.clone() - r).abs() < 1e-70);
        assert!(terms.residual(1e-60) < 1e-70);
    }

    #[test]
    fn zero_sequence_has_zero_residual() {
        let z = FiniteSequence::zero(256);
        for id in [Identity::CopsonTilde, Identity::CopsonHat] {
            let r = check_sequences(&id, std::slice::from_ref(&z), &ctx(), None, 3).unwrap();
            assert_eq!(r.max_residual, 0.0);
            assert!(r.passed());
        }
        let r = verify_rellich_identity(
            &PositiveSequence::ones(),
            &PositiveSequence::power_ratio(3, 2),
            &z,
            &ctx(),
        )
        .unwrap();
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn rellich_small_example() {
        let mut values = vec![Complex::zero(256); 4];
        values[2] = Complex::from_f64(256, 1.0, 0.0);
        values[3] = Complex::from_f64(256, 2.0, 0.0);
        let a = FiniteSequence::from_values(256, values);
        let ones = PositiveSequence::ones();
        let mu = PositiveSequence::power_ratio(3, 2);
        let r = verify_rellich_identity(&ones, &mu, &a, &ctx()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.max_residual < 1e-60);
    }

    #[test]
    fn boundary_conditions_enforced() {
        let a = FiniteSequence::unit(256, 1);
        let r = verify_rellich_identity(
            &PositiveSequence::ones(),
            &PositiveSequence::power_ratio(3, 2),
            &a,
            &ctx(),
        );
        assert!(matches!(r, Err(Error::BoundaryCondition { .. })));
        assert!(knopp_rellich_identity(3, &FiniteSequence::unit(256, 2), &ctx()).is_err());
    }

    #[test]
    fn knopp_rellich_stencil() {
        let (lhs, rhs) = knopp_rellich_terms(2, &FiniteSequence::unit(256, 2), &ctx()).unwrap();
        assert_eq!(lhs, 6);
        assert_eq!(rhs, 6);
    }

    #[test]
    fn small_batches_pass() {
        let c = ctx();
        let ids = [
            Identity::Hardy {
                lambda: PositiveSequence::copson_tilde_lambda(),
                c: Rational::from((3, 2)),
                mu: PositiveSequence::power_ratio(3, 4),
            },
            Identity::CopsonTilde,
            Identity::CopsonHat,
            Identity::Rellich {
                delta: PositiveSequence::shifted(),
                mu: PositiveSequence::power_ratio(3, 2),
            },
            Identity::KnoppRellich { alpha: 3 },
        ];
        for id in &ids {
            let r = identity_batch(id, 5, 12, 11, &c).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.max_residual < 1e-60, "{}", r.name);
            assert_eq!(r.checked, 5);
        }
    }
}
