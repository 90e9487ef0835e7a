//! The chain linking the order-`α` Rellich energy to the Knopp inequality:
//!
//! ```text
//! Σ |∇^α A|^2 >= Σ ρ^(α)_n |A_n|^2 > C_α Σ |A_n|^2 / n^{2α} >= K_α^{-1} Σ |A_n|^2 / C(n-1+α, n-1)^2
//! ```
//!
//! with `C_α = ((2α)!)^2 / (16^α (α!)^2)` and `K_α` the Knopp constant. The
//! last link holds termwise because `C_α K_α = (α!)^2` and
//! `α! C(n-1+α, α) = n (n+1) ... (n+α-1) >= n^α`. For `α >= 3` the first two
//! links are conjectural.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::Result;
use crate::factorization::relative_gap;
use crate::operators::backward_difference;
use crate::precision::{CompensatedSum, PrecisionContext};
use crate::sequences::{binomial, weighted_norm_sq, FiniteSequence};
use crate::verification::VerificationReport;
use crate::weights::{
    knopp_constant, knopp_order2_unnormalized_constant, knopp_order2_unnormalized_row_weight,
    knopp_row_weight, rellich_classical_constant, rellich_rho_alpha,
};

pub const CONJECTURE_FLAG: &str = "conjecture-evidence";

#[derive(Debug, Clone)]
pub struct KnoppChain {
    pub alpha: u32,
    pub energy: Float,
    pub rho_sum: Float,
    pub classical_sum: Float,
    pub knopp_sum: Float,
    /// Order 2 only: `(9/16) Σ |A_n|^2 / (n^2 (n+1)^2)`, which must equal `knopp_sum`.
    pub knopp_sum_unnormalized: Option<Float>,
    pub report: VerificationReport,
}

/// `α! C(n-1+α, α) >= n^α`, in integers.
pub fn knopp_termwise(alpha: u32, n: u64) -> bool {
    let f = Integer::from(Integer::factorial(alpha));
    let lhs = f * binomial(n - 1 + u64::from(alpha), u64::from(alpha));
    lhs >= Integer::from(n).pow(alpha)
}

pub fn knopp_improvement_chain(
    alpha: u32,
    a: &FiniteSequence,
    ctx: &PrecisionContext,
) -> Result<KnoppChain> {
    let bits = ctx.bits();
    a.require_zero_prefix(alpha as usize)?;
    let start = alpha as usize;
    let diff = backward_difference(a, alpha)?;
    let mut energy = CompensatedSum::new(bits);
    for z in diff.values().iter().skip(start) {
        energy.add(&z.norm_sqr());
    }
    let energy = energy.total();

    let last = a.support_end();
    let mut rho = vec![Float::new(bits); start];
    for n in start..=last.max(start) {
        rho.push(rellich_rho_alpha(alpha, n as u64, bits)?);
    }
    let rho_sum = weighted_norm_sq(a, |n| rho[n].clone(), start);

    let c_alpha = Float::with_val(bits, &rellich_classical_constant(alpha));
    let classical_sum = weighted_norm_sq(
        a,
        |n| {
            Float::with_val(
                bits,
                &c_alpha / Float::with_val(bits, Float::with_val(bits, n).pow(2 * alpha)),
            )
        },
        start,
    );

    let inv_k = Rational::from(1) / knopp_constant(alpha)?;
    let knopp_sum = weighted_norm_sq(
        a,
        |n| {
            Float::with_val(
                bits,
                &(knopp_row_weight(alpha, n as u64).expect("n >= 1") * &inv_k),
            )
        },
        start.max(1),
    );
    let knopp_sum_unnormalized = (alpha == 2).then(|| {
        let inv = Rational::from(1) / knopp_order2_unnormalized_constant();
        weighted_norm_sq(
            a,
            |n| {
                Float::with_val(
                    bits,
                    &(knopp_order2_unnormalized_row_weight(n as u64) * &inv),
                )
            },
            start,
        )
    });

    let mut report = VerificationReport::new(
        format!("knopp-chain alpha={alpha}"),
        format!("support 0..={last}"),
        ctx.tolerance_rel(),
        bits,
    );
    if alpha >= 3 {
        report.flag(CONJECTURE_FLAG);
    }
    let slack = |x: &Float| Float::with_val(bits, x * (1.0 - ctx.tolerance_rel()));
    report.record_inequality(
        1,
        energy >= slack(&rho_sum),
        relative_gap(&energy, &rho_sum),
        &energy,
        &rho_sum,
    );
    let strict = if a.is_zero() {
        rho_sum == classical_sum
    } else {
        rho_sum > classical_sum
    };
    report.record_inequality(
        2,
        strict,
        relative_gap(&rho_sum, &classical_sum),
        &rho_sum,
        &classical_sum,
    );
    report.record_inequality(
        3,
        classical_sum >= slack(&knopp_sum),
        relative_gap(&classical_sum, &knopp_sum),
        &classical_sum,
        &knopp_sum,
    );
    for n in start.max(1)..=last {
        if !knopp_termwise(alpha, n as u64) {
            report.record_failure(n as u64, &Float::with_val(bits, n), &Float::new(bits));
        }
    }
    if let Some(alt) = &knopp_sum_unnormalized {
        let r = crate::precision::relative_residual(&knopp_sum, alt, ctx.tolerance_abs());
        report.record_residual(4, r, &knopp_sum, alt);
    }
    Ok(KnoppChain {
        alpha,
        energy,
        rho_sum,
        classical_sum,
        knopp_sum,
        knopp_sum_unnormalized,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::knopp_transform;

    #[test]
    fn termwise_inequality() {
        for alpha in 1..=6 {
            for n in 1..200 {
                assert!(knopp_termwise(alpha, n));
            }
        }
    }

    #[test]
    fn order_two_cesaro_example() {
        let ctx = PrecisionContext::default();
        let a = knopp_transform(&FiniteSequence::unit(256, 1), 2, 30)
            .unwrap()
            .with_zero_prefix(2);
        let chain = knopp_improvement_chain(2, &a, &ctx).unwrap();
        assert!(chain.report.passed(), "{:?}", chain.report);
        assert!(chain.report.flags.is_empty());
        assert!(chain.knopp_sum_unnormalized.is_some());
    }

    #[test]
    fn order_three_is_flagged() {
        let ctx = PrecisionContext::default();
        let a = crate::verification::random::random_sequences(3, 1, 256, 3, 20).remove(0);
        let chain = knopp_improvement_chain(3, &a, &ctx).unwrap();
        assert!(chain.report.passed());
        assert_eq!(chain.report.flags, vec![CONJECTURE_FLAG.to_string()]);
    }
}
