//! Strict pointwise comparisons `a_n > b_n` of two weight families.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use rug::{Float, Rational};

use crate::error::Result;
use crate::factorization::relative_gap;
use crate::precision::PrecisionContext;
use crate::verification::VerificationReport;
use crate::weights::WeightFamily;

/// Indices handled by one parallel task.
const BLOCK: u64 = 8192;

/// Evaluates `a` and `b` at `n`. When they agree to within `2^{-bits/2}`
/// relative, both are re-evaluated once at doubled precision.
fn compare(a: &WeightFamily, b: &WeightFamily, n: u64, bits: u32) -> Result<(Float, Float, bool)> {
    let x = a.eval(n, bits)?;
    let y = b.eval(n, bits)?;
    let diff = Float::with_val(bits, &x - &y).abs();
    let threshold = Float::with_val(bits, Float::i_exp(1, -((bits / 2) as i32))) * x.clone().abs();
    if diff >= threshold && !diff.is_zero() {
        return Ok((x, y, false));
    }
    Ok((a.eval(n, 2 * bits)?, b.eval(n, 2 * bits)?, true))
}

/// Checks `a_n > b_n` for every `n` in `range` and reports the smallest
/// relative gap `(a_n - b_n) / |b_n|`.
pub fn pointwise_scan(
    a: &WeightFamily,
    b: &WeightFamily,
    range: RangeInclusive<u64>,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let (start, end) = (*range.start(), *range.end());
    let start = start.max(a.n_min()).max(b.n_min());
    let name = format!("{} > {}", a.name(), b.name());
    let bits = ctx.bits();
    let mut report = VerificationReport::new(name.clone(), format!("{start}..={end}"), 0.0, bits);
    if start > end {
        return Ok(report);
    }
    let blocks: Vec<(u64, u64)> = (start..=end)
        .step_by(BLOCK as usize)
        .map(|s| (s, (s + BLOCK - 1).min(end)))
        .collect();
    let partial: Vec<Result<VerificationReport>> = blocks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut r = VerificationReport::new(name.clone(), String::new(), 0.0, bits);
            for n in lo..=hi {
                let (x, y, escalated) = compare(a, b, n, bits)?;
                if escalated {
                    r.flag("precision-escalated");
                }
                r.record_inequality(n, x > y, relative_gap(&x, &y), &x, &y);
            }
            Ok(r)
        })
        .collect();
    for r in partial {
        report = report.merge(r?);
    }
    Ok(report)
}

/// A named strict-improvement claim `weight > bound`.
#[derive(Debug, Clone)]
pub struct ImprovementClaim {
    pub name: &'static str,
    pub weight: WeightFamily,
    pub bound: WeightFamily,
    pub default_n_max: u64,
}

pub const CLAIM_NAMES: &[&str] = &[
    "hardy",
    "eta-linear",
    "copson-tilde",
    "copson-hat",
    "rellich",
    "rellich-alpha:<k>",
    "gupta:<alpha>",
];

/// Looks up a claim by name: `hardy`, `eta-linear`, `copson-tilde`,
/// `copson-hat`, `rellich`, `rellich-alpha:<k>` or `gupta:<alpha>`.
pub fn improvement_claim(name: &str) -> Option<ImprovementClaim> {
    let claim = |name, weight, bound, default_n_max| ImprovementClaim {
        name,
        weight,
        bound,
        default_n_max,
    };
    Some(match name {
        "hardy" => claim(
            "hardy",
            WeightFamily::hardy_classical(),
            WeightFamily::hardy_bound(),
            1_000_000,
        ),
        "eta-linear" => claim(
            "eta-linear",
            WeightFamily::eta_linear(),
            WeightFamily::generalized_hardy_bound(),
            100_000,
        ),
        "copson-tilde" => claim(
            "copson-tilde",
            WeightFamily::copson_tilde(),
            WeightFamily::copson_tilde_bound(),
            100_000,
        ),
        "copson-hat" => claim(
            "copson-hat",
            WeightFamily::copson_hat(),
            WeightFamily::copson_hat_bound(),
            100_000,
        ),
        "rellich" => claim(
            "rellich",
            WeightFamily::rellich_rho2(),
            WeightFamily::rellich_bound(),
            100_000,
        ),
        _ => {
            if let Some(k) = name.strip_prefix("rellich-alpha:") {
                let k: u32 = k.parse().ok().filter(|&k| k > 0)?;
                claim(
                    "rellich-alpha",
                    WeightFamily::rellich_rho_alpha(k),
                    WeightFamily::rellich_alpha_bound(k),
                    10_000,
                )
            } else {
                let a = name.strip_prefix("gupta:")?;
                let alpha: Rational = crate::sequences::parse_rational(a).ok()?;
                claim(
                    "gupta",
                    WeightFamily::gupta(alpha.clone()),
                    WeightFamily::gupta_bound(alpha),
                    100_000,
                )
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversed_claim_fails_at_one() {
        let ctx = PrecisionContext::default();
        let r = pointwise_scan(
            &WeightFamily::hardy_bound(),
            &WeightFamily::hardy_classical(),
            1..=50,
            &ctx,
        )
        .unwrap();
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].index, 1);
        assert_eq!(r.failures, 50);
    }

    #[test]
    fn short_scans_pass() {
        let ctx = PrecisionContext::default();
        for name in [
            "hardy",
            "eta-linear",
            "copson-tilde",
            "copson-hat",
            "rellich",
            "rellich-alpha:3",
            "gupta:1/2",
        ] {
            let c = improvement_claim(name).unwrap();
            let r = pointwise_scan(&c.weight, &c.bound, 1..=300, &ctx).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.witnesses);
            assert!(r.min_gap.unwrap().value > 0.0);
        }
        assert!(improvement_claim("nope").is_none());
    }

    #[test]
    fn equal_families_escalate_and_fail() {
        let ctx = PrecisionContext::default();
        let a = WeightFamily::hardy_bound();
        let r = pointwise_scan(&a, &a, 1..=3, &ctx).unwrap();
        assert!(!r.passed());
        assert!(r.flags.iter().any(|f| f == "precision-escalated"));
    }
}
