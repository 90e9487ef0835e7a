//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p discrete-hardy --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use discrete_hardy::factorization::gamma_bounds_check;
use discrete_hardy::sequences::knopp_transform;
use discrete_hardy::verification::random::{random_sequences, DEFAULT_SEED};
use discrete_hardy::verification::{
    criticality_decay, identity_batch, improvement_claim, knopp_improvement_chain, lemma_suite,
    pointwise_scan, Identity, Variant, VerificationReport,
};
use discrete_hardy::weights::{
    copson_hat_bound_exact, copson_hat_gap_closed_form, copson_hat_weight_exact,
    eta_linear_closed_form, knopp_constant, knopp_order2_unnormalized_constant, WeightFamily,
};
use discrete_hardy::{FiniteSequence, PositiveSequence, PrecisionContext};
use rug::{Float, Rational};

const BITS: u32 = 256;
const IDENTITY_TOL: f64 = 1e-25;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed < Duration::from_secs(limit_secs)
}

fn describe_failures(reports: &[&VerificationReport]) -> String {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| match r.witnesses.first() {
            Some(w) => format!("{} fails at {}: {} vs {}", r.name, w.index, w.lhs, w.rhs),
            None => format!("{} fails", r.name),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn ctx() -> PrecisionContext {
    PrecisionContext::new(BITS, IDENTITY_TOL, 1e-60).expect("valid context")
}

fn gamma_recurrence() -> Outcome {
    let start = Instant::now();
    let check = gamma_bounds_check(
        &PositiveSequence::shifted(),
        &PositiveSequence::power_ratio(3, 2),
        10_000,
        BITS,
    );
    let elapsed = start.elapsed();
    let check = match check {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let g1 = check.rows[0].gamma_sq.to_f64();
    let ok = (g1 - 7.06036).abs() <= 1e-4
        && check.report.passed()
        && check.report.checked == 10_000
        && within(elapsed, 5);
    let extra = describe_failures(&[&check.report]);
    outcome(
        ok,
        format!(
            "gamma_1^2 = {g1:.6}, bounds strict for n <= 10^4 ({} rows), {elapsed:.2?} {extra}",
            check.report.checked
        ),
    )
}

fn identity_residuals() -> Outcome {
    let ctx = ctx();
    let identities = [
        Identity::Hardy {
            lambda: PositiveSequence::copson_tilde_lambda(),
            c: Rational::from((3, 2)),
            mu: PositiveSequence::power_ratio(3, 4),
        },
        Identity::Hardy {
            lambda: PositiveSequence::ones(),
            c: Rational::from(2),
            mu: PositiveSequence::power_ratio(1, 2),
        },
        Identity::CopsonTilde,
        Identity::CopsonHat,
        Identity::Rellich {
            delta: PositiveSequence::shifted(),
            mu: PositiveSequence::power_ratio(3, 2),
        },
    ];
    let start = Instant::now();
    let mut reports = Vec::new();
    for (k, id) in identities.iter().enumerate() {
        match identity_batch(id, 200, 25, DEFAULT_SEED + k as u64, &ctx) {
            Ok(r) => reports.push(r),
            Err(e) => return outcome(false, format!("{}: {e}", id.name())),
        }
    }
    let elapsed = start.elapsed();
    let worst = reports
        .iter()
        .map(|r| r.max_residual)
        .fold(0.0f64, f64::max);
    let all = reports.iter().all(|r| r.passed() && r.checked == 200);
    let refs: Vec<&VerificationReport> = reports.iter().collect();
    outcome(
        all && worst <= IDENTITY_TOL && within(elapsed, 60),
        format!(
            "{} identities x 200 sequences, max residual {worst:.2e}, {elapsed:.2?} {}",
            reports.len(),
            describe_failures(&refs)
        ),
    )
}

fn improvement_scans() -> Outcome {
    let ctx = PrecisionContext::default();
    let start = Instant::now();
    let mut reports = Vec::new();
    for (name, lo, hi) in [
        ("hardy", 1u64, 1_000_000u64),
        ("rellich", 2, 100_000),
        ("copson-tilde", 1, 100_000),
        ("copson-hat", 1, 100_000),
        ("eta-linear", 1, 100_000),
    ] {
        let claim = improvement_claim(name).expect("known claim");
        match pointwise_scan(&claim.weight, &claim.bound, lo..=hi, &ctx) {
            Ok(r) => reports.push(r),
            Err(e) => return outcome(false, format!("{name}: {e}")),
        }
    }
    let closed = WeightFamily::new("eta-linear-closed-form", 1, |n, bits| {
        Ok(eta_linear_closed_form(n, bits))
    });
    let eta = WeightFamily::eta_linear();
    let mut agreement = VerificationReport::new(
        "eta-linear = 1/(n^2(n+1))",
        "1..=100000",
        ctx.tolerance_rel(),
        BITS,
    );
    for n in 1..=100_000u64 {
        let (a, b) = match (eta.eval(n, BITS), closed.eval(n, BITS)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return outcome(false, format!("eta-linear evaluation failed at {n}")),
        };
        let r = Float::with_val(BITS, &a - &b).abs() / &b;
        agreement.record_residual(n, r.to_f64(), &a, &b);
    }
    let elapsed = start.elapsed();
    let all = reports
        .iter()
        .all(|r| r.passed() && r.min_gap.as_ref().is_some_and(|g| g.value > 0.0))
        && agreement.passed();
    let mut refs: Vec<&VerificationReport> = reports.iter().collect();
    refs.push(&agreement);
    let gaps: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{} min gap {:.2e}",
                r.name,
                r.min_gap.as_ref().map_or(f64::NAN, |g| g.value)
            )
        })
        .collect();
    outcome(
        all && within(elapsed, 120),
        format!(
            "{}; {elapsed:.2?} {}",
            gaps.join(", "),
            describe_failures(&refs)
        ),
    )
}

fn exact_rational() -> Outcome {
    for n in 1..=1000u64 {
        let w = match copson_hat_weight_exact(n) {
            Ok(w) => w,
            Err(e) => return outcome(false, format!("n = {n}: {e}")),
        };
        let gap = w - copson_hat_bound_exact(n);
        let n2 = Rational::from(n * n);
        let expected = Rational::from(4u64 * n * n + 4 * n + 1)
            / (Rational::from(2) * Rational::from((n + 1).pow(3)) * n2 * n);
        if gap != expected || gap != copson_hat_gap_closed_form(n) {
            return outcome(false, format!("mismatch at n = {n}: {gap} vs {expected}"));
        }
    }
    outcome(
        true,
        "gap equals (4n^2+4n+1)/(2(n+1)^3 n^3) exactly for 1 <= n <= 1000",
    )
}

fn lemmas() -> Outcome {
    let reports = match lemma_suite(2..=10_000, BITS, 1e-30) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let all = reports
        .iter()
        .all(|r| r.passed() && r.min_gap.as_ref().is_some_and(|g| g.value > 0.0));
    let min = reports
        .iter()
        .filter_map(|r| r.min_gap.as_ref().map(|g| g.value))
        .fold(f64::INFINITY, f64::min);
    let refs: Vec<&VerificationReport> = reports.iter().collect();
    outcome(
        all,
        format!(
            "{} lemma scans over 2..=10^4, smallest gap {min:.2e} {}",
            reports.len(),
            describe_failures(&refs)
        ),
    )
}

fn criticality() -> Outcome {
    let ctx = PrecisionContext::default();
    let cutoffs = [4u64, 8, 16, 32, 64, 128];
    let mut parts = Vec::new();
    let mut ok = true;
    for variant in [Variant::Tilde, Variant::Hat] {
        match criticality_decay(variant, &cutoffs, &ctx) {
            Ok(d) => {
                ok &= d.report.passed();
                let first = d.rows.first().map_or(f64::NAN, |r| r.window_sum.to_f64());
                let last = d.rows.last().map_or(f64::NAN, |r| r.window_sum.to_f64());
                parts.push(format!(
                    "{} {first:.3e} -> {last:.3e} {}",
                    variant.name(),
                    describe_failures(&[&d.report])
                ));
            }
            Err(e) => return outcome(false, format!("{}: {e}", variant.name())),
        }
    }
    outcome(
        ok,
        format!(
            "N in {cutoffs:?}, below bounds and decreasing: {}",
            parts.join(", ")
        ),
    )
}

fn knopp() -> Outcome {
    let ctx = ctx();
    let mut worst = 0.0f64;
    let mut ok = true;
    let mut notes = Vec::new();
    for alpha in 1..=5u32 {
        match identity_batch(
            &Identity::KnoppRellich { alpha },
            100,
            25,
            DEFAULT_SEED + 100 + u64::from(alpha),
            &ctx,
        ) {
            Ok(r) => {
                ok &= r.passed() && r.checked == 100;
                worst = worst.max(r.max_residual);
                if !r.passed() {
                    notes.push(describe_failures(&[&r]));
                }
            }
            Err(e) => return outcome(false, format!("alpha = {alpha}: {e}")),
        }
    }
    let mut tested: Vec<FiniteSequence> = random_sequences(DEFAULT_SEED + 102, 100, BITS, 2, 25);
    if let Ok(c) = knopp_transform(&FiniteSequence::unit(BITS, 1), 2, 30) {
        tested.push(c.with_zero_prefix(2));
    }
    let mut chains = 0;
    for a in &tested {
        match knopp_improvement_chain(2, a, &ctx) {
            Ok(chain) => {
                chains += 1;
                ok &= chain.report.passed() && chain.knopp_sum_unnormalized.is_some();
                if !chain.report.passed() {
                    notes.push(describe_failures(&[&chain.report]));
                }
            }
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    let k2 = knopp_constant(2).map_err(|e| e.to_string());
    let factor = k2
        .as_ref()
        .map(|k| k / knopp_order2_unnormalized_constant())
        .ok();
    let reconciled = k2.as_ref().is_ok_and(|k| *k == (64, 9))
        && factor == Some(Rational::from(4));
    ok &= reconciled && worst <= IDENTITY_TOL;
    outcome(
        ok,
        format!(
            "alpha 1..=5 x 100 sequences, max residual {worst:.2e}; order-2 chain on {chains} sequences, 64/9 = 4 * 16/9: {reconciled} {}",
            notes.join("; ")
        ),
    )
}

fn oracles() -> Outcome {
    let ops = common::operator_errors();
    let grams = common::gram_errors();
    let worst_op = ops.iter().map(|(_, e)| *e).fold(0.0f64, f64::max);
    let worst_gram = grams.iter().map(|(_, e)| *e).fold(0.0f64, f64::max);
    let bad: Vec<&str> = ops
        .iter()
        .chain(&grams)
        .filter(|(_, e)| e.is_nan() || *e > IDENTITY_TOL)
        .map(|(n, _)| n.as_str())
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "{} operator cases max error {worst_op:.2e}, {} Gram truncations max error {worst_gram:.2e} {}",
            ops.len(),
            grams.len(),
            bad.join(", ")
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("gamma recurrence", gamma_recurrence),
        ("identity residuals", identity_residuals),
        ("improvement scans", improvement_scans),
        ("exact rational gap", exact_rational),
        ("lemma suite", lemmas),
        ("criticality decay", criticality),
        ("knopp and rellich", knopp),
        ("oracle equivalence", oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        if !o.passed {
            failed += 1;
        }
        println!(
            "criterion {}: {verdict} {name}: {} [{:.2?}]",
            i + 1,
            o.detail.trim_end(),
            start.elapsed()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
