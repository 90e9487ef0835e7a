//! Cutoff test sequences that drive the Copson remainder functionals to zero.
//!
//! For cutoff `N` the sequence equals the generating sequence below `N`, is
//! damped on `[N, N^2]` and vanishes beyond `N^2`. The remainder sum over the
//! damped window (differences at `n = N-1, ..., N^2-1`) decays like
//! `log N / N^2` and is compared with the closed-form bounds. The final jump
//! to zero at `n = N^2` is reported separately: it contributes roughly
//! `N^2 / sqrt(3)` (tilde) or `N^2 / 2` (hat) and so the sum over all `n`
//! grows with `N`.

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::factorization::relative_gap;
use crate::precision::{relative_residual, CompensatedSum, PrecisionContext};
use crate::sequences::{sum_of_squares, FiniteSequence};
use crate::verification::identities::{
    copson_hat_identity_terms, copson_hat_remainder_term, copson_tilde_identity_terms,
    copson_tilde_remainder_term,
};
use crate::verification::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Tilde,
    Hat,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tilde" => Ok(Variant::Tilde),
            "hat" => Ok(Variant::Hat),
            _ => Err(Error::InvalidParameter(format!(
                "unknown variant {s:?}, expected tilde or hat"
            ))),
        }
    }
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Tilde => "tilde",
            Variant::Hat => "hat",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriticalitySequence {
    pub variant: Variant,
    pub cutoff: u64,
    pub realized: FiniteSequence,
}

/// Cutoff factor: `γ^N_n = 1 - sqrt(n) / (N S_n^{1/4})` (tilde) or
/// `ψ^N_n = 1 - 1/(N n)` (hat) on `[N, N^2]`.
pub fn cutoff_factor(variant: Variant, cutoff: u64, n: u64, bits: u32) -> Float {
    if n < cutoff {
        return Float::with_val(bits, 1);
    }
    if n > cutoff * cutoff {
        return Float::new(bits);
    }
    let one = Float::with_val(bits, 1);
    match variant {
        Variant::Tilde => {
            let q = sum_of_squares(n, bits).sqrt().sqrt() * Float::with_val(bits, cutoff);
            one - Float::with_val(bits, n).sqrt() / q
        }
        Variant::Hat => one - Float::with_val(bits, 1) / Float::with_val(bits, cutoff * n),
    }
}

impl CriticalitySequence {
    pub fn new(variant: Variant, cutoff: u64, bits: u32) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::OutOfRange {
                what: "criticality cutoff",
                n: cutoff,
                min: 2,
            });
        }
        let last = cutoff * cutoff;
        let mut values = Vec::with_capacity(last as usize + 1);
        values.push(Complex::zero(bits));
        for n in 1..=last {
            let base = match variant {
                Variant::Tilde => {
                    let x = Float::with_val(bits, n);
                    let r = x.sqrt().sqrt();
                    let r2 = Float::with_val(bits, r.clone().square());
                    r2 * r
                }
                Variant::Hat => Float::with_val(bits, n),
            };
            values.push(Complex::real(
                base * cutoff_factor(variant, cutoff, n, bits),
            ));
        }
        Ok(Self {
            variant,
            cutoff,
            realized: FiniteSequence::from_values(bits, values),
        })
    }

    fn term(&self, n: u64) -> Float {
        let bits = self.realized.bits();
        let (a, b) = (
            self.realized.at(n as usize),
            self.realized.at(n as usize + 1),
        );
        match self.variant {
            Variant::Tilde => copson_tilde_remainder_term(n, &a, &b, bits),
            Variant::Hat => copson_hat_remainder_term(n, &a, &b, bits),
        }
    }

    /// Remainder sum over the damped window, `n = N-1, ..., N^2-1`.
    pub fn window_sum(&self) -> Float {
        let mut acc = CompensatedSum::new(self.realized.bits());
        for n in self.cutoff - 1..self.cutoff * self.cutoff {
            acc.add(&self.term(n));
        }
        acc.total()
    }

    /// The term at `n = N^2`, where the sequence drops to zero.
    pub fn terminal_jump(&self) -> Float {
        self.term(self.cutoff * self.cutoff)
    }

    /// Remainder sum over all `n >= 1`.
    pub fn full_sum(&self) -> Float {
        let mut acc = CompensatedSum::new(self.realized.bits());
        for n in 1..=self.cutoff * self.cutoff {
            acc.add(&self.term(n));
        }
        acc.total()
    }

    /// `log N / N^2 + 1/(2N) - 1/(2N^2)` (tilde) or `log N / N^2` (hat).
    pub fn closed_form_bound(&self) -> Float {
        let bits = self.realized.bits();
        let n = Float::with_val(bits, self.cutoff);
        let n2 = Float::with_val(bits, self.cutoff * self.cutoff);
        let log_term = n.clone().ln() / &n2;
        match self.variant {
            Variant::Tilde => {
                let half = Float::with_val(bits, 1) / (n * 2u32);
                let half2 = Float::with_val(bits, 1) / (n2 * 2u32);
                log_term + half - half2
            }
            Variant::Hat => log_term,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriticalityRow {
    pub cutoff: u64,
    pub window_sum: Float,
    pub bound: Float,
    pub terminal_jump: Float,
    pub full_sum: Float,
    /// Residual of `energy = weighted + full_sum` on the test sequence.
    pub identity_residual: f64,
}

#[derive(Debug, Clone)]
pub struct CriticalityDecay {
    pub variant: Variant,
    pub rows: Vec<CriticalityRow>,
    pub report: VerificationReport,
}

/// Evaluates the window sums for each cutoff (sorted ascending) and checks
/// `window_sum <= bound` and strict decrease along the list.
pub fn criticality_decay(
    variant: Variant,
    cutoffs: &[u64],
    ctx: &PrecisionContext,
) -> Result<CriticalityDecay> {
    let bits = ctx.bits();
    let mut cutoffs = cutoffs.to_vec();
    cutoffs.sort_unstable();
    cutoffs.dedup();
    let mut report = VerificationReport::new(
        format!("criticality-{}", variant.name()),
        format!("N in {cutoffs:?}"),
        ctx.tolerance_rel(),
        bits,
    );
    report.flag("window-sum: differences n = N-1..N^2-1; terminal jump at N^2 reported separately");
    let mut rows: Vec<CriticalityRow> = Vec::new();
    for &cutoff in &cutoffs {
        let seq = CriticalitySequence::new(variant, cutoff, bits)?;
        let window_sum = seq.window_sum();
        let bound = seq.closed_form_bound();
        let full_sum = seq.full_sum();
        let terms = match variant {
            Variant::Tilde => copson_tilde_identity_terms(&seq.realized)?,
            Variant::Hat => copson_hat_identity_terms(&seq.realized)?,
        };
        let lhs = terms.energy.clone();
        let rhs = Float::with_val(bits, &terms.weighted + &full_sum);
        let identity_residual = relative_residual(&lhs, &rhs, ctx.tolerance_abs());
        report.record_residual(cutoff, identity_residual, &lhs, &rhs);
        report.record_inequality(
            cutoff,
            window_sum <= bound,
            relative_gap(&bound, &window_sum),
            &bound,
            &window_sum,
        );
        if let Some(prev) = rows.last() {
            let decreasing = window_sum < prev.window_sum;
            report.record_inequality(
                cutoff,
                decreasing,
                relative_gap(&prev.window_sum, &window_sum),
                &prev.window_sum,
                &window_sum,
            );
        }
        rows.push(CriticalityRow {
            cutoff,
            window_sum,
            bound,
            terminal_jump: seq.terminal_jump(),
            full_sum,
            identity_residual,
        });
    }
    Ok(CriticalityDecay {
        variant,
        rows,
        report,
    })
}
