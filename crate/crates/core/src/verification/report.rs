use rug::Float;
use serde::{Deserialize, Serialize};

use crate::precision::decimal_digits;

/// Witnesses kept per report; further failures are only counted.
pub const MAX_WITNESSES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: u64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub index: u64,
    pub value: f64,
}

/// Outcome of one check over a range of indices or sequences.
///
/// The verdict is pass iff no failure was recorded and `max_residual` does not
/// exceed `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub range: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub failures: u64,
    pub witnesses: Vec<Witness>,
    pub precision_bits: u32,
    pub seed: Option<u64>,
    pub flags: Vec<String>,
    pub min_gap: Option<Gap>,
    pub checked: u64,
}

pub fn format_float(x: &Float) -> String {
    x.to_string_radix(10, Some(decimal_digits(x.prec())))
}

impl VerificationReport {
    pub fn new(
        name: impl Into<String>,
        range: impl Into<String>,
        tolerance: f64,
        precision_bits: u32,
    ) -> Self {
        Self {
            name: name.into(),
            range: range.into(),
            max_residual: 0.0,
            tolerance,
            verdict: Verdict::Pass,
            failures: 0,
            witnesses: Vec::new(),
            precision_bits,
            seed: None,
            flags: Vec::new(),
            min_gap: None,
            checked: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn flag(&mut self, flag: impl Into<String>) {
        let flag = flag.into();
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
    }

    fn refresh(&mut self) {
        let ok = self.failures == 0 && self.max_residual <= self.tolerance;
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    }

    /// Records `residual` for the comparison `lhs` vs `rhs` at `index`.
    pub fn record_residual(&mut self, index: u64, residual: f64, lhs: &Float, rhs: &Float) {
        self.checked += 1;
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = if residual.is_nan() {
                f64::INFINITY
            } else {
                residual
            };
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail
        if !(residual <= self.tolerance) {
            self.push_failure(index, lhs, rhs);
        }
        self.refresh();
    }

    /// Records a strict inequality `lhs > rhs` at `index` with the given gap.
    pub fn record_inequality(
        &mut self,
        index: u64,
        holds: bool,
        gap: f64,
        lhs: &Float,
        rhs: &Float,
    ) {
        self.checked += 1;
        if !holds {
            self.push_failure(index, lhs, rhs);
        }
        self.record_gap(index, gap);
        self.refresh();
    }

    pub fn record_gap(&mut self, index: u64, value: f64) {
        match self.min_gap {
            Some(g) if g.value <= value => {}
            _ => self.min_gap = Some(Gap { index, value }),
        }
    }

    /// Marks a failure at `index` without counting an additional check.
    pub fn record_failure(&mut self, index: u64, lhs: &Float, rhs: &Float) {
        self.push_failure(index, lhs, rhs);
        self.refresh();
    }

    fn push_failure(&mut self, index: u64, lhs: &Float, rhs: &Float) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                index,
                lhs: format_float(lhs),
                rhs: format_float(rhs),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Combines two partial reports of the same check.
    pub fn merge(mut self, other: Self) -> Self {
        self.max_residual = self.max_residual.max(other.max_residual);
        self.failures += other.failures;
        self.checked += other.checked;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        for f in other.flags {
            self.flag(f);
        }
        if let Some(g) = other.min_gap {
            self.record_gap(g.index, g.value);
        }
        self.refresh();
        self
    }
}
