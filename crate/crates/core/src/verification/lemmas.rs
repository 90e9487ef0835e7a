//! Auxiliary inequalities behind the Copson and Rellich improvements,
//! evaluated from their closed forms.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use crate::error::Result;
use crate::factorization::relative_gap;
use crate::precision::relative_residual;
use crate::verification::VerificationReport;
use crate::weights::{
    copson_hat_bound_exact, copson_hat_gap_closed_form, copson_hat_weight_exact,
    copson_tilde_bound, copson_tilde_weight,
};

fn guard(bits: u32, n: u64) -> u32 {
    bits + 8 * (64 - n.leading_zeros()) + 32
}

fn f(bits: u32, x: u64) -> Float {
    Float::with_val(bits, x)
}

/// Exact `c_0 n^k + ... + c_k` rounded once.
fn poly(bits: u32, n: u64, coeffs: &[i64]) -> Float {
    let v = coeffs.iter().fold(Integer::new(), |acc, &c| acc * n + c);
    Float::with_val(bits, &v)
}

/// Exact product of small factors rounded once.
fn prod(bits: u32, factors: &[u64]) -> Float {
    let v = factors.iter().fold(Integer::from(1), |acc, &x| acc * x);
    Float::with_val(bits, &v)
}

/// `x^{3/4}`
fn p34(x: Float) -> Float {
    let r = x.sqrt().sqrt();
    let r2 = Float::with_val(r.prec(), r.clone().square());
    r2 * r
}

/// `x^{3/2}`
fn p32(x: Float) -> Float {
    let r = x.clone().sqrt();
    x * r
}

/// `x^{5/4}`
fn p54(x: Float) -> Float {
    let r = x.clone().sqrt().sqrt();
    x * r
}

/// `F(n) = sqrt(n)(2n+3)^2 (n^{3/4} - (n-1)^{3/4})
///        + (2n+1)^{3/2} sqrt((n+2)(2n+3)) (n^{3/4} - (n+1)^{3/4})`
pub fn lemma_f(n: u64, bits: u32) -> Float {
    let b = guard(bits, n);
    let nn = f(b, n);
    let a = nn.clone().sqrt() * prod(b, &[2 * n + 3, 2 * n + 3]);
    let c = p32(f(b, 2 * n + 1)) * prod(b, &[n + 2, 2 * n + 3]).sqrt();
    let x = p34(nn.clone());
    let left = Float::with_val(b, &x - p34(f(b, n - 1)));
    let right = Float::with_val(b, &x - p34(f(b, n + 1)));
    Float::with_val(bits, a * left + c * right)
}

/// `G(n)`, the two-term truncation of `F(n)`'s binomial series.
pub fn lemma_g(n: u64, bits: u32) -> Float {
    let b = guard(bits, n);
    let nn = f(b, n);
    let a = nn.clone().sqrt() * prod(b, &[2 * n + 3, 2 * n + 3]);
    let c = p32(f(b, 2 * n + 1)) * prod(b, &[n + 2, 2 * n + 3]).sqrt();
    let t1 = Float::with_val(b, 3) / (nn.clone().sqrt().sqrt() * 4u32);
    let t2 = Float::with_val(b, 3) / (p54(nn) * 32u32);
    let plus = Float::with_val(b, &t1 + &t2);
    let minus = Float::with_val(b, &t2 - &t1);
    Float::with_val(bits, a * plus + c * minus)
}

/// `(36/16) n^{5/4}`
pub fn lemma_g_bound(n: u64, bits: u32) -> Float {
    p54(f(bits, n)) * 36u32 / 16u32
}

/// `H(n) = sqrt(n)(32n^3 + 76n^2 + 84n + 9) - (2n+1)(8n-1) sqrt((n+2)(2n+1)(2n+3))`
pub fn lemma_h(n: u64, bits: u32) -> Float {
    let b = guard(bits, n);
    let poly = poly(b, n, &[32, 76, 84, 9]);
    let a = f(b, n).sqrt() * poly;
    let c = prod(b, &[2 * n + 1, 8 * n - 1]) * prod(b, &[n + 2, 2 * n + 1, 2 * n + 3]).sqrt();
    Float::with_val(bits, a - c)
}

/// `Ṽ_n - n^2 / (16 S_n^{3/2})`
pub fn vtilde_gap(n: u64, bits: u32) -> Result<Float> {
    let b = guard(bits, n);
    Ok(Float::with_val(
        bits,
        copson_tilde_weight(n, b)? - copson_tilde_bound(n, b),
    ))
}

fn ratio(b: u32, p: &[u64], q: &[u64]) -> Float {
    prod(b, p) / prod(b, q)
}

/// `T(n)` in its defining form.
pub fn lemma_t(n: u64, bits: u32) -> Float {
    let b = guard(bits, n);
    let k = ratio(b, &[n + 3, n + 2], &[n + 4, n + 1]);
    let mut t = f(b, 1) + ratio(b, &[2, n + 3, n + 3], &[n + 2, n + 4]) + &k;
    t -= k * p32(ratio(b, &[n - 1], &[n])) * 2u32;
    t -= p32(ratio(b, &[n + 2], &[n + 1])) * 2u32;
    Float::with_val(bits, t)
}

/// `T(n)` in the simplified single-fraction form.
pub fn lemma_t_simplified(n: u64, bits: u32) -> Float {
    let b = guard(bits, n);
    let p1 = poly(b, n, &[4, 28, 60, 38, 0]);
    let p2 = poly(b, n, &[1, 6, 9, -4, -12]);
    let p3 = poly(b, n, &[1, 8, 20, 16]);
    let num = prod(b, &[n, n + 1]).sqrt() * p1
        - prod(b, &[n - 1, n + 1]).sqrt() * p2 * 2u32
        - prod(b, &[n, n + 2]).sqrt() * p3 * f(b, 2 * n);
    let den = prod(b, &[n + 4, n + 2]) * p32(prod(b, &[n, n + 1]));
    Float::with_val(bits, num / den)
}

/// `U(n)`
pub fn lemma_u(n: u64, bits: u32) -> Float {
    let b = guard(bits, n);
    let k = ratio(b, &[n + 3, n + 2], &[n + 4, n + 1]);
    let q = p32(ratio(b, &[n - 1], &[n]));
    let mut u = f(b, 1) + ratio(b, &[2, n + 3, n + 3], &[n + 2, n + 4]) + &k;
    u -= Float::with_val(b, &k * &q) * p32(ratio(b, &[n + 1], &[n + 2]));
    u -= k * q;
    u -= p32(ratio(b, &[n + 2], &[n + 1]));
    Float::with_val(bits, u)
}

/// `p_{n+1} p_{n+2} = ((n+3)/(n+1))^{3/2}` for `μ_n = n^{3/2}`.
pub fn lemma_u_bound(n: u64, bits: u32) -> Float {
    p32(ratio(bits, &[n + 3], &[n + 1]))
}

/// `S(n) = U(n) - p_{n+1} p_{n+2}`
pub fn lemma_s(n: u64, bits: u32) -> Float {
    let b = guard(bits, n);
    Float::with_val(bits, lemma_u(n, b) - lemma_u_bound(n, b))
}

/// Numerator `f(n)` of `S(n)` in its expanded form.
pub fn lemma_f_numerator(n: u64, bits: u32) -> Float {
    let b = guard(bits, n);
    let sq = |xs: &[u64]| prod(b, xs).sqrt();
    let mut v = sq(&[n, n + 1, n + 2]) * poly(b, n, &[4, 28, 60, 38, 0]);
    v -= sq(&[n, n + 2, n + 3]) * poly(b, n, &[1, 9, 26, 24, 0]);
    v -= sq(&[n - 1, n + 1, n + 2]) * poly(b, n, &[1, 6, 9, -4, -12]);
    v -= sq(&[n]) * poly(b, n, &[1, 10, 36, 56, 32, 0]);
    v -= sq(&[n - 1]) * poly(b, n, &[1, 6, 10, 0, -11, -6]);
    Float::with_val(bits, v)
}

/// `h(n) = V̂_n - n^3 / (16 Ŝ_n^{3/2})`, exactly.
pub fn hat_gap_exact(n: u64) -> Result<Rational> {
    Ok(copson_hat_weight_exact(n)? - copson_hat_bound_exact(n))
}

fn scan<F>(
    name: &str,
    range: RangeInclusive<u64>,
    bits: u32,
    tolerance: f64,
    check: F,
) -> Result<VerificationReport>
where
    F: Fn(&mut VerificationReport, u64) -> Result<()> + Sync,
{
    let (lo, hi) = (*range.start(), *range.end());
    let mut report = VerificationReport::new(name, format!("{lo}..={hi}"), tolerance, bits);
    if lo > hi {
        return Ok(report);
    }
    let blocks: Vec<(u64, u64)> = (lo..=hi)
        .step_by(1024)
        .map(|s| (s, (s + 1023).min(hi)))
        .collect();
    let parts: Vec<Result<VerificationReport>> = blocks
        .par_iter()
        .map(|&(a, b)| {
            let mut r = VerificationReport::new(name, String::new(), tolerance, bits);
            for n in a..=b {
                check(&mut r, n)?;
            }
            Ok(r)
        })
        .collect();
    for p in parts {
        report = report.merge(p?);
    }
    Ok(report)
}

fn strictly_greater(r: &mut VerificationReport, n: u64, a: &Float, b: &Float) {
    r.record_inequality(n, a > b, relative_gap(a, b), a, b);
}

/// Relative gap used for comparisons against zero: `a / scale`.
fn positive(r: &mut VerificationReport, n: u64, a: &Float, scale: &Float) {
    let zero = Float::new(a.prec());
    let gap = if scale.is_zero() {
        a.to_f64()
    } else {
        Float::with_val(a.prec(), a / scale).to_f64()
    };
    r.record_inequality(n, *a > 0, gap, a, &zero);
}

/// Runs every lemma over `range`, clipped to each lemma's domain
/// (`n >= 1` for F, G, H and the Copson gaps, `n >= 2` for T, U, S, f).
pub fn lemma_suite(
    range: RangeInclusive<u64>,
    bits: u32,
    tolerance_rel: f64,
) -> Result<Vec<VerificationReport>> {
    let lo1 = (*range.start()).max(1);
    let lo2 = (*range.start()).max(2);
    let hi = *range.end();
    let mut out = Vec::new();

    out.push(scan(
        "G(n) > (36/16) n^(5/4)",
        lo1..=hi,
        bits,
        0.0,
        |r, n| {
            strictly_greater(r, n, &lemma_g(n, bits), &lemma_g_bound(n, bits));
            Ok(())
        },
    )?);
    out.push(scan("F(n) > G(n)", lo1..=hi, bits, 0.0, |r, n| {
        strictly_greater(r, n, &lemma_f(n, bits), &lemma_g(n, bits));
        Ok(())
    })?);
    out.push(scan(
        "H(n) > 0 and G(n) - (36/16) n^(5/4) = 3 H(n) / (32 n^(5/4))",
        lo1..=hi,
        bits,
        tolerance_rel,
        |r, n| {
            let h = lemma_h(n, bits);
            let lhs = Float::with_val(bits, lemma_g(n, bits) - lemma_g_bound(n, bits));
            let rhs = Float::with_val(bits, &h * 3u32) / (p54(f(bits, n)) * 32u32);
            r.record_residual(n, relative_residual(&rhs, &lhs, 0.0), &lhs, &rhs);
            positive(r, n, &h, &f(bits, 1));
            Ok(())
        },
    )?);
    out.push(scan(
        "V~(n) - n^2/(16 S~^(3/2)) > 0",
        lo1..=hi,
        bits,
        0.0,
        |r, n| {
            let g = vtilde_gap(n, bits)?;
            positive(r, n, &g, &copson_tilde_bound(n, bits));
            Ok(())
        },
    )?);
    out.push(scan("T(n) > 0", lo2..=hi, bits, tolerance_rel, |r, n| {
        let t = lemma_t(n, bits);
        let s = lemma_t_simplified(n, bits);
        r.record_residual(n, relative_residual(&t, &s, 0.0), &t, &s);
        positive(r, n, &t, &f(bits, 1));
        Ok(())
    })?);
    out.push(scan(
        "U(n) < p(n+1) p(n+2)",
        lo2..=hi,
        bits,
        0.0,
        |r, n| {
            strictly_greater(r, n, &lemma_u_bound(n, bits), &lemma_u(n, bits));
            Ok(())
        },
    )?);
    out.push(scan(
        "S(n) < 0 and f(n) < 0",
        lo2..=hi,
        bits,
        0.0,
        |r, n| {
            let s = -lemma_s(n, bits);
            let fnum = -lemma_f_numerator(n, bits);
            positive(r, n, &s, &lemma_u_bound(n, bits));
            positive(r, n, &fnum, &f(bits, 1));
            Ok(())
        },
    )?);
    out.push(scan(
        "h(n) = V^(n) - n^3/(16 S^^(3/2)) = (4n^2+4n+1)/(2(n+1)^3 n^3) > 0",
        lo1..=hi,
        bits,
        0.0,
        |r, n| {
            let h = hat_gap_exact(n)?;
            let closed = copson_hat_gap_closed_form(n);
            let hf = Float::with_val(bits, &h);
            if h != closed {
                r.record_failure(n, &hf, &Float::with_val(bits, &closed));
            }
            let gap = Float::with_val(bits, &h / copson_hat_bound_exact(n)).to_f64();
            r.record_inequality(n, h > 0, gap, &hf, &Float::new(bits));
            Ok(())
        },
    )?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_past_u64_polynomials() {
        let n = 1_000_000;
        assert!(lemma_h(n, 256) > 0);
        assert!(lemma_f_numerator(n, 256) < 0);
        let (t, ts) = (lemma_t(n, 256), lemma_t_simplified(n, 256));
        assert!(t > 0 && relative_residual(&t, &ts, 0.0) < 1e-40);
    }

    #[test]
    fn h_relation_and_values() {
        assert!((lemma_g(1, 256).to_f64() - 7.886973507891867).abs() < 1e-12);
        assert!((lemma_f(1, 256).to_f64() - 11.27918395972056).abs() < 1e-12);
        assert!((lemma_t(2, 256).to_f64() - 0.329_568_807_448_054_2).abs() < 1e-15);
        assert!((lemma_s(2, 256).to_f64() + 0.1448059701533411).abs() < 1e-15);
        assert!((lemma_f_numerator(2, 256).to_f64() + 102.1538127123003).abs() < 1e-11);
        assert_eq!(hat_gap_exact(1).unwrap(), Rational::from((9, 16)));
    }

    #[test]
    fn suite_passes_on_short_range() {
        let reports = lemma_suite(1..=300, 256, 1e-30).unwrap();
        assert_eq!(reports.len(), 8);
        for r in &reports {
            assert!(r.passed(), "{}: {:?}", r.name, r.witnesses);
            assert!(r.min_gap.unwrap().value > 0.0, "{}", r.name);
        }
    }
}
