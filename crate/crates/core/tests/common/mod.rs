//! Dense truncated-matrix oracles shared by the integration tests.

#![allow(dead_code)]

use discrete_hardy::factorization::{remainder1_apply, remainder2_coefficients, Remainder1Spec};
use discrete_hardy::operators::{
    apply_bilaplacian_delta, apply_dirichlet_laplacian, apply_generalized_laplacian,
    apply_laplacian_power, apply_weighted_laplacian_delta,
};
use discrete_hardy::verification::random::random_sequences;
use discrete_hardy::weights::{eta_weight, sigma2_weight};
use discrete_hardy::{Complex, FiniteSequence, PositiveSequence};
use rug::{Float, Rational};

pub const BITS: u32 = 256;

pub type Matrix = Vec<Vec<Float>>;

pub fn zeros(n: usize) -> Matrix {
    vec![vec![Float::new(BITS); n]; n]
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = Float::with_val(BITS, &a[i][k] * &b[k][j]);
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn matvec(m: &Matrix, a: &FiniteSequence) -> Vec<Complex> {
    m.iter()
        .map(|row| {
            let mut z = Complex::zero(BITS);
            for (j, c) in row.iter().enumerate() {
                z.add_scaled(c, &a.at(j));
            }
            z
        })
        .collect()
}

pub fn tridiagonal(edge: &[Float], n: usize) -> Matrix {
    let mut m = zeros(n);
    for i in 0..n {
        m[i][i] = Float::with_val(BITS, &edge[i] + &edge[i + 1]);
        if i + 1 < n {
            m[i][i + 1] = -edge[i + 1].clone();
            m[i + 1][i] = -edge[i + 1].clone();
        }
    }
    m
}

/// `Λ_n^{2-c} / λ_n` with `Λ_0 = λ_0`, via `Float::pow` with a float exponent.
pub fn edge_weights(lambda: &PositiveSequence, c: f64, upto: usize) -> Vec<Float> {
    let e = Float::with_val(BITS, 2.0 - c);
    let mut out = Vec::new();
    let l0 = lambda.value(0, BITS);
    out.push(Float::with_val(BITS, rug::ops::Pow::pow(&l0, &e)) / &l0);
    let mut big = Float::new(BITS);
    for n in 1..=upto as u64 {
        let l = lambda.value(n, BITS);
        big += &l;
        out.push(Float::with_val(BITS, rug::ops::Pow::pow(&big, &e)) / &l);
    }
    out
}

/// Largest deviation of `got` from `expected` on the first `exact_rows`
/// rows, and of `got` from zero beyond them, relative to the largest
/// expected entry.
pub fn row_error(got: &FiniteSequence, expected: &[Complex], exact_rows: usize) -> f64 {
    let scale = expected
        .iter()
        .map(|z| z.abs().to_f64())
        .fold(0.0f64, f64::max);
    if scale == 0.0 {
        return got
            .values()
            .iter()
            .map(|z| z.abs().to_f64())
            .fold(0.0, f64::max);
    }
    let mut worst = 0.0f64;
    for (i, e) in expected.iter().enumerate().take(exact_rows) {
        worst = worst.max((got.at(i) - e).abs().to_f64());
    }
    for i in exact_rows..got.values().len() {
        worst = worst.max(got.at(i).abs().to_f64());
    }
    worst / scale
}

pub fn samples(seed: u64, prefix: usize) -> Vec<FiniteSequence> {
    let mut out = random_sequences(seed, 12, BITS, prefix, 16);
    out.push(FiniteSequence::unit(BITS, prefix.max(1)));
    out.push(FiniteSequence::zero(BITS));
    out
}

/// `(name, max relative error)` of every operator against its matrix, over
/// sampled sequences with support ending at most at 16. Truncations keep a
/// margin of `2α` beyond the support.
pub fn operator_errors() -> Vec<(String, f64)> {
    let mut out = Vec::new();
    for alpha in 1..=4u32 {
        let mut worst = 0.0f64;
        for a in samples(100 + u64::from(alpha), 0) {
            let size = a.support_end() + 1 + 2 * alpha as usize;
            let base = tridiagonal(&vec![Float::with_val(BITS, 1); size + 1], size);
            let mut m = base.clone();
            for _ in 1..alpha {
                m = matmul(&m, &base);
            }
            let got = if alpha == 1 {
                apply_dirichlet_laplacian(&a)
            } else {
                apply_laplacian_power(&a, alpha).unwrap()
            };
            worst = worst.max(row_error(&got, &matvec(&m, &a), size - alpha as usize));
        }
        out.push((format!("dirichlet^{alpha}"), worst));
    }

    let cases = [
        (PositiveSequence::linear(), Rational::from(2), 2.0),
        (
            PositiveSequence::copson_tilde_lambda(),
            Rational::from((3, 2)),
            1.5,
        ),
        (
            PositiveSequence::power_ratio(1, 2),
            Rational::from((5, 4)),
            1.25,
        ),
        (
            PositiveSequence::shifted()
                .with_zero_value(Float::with_val(BITS, 3))
                .unwrap(),
            Rational::from((7, 4)),
            1.75,
        ),
    ];
    for (k, (lambda, c, cf)) in cases.iter().enumerate() {
        let mut worst = 0.0f64;
        for a in samples(200 + k as u64, 0) {
            let size = a.support_end() + 3;
            let m = tridiagonal(&edge_weights(lambda, *cf, size + 1), size);
            worst = worst.max(row_error(
                &apply_generalized_laplacian(lambda, c, &a),
                &matvec(&m, &a),
                size - 1,
            ));
        }
        out.push((
            format!("generalized lambda={} c={c}", lambda.label()),
            worst,
        ));
    }

    let deltas = [
        PositiveSequence::ones(),
        PositiveSequence::shifted(),
        PositiveSequence::power_ratio(-1, 2)
            .with_zero_value(Float::with_val(BITS, 2))
            .unwrap(),
    ];
    for (k, delta) in deltas.iter().enumerate() {
        let (mut w1, mut w2) = (0.0f64, 0.0f64);
        for a in samples(300 + k as u64, 0) {
            let size = a.support_end() + 5;
            let m = tridiagonal(&delta.values_upto(size as u64 + 1, BITS), size);
            w1 = w1.max(row_error(
                &apply_weighted_laplacian_delta(delta, &a),
                &matvec(&m, &a),
                size - 1,
            ));
            let m2 = matmul(&m, &m);
            w2 = w2.max(row_error(
                &apply_bilaplacian_delta(delta, &a),
                &matvec(&m2, &a),
                size - 2,
            ));
        }
        out.push((format!("weighted delta={}", delta.label()), w1));
        out.push((format!("bilaplacian delta={}", delta.label()), w2));
    }
    out
}

fn entry_error(lhs: &Matrix, rhs: &Matrix) -> f64 {
    let scale = lhs
        .iter()
        .flatten()
        .chain(rhs.iter().flatten())
        .map(|x| x.to_f64().abs())
        .fold(0.0f64, f64::max);
    let mut worst = 0.0f64;
    for (l, r) in lhs.iter().zip(rhs) {
        for (x, y) in l.iter().zip(r) {
            worst = worst.max(Float::with_val(BITS, x - y).abs().to_f64());
        }
    }
    worst / scale
}

/// Truncation of `(-Δ_δ)^2 - diag(σ^(2))` to indices `2..=size` against
/// `(R^(2))^T R^(2)`.
pub fn rellich_gram_error(delta: &PositiveSequence, mu: &PositiveSequence, size: usize) -> f64 {
    let full = size + 3;
    let m = tridiagonal(&delta.values_upto(full as u64 + 1, BITS), full);
    let bi = matmul(&m, &m);
    let coeffs = remainder2_coefficients(delta, mu, size as u64, BITS).unwrap();
    let mut r = vec![vec![Float::new(BITS); full]; size + 1];
    for n in 1..=size {
        let s1 = delta.value(n as u64 + 1, BITS).sqrt();
        let s12 = Float::with_val(BITS, &s1 * delta.value(n as u64 + 2, BITS).sqrt());
        let g = coeffs.gamma_sq(n as u64).unwrap().clone().sqrt();
        r[n][n] = Float::with_val(BITS, &g * &s12);
        r[n][n + 1] = -Float::with_val(BITS, coeffs.beta(n as u64).unwrap() * &s1);
        r[n][n + 2] = s12 / &g;
    }
    let dim = size - 1;
    let mut lhs = vec![vec![Float::new(BITS); dim]; dim];
    let mut rhs = lhs.clone();
    for i in 2..=size {
        for j in 2..=size {
            let mut v = bi[i][j].clone();
            if i == j {
                v -= sigma2_weight(delta, mu, i as u64, BITS).unwrap();
            }
            lhs[i - 2][j - 2] = v;
            let mut s = Float::new(BITS);
            for row in r.iter().skip(1) {
                s += Float::with_val(BITS, &row[i] * &row[j]);
            }
            rhs[i - 2][j - 2] = s;
        }
    }
    entry_error(&lhs, &rhs)
}

/// Truncation of `(-Δ_Λ) - diag(η)` to indices `1..=size` against
/// `(R^(1))^T R^(1)`, with `R^(1)` read off its action on unit vectors.
pub fn hardy_gram_error(
    lambda: &PositiveSequence,
    c: &Rational,
    cf: f64,
    mu: &PositiveSequence,
    size: usize,
) -> f64 {
    let spec = Remainder1Spec::new(lambda.clone(), c.clone(), mu.clone()).unwrap();
    let m = tridiagonal(&edge_weights(lambda, cf, size + 3), size + 2);
    let columns: Vec<FiniteSequence> = (0..=size)
        .map(|j| {
            if j == 0 {
                FiniteSequence::zero(BITS)
            } else {
                remainder1_apply(&spec, &FiniteSequence::unit(BITS, j)).unwrap()
            }
        })
        .collect();
    let mut lhs = vec![vec![Float::new(BITS); size]; size];
    let mut rhs = lhs.clone();
    for i in 1..=size {
        for j in 1..=size {
            let mut v = m[i][j].clone();
            if i == j {
                v -= eta_weight(lambda, c, mu, i as u64, BITS).unwrap();
            }
            lhs[i - 1][j - 1] = v;
            let mut s = Float::new(BITS);
            for n in 1..=size {
                s += Float::with_val(BITS, &columns[i].at(n).re * &columns[j].at(n).re);
            }
            rhs[i - 1][j - 1] = s;
        }
    }
    entry_error(&lhs, &rhs)
}

/// `(name, error)` for the Gram identities on truncations up to 12.
pub fn gram_errors() -> Vec<(String, f64)> {
    let mut out = Vec::new();
    let mu = PositiveSequence::power_ratio(3, 2);
    for delta in [PositiveSequence::shifted(), PositiveSequence::ones()] {
        for size in [4usize, 8, 12] {
            out.push((
                format!("rellich delta={} size={size}", delta.label()),
                rellich_gram_error(&delta, &mu, size),
            ));
        }
    }
    let hardy = [
        (
            PositiveSequence::copson_tilde_lambda(),
            Rational::from((3, 2)),
            1.5,
            PositiveSequence::power_ratio(3, 4),
        ),
        (
            PositiveSequence::ones(),
            Rational::from(2),
            2.0,
            PositiveSequence::power_ratio(1, 2),
        ),
        (
            PositiveSequence::linear(),
            Rational::from((5, 4)),
            1.25,
            PositiveSequence::linear(),
        ),
    ];
    for (lambda, c, cf, mu) in &hardy {
        out.push((
            format!("hardy lambda={} c={c} mu={}", lambda.label(), mu.label()),
            hardy_gram_error(lambda, c, *cf, mu, 12),
        ));
    }
    out
}
