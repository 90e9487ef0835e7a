//! Operators and remainder factorizations against explicitly assembled
//! truncated matrices.

mod common;

use common::{gram_errors, operator_errors, samples, BITS};
use discrete_hardy::operators::{apply_bilaplacian_delta, apply_laplacian_power};
use discrete_hardy::PositiveSequence;

const TOL: f64 = 1e-25;

#[test]
fn operators_match_matrices() {
    for (name, err) in operator_errors() {
        assert!(err <= TOL, "{name}: {err:e}");
    }
}

#[test]
fn gram_identities_hold() {
    for (name, err) in gram_errors() {
        assert!(err <= TOL, "{name}: {err:e}");
    }
}

#[test]
fn bilaplacian_with_unit_weights_is_the_square() {
    for a in samples(400, 0) {
        let b = apply_bilaplacian_delta(&PositiveSequence::ones(), &a);
        let p = apply_laplacian_power(&a, 2).unwrap();
        for i in 0..b.values().len().max(p.values().len()) {
            assert!((b.at(i) - &p.at(i)).abs() < 1e-70);
        }
    }
    let _ = BITS;
}
