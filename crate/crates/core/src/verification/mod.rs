//! Executable checks of the identities, pointwise improvements, auxiliary
//! lemmas, criticality constructions and the Knopp bound chain.

pub mod criticality;
pub mod identities;
pub mod knopp;
pub mod lemmas;
pub mod random;
mod report;
pub mod scan;

pub use criticality::{
    criticality_decay, CriticalityDecay, CriticalityRow, CriticalitySequence, Variant,
};
pub use identities::{
    check_sequences, identity_batch, identity_sides, knopp_rellich_identity,
    verify_copson_hat_identity, verify_copson_tilde_identity, verify_hardy_identity,
    verify_rellich_identity, Identity,
};
pub use knopp::{knopp_improvement_chain, KnoppChain};
pub use lemmas::lemma_suite;
pub use report::{format_float, Gap, Verdict, VerificationReport, Witness, MAX_WITNESSES};
pub use scan::{improvement_claim, pointwise_scan, ImprovementClaim};
