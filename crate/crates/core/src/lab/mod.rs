//! The identity catalog: verifiers, reports and the errata ledger.

mod cases;
mod catalog;
mod errata;
mod identity;
mod lemmas;
mod report;

pub use cases::{
    cor2_identity, eq44_sign, hirota_miwa_identity, prop6_identity, rem2_sides, term_ratios, thm1_identity,
    thm1_sides, thm2_identity, verify, x_recurrences, IdentityCase, Reading, Thm1Coeffs,
};
pub use catalog::{catalog_cases, negative_controls, run_catalog, write_catalog, SYMBOLIC_LIMIT};
pub use errata::{errata_ledger, ErrataEntry};
pub use identity::{inv, p, random_rational, Factor, Identity, Mode, Outcome, Term};
pub use lemmas::{
    index_sets, lemma2, lemma3, lemma3_sides, lemma4, lemma4_failures, lemma5, lemma5_sides, lemma6, lemma6_counts,
    VanishingFailure, LEM4_CONVERSE_FAILURES,
};
pub use report::{write_jsonl, CaseId, Report, Status};
