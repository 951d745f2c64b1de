//! Hat-guessing puzzle engine.
//!
//! Logicians stand in a line wearing hats and must each announce their own
//! hat color from what they can see and hear. This crate implements the
//! classic guessing strategies for those puzzles, verifies their worst-case
//! guarantees by exhausting every hat assignment, simulates the
//! "I know / I don't know" announcement puzzles over a limited hat supply,
//! and searches for provably optimal strategies on small instances.

pub mod enumerate;
pub mod epistemic;
pub mod error;
pub mod puzzle;
pub mod report;
pub mod strategy;
pub mod synth;
pub mod verify;

pub use enumerate::{enumerate_assignments, AssignmentSpace, Assignments, DEFAULT_ENUMERATION_CAP};
pub use epistemic::{announce, deduce, initial_worlds, knows_own, simulate, Decision, KnowStatus, WorldSet};
pub use error::{Error, Result};
pub use puzzle::{
    parse_supply, visible_hats, Announcement, Assignment, ColorId, Palette, PuzzleSpec,
    Transcript, TranscriptEntry, View, Visibility,
};
pub use strategy::{Builtin, Strategy};
pub use synth::{exists_strategy, min_guaranteed_mistakes, DecisionTable, InformationSet, SynthesisResult};
pub use verify::{
    merge_reports, run_transcript, verify_assignments, verify_exhaustive,
    verify_exhaustive_capped, verify_sampled, RunResult, VerificationReport, VerifyMode,
};
