//! Runs a strategy over one assignment or all of them and reports the
//! worst case: mistake counts, per-position guarantees, rule violations
//! and a counterexample.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{AssignmentSpace, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::puzzle::{Announcement, Assignment, PuzzleSpec, Transcript, View};
use crate::strategy::Strategy;

/// Outcome of one strategy run on one assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub transcript: Transcript,
    /// Positions whose announced color differs from their hat.
    pub mistakes: BTreeSet<usize>,
    /// Breaches of the no-repeat rule (distinct-colors puzzles only).
    pub violations: u64,
}

/// How a report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum VerifyMode {
    Exhaustive,
    Sampled { seed: u64, samples: u64 },
}

/// Aggregated worst-case guarantees over the checked assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub assignments_checked: u64,
    pub worst_case_mistakes: usize,
    /// Positions correct in every checked assignment.
    pub guaranteed_correct: BTreeSet<usize>,
    /// Lexicographically smallest assignment attaining the worst case;
    /// populated whenever the worst case is above zero.
    pub counterexample: Option<Assignment>,
    pub violations_total: u64,
}

/// Plays the speakers in the strategy's order, feeding each one the hats it
/// sees and the transcript so far.
pub fn run_transcript(
    spec: &PuzzleSpec,
    strategy: &dyn Strategy,
    assignment: &Assignment,
) -> Result<RunResult> {
    spec.validate()?;
    spec.validate_assignment(assignment)?;
    let order = prepare_order(spec, strategy)?;
    run_prepared(spec, strategy, &order, assignment)
}

/// Checks everything about a (spec, strategy) pair that does not depend on
/// the assignment, so exhaustive runs validate once rather than per world.
fn prepare_order(spec: &PuzzleSpec, strategy: &dyn Strategy) -> Result<Vec<usize>> {
    if matches!(spec, PuzzleSpec::Limited { .. }) {
        return Err(Error::UnsupportedStrategy {
            id: strategy.id().to_string(),
            reason: "guessing strategies do not apply to limited-supply puzzles".into(),
        });
    }
    let n = spec.n();
    let order = strategy.speaking_order(n);
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(Error::StrategyBug(format!(
            "speaking order {order:?} is not a permutation of 0..{n}"
        )));
    }
    Ok(order)
}

/// The decide loop itself; callers have already validated the inputs.
fn run_prepared(
    spec: &PuzzleSpec,
    strategy: &dyn Strategy,
    order: &[usize],
    assignment: &Assignment,
) -> Result<RunResult> {
    let colors = spec.colors();
    let no_repeat = spec.no_repeat_rule();
    let mut transcript = Transcript::new();
    transcript.entries.reserve(order.len());
    let mut mistakes = BTreeSet::new();
    let mut violations = 0u64;
    for &speaker in order {
        let view = View::new(spec.visibility(), assignment.hats(), speaker);
        let color = strategy
            .decide(spec, speaker, &view, &transcript)
            .ok_or_else(|| {
                Error::StrategyBug(format!("no decision for position {speaker}"))
            })?;
        if color.0 >= colors {
            return Err(Error::StrategyBug(format!(
                "announced color {color} outside the palette of {colors}"
            )));
        }
        if no_repeat && transcript.contains_guess(color) {
            violations += 1;
        }
        if color != assignment.hat(speaker) {
            mistakes.insert(speaker);
        }
        transcript.push(speaker, Announcement::Guess(color));
    }
    Ok(RunResult { transcript, mistakes, violations })
}

/// Running aggregate over runs; merging is associative and commutative
/// because ties on the worst case resolve to the smaller assignment.
#[derive(Debug, Clone)]
struct Aggregate {
    checked: u64,
    worst: usize,
    counterexample: Option<Assignment>,
    mistaken_anywhere: Vec<bool>,
    violations: u64,
}

impl Aggregate {
    fn new(n: usize) -> Aggregate {
        Aggregate {
            checked: 0,
            worst: 0,
            counterexample: None,
            mistaken_anywhere: vec![false; n],
            violations: 0,
        }
    }

    fn absorb(&mut self, assignment: &Assignment, run: &RunResult) {
        self.checked += 1;
        self.violations += run.violations;
        for &m in &run.mistakes {
            self.mistaken_anywhere[m] = true;
        }
        let count = run.mistakes.len();
        if count > 0 {
            let better = match (&self.counterexample, count.cmp(&self.worst)) {
                (_, std::cmp::Ordering::Greater) => true,
                (Some(existing), std::cmp::Ordering::Equal) => assignment < existing,
                (None, std::cmp::Ordering::Equal) => true,
                _ => false,
            };
            if better {
                self.worst = count;
                self.counterexample = Some(assignment.clone());
            }
        }
    }

    fn merge(mut self, other: Aggregate) -> Aggregate {
        self.checked += other.checked;
        self.violations += other.violations;
        for (a, b) in self.mistaken_anywhere.iter_mut().zip(&other.mistaken_anywhere) {
            *a |= b;
        }
        let take_other = match other.worst.cmp(&self.worst) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => match (&self.counterexample, &other.counterexample) {
                (Some(mine), Some(theirs)) => theirs < mine,
                (None, Some(_)) => true,
                _ => false,
            },
            std::cmp::Ordering::Less => false,
        };
        if take_other {
            self.worst = other.worst;
            self.counterexample = other.counterexample;
        }
        self
    }

    fn finish(self, mode: VerifyMode) -> VerificationReport {
        let guaranteed_correct = self
            .mistaken_anywhere
            .iter()
            .enumerate()
            .filter_map(|(i, &hit)| (!hit).then_some(i))
            .collect();
        VerificationReport {
            mode,
            assignments_checked: self.checked,
            worst_case_mistakes: self.worst,
            guaranteed_correct,
            counterexample: self.counterexample,
            violations_total: self.violations,
        }
    }
}

/// Checks every legal assignment (within the default enumeration cap).
pub fn verify_exhaustive(spec: &PuzzleSpec, strategy: &dyn Strategy) -> Result<VerificationReport> {
    verify_exhaustive_capped(spec, strategy, DEFAULT_ENUMERATION_CAP)
}

pub fn verify_exhaustive_capped(
    spec: &PuzzleSpec,
    strategy: &dyn Strategy,
    cap: u64,
) -> Result<VerificationReport> {
    strategy.check_spec(spec)?;
    let order = prepare_order(spec, strategy)?;
    let space = AssignmentSpace::new(spec)?;
    space.ensure_within(cap)?;
    let n = spec.n();
    let count = space.count() as usize;
    let aggregate = (0..count)
        .into_par_iter()
        .with_min_len(1024)
        .try_fold(
            || Aggregate::new(n),
            |mut acc, rank| -> Result<Aggregate> {
                let assignment = space.at(rank as u64);
                let run = run_prepared(spec, strategy, &order, &assignment)?;
                acc.absorb(&assignment, &run);
                Ok(acc)
            },
        )
        .try_reduce(|| Aggregate::new(n), |a, b| Ok(a.merge(b)))?;
    Ok(aggregate.finish(VerifyMode::Exhaustive))
}

/// Checks `samples` uniformly random legal assignments, reproducibly.
///
/// Sampling is counter-based: sample `i` draws from an independent ChaCha8
/// stream (`seed` as the key, `i` as the stream), so the result does not
/// depend on how the samples are scheduled across workers.
pub fn verify_sampled(
    spec: &PuzzleSpec,
    strategy: &dyn Strategy,
    samples: u64,
    seed: u64,
) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::InvalidPuzzle("need at least one sample".into()));
    }
    strategy.check_spec(spec)?;
    let order = prepare_order(spec, strategy)?;
    let space = AssignmentSpace::new(spec)?;
    let n = spec.n();
    let aggregate = (0..samples as usize)
        .into_par_iter()
        .with_min_len(256)
        .try_fold(
            || Aggregate::new(n),
            |mut acc, index| -> Result<Aggregate> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index as u64);
                let assignment = space.sample(&mut rng);
                let run = run_prepared(spec, strategy, &order, &assignment)?;
                acc.absorb(&assignment, &run);
                Ok(acc)
            },
        )
        .try_reduce(|| Aggregate::new(n), |a, b| Ok(a.merge(b)))?;
    Ok(aggregate.finish(VerifyMode::Sampled { seed, samples }))
}

/// Aggregates a report over an explicit set of assignments; the building
/// block behind the partition-merge law.
pub fn verify_assignments<I>(
    spec: &PuzzleSpec,
    strategy: &dyn Strategy,
    assignments: I,
) -> Result<VerificationReport>
where
    I: IntoIterator<Item = Assignment>,
{
    strategy.check_spec(spec)?;
    spec.validate()?;
    let order = prepare_order(spec, strategy)?;
    let mut acc = Aggregate::new(spec.n());
    for assignment in assignments {
        spec.validate_assignment(&assignment)?;
        let run = run_prepared(spec, strategy, &order, &assignment)?;
        acc.absorb(&assignment, &run);
    }
    Ok(acc.finish(VerifyMode::Exhaustive))
}

/// Combines reports over disjoint assignment sets: worst cases take the
/// max, guaranteed sets intersect, counts add. Equal worst cases keep the
/// lexicographically smaller counterexample, so merging is associative and
/// order-independent.
pub fn merge_reports(
    a: &VerificationReport,
    b: &VerificationReport,
) -> Result<VerificationReport> {
    let mode = match (a.mode, b.mode) {
        (VerifyMode::Exhaustive, VerifyMode::Exhaustive) => VerifyMode::Exhaustive,
        (VerifyMode::Sampled { seed: sa, samples: na }, VerifyMode::Sampled { seed: sb, samples: nb })
            if sa == sb =>
        {
            VerifyMode::Sampled { seed: sa, samples: na + nb }
        }
        _ => return Err(Error::MergeMismatch("reports come from different modes".into())),
    };
    let worst_case_mistakes = a.worst_case_mistakes.max(b.worst_case_mistakes);
    let counterexample = match (
        a.worst_case_mistakes.cmp(&b.worst_case_mistakes),
        &a.counterexample,
        &b.counterexample,
    ) {
        (std::cmp::Ordering::Greater, cex, _) => cex.clone(),
        (std::cmp::Ordering::Less, _, cex) => cex.clone(),
        (std::cmp::Ordering::Equal, Some(x), Some(y)) => Some(x.min(y).clone()),
        (std::cmp::Ordering::Equal, Some(x), None) => Some(x.clone()),
        (std::cmp::Ordering::Equal, None, y) => y.clone(),
    };
    Ok(VerificationReport {
        mode,
        assignments_checked: a.assignments_checked + b.assignments_checked,
        worst_case_mistakes,
        guaranteed_correct: a
            .guaranteed_correct
            .intersection(&b.guaranteed_correct)
            .copied()
            .collect(),
        counterexample,
        violations_total: a.violations_total + b.violations_total,
    })
}
