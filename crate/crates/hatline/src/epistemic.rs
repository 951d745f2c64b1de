//! Possible-worlds engine for limited-supply announcement puzzles: truthful
//! public "I know / I don't know" rounds and the deductions they license.

use std::collections::BTreeSet;

use crate::enumerate::{AssignmentSpace, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::puzzle::{Announcement, Assignment, ColorId, PuzzleSpec, Transcript, View};

/// The worlds still considered possible by everyone listening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldSet {
    worlds: Vec<Assignment>,
}

impl WorldSet {
    fn from_sorted(worlds: Vec<Assignment>) -> WorldSet {
        debug_assert!(worlds.windows(2).all(|w| w[0] < w[1]));
        WorldSet { worlds }
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[Assignment] {
        &self.worlds
    }

    pub fn contains(&self, assignment: &Assignment) -> bool {
        self.worlds.binary_search(assignment).is_ok()
    }

    pub fn is_subset_of(&self, other: &WorldSet) -> bool {
        self.worlds.iter().all(|w| other.contains(w))
    }
}

/// A truthful answer to "do you know your own color?".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Know(ColorId),
    DontKnow,
}

/// The publicly observable part of a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnowStatus {
    Know,
    DontKnow,
}

impl Decision {
    pub fn status(&self) -> KnowStatus {
        match self {
            Decision::Know(_) => KnowStatus::Know,
            Decision::DontKnow => KnowStatus::DontKnow,
        }
    }
}

impl From<Decision> for Announcement {
    fn from(d: Decision) -> Announcement {
        match d {
            Decision::Know(c) => Announcement::Know(c),
            Decision::DontKnow => Announcement::DontKnow,
        }
    }
}

fn require_limited(spec: &PuzzleSpec) -> Result<()> {
    spec.validate()?;
    if !matches!(spec, PuzzleSpec::Limited { .. }) {
        return Err(Error::InvalidPuzzle(
            "possible-worlds reasoning applies to limited-supply puzzles".into(),
        ));
    }
    Ok(())
}

/// Every assignment the supply allows.
pub fn initial_worlds(spec: &PuzzleSpec) -> Result<WorldSet> {
    require_limited(spec)?;
    let space = AssignmentSpace::new(spec)?;
    space.ensure_within(DEFAULT_ENUMERATION_CAP)?;
    Ok(WorldSet::from_sorted(space.iter().collect()))
}

/// What `position` can truthfully answer in the `actual` world, given the
/// public world set: restrict to worlds agreeing with everything the
/// position sees; if they all agree on its own color, it knows.
pub fn knows_own(
    spec: &PuzzleSpec,
    worlds: &WorldSet,
    actual: &Assignment,
    position: usize,
) -> Result<Decision> {
    require_limited(spec)?;
    let n = spec.n();
    if position >= n {
        return Err(Error::PositionOutOfRange { position, n });
    }
    if !worlds.contains(actual) {
        return Err(Error::InconsistentHistory);
    }
    let visibility = spec.visibility();
    let view = View::new(visibility, actual.hats(), position);
    let mut own_colors = worlds
        .worlds
        .iter()
        .filter(|w| view.iter().all(|(p, c)| w.hat(p) == c))
        .map(|w| w.hat(position));
    let first = own_colors.next().expect("the actual world always survives");
    if own_colors.all(|c| c == first) {
        Ok(Decision::Know(first))
    } else {
        Ok(Decision::DontKnow)
    }
}

/// Public-announcement update: keep exactly the worlds in which `position`
/// would truthfully give the same know/don't-know status. The announced
/// color itself is not public information here; the question elicits a
/// yes or no.
pub fn announce(
    spec: &PuzzleSpec,
    worlds: &WorldSet,
    position: usize,
    status: KnowStatus,
) -> Result<WorldSet> {
    require_limited(spec)?;
    let surviving: Vec<Assignment> = worlds
        .worlds
        .iter()
        .filter(|w| {
            knows_own(spec, worlds, w, position)
                .map(|d| d.status() == status)
                .unwrap_or(false)
        })
        .cloned()
        .collect();
    if surviving.is_empty() {
        return Err(Error::InconsistentAnnouncement);
    }
    Ok(WorldSet::from_sorted(surviving))
}

/// Plays the announcement rounds truthfully in the given speaker order.
pub fn simulate(spec: &PuzzleSpec, actual: &Assignment, order: &[usize]) -> Result<Transcript> {
    require_limited(spec)?;
    spec.validate_assignment(actual)?;
    validate_order(spec.n(), order)?;
    let mut worlds = initial_worlds(spec)?;
    let mut transcript = Transcript::new();
    for &position in order {
        let decision = knows_own(spec, &worlds, actual, position)?;
        worlds = announce(spec, &worlds, position, decision.status())?;
        transcript.push(position, decision.into());
    }
    Ok(transcript)
}

/// The colors `query` can wear in any world consistent with the observed
/// know/don't-know statuses (speakers taken from `order` in step).
pub fn deduce(
    spec: &PuzzleSpec,
    statuses: &[KnowStatus],
    order: &[usize],
    query: usize,
) -> Result<BTreeSet<ColorId>> {
    require_limited(spec)?;
    let n = spec.n();
    validate_order(n, order)?;
    if query >= n {
        return Err(Error::PositionOutOfRange { position: query, n });
    }
    if statuses.len() > order.len() {
        return Err(Error::Parse(format!(
            "transcript has {} statements for {} speakers",
            statuses.len(),
            order.len()
        )));
    }
    let mut worlds = initial_worlds(spec)?;
    for (&position, &status) in order.iter().zip(statuses) {
        worlds = announce(spec, &worlds, position, status)
            .map_err(|_| Error::InconsistentTranscript)?;
    }
    Ok(worlds.worlds.iter().map(|w| w.hat(query)).collect())
}

fn validate_order(n: usize, order: &[usize]) -> Result<()> {
    if order.len() > n || order.iter().any(|&p| p >= n) {
        return Err(Error::Parse(format!("speaker order {order:?} does not fit {n} logicians")));
    }
    for (i, &p) in order.iter().enumerate() {
        if order[..i].contains(&p) {
            return Err(Error::Parse(format!("speaker {p} listed twice")));
        }
    }
    Ok(())
}
