//! Exhaustive cooperative-strategy search: the minimum worst-case number of
//! mistakes achievable on a small instance, with a witness decision table.

use std::collections::{BTreeMap, HashMap};

use crate::enumerate::AssignmentSpace;
use crate::error::{Error, Result};
use crate::puzzle::{Assignment, ColorId, PuzzleSpec, Transcript, View};
use crate::strategy::Strategy;

/// Hard limits keeping the search at desk scale.
pub const SEARCH_MAX_ASSIGNMENTS: u128 = 1_000;
pub const SEARCH_MAX_TABLE: u128 = 100_000;

/// Everything a speaker can distinguish at decision time: who it is, the
/// exact sequence of hats it sees and the announcements it has heard.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InformationSet {
    pub speaker: usize,
    pub seen: Vec<ColorId>,
    pub heard: Vec<ColorId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub info: InformationSet,
    pub announce: ColorId,
}

/// A complete decision table over every reachable information set; replays
/// through the verifier as an ordinary strategy.
#[derive(Debug, Clone)]
pub struct DecisionTable {
    spec: PuzzleSpec,
    rows: Vec<TableRow>,
    index: HashMap<InformationSet, ColorId>,
}

impl DecisionTable {
    fn new(spec: PuzzleSpec, rows: Vec<TableRow>) -> DecisionTable {
        let index = rows.iter().map(|r| (r.info.clone(), r.announce)).collect();
        DecisionTable { spec, rows, index }
    }

    pub fn spec(&self) -> &PuzzleSpec {
        &self.spec
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }
}

impl Strategy for DecisionTable {
    fn id(&self) -> &str {
        "synthesized"
    }

    fn decide(
        &self,
        _spec: &PuzzleSpec,
        position: usize,
        seen: &View<'_>,
        heard: &Transcript,
    ) -> Option<ColorId> {
        let info = InformationSet {
            speaker: position,
            seen: seen.iter().map(|(_, c)| c).collect(),
            heard: heard.guesses().map(|(_, c)| c).collect(),
        };
        self.index.get(&info).copied()
    }

    fn check_spec(&self, spec: &PuzzleSpec) -> Result<()> {
        if *spec != self.spec {
            return Err(Error::UnsupportedStrategy {
                id: "synthesized".into(),
                reason: "decision table was synthesized for a different puzzle".into(),
            });
        }
        Ok(())
    }
}

/// Outcome of the iterative-deepening search.
#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub min_guaranteed_mistakes: usize,
    pub witness: Option<DecisionTable>,
    pub nodes_explored: u64,
}

fn check_search_limits(spec: &PuzzleSpec) -> Result<AssignmentSpace> {
    spec.validate()?;
    if matches!(spec, PuzzleSpec::Limited { .. }) {
        return Err(Error::InvalidPuzzle(
            "synthesis applies to the line-guessing puzzles".into(),
        ));
    }
    let space = AssignmentSpace::new(spec)?;
    let count = space.count();
    if count > SEARCH_MAX_ASSIGNMENTS {
        return Err(Error::SearchLimitExceeded(format!(
            "{count} assignments, limit {SEARCH_MAX_ASSIGNMENTS}"
        )));
    }
    let table_bound = count * spec.n() as u128;
    if table_bound > SEARCH_MAX_TABLE {
        return Err(Error::SearchLimitExceeded(format!(
            "up to {table_bound} information sets, limit {SEARCH_MAX_TABLE}"
        )));
    }
    Ok(space)
}

/// A complete decision table whose worst case stays within `budget`
/// mistakes, or `None` when no such table exists.
///
/// Depth-first over information sets in speaking order (back first), colors
/// tried in ascending index; a branch dies as soon as one assignment's
/// already-determined mistakes exceed the budget. The first table found is
/// returned, which makes the result deterministic.
pub fn exists_strategy(spec: &PuzzleSpec, budget: usize) -> Result<Option<DecisionTable>> {
    let (table, _) = exists_strategy_counted(spec, budget)?;
    Ok(table)
}

fn exists_strategy_counted(
    spec: &PuzzleSpec,
    budget: usize,
) -> Result<(Option<DecisionTable>, u64)> {
    let space = check_search_limits(spec)?;
    let assignments: Vec<Assignment> = space.iter().collect();
    let mut search = Search {
        n: spec.n(),
        colors: spec.colors(),
        no_repeat: spec.no_repeat_rule(),
        budget,
        assignments,
        mistakes: Vec::new(),
        heards: Vec::new(),
        rows: Vec::new(),
        nodes: 0,
    };
    search.mistakes = vec![0; search.assignments.len()];
    search.heards = vec![Vec::new(); search.assignments.len()];
    let found = search.solve_stage(0);
    let table = found.then(|| DecisionTable::new(spec.clone(), search.rows.clone()));
    Ok((table, search.nodes))
}

/// Iterative deepening over the mistake budget; the first budget that
/// admits a table is the minimum.
pub fn min_guaranteed_mistakes(spec: &PuzzleSpec) -> Result<SynthesisResult> {
    check_search_limits(spec)?;
    let mut nodes_total = 0;
    for budget in 0..=spec.n() {
        let (table, nodes) = exists_strategy_counted(spec, budget)?;
        nodes_total += nodes;
        if let Some(table) = table {
            return Ok(SynthesisResult {
                min_guaranteed_mistakes: budget,
                witness: Some(table),
                nodes_explored: nodes_total,
            });
        }
    }
    unreachable!("a budget of n mistakes admits any table");
}

struct Group {
    seen: Vec<ColorId>,
    heard: Vec<ColorId>,
    members: Vec<usize>,
}

/// One-step lookahead: assignments that have spent their whole mistake
/// budget pin the announcement of the information set they reach next.
/// Two pins that disagree, or a pin the no-repeat rule forbids, prove the
/// current partial table has no completion.
#[derive(Default)]
struct PinMap {
    pinned: HashMap<(Vec<ColorId>, Vec<ColorId>), ColorId>,
}

struct Search {
    n: usize,
    colors: u32,
    no_repeat: bool,
    budget: usize,
    assignments: Vec<Assignment>,
    mistakes: Vec<usize>,
    /// Announcements heard so far, per assignment, in speaking order.
    heards: Vec<Vec<ColorId>>,
    rows: Vec<TableRow>,
    nodes: u64,
}

impl Search {
    /// Stage `s` decides for the speaker at position `n - 1 - s`.
    fn solve_stage(&mut self, stage: usize) -> bool {
        if stage == self.n {
            return true;
        }
        let speaker = self.n - 1 - stage;
        // Partition assignments into the information sets reachable under
        // the choices made so far; BTreeMap keys give a fixed order.
        let mut grouped: BTreeMap<(Vec<ColorId>, Vec<ColorId>), Vec<usize>> = BTreeMap::new();
        for (i, assignment) in self.assignments.iter().enumerate() {
            let seen = assignment.hats()[..speaker].to_vec();
            grouped.entry((seen, self.heards[i].clone())).or_default().push(i);
        }
        let groups: Vec<Group> = grouped
            .into_iter()
            .map(|((seen, heard), members)| Group { seen, heard, members })
            .collect();
        // A group with no workable color at all dooms the whole stage.
        for group in &groups {
            if !(0..self.colors).any(|c| self.color_fits(speaker, group, ColorId(c))) {
                return false;
            }
        }
        let mut chosen = vec![ColorId(0); groups.len()];
        let mut pins = PinMap::default();
        self.assign_groups(stage, &groups, 0, &mut chosen, &mut pins)
    }

    fn color_fits(&self, speaker: usize, group: &Group, color: ColorId) -> bool {
        if self.no_repeat && group.heard.contains(&color) {
            return false;
        }
        group.members.iter().all(|&i| {
            let add = usize::from(self.assignments[i].hat(speaker) != color);
            self.mistakes[i] + add <= self.budget
        })
    }

    fn assign_groups(
        &mut self,
        stage: usize,
        groups: &[Group],
        group_index: usize,
        chosen: &mut Vec<ColorId>,
        pins: &mut PinMap,
    ) -> bool {
        if group_index == groups.len() {
            // Stage complete: publish each group's announcement to its
            // members and descend.
            for (g, group) in groups.iter().enumerate() {
                for &i in &group.members {
                    self.heards[i].push(chosen[g]);
                }
            }
            let ok = self.solve_stage(stage + 1);
            if !ok {
                for group in groups {
                    for &i in &group.members {
                        self.heards[i].pop();
                    }
                }
            }
            return ok;
        }
        let speaker = self.n - 1 - stage;
        let group = &groups[group_index];
        for c in 0..self.colors {
            let color = ColorId(c);
            if self.no_repeat && group.heard.contains(&color) {
                continue;
            }
            self.nodes += 1;
            let mut over_budget = false;
            for &i in &group.members {
                if self.assignments[i].hat(speaker) != color {
                    self.mistakes[i] += 1;
                    over_budget |= self.mistakes[i] > self.budget;
                }
            }
            let mut added_pins: Vec<(Vec<ColorId>, Vec<ColorId>)> = Vec::new();
            let mut dead = over_budget;
            if !dead && speaker > 0 {
                let next = speaker - 1;
                for &i in &group.members {
                    if self.mistakes[i] < self.budget {
                        continue;
                    }
                    let must = self.assignments[i].hat(next);
                    let mut heard_next = self.heards[i].clone();
                    heard_next.push(color);
                    if self.no_repeat && heard_next.contains(&must) {
                        dead = true;
                        break;
                    }
                    let key = (self.assignments[i].hats()[..next].to_vec(), heard_next);
                    match pins.pinned.get(&key).copied() {
                        Some(existing) if existing != must => {
                            dead = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            pins.pinned.insert(key.clone(), must);
                            added_pins.push(key);
                        }
                    }
                }
            }
            if dead {
                self.undo_choice(group, speaker, color, &added_pins, pins);
                continue;
            }
            chosen[group_index] = color;
            self.rows.push(TableRow {
                info: InformationSet {
                    speaker,
                    seen: group.seen.clone(),
                    heard: group.heard.clone(),
                },
                announce: color,
            });
            if self.assign_groups(stage, groups, group_index + 1, chosen, pins) {
                return true;
            }
            self.rows.pop();
            self.undo_choice(group, speaker, color, &added_pins, pins);
        }
        false
    }

    fn undo_choice(
        &mut self,
        group: &Group,
        speaker: usize,
        color: ColorId,
        added_pins: &[(Vec<ColorId>, Vec<ColorId>)],
        pins: &mut PinMap,
    ) {
        for key in added_pins {
            pins.pinned.remove(key);
        }
        for &i in &group.members {
            if self.assignments[i].hat(speaker) != color {
                self.mistakes[i] -= 1;
            }
        }
    }
}
