//! Exhaustive enumeration of legal assignments, in lexicographic order,
//! with rank/unrank support so verification can be split across workers.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::puzzle::{Assignment, ColorId, PuzzleSpec};

/// Default ceiling on exhaustive enumeration; beyond it callers are pointed
/// at sampled verification.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Ceiling on the supply-counting memo for the limited variant.
const MAX_SUPPLY_STATES: usize = 2_000_000;

fn falling_factorial(m: u128, k: u128) -> u128 {
    let mut total: u128 = 1;
    for i in 0..k {
        total = total.saturating_mul(m - i);
    }
    total
}

/// The set of all legal assignments for one puzzle, addressable by rank.
#[derive(Debug, Clone)]
pub struct AssignmentSpace {
    spec: PuzzleSpec,
    count: u128,
    /// For the limited variant: completions left for each reachable
    /// remaining-supply state. Empty otherwise.
    completions: HashMap<Vec<u32>, u128>,
}

impl AssignmentSpace {
    pub fn new(spec: &PuzzleSpec) -> Result<AssignmentSpace> {
        spec.validate()?;
        let mut completions = HashMap::new();
        let count = match spec {
            PuzzleSpec::Repeated { n, colors } => (*colors as u128)
                .checked_pow(*n as u32)
                .unwrap_or(u128::MAX),
            PuzzleSpec::Distinct { n } => falling_factorial(*n as u128 + 1, *n as u128),
            PuzzleSpec::Limited { n, counts, .. } => {
                let mut remaining = counts.clone();
                count_completions(&mut remaining, *n, &mut completions)?
            }
        };
        Ok(AssignmentSpace { spec: spec.clone(), count, completions })
    }

    pub fn spec(&self) -> &PuzzleSpec {
        &self.spec
    }

    /// Number of legal assignments (saturating for astronomically large spaces).
    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn ensure_within(&self, cap: u64) -> Result<()> {
        if self.count > u128::from(cap) {
            return Err(Error::EnumerationCapExceeded { count: self.count, cap });
        }
        Ok(())
    }

    /// The `rank`-th assignment in lexicographic order of hat sequences.
    pub fn at(&self, rank: u64) -> Assignment {
        assert!(u128::from(rank) < self.count, "rank out of range");
        match &self.spec {
            PuzzleSpec::Repeated { n, colors } => {
                let base = u128::from(*colors);
                let mut r = u128::from(rank);
                let mut hats = vec![ColorId(0); *n];
                for i in (0..*n).rev() {
                    hats[i] = ColorId((r % base) as u32);
                    r /= base;
                }
                Assignment(hats)
            }
            PuzzleSpec::Distinct { n } => {
                let total_colors = *n + 1;
                let mut available: Vec<u32> = (0..total_colors as u32).collect();
                let mut r = u128::from(rank);
                let mut hats = Vec::with_capacity(*n);
                for i in 0..*n {
                    let suffix =
                        falling_factorial((total_colors - 1 - i) as u128, (*n - 1 - i) as u128);
                    let d = (r / suffix) as usize;
                    r %= suffix;
                    hats.push(ColorId(available.remove(d)));
                }
                Assignment(hats)
            }
            PuzzleSpec::Limited { n, counts, .. } => {
                let mut remaining = counts.clone();
                let mut r = u128::from(rank);
                let mut hats = Vec::with_capacity(*n);
                for left in (1..=*n).rev() {
                    for c in 0..remaining.len() {
                        if remaining[c] == 0 {
                            continue;
                        }
                        remaining[c] -= 1;
                        let w = self.completions_for(&remaining, left - 1);
                        if r < w {
                            hats.push(ColorId(c as u32));
                            break;
                        }
                        r -= w;
                        remaining[c] += 1;
                    }
                }
                Assignment(hats)
            }
        }
    }

    fn completions_for(&self, remaining: &Vec<u32>, left: usize) -> u128 {
        if left == 0 {
            1
        } else {
            *self
                .completions
                .get(remaining)
                .expect("supply state reached during unranking was counted up front")
        }
    }

    /// All assignments in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Assignment> + '_ {
        (0..self.count as u64).map(move |r| self.at(r))
    }

    pub fn contains(&self, assignment: &Assignment) -> bool {
        self.spec.is_legal_assignment(assignment)
    }

    /// One uniformly random legal assignment.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Assignment {
        match &self.spec {
            PuzzleSpec::Repeated { n, colors } => {
                Assignment((0..*n).map(|_| ColorId(rng.gen_range(0..*colors))).collect())
            }
            PuzzleSpec::Distinct { n } => {
                let total = *n + 1;
                let mut pool: Vec<u32> = (0..total as u32).collect();
                for i in 0..*n {
                    let j = rng.gen_range(i..total);
                    pool.swap(i, j);
                }
                Assignment(pool[..*n].iter().map(|&c| ColorId(c)).collect())
            }
            PuzzleSpec::Limited { n, counts, .. } => {
                // Sequential draws weighted by how many completions each
                // color leaves keep the distribution exactly uniform.
                let mut remaining = counts.clone();
                let mut hats = Vec::with_capacity(*n);
                for left in (1..=*n).rev() {
                    let total = self.completions_for(&remaining, left);
                    let mut pick = rng.gen_range(0..total);
                    for c in 0..remaining.len() {
                        if remaining[c] == 0 {
                            continue;
                        }
                        remaining[c] -= 1;
                        let w = self.completions_for(&remaining, left - 1);
                        if pick < w {
                            hats.push(ColorId(c as u32));
                            break;
                        }
                        pick -= w;
                        remaining[c] += 1;
                    }
                }
                Assignment(hats)
            }
        }
    }
}

fn count_completions(
    remaining: &mut Vec<u32>,
    left: usize,
    memo: &mut HashMap<Vec<u32>, u128>,
) -> Result<u128> {
    if left == 0 {
        return Ok(1);
    }
    if let Some(&v) = memo.get(remaining) {
        return Ok(v);
    }
    if memo.len() >= MAX_SUPPLY_STATES {
        return Err(Error::InvalidPuzzle(
            "hat supply is too large to enumerate; shrink the supply".into(),
        ));
    }
    let mut total: u128 = 0;
    for c in 0..remaining.len() {
        if remaining[c] == 0 {
            continue;
        }
        remaining[c] -= 1;
        total = total.saturating_add(count_completions(remaining, left - 1, memo)?);
        remaining[c] += 1;
    }
    memo.insert(remaining.clone(), total);
    Ok(total)
}

/// Owning iterator over a whole assignment space, lexicographic.
#[derive(Debug, Clone)]
pub struct Assignments {
    space: AssignmentSpace,
    next: u64,
    count: u64,
}

impl Iterator for Assignments {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        if self.next >= self.count {
            return None;
        }
        let a = self.space.at(self.next);
        self.next += 1;
        Some(a)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.count - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Assignments {}

/// Every legal assignment exactly once, lazily and in lexicographic order;
/// errors out when the space exceeds `cap`.
pub fn enumerate_assignments(spec: &PuzzleSpec, cap: u64) -> Result<Assignments> {
    let space = AssignmentSpace::new(spec)?;
    space.ensure_within(cap)?;
    let count = space.count() as u64;
    Ok(Assignments { space, next: 0, count })
}
